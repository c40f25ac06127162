class FigureError(Exception):
    """Unusable input data or figure parameters."""


class MissingColumnError(FigureError):
    """A required CSV column is absent; the message names it."""
