"""Command-line entry point: `figures <fig-id> --in results.csv --out fig.svg`."""

from __future__ import annotations

import argparse
import sys

from .errors import FigureError
from .render import FIGURE_IDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render benchmark result CSV files into figures.",
    )
    parser.add_argument("figure_id", choices=FIGURE_IDS, metavar="fig-id",
                        help="one of: " + ", ".join(FIGURE_IDS))
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, metavar="IMAGE",
                        help="output image path (.svg, .png, .pdf)")
    parser.add_argument("--title", help="override the default figure title")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        spec = FigureSpec(inputs=tuple(args.inputs), figure_id=args.figure_id,
                          output=args.out, title=args.title, dpi=args.dpi)
        render(spec)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
