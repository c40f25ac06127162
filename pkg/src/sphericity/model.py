"""Two-step monotone incomplete samples: design parameters, W cross-product
matrices, the likelihood-ratio statistic, exact null moments, and samplers.

Layout convention: the first N1 observations are complete p-vectors, the
remaining N2 observations record only their first p1 coordinates. Matrices
store observations as columns.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OverflowRangeError, SingularMatrixError

_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class MonotoneDesign:
    """Sample-size and dimension configuration.

    N1 complete p-dimensional observations, N2 additional observations of
    the first p1 coordinates only. The complete-data case is encoded as
    p2 = 0, N2 = 0.
    """

    N1: int
    N2: int
    p1: int
    p2: int

    def __post_init__(self) -> None:
        if self.p1 < 1:
            raise DomainError(f"p1 must be >= 1, got {self.p1}")
        if self.p2 < 0:
            raise DomainError(f"p2 must be >= 0, got {self.p2}")
        if self.N2 < 0:
            raise DomainError(f"N2 must be >= 0, got {self.N2}")
        if self.p2 == 0 and self.N2 != 0:
            raise DomainError("complete-data case (p2 = 0) requires N2 = 0")
        if self.p2 > 0:
            if self.n1 <= self.p:
                raise DomainError(
                    f"need n1 = N1 - 1 > p = p1 + p2, got n1 = {self.n1}, p = {self.p}"
                )
        elif self.N1 <= self.p:
            raise DomainError(f"need N1 > p, got N1 = {self.N1}, p = {self.p}")

    @property
    def N(self) -> int:
        return self.N1 + self.N2

    @property
    def p(self) -> int:
        return self.p1 + self.p2

    @property
    def n(self) -> int:
        return self.N - 1

    @property
    def n1(self) -> int:
        return self.N1 - 1

    @property
    def tau1(self) -> float:
        return self.N1 / self.N

    @classmethod
    def from_counts(cls, n: int, n1: int, p1: int, p2: int) -> "MonotoneDesign":
        """Build a design from (n, n1) = (N - 1, N1 - 1)."""
        return cls(N1=n1 + 1, N2=n - n1, p1=p1, p2=p2)


@dataclass(frozen=True)
class MonotoneSample:
    """Raw observations: x_complete is p x N1, x_partial is p1 x N2."""

    x_complete: np.ndarray
    x_partial: np.ndarray

    def validate(self, design: MonotoneDesign) -> None:
        p, p1 = design.p, design.p1
        if self.x_complete.shape != (p, design.N1):
            raise DomainError(
                f"x_complete must be {p} x {design.N1}, got {self.x_complete.shape}"
            )
        if self.x_partial.shape != (p1, design.N2):
            raise DomainError(
                f"x_partial must be {p1} x {design.N2}, got {self.x_partial.shape}"
            )
        if not (np.isfinite(self.x_complete).all() and np.isfinite(self.x_partial).all()):
            raise DomainError("sample contains non-finite entries")


@dataclass(frozen=True)
class WMatrices:
    """Cross-product matrices of the two observation blocks."""

    w11_1: np.ndarray
    w12_1: np.ndarray
    w22_1: np.ndarray
    w11_2: np.ndarray
    w22dot1: np.ndarray


@dataclass(frozen=True)
class WishartSummary:
    """The sufficient statistics the likelihood ratio depends on.

    A = W11_1 + W11_2, B = W22.1, C = W21_1 W11_1^-1 W12_1.
    """

    logdet_a: float
    tr_a: float
    logdet_b: float
    tr_b: float
    tr_c: float

    @classmethod
    def from_matrices(cls, w: WMatrices) -> "WishartSummary":
        a = w.w11_1 + w.w11_2
        sign_a, logdet_a = np.linalg.slogdet(a)
        if sign_a <= 0:
            raise DomainError("W11_1 + W11_2 has non-positive determinant")
        if w.w22dot1.shape[0] == 0:
            logdet_b, tr_b, tr_c = 0.0, 0.0, 0.0
        else:
            sign_b, logdet_b = np.linalg.slogdet(w.w22dot1)
            if sign_b <= 0:
                raise DomainError("W22.1 has non-positive determinant")
            tr_b = float(np.trace(w.w22dot1))
            tr_c = float(np.trace(w.w22_1)) - tr_b
        return cls(float(logdet_a), float(np.trace(a)), float(logdet_b), tr_b, tr_c)


def compute_w(sample: MonotoneSample, design: MonotoneDesign) -> WMatrices:
    """Cross-product matrices of a two-step monotone sample."""
    sample.validate(design)
    p1, N1, N2 = design.p1, design.N1, design.N2
    x1 = sample.x_complete[:p1, :]
    x2 = sample.x_complete[p1:, :]
    xbar1_1 = x1.mean(axis=1, keepdims=True)
    d1 = x1 - xbar1_1
    w11_1 = d1 @ d1.T

    if design.p2 > 0:
        xbar2_1 = x2.mean(axis=1, keepdims=True)
        d2 = x2 - xbar2_1
        w12_1 = d1 @ d2.T
        w22_1 = d2 @ d2.T
    else:
        w12_1 = np.zeros((p1, 0))
        w22_1 = np.zeros((0, 0))

    if N2 > 0:
        xbar1_2 = sample.x_partial.mean(axis=1, keepdims=True)
        dp = sample.x_partial - xbar1_2
        diff = xbar1_1 - xbar1_2
        w11_2 = dp @ dp.T + (N1 * N2 / design.N) * (diff @ diff.T)
    else:
        w11_2 = np.zeros((p1, p1))

    if design.p2 > 0:
        cond = np.linalg.cond(w11_1)
        if not np.isfinite(cond) or cond > _CONDITION_LIMIT:
            raise SingularMatrixError(
                f"W11_1 condition number {cond:.3g} exceeds {_CONDITION_LIMIT:.0e}"
            )
        w22dot1 = w22_1 - w12_1.T @ np.linalg.solve(w11_1, w12_1)
        w22dot1 = 0.5 * (w22dot1 + w22dot1.T)
    else:
        w22dot1 = np.zeros((0, 0))

    return WMatrices(w11_1, w12_1, w22_1, w11_2, w22dot1)


def lr_lambda(
    w: WishartSummary | WMatrices, design: MonotoneDesign
) -> tuple[float, float]:
    """Log likelihood ratio and the scaled statistic -(2/N) log lambda.

    log lambda = (N/2)(logdet A - p1 log N) + (N1/2)(logdet B - p2 log N1)
                 - ((N p1 + N1 p2)/2) log[(tr A + tr B + tr C)/(N p1 + N1 p2)]
    """
    if isinstance(w, WMatrices):
        w = WishartSummary.from_matrices(w)
    N, N1, p1, p2 = design.N, design.N1, design.p1, design.p2
    tr_total = w.tr_a + w.tr_b + w.tr_c
    if tr_total <= 0.0:
        raise DomainError("total trace must be positive")
    dof = N * p1 + N1 * p2
    log_lam = 0.5 * N * (w.logdet_a - p1 * math.log(N))
    if p2 > 0:
        log_lam += 0.5 * N1 * (w.logdet_b - p2 * math.log(N1))
    log_lam -= 0.5 * dof * math.log(tr_total / dof)
    log_lam = min(log_lam, 0.0)
    return log_lam, -2.0 * log_lam / N


def null_moment(h: int, design: MonotoneDesign) -> float:
    """E[lambda^h] under the null, evaluated in log space."""
    if h < 0 or h != int(h):
        raise DomainError(f"moment order must be a non-negative integer, got {h}")
    if h == 0:
        return 1.0
    N, N1, p1, p2, p = design.N, design.N1, design.p1, design.p2, design.p
    dof = N * p1 + N1 * p2
    log_val = h * (0.5 * dof * math.log(dof) - 0.5 * N * p1 * math.log(N)
                   - 0.5 * N1 * p2 * math.log(N1))
    for ell in range(1, p1 + 1):
        a = 0.5 * (N - p1 - 1 + ell)
        log_val += math.lgamma(a + 0.5 * N * h) - math.lgamma(a)
    for ell in range(1, p2 + 1):
        a = 0.5 * (N1 - p - 1 + ell)
        log_val += math.lgamma(a + 0.5 * N1 * h) - math.lgamma(a)
    b = 0.5 * ((N - 1) * p1 + (N1 - 1) * p2)
    log_val += math.lgamma(b) - math.lgamma(b + 0.5 * dof * h)
    if not math.isfinite(log_val):
        raise OverflowRangeError("log-space moment magnitude is not representable")
    return math.exp(log_val)


def sample_raw(
    design: MonotoneDesign, sigma2: float, rng: np.random.Generator
) -> MonotoneSample:
    """Draw an i.i.d. N(0, sigma^2 I) sample with the monotone pattern."""
    if sigma2 <= 0.0:
        raise DomainError(f"sigma2 must be positive, got {sigma2}")
    sd = math.sqrt(sigma2)
    x_complete = sd * rng.standard_normal((design.p, design.N1))
    x_partial = sd * rng.standard_normal((design.p1, design.N2))
    return MonotoneSample(x_complete, x_partial)


def _wishart_logdet_trace(
    dim: int, dof: int, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """(logdet, trace) of `size` draws from Wishart_dim(dof, I).

    Bartlett factorization: the trace splits into the chi-square diagonal
    terms plus an independent chi-square aggregating the squared
    off-diagonal normals; the log-determinant uses the diagonals only.
    """
    logdet = np.zeros(size)
    trace = np.zeros(size)
    for j in range(dim):
        c = rng.chisquare(dof - j, size)
        logdet += np.log(c)
        trace += c
    k_off = dim * (dim - 1) // 2
    if k_off > 0:
        trace += rng.chisquare(k_off, size)
    return logdet, trace


def sample_summary_batch(
    design: MonotoneDesign, rng: np.random.Generator, size: int
) -> dict[str, np.ndarray]:
    """Vectorized fast null sampler for the sufficient statistics.

    Under H0 with Sigma = I the three blocks are independent:
    A ~ Wishart_p1(N-1, I), B ~ Wishart_p2(n1-p1, I), C ~ Wishart_p2(p1, I),
    and only tr C enters the statistic.
    """
    n, n1, p1, p2, p = design.n, design.n1, design.p1, design.p2, design.p
    if p2 > 0 and n1 <= p:
        raise DomainError(f"summary sampler needs n1 > p, got n1 = {n1}, p = {p}")
    logdet_a, tr_a = _wishart_logdet_trace(p1, n, rng, size)
    if p2 > 0:
        logdet_b, tr_b = _wishart_logdet_trace(p2, n1 - p1, rng, size)
        tr_c = rng.chisquare(p1 * p2, size)
    else:
        logdet_b = np.zeros(size)
        tr_b = np.zeros(size)
        tr_c = np.zeros(size)
    return {
        "logdet_a": logdet_a, "tr_a": tr_a,
        "logdet_b": logdet_b, "tr_b": tr_b, "tr_c": tr_c,
    }


def sample_summary(design: MonotoneDesign, rng: np.random.Generator) -> WishartSummary:
    """Single fast-path draw of the sufficient statistics under H0."""
    batch = sample_summary_batch(design, rng, 1)
    return WishartSummary(*(float(batch[k][0]) for k in
                            ("logdet_a", "tr_a", "logdet_b", "tr_b", "tr_c")))


def batch_scaled_statistic(design: MonotoneDesign, batch: dict[str, np.ndarray]) -> np.ndarray:
    """-(2/N) log lambda for a batch of summary draws, vectorized."""
    N, N1, p1, p2 = design.N, design.N1, design.p1, design.p2
    dof = N * p1 + N1 * p2
    tr_total = batch["tr_a"] + batch["tr_b"] + batch["tr_c"]
    log_lam = 0.5 * N * (batch["logdet_a"] - p1 * math.log(N))
    if p2 > 0:
        log_lam = log_lam + 0.5 * N1 * (batch["logdet_b"] - p2 * math.log(N1))
    log_lam = log_lam - 0.5 * dof * np.log(tr_total / dof)
    return np.maximum(-2.0 * log_lam / N, 0.0)


# --- CSV interchange ------------------------------------------------------

def write_sample_csv(sample: MonotoneSample, design: MonotoneDesign, path) -> None:
    """One observation per row, header x1..xp, trailing cells empty for
    the partial rows."""
    p = design.p
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{i}" for i in range(1, p + 1)])
        for j in range(design.N1):
            writer.writerow([repr(float(v)) for v in sample.x_complete[:, j]])
        for j in range(design.N2):
            row = [repr(float(v)) for v in sample.x_partial[:, j]]
            writer.writerow(row + [""] * design.p2)


def read_sample_csv(path, p1: int | None = None, p2: int | None = None):
    """Parse a monotone sample CSV; returns (sample, design).

    The complete rows must form a contiguous prefix and every partial row
    must fill exactly p1 cells. Malformed rows are reported by number.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DomainError(f"{path}: empty file") from None
        p = len(header)
        complete_rows: list[list[float]] = []
        partial_rows: list[list[float]] = []
        for i, row in enumerate(reader, start=2):
            if not row or all(c.strip() == "" for c in row):
                continue
            filled = [c for c in row if c.strip() != ""]
            n_filled = len(filled)
            trailing_blank = all(c.strip() == "" for c in row[n_filled:])
            if not trailing_blank or len(row) > p:
                raise DomainError(f"{path}: row {i}: malformed monotone pattern")
            try:
                values = [float(c) for c in filled]
            except ValueError as exc:
                raise DomainError(f"{path}: row {i}: {exc}") from None
            if n_filled == p and not partial_rows:
                complete_rows.append(values)
            else:
                if p1 is None:
                    p1 = n_filled
                if n_filled != p1:
                    raise DomainError(
                        f"{path}: row {i}: expected {p1} filled cells, found {n_filled}"
                    )
                partial_rows.append(values)
        if not complete_rows:
            raise DomainError(f"{path}: no complete observations found")
        if p1 is None:
            p1 = p if p2 is None else p - p2
        if p2 is not None and p1 != p - p2:
            raise DomainError(
                f"{path}: inferred p1 = {p1} conflicts with p2 = {p2} for p = {p}"
            )
        design = MonotoneDesign(
            N1=len(complete_rows), N2=len(partial_rows), p1=p1, p2=p - p1
        )
        x_complete = np.array(complete_rows, dtype=float).T
        x_partial = (np.array(partial_rows, dtype=float).T if partial_rows
                     else np.zeros((p1, 0)))
        return MonotoneSample(x_complete, x_partial), design
