"""Computable uniform error bounds for the order-s approximation Q_s.

Four bounds are formed from three ingredients, each scaled by 1/(2 pi):
U1 controls the inversion integral over |t| <= mv, then either the exact
tail integral I2 or one of two closed-form tail bounds (U2, U2-tilde)
takes over, and U3 accounts for replacing the true characteristic
function by its expansion. Each bound is minimized over a grid of the
auxiliary parameters v (and c where applicable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cumulants import CumulantSet, big_B, gamma_table, lemma1_b
from .errors import DivergenceError, DomainError
from .model import MonotoneDesign
from .quadrature import integrate_finite, integrate_semi_infinite

TWO_PI = 2.0 * math.pi

# exp(-c t^2 / 2) is below ~1e-440 past t = 45/sqrt(c); integrating
# further only accumulates rounding noise
_GAUSS_CUTOFF = 45.0
_EXP_LIMIT = 700.0


def _power_gauss_integral(q: int, upper: float, c: float) -> float:
    """Integral of t^q exp(-c t^2 / 2) over [0, upper]; c may be <= 0."""
    if upper <= 0.0:
        return 0.0
    if c > 0.0:
        upper = min(upper, _GAUSS_CUTOFF / math.sqrt(c))
    else:
        peak = 0.5 * abs(c) * upper * upper + q * math.log(max(upper, 1.0))
        if peak > _EXP_LIMIT:
            return math.inf
    f = lambda t: t**q * np.exp(-0.5 * c * t * t)
    return integrate_finite(f, 0.0, upper).value


def _gamma_terms(cset: CumulantSet, s: int) -> list[tuple[int, int, float]]:
    table = gamma_table(cset, s)
    return [(k, j, table[(k, j)])
            for k in range(1, s + 1) for j in range(0, s - k + 1)]


def u1(v: float, s: int, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Bound on the central part of the inversion integral.

    (2/m^(s+1)) [ sum_k (1/k!) R_{k,s-k+1}(v) I(s+2k, 1)
                  + (B(v)^(s+1)/(s+1)!) I(3s+2, c_v) ]
    where I(q, c) integrates t^q exp(-c t^2/2) over [0, mv] and
    R_{k,l}(v) = (B(v)^k - its series truncated below degree l) / v^l.
    """
    if not 0.0 < v < 1.0:
        raise DomainError(f"u1 requires 0 < v < 1, got {v}")
    m = cset.m
    B = big_B(v, design, cset)
    c_v = 1.0 - 2.0 * v * B
    b = [lemma1_b(r, design, cset) for r in range(s)]

    total = 0.0
    for k in range(1, s + 1):
        ell = s - k + 1
        # leading series coefficients of B(v)^k via repeated convolution
        coeffs = [1.0] + [0.0] * (ell - 1)
        for _ in range(k):
            coeffs = [sum(coeffs[i] * b[r - i] for i in range(r + 1))
                      for r in range(ell)]
        head = sum(coeffs[r] * v**r for r in range(ell))
        r_kl = (B**k - head) / v**ell
        total += r_kl / math.factorial(k) * _power_gauss_integral(s + 2 * k, m * v, 1.0)

    tail = B ** (s + 1) / math.factorial(s + 1) * _power_gauss_integral(
        3 * s + 2, m * v, c_v)
    return 2.0 / m ** (s + 1) * (total + tail)


def i2_exact(v: float, s: int, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Exact tail contribution of the expansion's characteristic function:
    2 [ int_{mv}^inf e^(-t^2/2)/t dt
        + sum_{k,j} (1/k!) gamma_{k,j} int_{mv}^inf e^(-t^2/2) t^(3k+j-1) dt ].
    """
    if not 0.0 < v < 1.0:
        raise DomainError(f"i2_exact requires 0 < v < 1, got {v}")
    mv = cset.m * v
    terms = [(1.0, -1)] + [(g / math.factorial(k), 3 * k + j - 1)
                           for k, j, g in _gamma_terms(cset, s)]

    def f(t: np.ndarray) -> np.ndarray:
        base = np.exp(-0.5 * t * t)
        acc = np.zeros_like(t)
        for w, q in terms:
            acc = acc + w * t ** float(q)
        return base * acc

    return 2.0 * integrate_semi_infinite(f, mv).value


def u2(v: float, c: float, s: int, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Closed-form tail bound with the 1/(mv) leading bracket term."""
    return _u2_common(v, c, s, cset, leading_over_mv=True)


def u2_tilde(v: float, c: float, s: int, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Simplified closed-form tail bound with leading bracket term 1."""
    return _u2_common(v, c, s, cset, leading_over_mv=False)


def _u2_common(v: float, c: float, s: int, cset: CumulantSet, leading_over_mv: bool) -> float:
    if not 0.0 < v < 1.0:
        raise DomainError(f"tail bound requires 0 < v < 1, got {v}")
    if not 0.0 < c < 1.0:
        raise DomainError(f"tail bound requires 0 < c < 1, got {c}")
    m = cset.m
    lead = math.sqrt(TWO_PI / c) / (m * v) if leading_over_mv else 1.0
    bracket = lead
    for k, j, g in _gamma_terms(cset, s):
        half = 0.5 * (3 * k + j)
        bracket += g * (0.5 * c) ** (-half) * math.exp(math.lgamma(half))
    expo = -0.5 * m * m * v * v * (1.0 - c)
    return math.exp(expo) * bracket if expo > -_EXP_LIMIT else 0.0


def _h(z: np.ndarray) -> np.ndarray:
    return np.arctan(z) / z - np.log(z) + 0.5 * np.log1p(z * z)


def char_log_ratio(design: MonotoneDesign) -> "callable":
    """Returns F with t^2 F(t) = -log |phi_T(t) / e^(-t^2/2)| style
    exponent used by the expansion-error tail bound."""
    n, n1, p1, p2, p = design.n, design.n1, design.p1, design.p2, design.p
    tau1 = design.tau1
    w = p1 + tau1 * p2
    A = 0.5 * (n * p1 + n1 * p2)
    d1 = np.array([n - p1 + ell for ell in range(1, p1 + 1)], dtype=float)
    d2 = np.array([n1 - p + ell for ell in range(1, p2 + 1)], dtype=float)

    def F(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        val = A * _h(A / (w * t)) + math.log(A)
        val = val - 0.5 * np.sum(d1[:, None] * _h(d1[:, None] / (2.0 * t[None, :])), axis=0)
        if p2 > 0:
            val = val - 0.5 * np.sum(
                d2[:, None] * _h(d2[:, None] / (2.0 * tau1 * t[None, :])), axis=0)
        val = val - 0.5 * np.log(A * A + w * w * t * t)
        return val / (t * t)

    return F


def u3(v: float, design: MonotoneDesign) -> float:
    """Expansion-error tail bound 2 int_{m0 v}^inf (1/t) exp(-t^2 F(t)) dt,
    with m0 = (n1 - p - 1/2)/2. Divergent when p < 3."""
    if not 0.0 < v < 1.0:
        raise DomainError(f"u3 requires 0 < v < 1, got {v}")
    p = design.p
    if p < 3:
        raise DivergenceError(f"u3 diverges for p < 3 (got p = {p})")
    m0 = 0.5 * (design.n1 - p - 0.5)
    F = char_log_ratio(design)

    def f(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        expo = -t * t * F(t)
        return np.where(expo < -_EXP_LIMIT, 0.0, np.exp(np.maximum(expo, -_EXP_LIMIT))) / t

    hint = 0.25 * (p * p - p - 4.0) + 1.0
    return 2.0 * integrate_semi_infinite(f, m0 * v, tail_exponent_hint=hint).value


@dataclass(frozen=True)
class BoundReport:
    """Grid-minimized bounds with their minimizers and diagnostics.

    v/c entries are the chosen gridpoints; c_v entries are 1 - 2vB(v) at
    the chosen v. components[i] holds the (u1, tail, u3) breakdown of
    bound i+1 at its minimizer, already divided by 2 pi. Infeasible
    bound3/bound4 grids leave the bound at inf with the flag False.
    """

    bound1: float
    bound2: float
    bound3: float
    bound4: float
    v1: float
    v2: float
    c2: float
    v3: float
    c3: float
    v4: float
    c4: float
    cv1: float
    cv2: float
    cv3: float
    cv4: float
    kappa2: float
    m: float
    m0: float
    components: tuple[tuple[float, float, float], ...]
    bound3_feasible: bool
    bound4_feasible: bool


def _grid(step: float) -> list[float]:
    if not 0.0 < step < 0.5:
        raise DomainError(f"grid step must be in (0, 0.5), got {step}")
    count = int(math.floor((1.0 - step) / step + 0.5))
    return [round(k * step, 10) for k in range(1, count + 1)]


def minimize_bounds(
    design: MonotoneDesign,
    cset: CumulantSet,
    s: int = 2,
    grid_step: float = 0.05,
) -> BoundReport:
    """Evaluate all four bounds on the (v, c) grid and take minima.

    bound1 = min_v (u1 + i2 + u3)/2pi
    bound2 = min_{v,c} (u1 + u2 + u3)/2pi
    bound3 = same with u2_tilde, restricted to c > 2 pi/(mv)^2
    bound4 = same with u2_tilde, restricted to v >= sqrt(2)/m
    Ties break toward the smallest v, then the smallest c.
    """
    grid = _grid(grid_step)
    m = cset.m
    m0 = 0.5 * (design.n1 - design.p - 0.5)

    per_v = {}
    for v in grid:
        per_v[v] = (u1(v, s, design, cset),
                    i2_exact(v, s, design, cset),
                    u3(v, design),
                    1.0 - 2.0 * v * big_B(v, design, cset))

    best1 = (math.inf, math.nan)
    comp1 = (math.nan,) * 3
    for v in grid:
        a, i2v, u3v, _ = per_v[v]
        val = (a + i2v + u3v) / TWO_PI
        if val < best1[0]:
            best1 = (val, v)
            comp1 = (a / TWO_PI, i2v / TWO_PI, u3v / TWO_PI)

    best2 = (math.inf, math.nan, math.nan)
    best3 = (math.inf, math.nan, math.nan)
    best4 = (math.inf, math.nan, math.nan)
    comp2 = comp3 = comp4 = (math.nan,) * 3
    for v in grid:
        a, _, u3v, _ = per_v[v]
        for c in grid:
            t2 = u2(v, c, s, design, cset)
            t2t = u2_tilde(v, c, s, design, cset)
            val2 = (a + t2 + u3v) / TWO_PI
            if val2 < best2[0]:
                best2 = (val2, v, c)
                comp2 = (a / TWO_PI, t2 / TWO_PI, u3v / TWO_PI)
            val_t = (a + t2t + u3v) / TWO_PI
            if c > TWO_PI / (m * v) ** 2 and val_t < best3[0]:
                best3 = (val_t, v, c)
                comp3 = (a / TWO_PI, t2t / TWO_PI, u3v / TWO_PI)
            if v >= math.sqrt(2.0) / m and val_t < best4[0]:
                best4 = (val_t, v, c)
                comp4 = (a / TWO_PI, t2t / TWO_PI, u3v / TWO_PI)

    def cv_at(v: float) -> float:
        return per_v[v][3] if v in per_v else math.nan

    return BoundReport(
        bound1=best1[0], bound2=best2[0], bound3=best3[0], bound4=best4[0],
        v1=best1[1], v2=best2[1], c2=best2[2],
        v3=best3[1], c3=best3[2], v4=best4[1], c4=best4[2],
        cv1=cv_at(best1[1]), cv2=cv_at(best2[1]),
        cv3=cv_at(best3[1]), cv4=cv_at(best4[1]),
        kappa2=cset.kappa2, m=m, m0=m0,
        components=(comp1, comp2, comp3, comp4),
        bound3_feasible=math.isfinite(best3[0]),
        bound4_feasible=math.isfinite(best4[0]),
    )
