"""Exact null cumulants of the scaled log likelihood ratio, their
standardized versions, the expansion coefficients gamma_{k,j}, and the
remainder-series quantities m, b_s, B(v), L1-L3.

All formulas are in terms of n = N - 1, n1 = N1 - 1, tau1 = N1/N and the
polygamma functions at half-integer arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import DomainError, UnsupportedOrderError
from .model import MonotoneDesign
from .specfun import polygamma

MAX_CUMULANT_ORDER = 10


@dataclass(frozen=True)
class CumulantSet:
    """Cumulants of -(2/N) log lambda under the null.

    kappa1 and kappa2 are the first two cumulants; ktilde[s] for
    s = 3..s_max are the cumulants of the standardized statistic
    T = (-(2/N) log lambda - kappa1)/sqrt(kappa2). m is the scale the
    expansion error is measured against.
    """

    kappa1: float
    kappa2: float
    ktilde: dict[int, float]
    m: float
    s_max: int

    def __post_init__(self) -> None:
        if not self.kappa2 > 0.0:
            raise DomainError(f"kappa2 must be positive, got {self.kappa2}")


@dataclass(frozen=True)
class GammaTable:
    """Coefficients gamma[k][j] of the characteristic-function expansion,
    indexed 1 <= k <= s, 0 <= j <= s - k."""

    s: int
    gamma: dict[tuple[int, int], float]

    def __getitem__(self, kj: tuple[int, int]) -> float:
        return self.gamma[kj]


def cumulant_set(design: MonotoneDesign, s_max: int = 6) -> CumulantSet:
    """All cumulants up to order s_max for a design, via polygamma sums.

    kappa^(1) = -w log w + tau1 p2 log tau1 + w psi((n p1 + n1 p2)/2)
                - sum_l psi((n - p1 + l)/2) - tau1 sum_l psi((n1 - p + l)/2)
    kappa^(s) = (-1)^(s-1) [w^s psi^(s-1)(a3) - sum psi^(s-1)(a1_l)
                - tau1^s sum psi^(s-1)(a2_l)]
    with w = p1 + tau1 p2 and tau1 = (n1 + 1)/(n + 1).
    """
    if s_max < 4 or s_max > MAX_CUMULANT_ORDER:
        raise UnsupportedOrderError(
            f"s_max must be in [4, {MAX_CUMULANT_ORDER}], got {s_max}"
        )
    n, n1 = design.n, design.n1
    p1, p2, p = design.p1, design.p2, design.p
    tau1 = design.tau1
    w = p1 + tau1 * p2
    a3 = 0.5 * (n * p1 + n1 * p2)
    a1 = [0.5 * (n - p1 + ell) for ell in range(1, p1 + 1)]
    a2 = [0.5 * (n1 - p + ell) for ell in range(1, p2 + 1)]

    kappa1 = (-w * math.log(w) + tau1 * p2 * math.log(tau1)
              + w * polygamma(0, a3)
              - sum(polygamma(0, a) for a in a1)
              - tau1 * sum(polygamma(0, a) for a in a2))

    kappa = {}
    for s in range(2, s_max + 1):
        sign = -1.0 if s % 2 == 0 else 1.0
        kappa[s] = sign * (w**s * polygamma(s - 1, a3)
                           - sum(polygamma(s - 1, a) for a in a1)
                           - tau1**s * sum(polygamma(s - 1, a) for a in a2))

    kappa2 = kappa[2]
    if not kappa2 > 0.0:
        raise DomainError(f"computed kappa2 = {kappa2} is not positive")
    ktilde = {s: kappa[s] / kappa2 ** (0.5 * s) for s in range(3, s_max + 1)}
    m = 0.5 * (n1 - p - 0.5) * math.sqrt(kappa2)
    return CumulantSet(kappa1, kappa2, ktilde, m, s_max)


def lemma1_b(s: int, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Coefficient b_s of the remainder-dominating series B(v)."""
    if s < 0 or s != int(s):
        raise DomainError(f"b_s index must be a non-negative integer, got {s}")
    n, n1, p1, p = design.n, design.n1, design.p1, design.p
    tau1 = design.tau1
    k2 = cset.kappa2
    q = n1 - p - 0.5
    w = p1 + tau1 * design.p2
    denom = (s + 1) * (s + 2) * (s + 3)
    t1 = 2.0 / (k2 * denom) * ((q / (n - p1 - 0.5)) ** (s + 1)
                               - (q / (n - 0.5)) ** (s + 1))
    t2 = 2.0 * tau1**2 / (k2 * denom) * (tau1 ** (s + 1)
                                         - (tau1 * q / (n1 - p1 - 0.5)) ** (s + 1))
    t3 = (2.0 / (k2 * (s + 3) * n**2)
          + 2.0 * w / (k2 * (s + 2) * (s + 3) * n)) * (q / n) ** (s + 1)
    return t1 + t2 - t3


_L_SERIES_CUTOFF = 1e-4


def _l1(v: float) -> float:
    if abs(v) < _L_SERIES_CUTOFF:
        return sum(v**s / (s * (s + 1) * (s + 2)) for s in range(1, 7))
    return (3.0 * v - 2.0) / (4.0 * v) - (1.0 - v) ** 2 / (2.0 * v**2) * math.log1p(-v)


def _l2(v: float) -> float:
    if abs(v) < _L_SERIES_CUTOFF:
        return sum(v**s / (s + 2) for s in range(1, 7))
    return -math.log1p(-v) / v**2 - (2.0 + v) / (2.0 * v)


def _l3(v: float) -> float:
    if abs(v) < _L_SERIES_CUTOFF:
        return sum(v**s / ((s + 1) * (s + 2)) for s in range(1, 7))
    return (1.0 - v) / v**2 * math.log1p(-v) + (2.0 - v) / (2.0 * v)


def big_B(v: float, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Closed form of B(v) = sum_s b_s v^s for 0 <= v < 1."""
    if not 0.0 <= v < 1.0:
        raise DomainError(f"big_B requires 0 <= v < 1, got {v}")
    if v == 0.0:
        return lemma1_b(0, design, cset)
    n, n1, p1, p = design.n, design.n1, design.p1, design.p
    tau1 = design.tau1
    k2 = cset.kappa2
    q = n1 - p - 0.5
    w = p1 + tau1 * design.p2
    args = (q / (n - p1 - 0.5) * v, q / (n - 0.5) * v,
            tau1 * v, tau1 * q / (n1 - p1 - 0.5) * v, q / n * v)
    for arg in args:
        if arg >= 1.0:
            raise DomainError(f"B(v) sub-argument {arg} is outside [0, 1)")
    return 2.0 / (v * k2) * (
        _l1(args[0]) - _l1(args[1])
        + tau1**2 * (_l1(args[2]) - _l1(args[3]))
        - _l2(args[4]) / n**2
        - w / n * _l3(args[4])
    )


def gamma_table(cset: CumulantSet, s: int) -> GammaTable:
    """Expansion coefficients gamma_{k,j} for order s.

    gamma_{k,j} sums, over weak compositions s1 + ... + sk = j, the
    products of ktilde[s_i + 3]/(s_i + 3)!.
    """
    if s < 1:
        raise DomainError(f"expansion order must be >= 1, got {s}")
    if cset.s_max < s + 2:
        raise UnsupportedOrderError(
            f"order {s} needs cumulants up to {s + 2}, have s_max = {cset.s_max}"
        )
    weights = {r: cset.ktilde[r + 3] / math.factorial(r + 3) for r in range(s)}
    gamma: dict[tuple[int, int], float] = {}
    for k in range(1, s + 1):
        for j in range(0, s - k + 1):
            total = 0.0
            for parts in product(range(j + 1), repeat=k):
                if sum(parts) != j:
                    continue
                term = 1.0
                for r in parts:
                    term *= weights[r]
                total += term
            gamma[(k, j)] = total
    return GammaTable(s, gamma)
