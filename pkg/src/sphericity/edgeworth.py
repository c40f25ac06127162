"""Edgeworth-type approximation Q_s to the distribution of the
standardized statistic T, its density and characteristic function, and
the quantile input q(alpha) for Type I error comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cumulants import CumulantSet, GammaTable, gamma_table
from .errors import DomainError
from .model import MonotoneDesign
from .specfun import chi2_quantile, hermite, normal_cdf, normal_pdf


@dataclass(frozen=True)
class EdgeworthExpansion:
    """Order-s approximation built from a coefficient table.

    Q_s(x) = Phi(x) - phi(x) sum_{k=1}^{s} (1/k!) sum_{j=0}^{s-k}
             gamma_{k,j} h_{3k+j-1}(x).
    Not a distribution function: the correction can push values outside
    [0, 1] in the tails.
    """

    s: int
    gamma: GammaTable
    _terms: tuple[tuple[float, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        # flatten to (weight, hermite degree) pairs once
        terms = [
            (self.gamma[(k, j)] / math.factorial(k), 3 * k + j - 1)
            for k in range(1, self.s + 1)
            for j in range(0, self.s - k + 1)
        ]
        object.__setattr__(self, "_terms", tuple(terms))

    @classmethod
    def from_cumulants(cls, cset: CumulantSet, s: int = 2) -> "EdgeworthExpansion":
        return cls(s, gamma_table(cset, s))


def q_s_eval(exp: EdgeworthExpansion, x):
    """Raw expansion value; scalar in, scalar out, arrays elementwise."""
    xa = np.asarray(x, dtype=float)
    corr = np.zeros_like(xa)
    for weight, degree in exp._terms:
        corr = corr + weight * np.asarray(hermite(degree, xa))
    out = normal_cdf(xa) - normal_pdf(xa) * corr
    return out if xa.ndim else float(out)


def q_s_clamped(exp: EdgeworthExpansion, x):
    """Expansion value clipped to [0, 1] for use as a probability."""
    out = np.clip(q_s_eval(exp, x), 0.0, 1.0)
    return out if np.ndim(x) else float(out)


def q_s_derivative(exp: EdgeworthExpansion, x):
    """d/dx Q_s(x) = phi(x)[1 + sum (1/k!) gamma_{k,j} h_{3k+j}(x)].

    Uses phi'(x) = -x phi(x) and h_{r+1}(x) = x h_r(x) - r h_{r-1}(x).
    """
    xa = np.asarray(x, dtype=float)
    poly = np.ones_like(xa)
    for weight, degree in exp._terms:
        poly = poly + weight * np.asarray(hermite(degree + 1, xa))
    out = normal_pdf(xa) * poly
    return out if xa.ndim else float(out)


def phi_ts(exp: EdgeworthExpansion, t: float) -> complex:
    """Approximate characteristic function of T at order s."""
    it = 1j * float(t)
    poly = 1.0 + 0j
    for weight, degree in exp._terms:
        # weight carries gamma_{k,j}/k!; the factor is (it)^(3k+j)
        poly += weight * it ** (degree + 1)
    return complex(np.exp(-0.5 * t * t) * poly)


def chi2_dof(design: MonotoneDesign) -> int:
    """Degrees of freedom f = (p + 2)(p - 1)/2 of the limiting chi-square."""
    p = design.p
    return (p + 2) * (p - 1) // 2


def q_alpha(alpha: float, design: MonotoneDesign, cset: CumulantSet) -> float:
    """Standardized critical value q(alpha) = ((1/N) x_f(alpha) - kappa1)/sqrt(kappa2)
    where x_f(alpha) is the upper-alpha chi-square quantile."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    x = chi2_quantile(alpha, chi2_dof(design))
    return (x / design.N - cset.kappa1) / np.sqrt(cset.kappa2)
