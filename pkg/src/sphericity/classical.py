"""Large-sample chi-square expansions for -2 log lambda and the modified
statistic -2 rho log lambda, plus the accuracy/bias comparators used to
judge them against the standardized-cumulant approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cumulants import CumulantSet, cumulant_set
from .edgeworth import EdgeworthExpansion, chi2_dof, q_alpha, q_s_eval
from .errors import DomainError
from .model import MonotoneDesign
from .specfun import chi2_cdf, chi2_quantile


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Correction coefficients of the chi-square expansions.

    beta and gamma_coef drive the 1/N and 1/N^2 terms for -2 log lambda;
    rho and gamma_star are the Bartlett-type adjustment for
    -2 rho log lambda. f is the chi-square degrees of freedom, M = rho N.
    """

    beta: float
    gamma_coef: float
    rho: float
    gamma_star: float
    f: int
    M: float


def theorem1_coeffs(design: MonotoneDesign) -> AsymptoticCoefficients:
    """Expansion coefficients evaluated at tau1 = N1/N."""
    p1, p2, p, N = design.p1, design.p2, design.p, design.N
    tau1 = design.tau1
    w = p1 + tau1 * p2
    beta = (p1 * (2 * p1**2 + 9 * p1 + 11)
            + (p2 * (2 * p2**2 + 9 * p2 + 11) + 6 * p1 * p2 * (p + 3)) / tau1
            - 2 * (3 * p * p + 6 * p + 2) / w) / 24.0
    gamma_coef = (p1 * (p1 + 1) * (p1 + 2) * (p1 + 3)
                  + (p2 * (p2 + 1) * (p2 + 2) * (p2 + 3)
                     + 2 * p1 * p2 * ((p2 + 1) * (2 * p + p1 + 7)
                                      + 2 * (p1 + 1) * (p1 + 2))) / tau1**2
                  - 4 * p * (p + 1) * (p + 2) / w**2) / 48.0
    f = chi2_dof(design)
    rho = 1.0 - 4.0 * beta / ((p + 2) * (p - 1) * N)
    gamma_star = -2.0 * beta**2 / ((p + 2) * (p - 1)) + gamma_coef
    return AsymptoticCoefficients(beta, gamma_coef, rho, gamma_star, f, rho * N)


def cdf_expansion(x: float, design: MonotoneDesign, which: str = "lrt") -> float:
    """Truncated chi-square series for Pr(-2 log lambda <= x) ("lrt") or
    Pr(-2 rho log lambda <= x) ("modified"). Reported raw; the truncation
    can leave the unit interval when p is large relative to N.
    """
    if x < 0.0:
        raise DomainError(f"cdf_expansion requires x >= 0, got {x}")
    coef = theorem1_coeffs(design)
    f = coef.f
    g0 = chi2_cdf(x, f)
    if which == "lrt":
        N = design.N
        return (g0 + coef.beta / N * (chi2_cdf(x, f + 2) - g0)
                + coef.gamma_coef / N**2 * (chi2_cdf(x, f + 4) - g0))
    if which == "modified":
        return g0 + coef.gamma_star / coef.M**2 * (chi2_cdf(x, f + 4) - g0)
    raise DomainError(f"which must be 'lrt' or 'modified', got {which!r}")


def a_sys(alpha: float, design: MonotoneDesign) -> float:
    """Approximate Type I error rate from the chi-square series."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    x = chi2_quantile(alpha, chi2_dof(design))
    return 1.0 - cdf_expansion(x, design, "lrt")


def a_prop(
    alpha: float,
    design: MonotoneDesign,
    cset: CumulantSet | None = None,
    s: int = 2,
) -> float:
    """Approximate Type I error rate from the order-s standardized expansion."""
    if cset is None:
        cset = cumulant_set(design)
    exp = EdgeworthExpansion.from_cumulants(cset, s)
    return 1.0 - q_s_eval(exp, q_alpha(alpha, design, cset))


def biases(
    design: MonotoneDesign,
    alpha: float,
    alpha1_hat: float,
    cset: CumulantSet | None = None,
    s: int = 2,
) -> tuple[float, float]:
    """(B_prop, B_sys): empirical rejection rate minus each approximation."""
    if not 0.0 <= alpha1_hat <= 1.0:
        raise DomainError(f"alpha1_hat must lie in [0, 1], got {alpha1_hat}")
    return (alpha1_hat - a_prop(alpha, design, cset, s),
            alpha1_hat - a_sys(alpha, design))
