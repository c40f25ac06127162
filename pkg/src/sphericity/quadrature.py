"""Adaptive numerical integration.

Two entry points: `integrate_finite` (globally adaptive Gauss-Kronrod
7/15 on a finite interval) and `integrate_semi_infinite` (doubling
panels on [a, inf) with an analytic tail estimate). Integrands must be
vectorized: they receive an ndarray of abscissae and return an ndarray
of values, side-effect free.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, NonConvergenceError

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self) -> None:
        if self.abs_error_estimate < 0.0:
            raise ValueError("error estimate must be non-negative")


# Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the embedded 7-point
# Gauss rule uses the odd-indexed nodes.
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 ascending
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f: Integrand, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _NODES), dtype=float)
    i15 = half * float(_W15 @ fx)
    i7 = half * float(_W7 @ fx)
    # QUADPACK-style rescaling of the raw 7/15 difference
    resabs = half * float(_W15 @ np.abs(fx))
    diff = abs(i15 - i7)
    if resabs > 0.0 and diff > 0.0:
        err = resabs * min(1.0, (200.0 * diff / resabs) ** 1.5)
    else:
        err = diff
    return i15, err


_MAX_DEPTH = 30
_INITIAL_PANELS = 16


def integrate_finite(f: Integrand, a: float, b: float, rel_tol: float = 1e-9) -> QuadratureResult:
    """Integrate f over [a, b] by globally adaptive bisection.

    Raises NonConvergenceError when an interval would be bisected past
    depth 30 without meeting the tolerance.
    """
    if a > b:
        raise ValueError(f"integrate_finite requires a <= b, got {a} > {b}")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_finite requires finite endpoints")

    evals = 0
    heap: list[tuple[float, int, float, float, float, int]] = []
    edges = np.linspace(a, b, _INITIAL_PANELS + 1)
    counter = 0
    total = 0.0
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(f, lo, hi)
        evals += 15
        total += val
        total_err += err
        heapq.heappush(heap, (-err, counter, lo, hi, val, 0))
        counter += 1

    while total_err > rel_tol * max(abs(total), 1e-300) + 1e-300:
        neg_err, _, lo, hi, val, depth = heapq.heappop(heap)
        if depth >= _MAX_DEPTH:
            raise NonConvergenceError(
                f"adaptive quadrature exceeded depth {_MAX_DEPTH} on [{lo}, {hi}]"
            )
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evals += 30
        total += (v1 + v2) - val
        total_err += (e1 + e2) - (-neg_err)
        heapq.heappush(heap, (-e1, counter, lo, mid, v1, depth + 1))
        counter += 1
        heapq.heappush(heap, (-e2, counter, mid, hi, v2, depth + 1))
        counter += 1

    return QuadratureResult(total, total_err, evals)


_MAX_PANELS = 200
_DIVERGENCE_RUN = 8


def integrate_semi_infinite(
    f: Integrand,
    a: float,
    rel_tol: float = 1e-9,
    tail_exponent_hint: float | None = None,
) -> QuadratureResult:
    """Integrate f over [a, inf) for integrands with eventual monotone decay.

    The ray is covered by panels of doubling width. Iteration stops once
    a panel contributes less than rel_tol times the accumulated value;
    an analytic tail estimate is then added. With a hint q (> 1) the
    tail is modeled as f(T) T/(q-1) for decay ~ t^(-q); without a hint a
    geometric extrapolation of the panel contributions is used.

    Raises DivergenceError when panel contributions fail to decrease
    over 8 consecutive doublings.
    """
    if not math.isfinite(a) or a < 0.0:
        raise ValueError(f"integrate_semi_infinite requires finite a >= 0, got {a}")

    total = 0.0
    total_err = 0.0
    evals = 0
    lo = a
    width = max(a, 1.0)
    prev_contrib = math.inf
    non_decreasing = 0
    contribs: list[float] = []

    for _ in range(_MAX_PANELS):
        hi = lo + width
        res = integrate_finite(f, lo, hi, rel_tol)
        evals += res.evaluations
        total += res.value
        total_err += res.abs_error_estimate
        contrib = abs(res.value)
        contribs.append(contrib)

        if contrib >= prev_contrib and contrib > 0.0:
            non_decreasing += 1
            if non_decreasing >= _DIVERGENCE_RUN:
                raise DivergenceError(
                    "panel contributions kept growing; integral appears divergent"
                )
        else:
            non_decreasing = 0
        prev_contrib = contrib

        if contrib <= rel_tol * max(abs(total), 1e-300) and len(contribs) >= 2:
            lo = hi
            break
        lo = hi
        width *= 2.0
    else:
        raise NonConvergenceError("semi-infinite panel sweep did not terminate")

    tail = _tail_estimate(f, lo, tail_exponent_hint, contribs)
    evals += 1
    total += tail
    total_err += abs(tail)
    return QuadratureResult(total, total_err, evals)


def _tail_estimate(
    f: Integrand,
    t_end: float,
    hint: float | None,
    contribs: list[float],
) -> float:
    f_end = float(np.asarray(f(np.array([t_end])), dtype=float)[0])
    if hint is not None and hint > 1.0:
        return f_end * t_end / (hint - 1.0)
    # geometric extrapolation of the doubling-panel contributions
    if len(contribs) >= 2 and contribs[-2] > 0.0:
        r = contribs[-1] / contribs[-2]
        if r < 1.0:
            sign = math.copysign(1.0, f_end) if f_end != 0.0 else 1.0
            return sign * contribs[-1] * r / (1.0 - r)
    return 0.0
