"""Likelihood-ratio sphericity test for two-step monotone incomplete
multivariate-normal samples, with a high-dimensional distribution
approximation, computable error bounds, classical chi-square expansions,
and a seeded Monte Carlo harness.
"""

from .bounds import BoundReport, minimize_bounds
from .classical import (AsymptoticCoefficients, a_prop, a_sys, biases,
                        cdf_expansion, theorem1_coeffs)
from .cumulants import (CumulantSet, GammaTable, big_B, cumulant_set,
                        gamma_table, lemma1_b)
from .edgeworth import (EdgeworthExpansion, chi2_dof, phi_ts, q_alpha,
                        q_s_clamped, q_s_derivative, q_s_eval)
from .errors import (DivergenceError, DomainError, NonConvergenceError,
                     OverflowRangeError, SingularMatrixError, SphericityError,
                     UnsupportedOrderError)
from .mc import ExperimentPlan, ExperimentResult, run_mae, run_type1
from .model import (MonotoneDesign, MonotoneSample, WishartSummary, WMatrices,
                    compute_w, lr_lambda, null_moment, read_sample_csv,
                    sample_raw, sample_summary, write_sample_csv)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
