"""Special-function layer: polygamma, incomplete gamma / chi-square,
Hermite polynomials, normal CDF. scipy is used only as a cross-check
oracle, never by the package itself.
"""

import math

import numpy as np
import pytest
import scipy.special
import scipy.stats

from sphericity.errors import DomainError, UnsupportedOrderError
from sphericity.quadrature import integrate_finite
from sphericity.specfun import (EULER_GAMMA, chi2_cdf, chi2_pdf, chi2_quantile,
                                hermite, normal_cdf, normal_cdf_pdf, normal_pdf,
                                polygamma, reg_gamma_p)


class TestPolygamma:
    def test_digamma_at_one(self):
        assert polygamma(0, 1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)

    def test_trigamma_at_one(self):
        assert polygamma(1, 1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-14)

    def test_trigamma_at_half(self):
        assert polygamma(1, 0.5) == pytest.approx(math.pi**2 / 2.0, rel=1e-14)

    def test_matches_scipy_grid(self):
        # half-integer arguments are the ones the cumulant formulas use
        args = [0.5, 1.0, 1.5, 2.5, 7.5, 19.5, 20.5, 57.0, 123.5, 2500.5]
        for s in range(0, 13):
            for a in args:
                ref = float(scipy.special.polygamma(s, a))
                got = polygamma(s, a)
                assert got == pytest.approx(ref, rel=1e-12, abs=1e-300), (s, a)

    def test_recurrence(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = float(rng.uniform(0.3, 50.0))
            s = int(rng.integers(0, 9))
            lhs = polygamma(s, a + 1.0) - polygamma(s, a)
            rhs = (-1.0) ** s * math.factorial(s) / a ** (s + 1)
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-13)

    def test_sign_and_monotonicity(self):
        # (-1)^(s-1) psi^(s) is completely monotone on (0, inf)
        for s in range(1, 9):
            vals = [(-1.0) ** (s - 1) * polygamma(s, a)
                    for a in (0.5, 1.0, 2.0, 5.0, 12.0, 40.0)]
            assert all(v > 0.0 for v in vals)
            assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            polygamma(-1, 1.0)
        with pytest.raises(DomainError):
            polygamma(2, 0.0)
        with pytest.raises(DomainError):
            polygamma(2, -3.0)
        with pytest.raises(UnsupportedOrderError):
            polygamma(13, 1.0)


class TestChiSquare:
    def test_published_percentiles(self):
        # classic table entries
        assert chi2_cdf(14.684, 9) == pytest.approx(0.900, abs=5e-4)
        assert chi2_cdf(16.919, 9) == pytest.approx(0.950, abs=5e-4)

    def test_exponential_special_case(self):
        assert chi2_cdf(2.0, 2) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-14)

    def test_against_scipy(self):
        for k in (1, 2, 3, 5, 9, 14, 27, 100):
            for x in (0.01, 0.5, 1.0, 3.0, 9.0, 25.0, 80.0, 300.0):
                assert chi2_cdf(x, k) == pytest.approx(
                    scipy.stats.chi2.cdf(x, k), rel=1e-12, abs=1e-15)

    def test_quantile_values(self):
        assert chi2_quantile(0.05, 9) == pytest.approx(16.919, abs=5e-3)
        assert chi2_quantile(0.01, 9) == pytest.approx(21.666, abs=5e-3)

    def test_quantile_roundtrip(self):
        for k in (1, 4, 9, 35, 200):
            for alpha in (0.10, 0.05, 0.01, 0.5, 0.9):
                x = chi2_quantile(alpha, k)
                assert chi2_cdf(x, k) == pytest.approx(1.0 - alpha, abs=1e-12)

    def test_quantile_monotone_in_alpha(self):
        qs = [chi2_quantile(a, 9) for a in (0.20, 0.10, 0.05, 0.01, 0.001)]
        assert all(x < y for x, y in zip(qs, qs[1:]))

    def test_pdf_is_cdf_derivative(self):
        h = 1e-6
        for k in (2, 9, 20):
            for x in (0.5, 4.0, 15.0):
                num = (chi2_cdf(x + h, k) - chi2_cdf(x - h, k)) / (2.0 * h)
                assert chi2_pdf(x, k) == pytest.approx(num, rel=1e-7)

    def test_reg_gamma_matches_scipy(self):
        for a in (0.3, 1.0, 4.5, 30.0):
            for x in (0.0, 0.2, 1.0, 5.0, 60.0):
                assert reg_gamma_p(a, x) == pytest.approx(
                    scipy.special.gammainc(a, x), rel=1e-12, abs=1e-15)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            chi2_cdf(-0.1, 3)
        with pytest.raises(DomainError):
            chi2_cdf(1.0, 0)
        with pytest.raises(DomainError):
            chi2_quantile(0.0, 3)
        with pytest.raises(DomainError):
            chi2_quantile(1.0, 3)
        with pytest.raises(DomainError):
            reg_gamma_p(-1.0, 2.0)


class TestHermite:
    def test_explicit_forms(self):
        xs = np.linspace(-4.0, 4.0, 17)
        np.testing.assert_allclose(hermite(2, xs), xs**2 - 1.0, rtol=1e-13)
        np.testing.assert_allclose(hermite(3, xs), xs**3 - 3.0 * xs, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(
            hermite(5, xs), xs**5 - 10.0 * xs**3 + 15.0 * xs, rtol=1e-12, atol=1e-11)

    def test_base_cases(self):
        assert hermite(0, 2.7) == 1.0
        assert hermite(1, 2.7) == 2.7
        assert isinstance(hermite(4, 1.5), float)

    def test_orthogonality_under_gaussian_weight(self):
        # int h_i h_j phi = delta_ij i! over the real line; the integrand
        # is shifted by phi so the relative stopping rule has a nonzero
        # target even when i != j
        for i in range(7):
            for j in range(i, 7):
                f = lambda x: (np.asarray(hermite(i, x)) * np.asarray(hermite(j, x)) + 1.0) * normal_pdf(x)
                val = integrate_finite(f, -12.0, 12.0, rel_tol=1e-11).value - 1.0
                expect = math.factorial(i) if i == j else 0.0
                assert val == pytest.approx(expect, abs=1e-8), (i, j)

    def test_order_limits(self):
        with pytest.raises(DomainError):
            hermite(-1, 0.0)
        with pytest.raises(UnsupportedOrderError):
            hermite(21, 0.0)


class TestNormal:
    def test_midpoint(self):
        c, d = normal_cdf_pdf(0.0)
        assert c == 0.5
        assert d == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-15)

    def test_symmetry(self):
        for x in (0.3, 1.0, 2.5, 6.0):
            assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-15)

    def test_known_quantile(self):
        assert normal_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-12)

    def test_array_broadcast(self):
        xs = np.array([-1.0, 0.0, 1.0])
        cdf = normal_cdf(xs)
        assert cdf.shape == xs.shape
        np.testing.assert_allclose(cdf, scipy.stats.norm.cdf(xs), rtol=1e-13)
        np.testing.assert_allclose(normal_pdf(xs), scipy.stats.norm.pdf(xs), rtol=1e-13)
