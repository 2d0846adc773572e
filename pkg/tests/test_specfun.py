import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavityspec import specfun as sf
from cavityspec.errors import DomainError


def direct_series(a, b, x):
    """1F1 at 50 digits from mpmath (independent oracle)."""
    with mpmath.workdps(50):
        return float(mpmath.hyp1f1(a, b, x))


def hermite_h(n, x):
    """Physicists' Hermite polynomial from H_{k+1} = 2x H_k - 2k H_{k-1}."""
    h_prev, h = 1.0, 2.0 * x
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def evaluate(row):
    f = row["function"]
    x = float(row["x"])
    p1 = float(row["p1"]) if row["p1"] else None
    p2 = float(row["p2"]) if row["p2"] else None
    if f == "ln_gamma":
        return sf.ln_gamma(x)
    if f == "kummer_m":
        return sf.kummer_m(p1, p2, x)
    if f == "kummer_m_regularized":
        return sf.kummer_m_regularized(p1, p2, x)
    if f == "pcf_d":
        return sf.pcf_d(p1, x)
    if f == "bessel_j":
        return sf.bessel_j(int(p1), x)
    if f == "bessel_i_scaled":
        return sf.bessel_i_scaled(int(p1), x)
    raise AssertionError(f)


@pytest.mark.parametrize(
    "function", ["ln_gamma", "kummer_m", "kummer_m_regularized", "pcf_d", "bessel_j", "bessel_i_scaled"]
)
def test_golden_values(golden, function):
    rows = [r for r in golden if r["function"] == function]
    assert rows
    bad = []
    for row in rows:
        got = float(evaluate(row))
        want, tol = float(row["expected"]), float(row["abs_tol"])
        if not abs(got - want) <= tol:
            bad.append((row["p1"], row["p2"], row["x"], got, want))
    assert not bad, bad[:5]


class TestLnGamma:
    def test_examples(self):
        assert sf.ln_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert sf.ln_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-12)
        assert sf.ln_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-12)

    @pytest.mark.parametrize("pole", [0.0, -1.0, -7.0])
    def test_poles_rejected(self, pole):
        with pytest.raises(DomainError, match="pole"):
            sf.ln_gamma(pole)

    def test_sign_channel(self):
        assert sf.gamma_sign(-0.5) == -1
        assert sf.gamma_sign(-1.5) == 1
        assert sf.gamma_sign(2.5) == 1
        assert sf.rgamma(-3.0) == 0.0
        assert sf.rgamma(0.5) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)


class TestKummer:
    @pytest.mark.parametrize("a,b", [(0.3, 1.0), (-2.5, 0.5), (7.0, 3.0)])
    def test_zero_argument(self, a, b):
        assert sf.kummer_m(a, b, 0.0) == 1.0

    @pytest.mark.parametrize("x", [-3.0, 0.25, 1.0, 17.0])
    def test_terminating_series(self, x):
        assert sf.kummer_m(-1.0, 1.0, x) == pytest.approx(1.0 - x, abs=1e-14)
        assert sf.kummer_m_regularized(-1.0, 1.0, x) == pytest.approx(1.0 - x, abs=1e-14)

    def test_regularized_examples(self):
        assert sf.kummer_m_regularized(0.7, 2.0, 0.0) == pytest.approx(1.0, abs=1e-15)
        # 1/Gamma(0) kills the k = 0 term; M~(1, 0, x) = x e^x.
        for x in (0.5, 2.5, 6.0):
            assert sf.kummer_m_regularized(1.0, 0.0, x) == pytest.approx(x * math.exp(x), rel=1e-13)

    def test_half_argument_against_oracle(self):
        assert sf.kummer_m(0.5, 1.5, -1.0) == pytest.approx(direct_series(0.5, 1.5, -1.0), rel=1e-13)

    def test_pole_in_b_rejected(self):
        with pytest.raises(DomainError):
            sf.kummer_m(1.0, -2.0, 1.0)

    def test_vectorized_matches_scalar(self):
        x = np.linspace(-5, 30, 37)
        vec = sf.kummer_m(-1.3, 2.5, x)
        assert vec.shape == x.shape
        for xi, vi in zip(x, vec):
            assert vi == pytest.approx(sf.kummer_m(-1.3, 2.5, float(xi)), rel=1e-13)

    @pytest.mark.criterion(9, "property suites")
    def test_kummer_transformation(self):
        worst = 0.0
        for a in (-3.0, -1.5, 0.5, 2.0):
            for b in (1.0, 2.0, 3.5):
                for x in np.linspace(0.0, 10.0, 41):
                    left = sf.kummer_m(a, b, float(x))
                    right = math.exp(x) * direct_series(b - a, b, -float(x))
                    worst = max(worst, abs(left - right) / max(abs(left), 1e-300))
        assert worst <= 1e-8

    def test_strong_cancellation_stays_relative(self):
        # Terms reach ~1e7 times the value; the fixed-point path keeps 1e-10.
        want = direct_series(-12.3, 3.5, 12.0)
        assert sf.kummer_m(-12.3, 3.5, 12.0) == pytest.approx(want, rel=1e-10)

    def test_scaled_form_consistent(self):
        mant, scale = sf.kummer_m_scaled(2.0, 1.5, 900.0)
        assert math.isfinite(mant) and scale > 0
        ratio = sf.kummer_m_scaled(2.0, 1.5, 901.0)
        # M(a, b, x) ~ e^x x^{a-b} Gamma(b)/Gamma(a) for large x.
        lhs = math.log(ratio[0]) + ratio[1] - math.log(mant) - scale
        assert lhs == pytest.approx(1.0 + 0.5 * math.log(901.0 / 900.0), abs=1e-3)

    def test_term_scale_bounds_value(self):
        for a, b, x in [(-4.5, 1.0, 20.0), (3.0, 0.5, 5.0), (-0.5, 1.5, -8.0)]:
            assert sf.kummer_term_scale(a, b, x) >= abs(sf.kummer_m(a, b, x)) * (1 - 1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(-8.0, 8.0),
        b=st.floats(0.25, 6.0),
        x=st.floats(-12.0, 12.0),
    )
    def test_matches_high_precision_oracle(self, a, b, x):
        want = direct_series(a, b, x)
        scale = sf.kummer_term_scale(a, b, x)
        got = sf.kummer_m(a, b, x)
        assert abs(got - want) <= 1e-10 * abs(want) + 1e-15 * scale


class TestBudget:
    def test_invariants(self):
        with pytest.raises(DomainError):
            sf.AccuracyBudget(rel_tol=1e-3)
        with pytest.raises(DomainError):
            sf.AccuracyBudget(max_terms=50)
        assert "kummer_m" in sf.AccuracyBudget().domains


class TestParabolicCylinder:
    def test_examples(self):
        assert sf.pcf_d(0.0, 1.0) == pytest.approx(math.exp(-0.25), rel=1e-12)
        assert sf.pcf_d(1.0, 2.0) == pytest.approx(2.0 * math.exp(-1.0), rel=1e-12)

    @pytest.mark.parametrize("nu", [-2.5, -0.9, 0.0, 0.3, 1.0, 2.0, 4.7])
    def test_origin_value(self, nu):
        want = 2 ** (nu / 2) * math.sqrt(math.pi) * sf.rgamma((1 - nu) / 2)
        assert sf.pcf_d(nu, 0.0) == pytest.approx(want, rel=1e-12, abs=1e-15)

    @pytest.mark.criterion(9, "property suites")
    def test_recurrence(self):
        worst = 0.0
        for nu in np.linspace(-0.9, 5.0, 60):
            for z in np.linspace(-5.0, 5.0, 81):
                d = sf.pcf_d(nu, z)
                r = sf.pcf_d(nu + 1.0, z) - z * d + nu * sf.pcf_d(nu - 1.0, z)
                worst = max(worst, abs(r) / max(1.0, abs(d)))
        assert worst <= 1e-8

    @pytest.mark.criterion(9, "property suites")
    def test_integer_order_hermite_reduction(self):
        worst = 0.0
        for n in range(6):
            for x in np.linspace(-3.0, 3.0, 61):
                want = 2.0 ** (-n / 2) * math.exp(-x * x / 2) * hermite_h(n, x)
                worst = max(worst, abs(sf.pcf_d(float(n), math.sqrt(2.0) * x) - want))
        assert worst <= 1e-9

    def test_continuous_across_integer_order(self):
        for nu in (0.0, 1.0, 2.0, -1.0):
            left = sf.pcf_d(nu - 1e-9, 2.3)
            right = sf.pcf_d(nu + 1e-9, 2.3)
            assert abs(left - right) <= 1e-7 * max(1.0, abs(left))

    @pytest.mark.parametrize("nu,z", [(31.0, 1.0), (-10.5, 1.0), (1.0, 20.5)])
    def test_domain(self, nu, z):
        with pytest.raises(DomainError):
            sf.pcf_d(nu, z)


class TestBessel:
    def test_examples(self):
        assert sf.bessel_j(0, 0.0) == 1.0
        assert sf.bessel_j(1, 0.0) == 0.0
        assert abs(sf.bessel_j(0, 2.404825557695773)) <= 1e-10
        assert sf.bessel_i(0, 0.0) == 1.0
        assert sf.bessel_i(1, 0.0) == 0.0
        assert sf.bessel_i(0, 1.0) == pytest.approx(1.2660658777520082, rel=1e-10)

    def test_minus_one_order(self):
        x = np.linspace(0.0, 40.0, 81)
        np.testing.assert_array_equal(sf.bessel_j(-1, x), -sf.bessel_j(1, x))
        np.testing.assert_array_equal(sf.bessel_i(-1, x), sf.bessel_i(1, x))

    @pytest.mark.criterion(9, "property suites")
    def test_recurrence(self):
        x = np.linspace(0.1, 30.0, 300)
        worst = 0.0
        for m in range(1, 11):
            jm = sf.bessel_j(m, x)
            r = sf.bessel_j(m - 1, x) + sf.bessel_j(m + 1, x) - (2 * m / x) * jm
            worst = max(worst, float(np.max(np.abs(r) / np.maximum(1.0, np.abs(jm)))))
        assert worst <= 1e-9

    def test_modified_monotone(self):
        x = np.linspace(1e-3, 300.0, 3000)
        for m in range(0, 6):
            log_i = np.log(sf.bessel_i_scaled(m, x)) + x
            assert np.all(np.diff(log_i) > 0)

    def test_scaled_consistent_with_unscaled(self):
        x = np.array([0.5, 3.0, 20.0, 100.0])
        np.testing.assert_allclose(sf.bessel_i(2, x), sf.bessel_i_scaled(2, x) * np.exp(x), rtol=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_j(0, -1.0)
        with pytest.raises(DomainError):
            sf.bessel_j(-2, 1.0)
        with pytest.raises(DomainError):
            sf.bessel_i(0, 301.0)
