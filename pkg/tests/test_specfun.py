import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phrmt import specfun

# Frozen oracle values.  Each constant was produced by the matching routine
# in tests/oracles.py; the *_oracle_still_agrees tests guard the freeze.
K0_AT_1 = 0.42102443824070834  # quad_k0(1.0)
I0_AT_1 = 1.2660658777520084  # series_i0(1.0)
ERF_SQRTPI_HALF = 0.7899085945560628  # series_erf(sqrt(pi)/2)
GAMMA_32_PI4 = 0.29597361997538313  # quad_lower_gamma(1.5, pi/4)
HYP_CONST = 1.311123534366887  # rational_2f1(3/4, 5/4, 1, 1/4)


class TestBesselK0:
    def test_frozen_value(self):
        assert specfun.bessel_k0(1.0) == pytest.approx(K0_AT_1, rel=1e-12)

    def test_oracle_still_agrees(self):
        assert oracles.quad_k0(1.0) == pytest.approx(K0_AT_1, rel=1e-12)

    def test_small_argument_log_limit(self):
        # K0(x) + ln(x/2) + gamma_E -> 0 like x^2 ln x
        for x in (1e-4, 1e-6, 1e-8):
            drift = specfun.bessel_k0(x) + math.log(x / 2.0) + specfun.EULER_GAMMA
            assert abs(drift) < 10.0 * x * x * abs(math.log(x))

    def test_exponential_tail(self):
        assert specfun.bessel_k0(50.0) < 1e-20

    def test_against_quadrature_grid(self):
        for x in np.logspace(-8, math.log10(50.0), 100):
            mine = specfun.bessel_k0(float(x))
            ref = oracles.quad_k0(float(x))
            assert mine == pytest.approx(ref, rel=1e-12), f"x={x}"

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.bessel_k0(0.0)
        with pytest.raises(ValueError):
            specfun.bessel_k0(-1.0)


class TestBesselI0:
    def test_at_zero(self):
        assert specfun.bessel_i0(0.0) == 1.0

    def test_frozen_value(self):
        assert specfun.bessel_i0(1.0) == pytest.approx(I0_AT_1, rel=1e-13)

    def test_oracle_still_agrees(self):
        assert oracles.series_i0(1.0) == pytest.approx(I0_AT_1, rel=1e-14)

    def test_against_series_grid(self):
        for x in np.concatenate([[0.0], np.logspace(-8, math.log10(50.0), 100)]):
            assert specfun.bessel_i0(float(x)) == pytest.approx(
                oracles.series_i0(float(x)), rel=1e-12
            )

    @given(st.floats(min_value=0.0, max_value=50.0))
    def test_at_least_one(self, x):
        assert specfun.bessel_i0(x) >= 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.bessel_i0(-0.5)


class TestErf:
    def test_at_zero(self):
        assert specfun.erf(0.0) == 0.0

    @given(st.floats(min_value=-6.0, max_value=6.0))
    def test_odd(self, x):
        assert specfun.erf(-x) == -specfun.erf(x)

    def test_frozen_value(self):
        assert specfun.erf(math.sqrt(math.pi) / 2.0) == pytest.approx(
            ERF_SQRTPI_HALF, rel=1e-13
        )

    def test_oracle_still_agrees(self):
        assert oracles.series_erf(math.sqrt(math.pi) / 2.0) == pytest.approx(
            ERF_SQRTPI_HALF, rel=1e-14
        )

    def test_against_series_grid(self):
        # the float series oracle is trustworthy up to moderate |x|
        for x in np.linspace(1e-8, 3.0, 80):
            assert specfun.erf(float(x)) == pytest.approx(
                oracles.series_erf(float(x)), rel=1e-12
            )

    def test_tail_and_cf_branch(self):
        # continued-fraction branch: cross-check against the stdlib
        for x in (2.1, 3.0, 4.5, 6.0):
            assert specfun.erf(x) == pytest.approx(math.erf(x), rel=1e-13)
        assert specfun.erf(10.0) == pytest.approx(1.0, abs=1e-15)


class TestGamma:
    def test_integers_and_half(self):
        assert specfun.gamma_fn(1.0) == pytest.approx(1.0, rel=1e-13)
        assert specfun.gamma_fn(5.0) == pytest.approx(24.0, rel=1e-13)
        assert specfun.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)

    def test_against_stdlib_grid(self):
        for x in np.linspace(0.05, 60.0, 120):
            mine = math.log(specfun.gamma_fn(float(x)))
            assert mine == pytest.approx(math.lgamma(float(x)), abs=1e-12 * (1 + abs(mine)))

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.gamma_fn(0.0)


class TestLowerIncompleteGamma:
    def test_a_one_closed_form(self):
        for z in np.linspace(0.0, 10.0, 41):
            assert specfun.lower_incomplete_gamma(1.0, float(z)) == pytest.approx(
                -math.expm1(-float(z)), abs=1e-13
            )

    def test_empty_integral(self):
        assert specfun.lower_incomplete_gamma(2.5, 0.0) == 0.0

    def test_frozen_value(self):
        assert specfun.lower_incomplete_gamma(1.5, math.pi / 4.0) == pytest.approx(
            GAMMA_32_PI4, rel=1e-12
        )

    def test_oracle_still_agrees(self):
        assert oracles.quad_lower_gamma(1.5, math.pi / 4.0) == pytest.approx(
            GAMMA_32_PI4, rel=1e-12
        )

    def test_sum_rule_with_quadrature_remainder(self):
        # gamma(a, z) + upper remainder = Gamma(a)
        for a in (0.5, 1.0, 1.5, 2.5):
            total = specfun.gamma_fn(a)
            for z in np.linspace(0.0, 10.0, 11):
                lower = specfun.lower_incomplete_gamma(a, float(z))
                upper = oracles.quad_upper_gamma(a, float(z))
                assert lower + upper == pytest.approx(total, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.lower_incomplete_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            specfun.lower_incomplete_gamma(-1.0, 1.0)
        with pytest.raises(ValueError):
            specfun.lower_incomplete_gamma(1.0, -0.1)


class TestHyp2f1:
    def test_at_zero(self):
        assert specfun.hyp2f1_series(0.3, 1.7, 0.9, 0.0) == 1.0

    def test_log_closed_form(self):
        # 2F1(1, 1; 2; z) = -ln(1-z)/z
        z = 0.5
        assert specfun.hyp2f1_series(1.0, 1.0, 2.0, z) == pytest.approx(
            -math.log(1.0 - z) / z, rel=1e-14
        )

    def test_frozen_constant(self):
        assert specfun.hyp2f1_series(0.75, 1.25, 1.0, 0.25) == pytest.approx(
            HYP_CONST, rel=1e-14
        )

    def test_oracle_still_agrees(self):
        val = oracles.rational_2f1(
            Fraction(3, 4), Fraction(5, 4), Fraction(1), Fraction(1, 4), terms=50
        )
        assert val == pytest.approx(HYP_CONST, rel=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.hyp2f1_series(0.5, 0.5, 1.0, 1.0)
        with pytest.raises(ValueError):
            specfun.hyp2f1_series(0.5, 0.5, -2.0, 0.3)


class TestDft:
    def test_delta_to_constant(self):
        v = np.zeros(8)
        v[0] = 1.0
        assert np.allclose(specfun.dft(v), np.ones(8), atol=1e-14)

    def test_constant_to_delta(self):
        n = 7
        out = specfun.dft(np.full(n, 3.5))
        assert out[0] == pytest.approx(n * 3.5)
        assert np.max(np.abs(out[1:])) < 1e-12

    def test_1_2_3_per_term_oracle(self):
        out = specfun.dft([1.0, 2.0, 3.0])
        ref = oracles.dft_per_term([1.0, 2.0, 3.0])
        assert np.max(np.abs(out - ref)) < 1e-13
        assert out[0] == pytest.approx(6.0)
        assert out[1] == pytest.approx(-1.5 - 1j * math.sqrt(3) / 2)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=2, max_size=24
        )
    )
    def test_real_input_conjugate_symmetry(self, vals):
        out = specfun.dft(np.array(vals))
        n = len(vals)
        scale = max(1.0, float(np.max(np.abs(out))))
        for l in range(1, n):
            assert abs(out[l] - np.conj(out[(n - l) % n])) < 1e-12 * scale

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=1, max_size=24
        )
    )
    def test_parseval(self, vals):
        v = np.array(vals)
        out = specfun.dft(v)
        lhs = float(np.sum(np.abs(out) ** 2))
        rhs = v.size * float(np.sum(v * v))
        assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-9)

    def test_direct_and_fast_paths_agree(self):
        rng = np.random.default_rng(2024)
        for n in (65, 96, 100, 127, 128, 210, 256):
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            fast = specfun._dft_fast(v)
            direct = specfun._dft_direct(v)
            scale = float(np.max(np.abs(direct)))
            assert np.max(np.abs(fast - direct)) < 1e-10 * scale

    def test_against_numpy_fft(self):
        rng = np.random.default_rng(7)
        for n in (3, 22, 64, 100, 129):
            v = rng.normal(size=n)
            assert np.allclose(specfun.dft(v), n * np.fft.ifft(v), atol=1e-9)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            specfun.dft(np.array([]))
