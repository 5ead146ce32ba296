import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gammainc, gammaincc

from mmwadhoc.channel import (
    GammaFading,
    gamma_mgf_term,
    lemma1_constant,
    los_probability,
    received_power,
    sample_link_state,
)
from mmwadhoc.params import ParameterError, preset


class TestLosProbability:
    def test_zero_distance(self):
        assert los_probability(0.0, 0.5) == 1.0

    def test_reference_value(self):
        assert los_probability(25.0, 0.008) == pytest.approx(0.81873, abs=1e-5)

    def test_zero_rate(self):
        assert los_probability(1234.0, 0.0) == 1.0

    def test_rejects_negatives(self):
        with pytest.raises(ParameterError):
            los_probability(-1.0, 0.008)
        with pytest.raises(ParameterError):
            los_probability(1.0, -0.008)


class TestLemma1Constant:
    def test_shape_one_is_unity(self):
        assert lemma1_constant(1) == pytest.approx(1.0, abs=1e-15)

    def test_reference_values(self):
        assert lemma1_constant(3) == pytest.approx(3 * 6 ** (-1 / 3), rel=1e-12)
        assert lemma1_constant(3) == pytest.approx(1.65096, abs=1e-5)
        assert lemma1_constant(7) == pytest.approx(2.07114, abs=2e-4)

    def test_rejects_bad_shape(self):
        with pytest.raises(ParameterError):
            lemma1_constant(0)
        with pytest.raises(ParameterError):
            lemma1_constant(2.5)


def _bound_margin(k: int, z: np.ndarray) -> np.ndarray:
    """Strictness margin of the normalized-gamma CDF bound, evaluated in
    whichever of the CDF / tail domains float64 resolves."""
    a = lemma1_constant(k)
    lower = (1.0 - np.exp(-a * z)) ** k
    exact = gammainc(k, k * z)
    lower_tail = sum(math.comb(k, n) * (-1.0) ** (n + 1) * np.exp(-n * a * z)
                     for n in range(1, k + 1))
    exact_tail = gammaincc(k, k * z)
    return np.maximum(exact - lower, lower_tail - exact_tail)


class TestLemma1Bound:
    def test_equality_for_shape_one(self):
        z = np.logspace(-3, 2, 50)
        assert np.max(np.abs((1 - np.exp(-z)) - gammainc(1, z))) < 1e-12

    @pytest.mark.parametrize("k", range(2, 11))
    def test_strict_for_higher_shapes(self, k):
        z = np.logspace(-3, 2, 50)
        assert np.all(_bound_margin(k, z) > 0)


class TestGammaMgf:
    def test_zero_argument(self):
        assert gamma_mgf_term(0.0, 3) == 1.0

    def test_exponential_case(self):
        assert gamma_mgf_term(1.0, 1) == 0.5

    def test_large_shape_limit(self):
        assert gamma_mgf_term(1.0, 256) == pytest.approx(math.exp(-1.0), rel=2e-3)

    @given(st.floats(1e-6, 50.0), st.integers(1, 50))
    @settings(max_examples=60)
    def test_decreasing_in_eta_and_in_k(self, eta, k):
        # (1 + eta/k)^-k decreases toward e^-eta as the shape grows
        v = gamma_mgf_term(eta, k)
        assert gamma_mgf_term(eta * 1.5, k) < v
        assert gamma_mgf_term(eta, k + 1) < v
        assert gamma_mgf_term(eta, k) > math.exp(-eta)

    def test_rejects_negative_eta(self):
        with pytest.raises(ParameterError):
            gamma_mgf_term(-0.1, 3)


class TestSampling:
    def test_fading_moments(self):
        rng = np.random.default_rng(3)
        h = GammaFading(3).sample(rng, size=100_000)
        assert np.mean(h) == pytest.approx(1.0, abs=3 * np.std(h) / math.sqrt(len(h)))
        assert np.var(h) == pytest.approx(1 / 3, rel=0.05)

    def test_link_state_statistics(self):
        p = preset("table1_sparse")
        rng = np.random.default_rng(11)
        n = 100_000
        states = [sample_link_state(25.0, p, rng) for _ in range(n)]
        los_frac = np.mean([s.los for s in states])
        se = math.sqrt(0.8187 * (1 - 0.8187) / n)
        assert los_frac == pytest.approx(math.exp(-0.2), abs=3 * se)
        p_gg = np.mean([s.gain == 100.0 for s in states])
        se = math.sqrt((1 / 36) * (35 / 36) / n)
        assert p_gg == pytest.approx(1 / 36, abs=3 * se)
        fade = np.array([s.fading for s in states])
        assert np.mean(fade) == pytest.approx(1.0, abs=3 * np.std(fade) / math.sqrt(n))

    def test_no_blockage_always_los(self):
        p = preset("table1_sparse").replace(blockage_rate=0.0)
        rng = np.random.default_rng(0)
        assert all(sample_link_state(100.0, p, rng).los for _ in range(200))
        assert sample_link_state(100.0, p, rng).exponent == p.los_exponent


class TestReceivedPower:
    def test_unit_distance(self):
        assert received_power(1.0, 100.0, 1.0, 1.0, 1.0, 2.0) == 100.0

    def test_reference_budget(self):
        val = received_power(1.0, 100.0, 1.0, 2.902e-6, 25.0, 2.0)
        assert val == pytest.approx(4.643e-7, rel=1e-3)

    def test_inverse_square_scaling(self):
        p1 = received_power(1.0, 1.0, 1.0, 1.0, 10.0, 2.0)
        p2 = received_power(1.0, 1.0, 1.0, 1.0, 20.0, 2.0)
        assert p1 / p2 == pytest.approx(4.0)
