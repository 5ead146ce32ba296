"""Link-level randomness: LOS law, gamma fading, received power, and the
normalized-gamma CDF bound used throughout the analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ParameterError, SystemParams


@dataclass(frozen=True)
class GammaFading:
    """Normalized gamma fading, shape k and scale 1/k (unit mean)."""

    shape: int

    def __post_init__(self):
        if not isinstance(self.shape, int) or self.shape < 1:
            raise ParameterError("fading shape must be an integer >= 1")

    def sample(self, rng: np.random.Generator, size=None):
        # exact law: numpy's gamma sampler, scale 1/k
        return rng.gamma(self.shape, 1.0 / self.shape, size=size)


@dataclass(frozen=True)
class LinkState:
    los: bool
    exponent: float
    gain: float
    fading: float

    def __post_init__(self):
        if not (math.isfinite(self.fading) and self.fading > 0):
            raise ParameterError("fading must be finite positive")


def los_probability(distance: float, rate: float) -> float:
    """P[LOS] = exp(-rate * distance)."""
    if distance < 0:
        raise ParameterError(f"distance must be nonnegative, got {distance}")
    if rate < 0:
        raise ParameterError(f"blockage rate must be nonnegative, got {rate}")
    return math.exp(-rate * distance)


def sample_link_state(distance: float, params: SystemParams, rng: np.random.Generator) -> LinkState:
    """Draw LOS flag, antenna gain, and fading for one interfering link."""
    if distance <= 0:
        raise ParameterError("link distance must be positive")
    los = rng.random() < los_probability(distance, params.blockage_rate)
    exponent = params.los_exponent if los else params.nlos_exponent
    gd = params.gain_distribution
    gain = gd.gains[rng.choice(3, p=gd.probs)]
    fading = GammaFading(params.fading_shape).sample(rng)
    return LinkState(los=los, exponent=exponent, gain=float(gain), fading=float(fading))


def received_power(tx_power: float, gain: float, fading: float, intercept: float,
                   distance: float, exponent: float) -> float:
    """Link-budget product P * G * h * A * d^-alpha, in watts."""
    return tx_power * gain * fading * intercept * distance ** (-exponent)


def lemma1_constant(k: int) -> float:
    """a = k * (k!)^(-1/k); (1 - e^(-a z))^k lower-bounds the normalized
    gamma CDF and is exact for k = 1."""
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"shape must be an integer >= 1, got {k}")
    return k * math.exp(-math.lgamma(k + 1) / k)


def gamma_mgf_term(eta: float, k: int) -> float:
    """E[e^(-eta h)] for h ~ Gamma(k, 1/k)."""
    if eta < 0:
        raise ParameterError(f"eta must be nonnegative, got {eta}")
    return (1.0 + eta / k) ** (-k)
