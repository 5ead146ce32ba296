"""Model parameters, unit conversions, and named presets.

All internal arithmetic is linear-scale (watts, linear gains). dB values
appear only at I/O boundaries; converter helpers live here.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 2.99792458e8  # m/s


class ParameterError(ValueError):
    """Raised when a model parameter violates its range constraint."""


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0:
        raise ParameterError(f"cannot convert non-positive value {value} to dB")
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class AntennaPattern:
    """Sectored beam: constant mainlobe gain over the beamwidth, constant
    sidelobe gain elsewhere."""

    beamwidth: float  # radians, in (0, pi)
    mainlobe_gain: float  # linear
    sidelobe_gain: float  # linear

    def __post_init__(self):
        if not (0.0 < self.beamwidth < math.pi):
            raise ParameterError(f"beamwidth must be in (0, pi), got {self.beamwidth}")
        if self.sidelobe_gain <= 0:
            raise ParameterError("sidelobe gain must be positive")
        if self.mainlobe_gain < self.sidelobe_gain:
            raise ParameterError("mainlobe gain must be >= sidelobe gain")

    @property
    def boresight_gain(self) -> float:
        """Gain of a perfectly aligned link (both mainlobes)."""
        return self.mainlobe_gain * self.mainlobe_gain


@dataclass(frozen=True)
class GainDistribution:
    """3-point law of the random interferer antenna gain (GG, Gg, gg)."""

    gains: tuple[float, float, float]
    probs: tuple[float, float, float]

    def __post_init__(self):
        if len(self.gains) != 3 or len(self.probs) != 3:
            raise ParameterError("gain distribution needs exactly three atoms")
        if abs(sum(self.probs) - 1.0) > 1e-12:
            raise ParameterError(f"probabilities sum to {sum(self.probs)}, not 1")
        if any(p < 0 or p > 1 for p in self.probs):
            raise ParameterError("probabilities must lie in [0, 1]")
        if not (self.gains[0] >= self.gains[1] >= self.gains[2]):
            raise ParameterError("gains must be ordered GG >= Gg >= gg")

    @property
    def mean(self) -> float:
        return sum(g * p for g, p in zip(self.gains, self.probs))


def effective_density(raw_density: float, aloha_prob: float, outdoor_prob: float) -> float:
    """Density of nodes that are actually transmitting and outdoors."""
    if raw_density <= 0:
        raise ParameterError(f"raw density must be positive, got {raw_density}")
    for name, p in (("aloha_prob", aloha_prob), ("outdoor_prob", outdoor_prob)):
        if not (0.0 <= p <= 1.0):
            raise ParameterError(f"{name} must be in [0, 1], got {p}")
    return aloha_prob * outdoor_prob * raw_density


def gain_distribution(pattern: AntennaPattern) -> GainDistribution:
    """Discrete gain law induced by independent uniform beam directions."""
    th = pattern.beamwidth / math.pi
    G, g = pattern.mainlobe_gain, pattern.sidelobe_gain
    p_gg_main = th * th
    p_mixed = 2.0 * th * (1.0 - th)
    p_side = (1.0 - th) ** 2
    return GainDistribution(
        gains=(G * G, G * g, g * g),
        probs=(p_gg_main, p_mixed, p_side),
    )


def blockage_rate(building_density: float, mean_width: float, mean_length: float) -> float:
    """Exponential LOS-law rate of a boolean rectangle field."""
    for name, v in (
        ("building_density", building_density),
        ("mean_width", mean_width),
        ("mean_length", mean_length),
    ):
        if v < 0:
            raise ParameterError(f"{name} must be nonnegative, got {v}")
    return 2.0 * building_density * (mean_width + mean_length) / math.pi


def pathloss_intercept_db(wavelength: float, ref_distance: float = 1.0) -> float:
    """Free-space loss at the reference distance, in dB."""
    if wavelength <= 0:
        raise ParameterError(f"wavelength must be positive, got {wavelength}")
    return 20.0 * math.log10(2.0 * math.pi * ref_distance / wavelength)


def pathloss_intercept(wavelength: float, ref_distance: float = 1.0) -> float:
    """Linear-scale attenuation factor used multiplicatively in the link budget."""
    return db_to_linear(-pathloss_intercept_db(wavelength, ref_distance))


@dataclass(frozen=True)
class SystemParams:
    """All scalar model parameters. Immutable after validation."""

    raw_density: float  # transmitters per m^2
    aloha_prob: float
    outdoor_prob: float
    dipole_distance: float  # m
    tx_power: float  # W
    pathloss_intercept: float  # linear attenuation factor
    noise_power: float  # W
    los_exponent: float
    nlos_exponent: float
    fading_shape: int
    blockage_rate: float  # per meter
    antenna: AntennaPattern
    inr_shape: int = 20  # delta-approximation order for the INR bound

    def __post_init__(self):
        if self.dipole_distance <= 0:
            raise ParameterError("dipole distance must be positive")
        if self.tx_power <= 0:
            raise ParameterError("transmit power must be positive")
        if self.pathloss_intercept <= 0:
            raise ParameterError("path-loss intercept must be positive")
        if self.noise_power <= 0:
            raise ParameterError("noise power must be positive")
        if self.los_exponent < 2:
            raise ParameterError("LOS exponent must be >= 2")
        if self.nlos_exponent < self.los_exponent:
            raise ParameterError("NLOS exponent must be >= LOS exponent")
        if not isinstance(self.fading_shape, int) or self.fading_shape < 1:
            raise ParameterError("fading shape must be an integer >= 1")
        if not isinstance(self.inr_shape, int) or self.inr_shape < 1:
            raise ParameterError("INR shape must be an integer >= 1")
        if self.blockage_rate < 0:
            raise ParameterError("blockage rate must be nonnegative")
        # triggers range validation of the density inputs
        effective_density(self.raw_density, self.aloha_prob, self.outdoor_prob)

    @property
    def effective_density(self) -> float:
        return effective_density(self.raw_density, self.aloha_prob, self.outdoor_prob)

    @property
    def gain_distribution(self) -> GainDistribution:
        return gain_distribution(self.antenna)

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)

    def snapshot(self) -> dict:
        """Flat dict of all scalars, for manifests and curve metadata."""
        return {
            "raw_density": self.raw_density,
            "aloha_prob": self.aloha_prob,
            "outdoor_prob": self.outdoor_prob,
            "effective_density": self.effective_density,
            "dipole_distance": self.dipole_distance,
            "tx_power": self.tx_power,
            "pathloss_intercept": self.pathloss_intercept,
            "noise_power": self.noise_power,
            "los_exponent": self.los_exponent,
            "nlos_exponent": self.nlos_exponent,
            "fading_shape": self.fading_shape,
            "blockage_rate": self.blockage_rate,
            "beamwidth": self.antenna.beamwidth,
            "mainlobe_gain": self.antenna.mainlobe_gain,
            "sidelobe_gain": self.antenna.sidelobe_gain,
            "inr_shape": self.inr_shape,
        }


# --- presets ---------------------------------------------------------------

# The mmWave intercept is a direct preset input (the measurement campaigns
# behind the model cover 28-73 GHz and no single carrier is pinned). The
# value below is an effective intercept, absorbing front-end losses on top
# of free-space loss at 1 m; it reproduces the reported noise-limited
# fraction P[INR < 0 dB] = 0.4 of the sparse 30-degree network.
MMWAVE_INTERCEPT_DB = -69.2
MMWAVE_INTERCEPT = db_to_linear(MMWAVE_INTERCEPT_DB)

# thermal noise over 500 MHz at room temperature, -117 dBW
MMWAVE_NOISE = db_to_linear(-117.0)

# boolean building field reproducing a blockage rate of 0.008/m with fixed
# 15 m x 15 m footprints
BUILDING_MEAN_WIDTH = 15.0
BUILDING_MEAN_LENGTH = 15.0
BUILDING_DENSITY = 0.008 * math.pi / (2.0 * (BUILDING_MEAN_WIDTH + BUILDING_MEAN_LENGTH))

MMWAVE_ANTENNA = AntennaPattern(beamwidth=math.pi / 6, mainlobe_gain=10.0, sidelobe_gain=0.1)

# system bandwidths used by the rate studies (Hz); not part of SystemParams
PRESET_BANDWIDTH = {
    "table1_sparse": 500e6,
    "table1_dense": 500e6,
    "table1_nh7": 500e6,
    "uhf_50mhz": 50e6,
}


def _table1(density: float, fading_shape: int, dipole_distance: float) -> SystemParams:
    return SystemParams(
        raw_density=density,
        aloha_prob=1.0,
        outdoor_prob=1.0,
        dipole_distance=dipole_distance,
        tx_power=1.0,
        pathloss_intercept=MMWAVE_INTERCEPT,
        noise_power=MMWAVE_NOISE,
        los_exponent=2.0,
        nlos_exponent=4.0,
        fading_shape=fading_shape,
        blockage_rate=0.008,
        antenna=MMWAVE_ANTENNA,
    )


def preset(name: str, dipole_distance: float = 25.0) -> SystemParams:
    """Named parameter sets.

    The reference table lists a fading shape of 7, but the plotted analytical
    curves were computed with shape 3; the default presets use 3 and
    ``table1_nh7`` carries the table value verbatim.
    """
    if name == "table1_sparse":
        return _table1(5e-5, 3, dipole_distance)
    if name == "table1_dense":
        return _table1(5e-4, 3, dipole_distance)
    if name == "table1_nh7":
        return _table1(5e-5, 7, dipole_distance)
    if name == "uhf_50mhz":
        return SystemParams(
            raw_density=5e-5,
            aloha_prob=1.0,
            outdoor_prob=1.0,
            dipole_distance=dipole_distance,
            tx_power=1.0,
            pathloss_intercept=db_to_linear(-40.4),
            noise_power=db_to_linear(-127.0),
            los_exponent=2.09,
            nlos_exponent=3.75,
            fading_shape=3,
            blockage_rate=0.008,
            # constant aperture across carriers: unit gain on both sides
            antenna=AntennaPattern(beamwidth=math.pi / 6, mainlobe_gain=1.0, sidelobe_gain=1.0),
        )
    raise ParameterError(f"unknown preset {name!r}")


PRESET_NAMES = ("table1_sparse", "table1_dense", "table1_nh7", "uhf_50mhz")
