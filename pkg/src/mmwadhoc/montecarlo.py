"""Monte Carlo ground truth: full network realizations and empirical
SINR/INR distribution curves.

The typical receiver sits at the origin with its transmitter at the dipole
distance in a uniform random direction; interferers form a PPP in a disc
window. LOS states are either geometric (segment tests against a boolean
rectangle field) or abstract (independent Bernoulli draws from the
exponential LOS law the analytic bounds assume). Trials are reproducible
per (root_seed, trial_index) regardless of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import los_probability
from .curves import DistributionCurve
from .geometry import (
    BuildingField,
    MarkLaw,
    SimWindow,
    points_indoor,
    sample_buildings,
    segments_blocked,
    trial_rng,
)
from .params import ParameterError, SystemParams

# per-trial draw order is part of the determinism contract; see run_trial

DEFAULT_MARKS = (MarkLaw("fixed", 15.0), MarkLaw("fixed", 15.0))


class InsufficientSamplesError(RuntimeError):
    """Conditioned sampling could not meet its quota within the trial cap."""


@dataclass(frozen=True)
class TrialConfig:
    params: SystemParams
    window: SimWindow
    trials: int
    root_seed: int
    width_law: MarkLaw = DEFAULT_MARKS[0]
    length_law: MarkLaw = DEFAULT_MARKS[1]
    conditioning: str = "overall"  # "overall" | "los_only"
    los_mode: str = "geometric"  # "geometric" | "abstract"
    thinning: str = "effective"  # "effective" | "marks"

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("need at least one trial")
        if self.window.radius < 10.0 * self.params.dipole_distance:
            raise ParameterError("window radius must be at least 10 dipole distances")
        if self.conditioning not in ("overall", "los_only"):
            raise ParameterError(f"unknown conditioning {self.conditioning!r}")
        if self.los_mode not in ("geometric", "abstract"):
            raise ParameterError(f"unknown LOS mode {self.los_mode!r}")
        if self.thinning not in ("effective", "marks"):
            raise ParameterError(f"unknown thinning mode {self.thinning!r}")

    @property
    def building_density(self) -> float:
        """Rectangle-center intensity reproducing the blockage rate with the
        configured mark laws."""
        mean_sum = self.width_law.mean + self.length_law.mean
        return self.params.blockage_rate * math.pi / (2.0 * mean_sum)


@dataclass(frozen=True)
class TrialOutcome:
    sinr: float
    inr: float
    desired_los: bool
    interferer_count: int

    def __post_init__(self):
        for v in (self.sinr, self.inr):
            if not (math.isfinite(v) and v >= 0):
                raise ParameterError("SINR/INR must be finite nonnegative")


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled world, for inspection and debug dumps."""

    transmitter: tuple[float, float]
    interferers: np.ndarray  # (n, 2)
    buildings: BuildingField | None
    desired_los: bool
    interferer_los: np.ndarray  # (n,) boolean


def _sample_interferers(cfg: TrialConfig, rng: np.random.Generator) -> np.ndarray:
    """Interferer positions after Aloha/outdoor thinning.

    "effective" draws the pre-thinned PPP directly; "marks" draws the raw
    transmitter process and keeps each point w.p. p_tx * p_out. Both yield
    the same thinned PPP law.
    """
    p = cfg.params
    window = cfg.window
    if cfg.thinning == "effective":
        intensity = p.effective_density
        keep_prob = None
    else:
        intensity = p.raw_density
        keep_prob = p.aloha_prob * p.outdoor_prob
    n = rng.poisson(intensity * window.area)
    radii = window.radius * np.sqrt(rng.random(n))
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    pts = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    if keep_prob is not None:
        pts = pts[rng.random(n) < keep_prob]
    return pts


def _sample_outdoor_buildings(cfg: TrialConfig, rng: np.random.Generator) -> BuildingField:
    """Building field conditioned on the origin (the typical receiver, the
    reference endpoint of every link) being outdoors."""
    origin = np.zeros((1, 2))
    for _ in range(1000):
        fld = sample_buildings(cfg.building_density, cfg.width_law, cfg.length_law,
                               cfg.window, rng)
        if not points_indoor(origin, fld)[0]:
            return fld
    raise ParameterError("could not place the receiver outdoors; building field too dense")


def _sample_realization(cfg: TrialConfig, rng: np.random.Generator) -> NetworkRealization:
    p = cfg.params
    # fixed draw order: buildings, tx direction, interferers, LOS, gains, fading
    buildings = None
    if cfg.los_mode == "geometric" and p.blockage_rate > 0:
        buildings = _sample_outdoor_buildings(cfg, rng)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    tx = (p.dipole_distance * math.cos(phi), p.dipole_distance * math.sin(phi))
    interferers = _sample_interferers(cfg, rng)
    n = len(interferers)
    if buildings is not None:
        ends = np.vstack((np.array(tx)[None, :], interferers))
        blocked = segments_blocked(np.zeros((n + 1, 2)), ends, buildings)
        desired_los = not bool(blocked[0])
        interferer_los = ~blocked[1:]
    elif p.blockage_rate > 0:
        desired_los = bool(rng.random() < los_probability(p.dipole_distance, p.blockage_rate))
        dists = np.hypot(interferers[:, 0], interferers[:, 1])
        interferer_los = rng.random(n) < np.exp(-p.blockage_rate * dists)
    else:
        desired_los = True
        interferer_los = np.ones(n, dtype=bool)
    return NetworkRealization(transmitter=tx, interferers=interferers,
                              buildings=buildings, desired_los=desired_los,
                              interferer_los=interferer_los)


def _outcome_from_realization(cfg: TrialConfig, world: NetworkRealization,
                              rng: np.random.Generator) -> TrialOutcome:
    p = cfg.params
    gd = p.gain_distribution
    n = len(world.interferers)
    gains = rng.choice(np.array(gd.gains), size=n, p=np.array(gd.probs))
    fading = rng.gamma(p.fading_shape, 1.0 / p.fading_shape, size=n)
    h0 = rng.gamma(p.fading_shape, 1.0 / p.fading_shape)
    dists = np.hypot(world.interferers[:, 0], world.interferers[:, 1])
    exponents = np.where(world.interferer_los, p.los_exponent, p.nlos_exponent)
    interference = float(np.sum(
        p.tx_power * gains * fading * p.pathloss_intercept * dists ** (-exponents)))
    alpha0 = p.los_exponent if world.desired_los else p.nlos_exponent
    signal = (p.tx_power * p.antenna.boresight_gain * h0 * p.pathloss_intercept
              * p.dipole_distance ** (-alpha0))
    return TrialOutcome(
        sinr=signal / (p.noise_power + interference),
        inr=interference / p.noise_power,
        desired_los=world.desired_los,
        interferer_count=n,
    )


def run_trial(cfg: TrialConfig, trial_index: int) -> TrialOutcome:
    """One independent network realization; deterministic in
    (cfg.root_seed, trial_index)."""
    rng = trial_rng(cfg.root_seed, trial_index)
    world = _sample_realization(cfg, rng)
    return _outcome_from_realization(cfg, world, rng)


def sample_realization(cfg: TrialConfig, trial_index: int) -> NetworkRealization:
    """The sampled world of a trial, without the SINR reduction."""
    return _sample_realization(cfg, trial_rng(cfg.root_seed, trial_index))


def _wilson_stderr(successes: np.ndarray, n: int) -> np.ndarray:
    """Wilson-adjusted standard error of a binomial proportion (z = 1)."""
    center = (successes + 0.5) / (n + 1.0)
    return np.sqrt(center * (1.0 - center) / (n + 1.0))


def collect_outcomes(cfg: TrialConfig, workers: int = 1) -> list[TrialOutcome]:
    """cfg.trials outcomes honoring the conditioning; `los_only` rejects
    trials with a blocked desired link, capped at 100x the quota.

    Results are ordered by trial index, so the worker count never changes
    the output."""
    if cfg.conditioning == "overall":
        if workers > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(lambda i: run_trial(cfg, i), range(cfg.trials)))
        return [run_trial(cfg, i) for i in range(cfg.trials)]
    outcomes: list[TrialOutcome] = []
    cap = 100 * cfg.trials
    attempts = 0
    while len(outcomes) < cfg.trials and attempts < cap:
        out = run_trial(cfg, attempts)
        attempts += 1
        if out.desired_los:
            outcomes.append(out)
    if len(outcomes) < cfg.trials:
        raise InsufficientSamplesError(
            f"LOS acceptance {len(outcomes)}/{attempts} below quota {cfg.trials}")
    return outcomes


def empirical_curve(cfg: TrialConfig, thresholds_db, statistic: str = "sinr_ccdf",
                    outcomes: list[TrialOutcome] | None = None,
                    workers: int = 1) -> DistributionCurve:
    """Empirical CCDF of SINR or CDF of INR over a dB grid, with Wilson
    standard errors per point."""
    if statistic not in ("sinr_ccdf", "inr_cdf"):
        raise ParameterError(f"unknown statistic {statistic!r}")
    if cfg.trials < 100:
        raise ParameterError("need at least 100 trials for a curve")
    if outcomes is None:
        outcomes = collect_outcomes(cfg, workers=workers)
    thresholds = np.asarray([10.0 ** (t / 10.0) for t in thresholds_db])
    if statistic == "sinr_ccdf":
        samples = np.array([o.sinr for o in outcomes])
        counts = (samples[None, :] >= thresholds[:, None]).sum(axis=1)
        kind = "ccdf"
    else:
        samples = np.array([o.inr for o in outcomes])
        counts = (samples[None, :] <= thresholds[:, None]).sum(axis=1)
        kind = "cdf"
    n = len(outcomes)
    values = counts / n
    stderr = _wilson_stderr(counts.astype(float), n)
    meta = dict(cfg.params.snapshot(), trials=n, root_seed=cfg.root_seed,
                los_mode=cfg.los_mode, window_radius=cfg.window.radius)
    return DistributionCurve(
        thresholds_db=tuple(float(t) for t in thresholds_db),
        values=tuple(values.tolist()), kind=kind, source="empirical",
        conditioning=cfg.conditioning, stderr=tuple(stderr.tolist()),
        metadata=meta)


def empirical_los_validation(cfg: TrialConfig, distances=(10, 25, 50, 100, 150, 200),
                             trials_per_distance: int = 100_000) -> dict:
    """Empirical LOS fraction of the boolean rectangle field against the
    exponential law, per distance; reports the max absolute deviation."""
    from .geometry import empirical_los_probability

    rows = []
    for i, d in enumerate(distances):
        emp = empirical_los_probability(
            float(d), cfg.building_density, cfg.width_law, cfg.length_law,
            trials_per_distance, trial_rng(cfg.root_seed, i))
        law = los_probability(float(d), cfg.params.blockage_rate)
        rows.append({"distance": float(d), "empirical": emp, "law": law,
                     "deviation": emp - law})
    return {
        "rows": rows,
        "max_abs_deviation": max(abs(r["deviation"]) for r in rows),
        "trials_per_distance": trials_per_distance,
    }
