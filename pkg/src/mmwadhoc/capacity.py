"""Density and rate metrics built on the coverage bound: transmission
capacity via a quadratic Taylor solve, area spectral efficiency, optimal
density, rate coverage, and the two-way (FDD) suite with its quartic solve
and bandwidth-allocation optimizer.

The Taylor step replaces each Laplace factor e^-x (x = 2 pi lambda Theta)
with the upper bound 1 - x + x^2/2, turning the coverage equation
P_c(lambda) = 1 - eps into a polynomial in the density. Every root is
validated against the full (non-Taylor) bound; roots that leave the
small-x regime or miss the target coverage are flagged invalid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import comb

from .analytic import interference_integrals, sinr_ccdf
from .channel import lemma1_constant, los_probability
from .params import ParameterError, SystemParams

# density search ceiling for the bisection oracle, per m^2
DENSITY_CEILING = 1e-2
# residual tolerance on |coverage(root) - (1 - eps)|
RESIDUAL_TOL = 0.02


@dataclass(frozen=True)
class CapacityResult:
    density: float  # lambda_eps, per m^2
    valid: bool
    residual: float
    roots: tuple[float, ...]  # positive real candidates, ascending

    def __post_init__(self):
        if self.density < 0:
            raise ParameterError("capacity density must be nonnegative")


@dataclass(frozen=True)
class TwoWayConfig:
    total_bandwidth: float  # Hz
    forward_fraction: float  # in (0, 1)
    forward_rate: float  # bits/s
    reverse_rate: float  # bits/s

    def __post_init__(self):
        if self.total_bandwidth <= 0:
            raise ParameterError("total bandwidth must be positive")
        if not (0.0 < self.forward_fraction < 1.0):
            raise ParameterError("forward fraction must be strictly inside (0, 1)")
        if self.forward_rate <= 0 or self.reverse_rate <= 0:
            raise ParameterError("rates must be positive")


@dataclass(frozen=True)
class AseResult:
    ase: float  # bits/s/Hz/m^2
    density: float
    thresholds: tuple[float, ...]

    def __post_init__(self):
        if self.ase < 0:
            raise ParameterError("ASE must be nonnegative")


def _branch_terms(T: float, params: SystemParams, desired_los: bool):
    """Per-n (binomial coefficient * noise factor, Laplace slope Theta)."""
    n_h = params.fading_shape
    a = lemma1_constant(n_h)
    alpha0 = params.los_exponent if desired_los else params.nlos_exponent
    k_noise = a * params.dipole_distance ** alpha0 / (
        params.tx_power * params.antenna.boresight_gain * params.pathloss_intercept)
    terms = []
    for n in range(1, n_h + 1):
        ii = interference_integrals(T, n, params)
        theta = (ii.kappa_los + ii.kappa_nlos) if desired_los else (ii.xi_los + ii.xi_nlos)
        weight = (comb(n_h, n, exact=True) * (-1.0) ** (n + 1)
                  * math.exp(-n * k_noise * T * params.noise_power))
        terms.append((weight, theta))
    return terms


def _coverage_poly(T: float, params: SystemParams, conditioning: str):
    """Quadratic Taylor coefficients (c0, c1, c2) of the coverage bound in
    the density, plus the largest Laplace slope 2*pi*Theta (for the
    small-argument validity check)."""
    if conditioning == "los_only":
        branches = [(1.0, True)]
    elif conditioning == "nlos_only":
        branches = [(1.0, False)]
    elif conditioning == "overall":
        p_los = los_probability(params.dipole_distance, params.blockage_rate)
        branches = [(p_los, True), (1.0 - p_los, False)]
    else:
        raise ParameterError(f"unknown conditioning {conditioning!r}")
    c0 = c1 = c2 = 0.0
    slope_max = 0.0
    for w_b, desired_los in branches:
        if w_b == 0.0:
            continue
        for weight, theta in _branch_terms(T, params, desired_los):
            x = 2.0 * math.pi * theta
            slope_max = max(slope_max, x)
            c0 += w_b * weight
            c1 += w_b * weight * (-x)
            c2 += w_b * weight * (x * x / 2.0)
    return (c0, c1, c2), slope_max


def _positive_real_roots(coeffs_desc) -> list[float]:
    roots = np.roots(coeffs_desc)
    out = [float(z.real) for z in roots
           if abs(z.imag) <= 1e-9 * max(1.0, abs(z.real)) and z.real > 0.0]
    return sorted(out)


def _capacity_from_poly(poly, slope_max, eps, coverage_fn) -> CapacityResult:
    """Shared root selection + full-bound validation."""
    c = list(poly)  # ascending coefficients; c[0] is the lambda=0 coverage
    target = 1.0 - eps
    if c[0] < target:
        # even an interference-free network misses the outage constraint
        return CapacityResult(density=0.0, valid=False,
                              residual=abs(coverage_fn(0.0) - target), roots=())
    c[0] -= target
    roots = _positive_real_roots(list(reversed(c)))
    for root in roots:
        if slope_max * root > 1.0:
            continue  # outside the small-argument Taylor regime
        residual = abs(coverage_fn(root) - target)
        return CapacityResult(density=root, valid=residual <= RESIDUAL_TOL,
                              residual=residual, roots=tuple(roots))
    return CapacityResult(density=0.0, valid=False, residual=abs(c[0]),
                          roots=tuple(roots))


def transmission_capacity(T: float, eps: float, params: SystemParams,
                          conditioning: str = "overall") -> CapacityResult:
    """Largest density meeting P[SINR >= T] = 1 - eps, from the quadratic
    Taylor expansion of the coverage bound (T linear)."""
    if not (0.0 < eps < 1.0):
        raise ParameterError(f"outage eps must be in (0, 1), got {eps}")
    if T <= 0:
        raise ParameterError(f"threshold must be positive, got {T}")
    poly, slope_max = _coverage_poly(T, params, conditioning)

    def coverage(lam):
        return sinr_ccdf(T, params, conditioning, density=lam)

    return _capacity_from_poly(poly, slope_max, eps, coverage)


def bisection_capacity(T: float, eps: float, params: SystemParams,
                       conditioning: str = "overall",
                       ceiling: float = DENSITY_CEILING) -> float:
    """Independent oracle: monotone bisection of the full coverage bound
    over the density."""
    if not (0.0 < eps < 1.0):
        raise ParameterError(f"outage eps must be in (0, 1), got {eps}")
    target = 1.0 - eps

    def gap(lam):
        return sinr_ccdf(T, params, conditioning, density=lam) - target

    if gap(0.0) < 0.0:
        return 0.0
    if gap(ceiling) > 0.0:
        return ceiling
    return float(brentq(gap, 0.0, ceiling, xtol=1e-16, rtol=1e-12))


def area_spectral_efficiency(density: float, T: float, eps: float) -> AseResult:
    """density * log2(1 + T) * (1 - eps), bits/s/Hz/m^2."""
    if density < 0 or T < 0:
        raise ParameterError("density and threshold must be nonnegative")
    if not (0.0 < eps < 1.0):
        raise ParameterError(f"outage eps must be in (0, 1), got {eps}")
    return AseResult(ase=density * math.log2(1.0 + T) * (1.0 - eps),
                     density=density, thresholds=(T,))


def optimal_density(eps: float, r: float, params: SystemParams,
                    conditioning: str = "overall",
                    grid_db=None) -> tuple[float, float]:
    """Density and threshold maximizing ASE over a dB threshold grid with
    local refinement. Returns (lambda*, T* linear)."""
    p = params.replace(dipole_distance=r)
    if grid_db is None:
        grid_db = np.arange(-10.0, 30.5, 1.0)
    grid_db = np.asarray(grid_db, dtype=float)

    def ase_at(t_db):
        T = 10.0 ** (t_db / 10.0)
        res = transmission_capacity(T, eps, p, conditioning)
        return area_spectral_efficiency(res.density, T, eps).ase

    values = [ase_at(t) for t in grid_db]
    i = int(np.argmax(values))
    if values[i] == 0.0:
        return 0.0, 10.0 ** (grid_db[0] / 10.0)
    lo = grid_db[max(i - 1, 0)]
    hi = grid_db[min(i + 1, len(grid_db) - 1)]
    # golden-section refinement on the dB axis
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    x1 = b - gr * (b - a)
    x2 = a + gr * (b - a)
    f1, f2 = ase_at(x1), ase_at(x2)
    for _ in range(40):
        if b - a < 1e-3:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + gr * (b - a)
            f2 = ase_at(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - gr * (b - a)
            f1 = ase_at(x1)
    t_db = (a + b) / 2.0
    T = 10.0 ** (t_db / 10.0)
    res = transmission_capacity(T, eps, p, conditioning)
    return res.density, T


def rate_coverage(rate: float, bandwidth: float, params: SystemParams,
                  conditioning: str = "overall") -> float:
    """P[rate achievable] = coverage at threshold 2^(R/W) - 1."""
    if rate <= 0 or bandwidth <= 0:
        raise ParameterError("rate and bandwidth must be positive")
    T = 2.0 ** (rate / bandwidth) - 1.0
    return sinr_ccdf(T, params, conditioning)


# --- two-way (FDD) suite ----------------------------------------------------

def twoway_thresholds(cfg: TwoWayConfig) -> tuple[float, float]:
    """Forward/reverse SINR thresholds induced by the bandwidth split."""
    b_f = cfg.forward_fraction * cfg.total_bandwidth
    b_r = (1.0 - cfg.forward_fraction) * cfg.total_bandwidth
    return (2.0 ** (cfg.forward_rate / b_f) - 1.0,
            2.0 ** (cfg.reverse_rate / b_r) - 1.0)


def twoway_coverage(T_f: float, T_r: float, params: SystemParams,
                    conditioning: str = "overall") -> float:
    """Product lower bound on both directions succeeding (the forward and
    reverse links share the dipole geometry)."""
    if T_f <= 0 or T_r <= 0:
        raise ParameterError("thresholds must be positive")
    return (sinr_ccdf(T_f, params, conditioning)
            * sinr_ccdf(T_r, params, conditioning))


def _twoway_coverage_at(T_f, T_r, params, conditioning, lam):
    return (sinr_ccdf(T_f, params, conditioning, density=lam)
            * sinr_ccdf(T_r, params, conditioning, density=lam))


def twoway_transmission_capacity(T_f: float, T_r: float, eps: float,
                                 params: SystemParams,
                                 conditioning: str = "overall") -> CapacityResult:
    """Largest density with product coverage 1 - eps: the two per-direction
    quadratics multiply into a quartic in the density."""
    if not (0.0 < eps < 1.0):
        raise ParameterError(f"outage eps must be in (0, 1), got {eps}")
    pf, slope_f = _coverage_poly(T_f, params, conditioning)
    pr, slope_r = _coverage_poly(T_r, params, conditioning)
    quartic = np.polynomial.polynomial.polymul(pf, pr)
    slope_max = max(slope_f, slope_r)

    def coverage(lam):
        return _twoway_coverage_at(T_f, T_r, params, conditioning, lam)

    return _capacity_from_poly(tuple(quartic), slope_max, eps, coverage)


def twoway_bisection_capacity(T_f: float, T_r: float, eps: float,
                              params: SystemParams,
                              conditioning: str = "overall",
                              ceiling: float = DENSITY_CEILING) -> float:
    """Bisection oracle on the full product bound."""
    target = 1.0 - eps

    def gap(lam):
        return _twoway_coverage_at(T_f, T_r, params, conditioning, lam) - target

    if gap(0.0) < 0.0:
        return 0.0
    if gap(ceiling) > 0.0:
        return ceiling
    return float(brentq(gap, 0.0, ceiling, xtol=1e-16, rtol=1e-12))


def twoway_ase(density: float, cfg: TwoWayConfig, eps: float) -> float:
    """density * (R_F + R_R)/B_total * (1 - eps), bits/s/Hz/m^2."""
    if density < 0:
        raise ParameterError("density must be nonnegative")
    if not (0.0 < eps < 1.0):
        raise ParameterError(f"outage eps must be in (0, 1), got {eps}")
    return density * (cfg.forward_rate + cfg.reverse_rate) / cfg.total_bandwidth * (1.0 - eps)


def optimize_bandwidth_allocation(total_bandwidth: float, forward_rate: float,
                                  reverse_rate: float, eps: float,
                                  params: SystemParams,
                                  conditioning: str = "overall",
                                  grid=None) -> tuple[float, float]:
    """Forward-bandwidth fraction maximizing the two-way capacity.

    Coarse grid over f in {0.05, ..., 0.95}, then a finer pass around the
    best point. Returns (f*, lambda at f*)."""

    def cap_at(f):
        cfg = TwoWayConfig(total_bandwidth=total_bandwidth, forward_fraction=f,
                           forward_rate=forward_rate, reverse_rate=reverse_rate)
        tf, tr = twoway_thresholds(cfg)
        return twoway_transmission_capacity(tf, tr, eps, params, conditioning).density

    if grid is None:
        grid = np.arange(0.05, 0.951, 0.05)
    grid = np.asarray(grid, dtype=float)
    caps = [cap_at(f) for f in grid]
    i = int(np.argmax(caps))
    step = grid[1] - grid[0] if len(grid) > 1 else 0.05
    lo = max(grid[i] - step, 1e-3)
    hi = min(grid[i] + step, 1.0 - 1e-3)
    fine = np.linspace(lo, hi, 21)
    fine_caps = [cap_at(f) for f in fine]
    j = int(np.argmax(fine_caps))
    if fine_caps[j] <= caps[i]:
        return float(grid[i]), float(caps[i])
    return float(fine[j]), float(fine_caps[j])
