"""Closed-form SINR/INR bounds evaluated by numerical quadrature.

The coverage bound is an alternating binomial sum over Laplace functionals
of six thinned interferer sub-processes (LOS/NLOS x three antenna-gain
classes). All four interference integrals are functions of the threshold
and the summation index only; the density enters through the exponent
2*pi*lambda outside the integrals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import comb

from .channel import lemma1_constant, los_probability
from .curves import DistributionCurve
from .params import ParameterError, SystemParams

QUAD_RTOL = 1e-10
QUAD_LIMIT = 200


class QuadratureError(RuntimeError):
    """The adaptive integrator could not meet the error budget."""


@dataclass(frozen=True)
class InterferenceIntegrals:
    """The four Laplace-exponent integrals for one (threshold, index) pair.

    kappa_* apply when the desired link is LOS, xi_* when it is NLOS;
    the L/N suffix is the LOS state of the interfering sub-process.
    """

    kappa_los: float
    kappa_nlos: float
    xi_los: float
    xi_nlos: float

    def __post_init__(self):
        for v in (self.kappa_los, self.kappa_nlos, self.xi_los, self.xi_nlos):
            if not (math.isfinite(v) and v >= 0):
                raise ParameterError("interference integrals must be finite nonnegative")


@dataclass(frozen=True)
class ReceiverDistanceLaw:
    kind: str  # "fixed" | "uniform" | "rayleigh"
    mean: float  # m

    def __post_init__(self):
        if self.kind not in ("fixed", "uniform", "rayleigh"):
            raise ParameterError(f"unknown receiver distance law {self.kind!r}")
        if not (math.isfinite(self.mean) and self.mean > 0):
            raise ParameterError("law mean must be finite positive")


def _tail_series(U: float, alpha: float, n_h: int) -> float:
    """integral_U^inf [1 - (1 + u^-alpha)^-N] u du via the binomial series.

    Valid for U >= ~10 (terms shrink by ~U^-alpha each); requires alpha > 2
    for convergence of the leading term.
    """
    if alpha <= 2.0:
        raise QuadratureError(
            f"interference integral diverges for path-loss exponent {alpha} without blockage")
    total = 0.0
    for k in range(1, 12):
        term = ((-1.0) ** (k + 1) * comb(n_h + k - 1, k, exact=True)
                * U ** (2.0 - alpha * k) / (alpha * k - 2.0))
        total += term
        if abs(term) < 1e-16 * abs(total):
            break
    return total


@lru_cache(maxsize=256)
def _full_plane_constant(alpha: float, n_h: int) -> float:
    """integral_0^inf [1 - (1 + u^-alpha)^-N] u du (alpha > 2)."""

    def integrand(u):
        return -math.expm1(-n_h * math.log1p(u ** (-alpha))) * u

    val, err = integrate.quad(integrand, 0.0, 10.0, epsabs=1e-14, epsrel=QUAD_RTOL,
                              limit=QUAD_LIMIT)
    tail = _tail_series(10.0, alpha, n_h)
    if err > 1e-9 * (val + tail):
        raise QuadratureError("full-plane deficit constant did not converge")
    return val + tail


def _deficit_integral(c: float, alpha: float, n_h: int, beta: float, los_weight: bool) -> float:
    """integral_0^inf [1 - (1 + c/(N_h x^alpha))^-N_h] w(x) x dx

    with w(x) = exp(-beta x) for LOS thinning, 1 - exp(-beta x) for NLOS.
    Finite-interval adaptive quadrature up to a cutoff beyond which either
    the weight is negligible (LOS) or the weight is 1 and the integrand's
    binomial tail series applies (NLOS).
    """
    if c == 0.0:
        return 0.0
    if not los_weight and beta == 0.0:
        return 0.0
    # scale where the MGF deficit transitions from ~1 to ~0
    s = (c / n_h) ** (1.0 / alpha)
    if los_weight and beta == 0.0:
        # no blockage: the whole plane is LOS
        return _full_plane_constant(alpha, n_h) * s * s

    def integrand(x):
        # stable form of 1 - (1 + c/(N x^alpha))^-N
        deficit = -math.expm1(-n_h * math.log1p(c / (n_h * x ** alpha)))
        if los_weight:
            w = math.exp(-beta * x)
        else:
            w = -math.expm1(-beta * x)
        return deficit * w * x

    if los_weight:
        # weight < e^-45 beyond the cutoff, and the deficit factor is <= 1,
        # so the omitted tail is negligible relative to the value even when
        # the deficit scale s exceeds the cutoff
        cutoff = 45.0 / beta
        tail = 0.0
    else:
        cutoff = max(10.0 * s, 40.0 / beta)
        # weight == 1 to machine precision beyond the cutoff
        tail = s * s * _tail_series(cutoff / s, alpha, n_h)
    pts = [p for p in sorted({s, 1.0 / beta, 10.0 / beta}) if 0.0 < p < cutoff]
    val = 0.0
    err = 0.0
    lo = 0.0
    for hi in pts + [cutoff]:
        with warnings.catch_warnings():
            # the explicit error-budget check below replaces scipy's heuristic
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            v, e = integrate.quad(integrand, lo, hi, epsabs=1e-14,
                                  epsrel=QUAD_RTOL, limit=QUAD_LIMIT)
        val += v
        err += e
        lo = hi
    val += tail
    # the result is multiplied by 2 pi lambda < 0.1 before exponentiation, so
    # an absolute error of 1e-10 perturbs the coverage probability by < 1e-11
    if val > 0 and err > 1e-8 * val + 1e-10:
        raise QuadratureError(
            f"interference integral error {err:.3g} exceeds budget (value {val:.3g})")
    return val


@lru_cache(maxsize=65536)
def _integrals_cached(T: float, n: int, params: SystemParams) -> InterferenceIntegrals:
    a = lemma1_constant(params.fading_shape)
    gd = params.gain_distribution
    r = params.dipole_distance
    g0 = params.antenna.boresight_gain
    beta = params.blockage_rate
    n_h = params.fading_shape
    al, an = params.los_exponent, params.nlos_exponent

    def mixture(q_scale: float, alpha_x: float, los_weight: bool) -> float:
        total = 0.0
        for m_i, p_i in zip(gd.gains, gd.probs):
            if p_i == 0.0:
                continue
            c = n * T * q_scale * m_i / g0
            total += p_i * _deficit_integral(c, alpha_x, n_h, beta, los_weight)
        return total

    q_l = a * r ** al  # desired link LOS
    q_n = a * r ** an  # desired link NLOS
    return InterferenceIntegrals(
        kappa_los=mixture(q_l, al, True),
        kappa_nlos=mixture(q_l, an, False),
        xi_los=mixture(q_n, al, True),
        xi_nlos=mixture(q_n, an, False),
    )


def interference_integrals(T: float, n: int, params: SystemParams) -> InterferenceIntegrals:
    """The four interference integrals for threshold T (linear) and binomial
    index n. Density-independent by construction."""
    if T <= 0:
        raise ParameterError(f"threshold must be positive, got {T}")
    if not (1 <= n <= params.fading_shape):
        raise ParameterError(f"index n={n} outside 1..{params.fading_shape}")
    return _integrals_cached(float(T), int(n), params)


def _branch_sum(T: float, params: SystemParams, density: float, desired_los: bool) -> float:
    """Alternating binomial sum for one conditioning of the desired link."""
    n_h = params.fading_shape
    a = lemma1_constant(n_h)
    alpha0 = params.los_exponent if desired_los else params.nlos_exponent
    k_noise = a * params.dipole_distance ** alpha0 / (
        params.tx_power * params.antenna.boresight_gain * params.pathloss_intercept)
    total = 0.0
    for n in range(1, n_h + 1):
        ii = interference_integrals(T, n, params)
        if desired_los:
            lap = ii.kappa_los + ii.kappa_nlos
        else:
            lap = ii.xi_los + ii.xi_nlos
        term = math.exp(-n * k_noise * T * params.noise_power) * math.exp(-2.0 * math.pi * density * lap)
        total += comb(n_h, n, exact=True) * (-1.0) ** (n + 1) * term
    return total


def sinr_ccdf(T: float, params: SystemParams, conditioning: str = "overall",
              density: float | None = None, raw: bool = False) -> float:
    """Upper bound on P[SINR >= T] (T linear).

    `los_only` conditions the desired link on LOS (the interference field
    keeps its LOS/NLOS mixture); `overall` weights the two conditionals by
    the LOS probability at the dipole distance. Clamped to [0, 1] unless
    `raw` is set.
    """
    if T <= 0:
        raise ParameterError(f"threshold must be positive, got {T}")
    lam = params.effective_density if density is None else density
    if lam < 0:
        raise ParameterError("density must be nonnegative")
    if conditioning == "los_only":
        value = _branch_sum(T, params, lam, desired_los=True)
    elif conditioning == "nlos_only":
        value = _branch_sum(T, params, lam, desired_los=False)
    elif conditioning == "overall":
        p_los = los_probability(params.dipole_distance, params.blockage_rate)
        value = (p_los * _branch_sum(T, params, lam, desired_los=True)
                 + (1.0 - p_los) * _branch_sum(T, params, lam, desired_los=False))
    else:
        raise ParameterError(f"unknown conditioning {conditioning!r}")
    return value if raw else min(max(value, 0.0), 1.0)


def sinr_ccdf_random_r(T: float, params: SystemParams, law: ReceiverDistanceLaw,
                       conditioning: str = "overall", density: float | None = None) -> float:
    """Coverage bound averaged over a random dipole distance."""
    if law.kind == "fixed":
        return sinr_ccdf(T, params.replace(dipole_distance=law.mean), conditioning, density)

    def coverage(r):
        return sinr_ccdf(T, params.replace(dipole_distance=float(r)), conditioning, density)

    if law.kind == "uniform":
        # uniform on (0, 2 mean]
        hi = 2.0 * law.mean
        nodes, weights = np.polynomial.legendre.leggauss(80)
        rr = 0.5 * hi * (nodes + 1.0)
        vals = np.array([coverage(r) for r in rr])
        return float(np.dot(weights, vals) * 0.5)
    # rayleigh with the requested mean
    sigma = law.mean * math.sqrt(2.0 / math.pi)
    nodes, weights = np.polynomial.legendre.leggauss(96)
    hi = 8.0 * sigma
    rr = 0.5 * hi * (nodes + 1.0)
    dens = rr / sigma ** 2 * np.exp(-rr ** 2 / (2.0 * sigma ** 2))
    vals = np.array([coverage(r) for r in rr])
    return float(np.dot(weights, vals * dens) * 0.5 * hi)


@lru_cache(maxsize=65536)
def _zeta_cached(T: float, n: int, params: SystemParams) -> tuple[float, float]:
    a = lemma1_constant(params.inr_shape)
    gd = params.gain_distribution
    scale = a * n * params.tx_power * params.pathloss_intercept / (params.noise_power * T)
    zeta_l = 0.0
    zeta_n = 0.0
    for m_i, p_i in zip(gd.gains, gd.probs):
        if p_i == 0.0:
            continue
        zeta_l += p_i * _deficit_integral(scale * m_i, params.los_exponent,
                                          params.fading_shape, params.blockage_rate, True)
        zeta_n += p_i * _deficit_integral(scale * m_i, params.nlos_exponent,
                                          params.fading_shape, params.blockage_rate, False)
    return zeta_l, zeta_n


def inr_cdf(T: float, params: SystemParams, los_only: bool = False,
            density: float | None = None, raw: bool = False) -> float:
    """Upper bound on P[INR <= T] (T linear), via the delta-approximation
    of order `params.inr_shape`. `los_only` drops the NLOS interference."""
    if T <= 0:
        raise ParameterError(f"threshold must be positive, got {T}")
    lam = params.effective_density if density is None else density
    n_c = params.inr_shape
    total = 0.0
    for n in range(1, n_c + 1):
        zl, zn = _zeta_cached(float(T), n, params)
        lap = zl if los_only else zl + zn
        total += comb(n_c, n, exact=True) * (-1.0) ** (n + 1) * math.exp(-2.0 * math.pi * lam * lap)
    return total if raw else min(max(total, 0.0), 1.0)


def inr_cdf_los_only(T: float, params: SystemParams, density: float | None = None) -> float:
    return inr_cdf(T, params, los_only=True, density=density)


def ccdf_curve(params: SystemParams, thresholds_db, conditioning: str = "overall",
               density: float | None = None) -> DistributionCurve:
    """Evaluate the SINR coverage bound over a dB grid."""
    values = [sinr_ccdf(10.0 ** (t / 10.0), params, conditioning, density)
              for t in thresholds_db]
    return DistributionCurve(
        thresholds_db=tuple(float(t) for t in thresholds_db),
        values=tuple(values), kind="ccdf", source="analytic",
        conditioning=conditioning, metadata=params.snapshot())


def inr_curve(params: SystemParams, thresholds_db, los_only: bool = False,
              density: float | None = None) -> DistributionCurve:
    """Evaluate the INR bound over a dB grid."""
    values = [inr_cdf(10.0 ** (t / 10.0), params, los_only, density) for t in thresholds_db]
    return DistributionCurve(
        thresholds_db=tuple(float(t) for t in thresholds_db),
        values=tuple(values), kind="cdf", source="analytic",
        conditioning="los_only" if los_only else "overall",
        metadata=params.snapshot())
