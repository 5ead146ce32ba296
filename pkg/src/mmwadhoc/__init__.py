"""Performance bounds for millimeter-wave ad hoc networks.

Analytic SINR/INR distribution bounds, transmission capacity, and area
spectral efficiency for Poisson dipole networks with blockage-induced
LOS/NLOS propagation and sectored antennas, cross-validated by a Monte
Carlo simulator of the same network model.
"""

from .analytic import (
    DistributionCurve,
    InterferenceIntegrals,
    QuadratureError,
    ReceiverDistanceLaw,
    ccdf_curve,
    inr_cdf,
    inr_cdf_los_only,
    inr_curve,
    interference_integrals,
    sinr_ccdf,
    sinr_ccdf_random_r,
)
from .capacity import (
    AseResult,
    CapacityResult,
    TwoWayConfig,
    area_spectral_efficiency,
    bisection_capacity,
    optimal_density,
    optimize_bandwidth_allocation,
    rate_coverage,
    transmission_capacity,
    twoway_ase,
    twoway_bisection_capacity,
    twoway_coverage,
    twoway_thresholds,
    twoway_transmission_capacity,
)
from .channel import (
    GammaFading,
    LinkState,
    gamma_mgf_term,
    lemma1_constant,
    los_probability,
    received_power,
    sample_link_state,
)
from .geometry import (
    Building,
    BuildingField,
    MarkLaw,
    SimWindow,
    derive_seed,
    empirical_los_probability,
    is_los,
    sample_buildings,
    sample_ppp,
    segments_blocked,
    trial_rng,
)
from .montecarlo import (
    InsufficientSamplesError,
    NetworkRealization,
    TrialConfig,
    TrialOutcome,
    collect_outcomes,
    empirical_curve,
    empirical_los_validation,
    run_trial,
    sample_realization,
)
from .params import (
    AntennaPattern,
    GainDistribution,
    ParameterError,
    SystemParams,
    blockage_rate,
    db_to_linear,
    effective_density,
    gain_distribution,
    linear_to_db,
    pathloss_intercept,
    pathloss_intercept_db,
    preset,
)

__version__ = "0.1.0"
