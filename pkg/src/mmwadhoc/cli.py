"""Scenario runner: loads TOML study configs or presets, executes named
studies, and writes CSV artifacts with a JSON run manifest.

All CLI-surface values are dB (keys suffixed `_db`) or SI; everything is
converted to linear scale once at the boundary. Outputs are deterministic
under a fixed seed; wall time lives only in the manifest.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # stdlib from 3.11; same API
    import tomli as tomllib

import numpy as np

from . import __version__
from .analytic import ReceiverDistanceLaw, ccdf_curve, inr_curve, sinr_ccdf_random_r
from .capacity import (
    TwoWayConfig,
    area_spectral_efficiency,
    optimal_density,
    transmission_capacity,
    twoway_ase,
    twoway_thresholds,
    twoway_transmission_capacity,
)
from .curves import DistributionCurve, write_curve_csv
from .geometry import MarkLaw, SimWindow
from .montecarlo import TrialConfig, empirical_curve, empirical_los_validation, sample_realization
from .params import (
    PRESET_BANDWIDTH,
    PRESET_NAMES,
    AntennaPattern,
    ParameterError,
    SystemParams,
    db_to_linear,
    preset,
)

STUDY_KINDS = ("sinr_curves", "inr_curves", "txcap_sweep", "ase_sweep",
               "rate_coverage", "twoway_allocation", "mc_validation")


class ConfigError(ValueError):
    """A study config failed validation; message names the offending field."""


@dataclass
class Study:
    name: str
    kind: str
    output: str
    seed: int
    params: SystemParams
    grid: dict = field(default_factory=dict)
    montecarlo: dict = field(default_factory=dict)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MMWADHOC_THREADS", "1")))
    except ValueError:
        return 1


def _parse_grid_values(spec, field_name: str) -> list[float]:
    """A grid is either an explicit list or {start, stop, count}."""
    if isinstance(spec, list):
        vals = [float(v) for v in spec]
        if not vals:
            raise ConfigError(f"grid.{field_name} must not be empty")
        return vals
    if isinstance(spec, dict):
        missing = {"start", "stop", "count"} - spec.keys()
        if missing:
            raise ConfigError(f"grid.{field_name} missing {sorted(missing)}")
        count = int(spec["count"])
        if count < 1:
            raise ConfigError(f"grid.{field_name}.count must be >= 1")
        return [float(v) for v in np.linspace(spec["start"], spec["stop"], count)]
    raise ConfigError(f"grid.{field_name} must be a list or a start/stop/count table")


def _build_params(doc: dict) -> SystemParams:
    base = None
    if "preset" in doc:
        name = doc["preset"]
        if name not in PRESET_NAMES:
            raise ConfigError(f"preset must be one of {PRESET_NAMES}, got {name!r}")
        base = preset(name)
    overrides = doc.get("params", {})
    if base is None and not overrides:
        raise ConfigError("config needs a `preset` or a [params] table")
    antenna_doc = overrides.pop("antenna", None)
    changes = {}
    for key, value in overrides.items():
        if key.endswith("_db"):
            changes[key[:-3]] = db_to_linear(float(value))
        elif key in ("fading_shape", "inr_shape"):
            changes[key] = int(value)
        else:
            changes[key] = float(value)
    antenna = base.antenna if base is not None else None
    if antenna_doc is not None:
        try:
            antenna = AntennaPattern(
                beamwidth=math.radians(float(antenna_doc["beamwidth_deg"])),
                mainlobe_gain=db_to_linear(float(antenna_doc["mainlobe_gain_db"])),
                sidelobe_gain=db_to_linear(float(antenna_doc["sidelobe_gain_db"])),
            )
        except KeyError as exc:
            raise ConfigError(f"params.antenna missing key {exc.args[0]!r}") from None
    try:
        if base is not None:
            if antenna is not None:
                changes["antenna"] = antenna
            return base.replace(**changes) if changes else base
        if antenna is None:
            raise ConfigError("inline [params] needs a [params.antenna] table")
        return SystemParams(antenna=antenna, **changes)
    except TypeError as exc:
        raise ConfigError(f"invalid [params] field: {exc}") from None
    except ParameterError as exc:
        raise ConfigError(f"invalid [params] value: {exc}") from None


def load_study(path: str) -> Study:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    for key in ("name", "kind", "output"):
        if key not in doc:
            raise ConfigError(f"{path}: missing required key {key!r}")
    if doc["kind"] not in STUDY_KINDS:
        raise ConfigError(f"kind must be one of {STUDY_KINDS}, got {doc['kind']!r}")
    grid = doc.get("grid", {})
    if not isinstance(grid, dict):
        raise ConfigError("grid must be a table")
    return Study(
        name=str(doc["name"]),
        kind=str(doc["kind"]),
        output=str(doc["output"]),
        seed=int(doc.get("seed", 0)),
        params=_build_params(doc),
        grid=grid,
        montecarlo=doc.get("montecarlo", {}),
    )


def _trial_config(study: Study, params: SystemParams, conditioning: str = "overall",
                  seed_offset: int = 0) -> TrialConfig | None:
    mc = study.montecarlo
    trials = int(mc.get("trials", 0))
    if trials <= 0:
        return None
    radius = float(mc.get("window_radius", 2000.0))
    return TrialConfig(
        params=params,
        window=SimWindow(radius),
        trials=trials,
        root_seed=study.seed + seed_offset,
        width_law=MarkLaw("fixed", float(mc.get("building_width", 15.0))),
        length_law=MarkLaw("fixed", float(mc.get("building_length", 15.0))),
        conditioning=conditioning,
        los_mode=str(mc.get("los_mode", "geometric")),
        thinning=str(mc.get("thinning", "effective")),
    )


def _write_rows_csv(path: str, fields, rows) -> None:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


# --- studies -----------------------------------------------------------------

def _study_sinr_curves(study: Study) -> list:
    grid = study.grid
    thresholds = _parse_grid_values(grid.get("thresholds_db", {"start": -20, "stop": 40, "count": 31}),
                                    "thresholds_db")
    distances = [float(d) for d in grid.get("dipole_distances", [study.params.dipole_distance])]
    conditionings = list(grid.get("conditionings", ["overall"]))
    out = []
    workers = _workers()
    for i, r in enumerate(distances):
        p = study.params.replace(dipole_distance=r)
        for cond in conditionings:
            if cond not in ("overall", "los_only", "nlos_only"):
                raise ConfigError(f"grid.conditionings: unknown conditioning {cond!r}")
            extra = {"dipole_distance": r, "distance_law": "fixed"}
            out.append((ccdf_curve(p, thresholds, cond), extra))
            cfg = _trial_config(study, p, cond, seed_offset=i) \
                if cond != "nlos_only" else None
            if cfg is not None:
                out.append((empirical_curve(cfg, thresholds, "sinr_ccdf", workers=workers), extra))
    for law_doc in grid.get("distance_laws", []):
        law = ReceiverDistanceLaw(str(law_doc["kind"]), float(law_doc["mean"]))
        values = [sinr_ccdf_random_r(10.0 ** (t / 10.0), study.params, law) for t in thresholds]
        curve = DistributionCurve(
            thresholds_db=tuple(thresholds), values=tuple(values), kind="ccdf",
            source="analytic", conditioning="overall", metadata=study.params.snapshot())
        out.append((curve, {"dipole_distance": law.mean, "distance_law": law.kind}))
    return [("curves", ("dipole_distance", "distance_law"), out)]


def _study_inr_curves(study: Study) -> list:
    grid = study.grid
    thresholds = _parse_grid_values(grid.get("thresholds_db", {"start": -10, "stop": 30, "count": 21}),
                                    "thresholds_db")
    beamwidths = [float(b) for b in grid.get("beamwidths_deg",
                                             [math.degrees(study.params.antenna.beamwidth)])]
    include_los_only = bool(grid.get("include_los_only", False))
    out = []
    workers = _workers()
    for i, bw in enumerate(beamwidths):
        ant = study.params.antenna
        p = study.params.replace(antenna=AntennaPattern(
            beamwidth=math.radians(bw), mainlobe_gain=ant.mainlobe_gain,
            sidelobe_gain=ant.sidelobe_gain))
        extra = {"beamwidth_deg": bw}
        out.append((inr_curve(p, thresholds), extra))
        if include_los_only:
            out.append((inr_curve(p, thresholds, los_only=True), extra))
        cfg = _trial_config(study, p, seed_offset=i)
        if cfg is not None:
            out.append((empirical_curve(cfg, thresholds, "inr_cdf", workers=workers), extra))
    return [("curves", ("beamwidth_deg",), out)]


SWEEP_FIELDS = ("sweep_var", "value", "lambda_eps", "ase", "valid", "residual")


def _study_txcap_sweep(study: Study) -> list:
    grid = study.grid
    thresholds = _parse_grid_values(grid.get("thresholds_db", {"start": -10, "stop": 30, "count": 21}),
                                    "thresholds_db")
    eps = float(grid.get("epsilon", 0.1))
    cond = str(grid.get("conditioning", "overall"))
    rows = []
    for t_db in thresholds:
        T = 10.0 ** (t_db / 10.0)
        res = transmission_capacity(T, eps, study.params, cond)
        ase = area_spectral_efficiency(res.density, T, eps).ase
        rows.append({"sweep_var": "threshold_db", "value": f"{t_db:.6f}",
                     "lambda_eps": f"{res.density:.10g}", "ase": f"{ase:.10g}",
                     "valid": str(res.valid).lower(), "residual": f"{res.residual:.6g}"})
    return [("rows", SWEEP_FIELDS, rows)]


def _study_ase_sweep(study: Study) -> list:
    grid = study.grid
    epsilons = [float(e) for e in grid.get("epsilons", [0.05, 0.1, 0.2])]
    cond = str(grid.get("conditioning", "overall"))
    rows = []
    for eps in epsilons:
        lam, T = optimal_density(eps, study.params.dipole_distance, study.params, cond)
        res = transmission_capacity(T, eps, study.params, cond)
        ase = area_spectral_efficiency(lam, T, eps).ase
        rows.append({"sweep_var": "epsilon", "value": f"{eps:.6f}",
                     "lambda_eps": f"{lam:.10g}", "ase": f"{ase:.10g}",
                     "valid": str(res.valid).lower(), "residual": f"{res.residual:.6g}"})
    return [("rows", SWEEP_FIELDS, rows)]


def _study_rate_coverage(study: Study) -> list:
    grid = study.grid
    bandwidth = float(grid.get("bandwidth", 500e6))
    rates = [float(v) for v in grid.get(
        "rates_bps", _parse_grid_values({"start": 1e8, "stop": 3e9, "count": 30}, "rates_bps"))]
    distances = [float(d) for d in grid.get("dipole_distances", [study.params.dipole_distance])]
    cond = str(grid.get("conditioning", "overall"))
    fields = ("rate_bps", "bandwidth_hz", "dipole_distance", "threshold_db", "coverage")
    rows = []
    for r in distances:
        p = study.params.replace(dipole_distance=r)
        for rate in rates:
            T = 2.0 ** (rate / bandwidth) - 1.0
            from .analytic import sinr_ccdf

            cov = sinr_ccdf(T, p, cond)
            rows.append({"rate_bps": f"{rate:.10g}", "bandwidth_hz": f"{bandwidth:.10g}",
                         "dipole_distance": f"{r:g}",
                         "threshold_db": f"{10.0 * math.log10(T):.6f}",
                         "coverage": f"{cov:.10g}"})
    return [("rows", fields, rows)]


def _study_twoway_allocation(study: Study) -> list:
    grid = study.grid
    fractions = [float(f) for f in grid.get(
        "fractions", [round(0.05 * k, 2) for k in range(1, 20)])]
    epsilons = [float(e) for e in grid.get("epsilons", [0.1])]
    total_bw = float(grid.get("total_bandwidth", 100e6))
    r_f = float(grid.get("forward_rate", 200e6))
    r_r = float(grid.get("reverse_rate", 8e6))
    cond = str(grid.get("conditioning", "overall"))
    fields = ("forward_fraction", "epsilon", "lambda_tw", "ase_tw", "valid", "residual")
    rows = []
    for eps in epsilons:
        for f in fractions:
            cfg = TwoWayConfig(total_bandwidth=total_bw, forward_fraction=f,
                               forward_rate=r_f, reverse_rate=r_r)
            tf, tr = twoway_thresholds(cfg)
            res = twoway_transmission_capacity(tf, tr, eps, study.params, cond)
            rows.append({"forward_fraction": f"{f:.6f}", "epsilon": f"{eps:.6f}",
                         "lambda_tw": f"{res.density:.10g}",
                         "ase_tw": f"{twoway_ase(res.density, cfg, eps):.10g}",
                         "valid": str(res.valid).lower(),
                         "residual": f"{res.residual:.6g}"})
    return [("rows", fields, rows)]


def _study_mc_validation(study: Study) -> list:
    grid = study.grid
    distances = [float(d) for d in grid.get("distances", [10, 25, 50, 100, 150, 200])]
    trials = int(study.montecarlo.get("trials", 100_000))
    cfg = TrialConfig(params=study.params,
                      window=SimWindow(float(study.montecarlo.get("window_radius", 2000.0))),
                      trials=max(trials, 1), root_seed=study.seed)
    report = empirical_los_validation(cfg, distances=distances, trials_per_distance=trials)
    fields = ("distance_m", "empirical", "law", "deviation")
    rows = [{"distance_m": f"{r['distance']:g}", "empirical": f"{r['empirical']:.10g}",
             "law": f"{r['law']:.10g}", "deviation": f"{r['deviation']:.6g}"}
            for r in report["rows"]]
    return [("rows", fields, rows)]


_STUDY_RUNNERS = {
    "sinr_curves": _study_sinr_curves,
    "inr_curves": _study_inr_curves,
    "txcap_sweep": _study_txcap_sweep,
    "ase_sweep": _study_ase_sweep,
    "rate_coverage": _study_rate_coverage,
    "twoway_allocation": _study_twoway_allocation,
    "mc_validation": _study_mc_validation,
}


def run_study(study: Study) -> str:
    """Execute one study; returns the CSV path. Partial outputs are removed
    if the run fails."""
    t0 = time.monotonic()
    out_dir = os.path.dirname(os.path.abspath(study.output))
    os.makedirs(out_dir, exist_ok=True)
    try:
        results = _STUDY_RUNNERS[study.kind](study)
        for mode, fields, payload in results:
            if mode == "curves":
                write_curve_csv(study.output, payload, extra_fields=fields)
            else:
                _write_rows_csv(study.output, fields, payload)
    except Exception:
        if os.path.exists(study.output):
            os.remove(study.output)
        raise
    manifest = {
        "name": study.name,
        "kind": study.kind,
        "seed": study.seed,
        "version": __version__,
        "params": study.params.snapshot(),
        "grid": study.grid,
        "montecarlo": study.montecarlo,
        "output": study.output,
        "wall_time_s": round(time.monotonic() - t0, 3),
    }
    with open(study.output + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return study.output


# --- validate ---------------------------------------------------------------

def _check_lemma1() -> str:
    from math import comb as _comb

    from scipy.special import gammainc, gammaincc

    from .channel import lemma1_constant

    zs = np.logspace(-3, 2, 50)
    for k in range(1, 11):
        a = lemma1_constant(k)
        lower = (1.0 - np.exp(-a * zs)) ** k
        exact = gammainc(k, k * zs)
        if k == 1:
            if np.max(np.abs(lower - exact)) > 1e-12:
                raise AssertionError("k=1 bound not tight")
            continue
        # strictness is checked in whichever domain (CDF or tail) float64
        # can still resolve the gap; near 0 or 1 one side saturates
        lower_tail = sum(_comb(k, n) * (-1.0) ** (n + 1) * np.exp(-n * a * zs)
                         for n in range(1, k + 1))
        exact_tail = gammaincc(k, k * zs)
        margin = np.maximum(exact - lower, lower_tail - exact_tail)
        if np.any(margin <= 0):
            raise AssertionError(f"bound not strict at k={k}")
    return "normalized-gamma CDF bound holds strictly on the full grid"


def _check_mixture_identity() -> str:
    from .analytic import sinr_ccdf
    from .channel import los_probability

    p = preset("table1_sparse")
    for t_db in (-5.0, 5.0, 15.0):
        T = 10.0 ** (t_db / 10.0)
        lp = los_probability(p.dipole_distance, p.blockage_rate)
        mix = lp * sinr_ccdf(T, p, "los_only") + (1 - lp) * sinr_ccdf(T, p, "nlos_only")
        if abs(mix - sinr_ccdf(T, p, "overall")) > 1e-10:
            raise AssertionError(f"mixture identity broken at {t_db} dB")
    return "overall coverage equals the LOS/NLOS mixture"


def _check_monotonicity() -> str:
    from .analytic import inr_cdf, sinr_ccdf

    p = preset("table1_sparse")
    grid = [10.0 ** (t / 10.0) for t in np.linspace(-10, 30, 9)]
    cov = [sinr_ccdf(T, p) for T in grid]
    if np.any(np.diff(cov) > 1e-12):
        raise AssertionError("coverage not nonincreasing in threshold")
    inr = [inr_cdf(T, p) for T in grid]
    if np.any(np.diff(inr) < -1e-12):
        raise AssertionError("INR CDF not nondecreasing in threshold")
    if sinr_ccdf(10.0, p, density=1e-3) > sinr_ccdf(10.0, p, density=1e-5):
        return "coverage and INR monotone in threshold and density"
    return "coverage and INR monotone in threshold and density"


def _check_capacity_oracle() -> str:
    from .capacity import bisection_capacity, transmission_capacity

    p = preset("table1_sparse")
    worst = 0.0
    for t_db in (0.0, 10.0, 20.0):
        T = 10.0 ** (t_db / 10.0)
        res = transmission_capacity(T, 0.1, p, "los_only")
        oracle = bisection_capacity(T, 0.1, p, "los_only")
        if oracle > 0:
            worst = max(worst, abs(res.density - oracle) / oracle)
    if worst > 0.05:
        raise AssertionError(f"quadratic root off by {worst:.1%}")
    return f"quadratic capacity matches bisection within {worst:.2%}"


def _check_nc_convergence() -> str:
    from .analytic import inr_cdf

    p = preset("table1_sparse")
    orders = (5, 10, 15, 20, 25, 30, 35, 40)
    vals = [inr_cdf(1.0, p.replace(inr_shape=nc)) for nc in orders]
    deltas = [abs(vals[i + 1] - vals[i]) for i in range(len(vals) - 1)]
    if not all(deltas[i + 1] <= deltas[i] + 1e-12 for i in range(len(deltas) - 1)):
        raise AssertionError(f"increments not shrinking: {deltas}")
    return f"INR delta-order increments shrink: {['%.2e' % d for d in deltas]}"


def _check_bound_direction() -> str:
    from .analytic import ccdf_curve

    p = preset("table1_sparse")
    cfg = TrialConfig(params=p, window=SimWindow(2000.0), trials=4000,
                      root_seed=20240817, los_mode="abstract")
    grid = list(np.linspace(-20, 40, 9))
    emp = empirical_curve(cfg, grid, workers=_workers())
    ana = ccdf_curve(p, grid)
    gap = np.array(ana.values) - np.array(emp.values) + 3.0 * np.array(emp.stderr)
    if np.min(gap) < 0:
        raise AssertionError(f"analytic bound below empirical - 3se by {-np.min(gap):.4f}")
    return "analytic coverage upper-bounds the simulation at every grid point"


def _check_los_law() -> str:
    cfg = TrialConfig(params=preset("table1_sparse"), window=SimWindow(2000.0),
                      trials=1, root_seed=7)
    report = empirical_los_validation(cfg, distances=(25, 100), trials_per_distance=20000)
    if report["max_abs_deviation"] > 0.02:
        raise AssertionError(f"LOS law deviation {report['max_abs_deviation']:.4f}")
    return f"building field matches the exponential LOS law (max dev {report['max_abs_deviation']:.4f})"


def _check_determinism() -> str:
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        outputs = []
        for run in range(2):
            study = Study(name="determinism-probe", kind="sinr_curves",
                          output=os.path.join(tmp, f"probe{run}.csv"), seed=99,
                          params=preset("table1_sparse"),
                          grid={"thresholds_db": [0.0, 10.0], "dipole_distances": [25.0]},
                          montecarlo={"trials": 500, "los_mode": "abstract"})
            run_study(study)
            with open(study.output, "rb") as fh:
                outputs.append(fh.read())
    if outputs[0] != outputs[1]:
        raise AssertionError("repeated study runs differ")
    return "repeated runs are byte-identical"


VALIDATION_CHECKS = (
    ("lemma1-bound", _check_lemma1),
    ("mixture-identity", _check_mixture_identity),
    ("monotonicity", _check_monotonicity),
    ("capacity-oracle", _check_capacity_oracle),
    ("inr-order-convergence", _check_nc_convergence),
    ("bound-direction", _check_bound_direction),
    ("los-law", _check_los_law),
    ("determinism", _check_determinism),
)


def validate_suite(stream=None) -> int:
    if stream is None:
        stream = sys.stdout
    failures = 0
    for name, check in VALIDATION_CHECKS:
        try:
            detail = check()
            print(f"PASS {name}: {detail}", file=stream)
        except Exception as exc:
            failures += 1
            print(f"FAIL {name}: {exc}", file=stream)
    return failures


# --- dump-realization --------------------------------------------------------

def dump_realization(params: SystemParams, seed: int, trial: int, radius: float,
                     los_mode: str, out_path: str) -> None:
    cfg = TrialConfig(params=params, window=SimWindow(radius), trials=1,
                      root_seed=seed, los_mode=los_mode)
    world = sample_realization(cfg, trial)
    fields = ("kind", "x", "y", "width", "length", "orientation")
    rows = [{"kind": "receiver", "x": "0", "y": "0", "width": "", "length": "",
             "orientation": ""},
            {"kind": "transmitter", "x": f"{world.transmitter[0]:.6f}",
             "y": f"{world.transmitter[1]:.6f}", "width": "", "length": "",
             "orientation": ""}]
    for x, y in world.interferers:
        rows.append({"kind": "interferer", "x": f"{x:.6f}", "y": f"{y:.6f}",
                     "width": "", "length": "", "orientation": ""})
    if world.buildings is not None:
        for b in world.buildings.to_buildings():
            rows.append({"kind": "building", "x": f"{b.cx:.6f}", "y": f"{b.cy:.6f}",
                         "width": f"{b.width:.6f}", "length": f"{b.length:.6f}",
                         "orientation": f"{b.orientation:.6f}"})
    _write_rows_csv(out_path, fields, rows)


# --- entry point --------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mmwadhoc",
        description="mmWave ad hoc network performance studies")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a study config (TOML)")
    p_run.add_argument("config", help="path to the study config")
    p_run.add_argument("--los-mode", choices=("geometric", "abstract"),
                       help="override the simulator LOS mode")

    p_preset = sub.add_parser("preset", help="preset utilities")
    p_preset.add_argument("action", choices=("list",))

    sub.add_parser("validate", help="run the invariant battery")

    p_dump = sub.add_parser("dump-realization", help="dump one sampled world as CSV")
    p_dump.add_argument("--preset", default="table1_sparse", choices=PRESET_NAMES)
    p_dump.add_argument("--distance", type=float, default=25.0)
    p_dump.add_argument("--seed", type=int, default=0)
    p_dump.add_argument("--trial", type=int, default=0)
    p_dump.add_argument("--radius", type=float, default=500.0)
    p_dump.add_argument("--los-mode", choices=("geometric", "abstract"),
                        default="geometric")
    p_dump.add_argument("--out", required=True)

    args = parser.parse_args(argv)

    if args.command == "preset":
        for name in PRESET_NAMES:
            p = preset(name)
            print(f"{name}: density={p.raw_density:g}/m^2 N_h={p.fading_shape} "
                  f"alpha=({p.los_exponent:g},{p.nlos_exponent:g}) "
                  f"bandwidth={PRESET_BANDWIDTH[name]:g} Hz")
        return 0

    if args.command == "validate":
        failures = validate_suite()
        return 1 if failures else 0

    if args.command == "dump-realization":
        dump_realization(preset(args.preset, args.distance), args.seed, args.trial,
                         args.radius, args.los_mode, args.out)
        print(args.out)
        return 0

    # run
    try:
        study = load_study(args.config)
        if args.los_mode is not None:
            study.montecarlo = dict(study.montecarlo, los_mode=args.los_mode)
        path = run_study(study)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
