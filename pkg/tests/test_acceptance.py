"""End-to-end acceptance suite.

Each test checks one headline claim of the library at its stated tolerance
and prints a single PASS/FAIL verdict line (visible via pytest -rA).
The Monte Carlo tests here run 10^5 trials per configuration and dominate
the suite's runtime; everything is seeded and deterministic.
"""

import io
import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import comb, gammainc, gammaincc

from mmwadhoc.analytic import inr_cdf, inr_cdf_los_only, sinr_ccdf
from mmwadhoc.capacity import (
    TwoWayConfig,
    area_spectral_efficiency,
    bisection_capacity,
    optimize_bandwidth_allocation,
    rate_coverage,
    transmission_capacity,
    twoway_ase,
    twoway_bisection_capacity,
    twoway_thresholds,
    twoway_transmission_capacity,
)
from mmwadhoc.channel import lemma1_constant
from mmwadhoc.cli import Study, run_study, validate_suite
from mmwadhoc.geometry import SimWindow
from mmwadhoc.montecarlo import TrialConfig, collect_outcomes, empirical_curve, empirical_los_validation
from mmwadhoc.params import AntennaPattern, preset


def _verdict(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    print(line)
    assert ok, line


class TestGammaCdfBound:
    def test_normalized_gamma_cdf_bound(self):
        # (1 - e^(-a z))^k < P(k, k z) with a = k (k!)^(-1/k), strictly for
        # k >= 2; equality for k = 1. Near saturation both sides round to 1,
        # so strictness is certified on whichever side of the distribution
        # still resolves the gap in float64.
        start = time.perf_counter()
        zs = np.logspace(-3, 2, 50)
        worst = math.inf
        for k in range(2, 11):
            a = lemma1_constant(k)
            u = np.exp(-a * zs)
            lower = (1.0 - u) ** k
            exact = gammainc(k, k * zs)
            # tail side: 1 - (1-u)^k via the alternating binomial sum
            j = np.arange(1, k + 1)
            lower_tail = np.sum(
                comb(k, j)[None, :] * (-1.0) ** (j[None, :] + 1)
                * u[:, None] ** j[None, :], axis=1)
            exact_tail = gammaincc(k, k * zs)
            margin = np.maximum(exact - lower, lower_tail - exact_tail)
            worst = min(worst, float(margin.min()))
        a1 = lemma1_constant(1)
        eq_err = float(np.max(np.abs((1.0 - np.exp(-a1 * zs)) - gammainc(1, zs))))
        elapsed = time.perf_counter() - start
        ok = worst > 0.0 and eq_err < 1e-12 and elapsed < 1.0
        _verdict("gamma-cdf-bound",
                 ok, f"min margin {worst:.3g}, k=1 equality err {eq_err:.2g}, "
                     f"{elapsed:.2f} s")


class TestBoundDirection:
    def test_analytic_upper_bounds_simulation(self):
        start = time.perf_counter()
        grid = list(np.linspace(-20.0, 40.0, 15))
        worst_slack = math.inf
        worst_gap = 0.0
        for name in ("table1_sparse", "table1_dense"):
            for r in (25.0, 50.0, 75.0):
                p = preset(name, r)
                cfg = TrialConfig(params=p, window=SimWindow(2000.0),
                                  trials=100_000, root_seed=2024,
                                  los_mode="abstract")
                outs = collect_outcomes(cfg)
                emp = empirical_curve(cfg, grid, outcomes=outs)
                ana = [sinr_ccdf(10.0 ** (t / 10.0), p) for t in grid]
                slack = min(a - (e - 3.0 * s) for a, e, s in
                            zip(ana, emp.values, emp.stderr))
                gap = float(np.mean(np.abs(np.array(ana) - np.array(emp.values))))
                worst_slack = min(worst_slack, slack)
                worst_gap = max(worst_gap, gap)
        elapsed = time.perf_counter() - start
        ok = worst_slack >= 0.0 and worst_gap <= 0.04 and elapsed <= 600.0
        _verdict("coverage-bound-direction",
                 ok, f"min slack {worst_slack:+.4f}, worst mean gap "
                     f"{worst_gap:.4f} (tol 0.04), {elapsed:.0f} s")


class TestLosProtocolGain:
    def test_conditioning_gain_at_90_percent(self):
        p = preset("table1_sparse", 25.0)

        def threshold_at(coverage, conditioning):
            f = lambda t_db: sinr_ccdf(10.0 ** (t_db / 10.0), p, conditioning) - coverage
            return brentq(f, -30.0, 60.0, xtol=1e-6)

        t_overall = threshold_at(0.9, "overall")
        t_los = threshold_at(0.9, "los_only")
        gain = t_los - t_overall
        _verdict("los-protocol-gain", gain >= 8.0,
                 f"90% coverage threshold improves by {gain:.1f} dB "
                 f"({t_overall:.1f} -> {t_los:.1f} dB) with a LOS protocol")


class TestInrAnchors:
    def test_noise_limited_fractions(self):
        sparse = preset("table1_sparse")
        p_sparse = inr_cdf(1.0, sparse)
        dense_vals = []
        for bw_deg in (30.0, 90.0):
            ant = AntennaPattern(math.radians(bw_deg), 10.0, 0.1)
            dense_vals.append(inr_cdf(1.0, preset("table1_dense").replace(antenna=ant)))
        ok = abs(p_sparse - 0.40) <= 0.05 and all(v <= 0.1 for v in dense_vals)
        _verdict("inr-anchor",
                 ok, f"sparse P[INR<0dB]={p_sparse:.3f} (0.40 +/- 0.05); dense "
                     f"{dense_vals[0]:.3f}/{dense_vals[1]:.3f} at 30/90 deg (<= 0.1)")


class TestLosInterferenceDominance:
    def test_nlos_interference_negligible_when_dense(self):
        p = preset("table1_dense")
        gaps = []
        for t_db in np.linspace(-10.0, 30.0, 21):
            T = 10.0 ** (t_db / 10.0)
            gaps.append(abs(inr_cdf(T, p) - inr_cdf_los_only(T, p)))
        worst = max(gaps)
        _verdict("los-interference-dominance", worst <= 0.02,
                 f"max |full - LOS-only| INR CDF gap {worst:.4f} (tol 0.02)")


class TestCapacitySolverOracle:
    def test_polynomial_roots_match_bisection(self):
        start = time.perf_counter()
        p50 = preset("table1_sparse", 50.0)
        worst = 0.0
        for t_db in (-5.0, 0.0, 5.0, 10.0, 20.0):
            for eps in (0.05, 0.1):
                T = 10.0 ** (t_db / 10.0)
                res = transmission_capacity(T, eps, p50, "los_only")
                assert res.valid
                oracle = bisection_capacity(T, eps, p50, "los_only")
                worst = max(worst, abs(res.density - oracle) / oracle)
        cfg = TwoWayConfig(total_bandwidth=100e6, forward_fraction=0.9,
                           forward_rate=200e6, reverse_rate=8e6)
        tf, tr = twoway_thresholds(cfg)
        res = twoway_transmission_capacity(tf, tr, 0.1, p50, "los_only")
        assert res.valid
        oracle = twoway_bisection_capacity(tf, tr, 0.1, p50, "los_only")
        worst = max(worst, abs(res.density - oracle) / oracle)
        # past the linearization region the solver must refuse
        overdriven = transmission_capacity(1.0, 0.2, preset("table1_sparse"), "los_only")
        elapsed = time.perf_counter() - start
        ok = worst <= 0.05 and not overdriven.valid and elapsed < 60.0
        _verdict("capacity-solver-oracle",
                 ok, f"worst rel error vs bisection {100 * worst:.2f}% "
                     f"(tol 5%), out-of-range flagged invalid, {elapsed:.1f} s")


class TestTwoWayAllocation:
    def test_asymmetric_rate_split(self):
        p50 = preset("table1_sparse", 50.0)
        bw, rf, rr = 100e6, 200e6, 8e6
        f_stars = {}
        for eps in (0.05, 0.1, 0.2):
            f_stars[eps], _ = optimize_bandwidth_allocation(
                bw, rf, rr, eps, p50, "los_only")
        f_star, cap_star = f_stars[0.1], optimize_bandwidth_allocation(
            bw, rf, rr, 0.1, p50, "los_only")[1]
        cfg_half = TwoWayConfig(total_bandwidth=bw, forward_fraction=0.5,
                                forward_rate=rf, reverse_rate=rr)
        tf, tr = twoway_thresholds(cfg_half)
        cap_half = twoway_transmission_capacity(tf, tr, 0.1, p50, "los_only").density
        ratio = cap_star / cap_half
        cfg_star = TwoWayConfig(total_bandwidth=bw, forward_fraction=f_star,
                                forward_rate=rf, reverse_rate=rr)
        tw_ase = twoway_ase(cap_star, cfg_star, 0.1)
        T1 = 2.0 ** (rf / bw) - 1.0
        one = transmission_capacity(T1, 0.1, p50, "los_only").density
        frac = tw_ase / area_spectral_efficiency(one, T1, 0.1).ase
        shift = max(f_stars.values()) - min(f_stars.values())
        ok = (abs(f_star - 0.90) <= 0.05 and 1.5 <= ratio <= 2.5
              and 0.6 <= frac <= 0.9 and shift <= 0.05 + 1e-12)
        _verdict("two-way-allocation",
                 ok, f"f*={f_star:.3f} (0.90 +/- 0.05), gain vs even split "
                     f"{ratio:.2f}x ([1.5, 2.5]), ASE fraction {frac:.2f} "
                     f"([0.6, 0.9]), f* shift {shift:.3f} over outage targets")


class TestRateCoverage:
    def test_gigabit_vs_uhf(self):
        mm = [rate_coverage(1e9, 500e6, preset(name, r))
              for name in ("table1_sparse", "table1_nh7")
              for r in (25.0, 50.0, 75.0)]
        uhf = rate_coverage(1e9, 50e6, preset("uhf_50mhz"))
        ok = min(mm) > 0.5 and uhf < 0.05
        _verdict("rate-coverage",
                 ok, f"P[rate >= 1 Gb/s] min {min(mm):.3f} over sparse presets "
                     f"and link lengths (> 0.5); UHF {uhf:.2e} (< 0.05)")


class TestBlockageGeometry:
    def test_building_field_reproduces_exponential_law(self):
        cfg = TrialConfig(params=preset("table1_sparse"), window=SimWindow(2000.0),
                          trials=200, root_seed=7, los_mode="geometric")
        report = empirical_los_validation(
            cfg, distances=(10.0, 25.0, 50.0, 100.0, 150.0, 200.0),
            trials_per_distance=100_000)
        dev = report["max_abs_deviation"]
        _verdict("blockage-geometry-law", dev <= 0.02,
                 f"max |empirical - exp(-beta d)| = {dev:.4f} for d <= 200 m "
                 f"(tol 0.02)")


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, tmp_path):
        out = tmp_path / "det.csv"
        study = Study(name="det", kind="sinr_curves", output=str(out), seed=11,
                      params=preset("table1_sparse"),
                      grid={"thresholds_db": list(np.linspace(-10, 30, 9)),
                            "dipole_distances": [25.0]},
                      montecarlo={"trials": 2000, "los_mode": "abstract"})
        run_study(study)
        first = out.read_bytes()
        run_study(study)
        second = out.read_bytes()
        logs = []
        for _ in range(2):
            buf = io.StringIO()
            failures = validate_suite(stream=buf)
            assert failures == 0
            logs.append(buf.getvalue())
        ok = first == second and logs[0] == logs[1]
        _verdict("determinism",
                 ok, f"study CSV byte-identical across runs ({len(first)} bytes); "
                     f"validation log identical across runs")
