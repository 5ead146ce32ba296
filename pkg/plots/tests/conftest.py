"""Generate the CSV artifacts once per session by invoking the simulator CLI.

The plotting package only ever sees the CSV files; these fixtures exercise
that boundary by shelling out to `mmwadhoc run` rather than importing the
simulator.
"""

import subprocess
import sys
import textwrap

import pytest

TRIALS = 300

STUDIES = {
    "sinr_sparse": """
        name = "sinr-sparse"
        kind = "sinr_curves"
        preset = "table1_sparse"
        output = "sinr_sparse.csv"
        seed = 1

        [grid]
        thresholds_db = {start = -20.0, stop = 40.0, count = 9}
        dipole_distances = [25.0, 50.0, 75.0]
        conditionings = ["overall", "los_only"]
        distance_laws = [{kind = "uniform", mean = 25.0}, {kind = "rayleigh", mean = 25.0}]

        [montecarlo]
        trials = %(trials)d
        los_mode = "abstract"
    """,
    "sinr_dense": """
        name = "sinr-dense"
        kind = "sinr_curves"
        preset = "table1_dense"
        output = "sinr_dense.csv"
        seed = 2

        [grid]
        thresholds_db = {start = -20.0, stop = 40.0, count = 9}
        dipole_distances = [25.0, 50.0, 75.0]

        [montecarlo]
        trials = %(trials)d
        los_mode = "abstract"
    """,
    "inr": """
        name = "inr-beams"
        kind = "inr_curves"
        preset = "table1_dense"
        output = "inr.csv"
        seed = 3

        [grid]
        thresholds_db = {start = -10.0, stop = 30.0, count = 9}
        beamwidths_deg = [30.0, 90.0]
        include_los_only = true

        [montecarlo]
        trials = %(trials)d
        los_mode = "abstract"
    """,
    "txcap": """
        name = "txcap"
        kind = "txcap_sweep"
        preset = "table1_sparse"
        output = "txcap.csv"
        seed = 4

        [grid]
        thresholds_db = {start = -10.0, stop = 30.0, count = 9}
        epsilon = 0.1
        conditioning = "los_only"
    """,
    "ase": """
        name = "ase"
        kind = "ase_sweep"
        preset = "table1_sparse"
        output = "ase.csv"
        seed = 5

        [grid]
        epsilons = [0.05, 0.1, 0.2]
        conditioning = "los_only"
    """,
    "rate": """
        name = "rate"
        kind = "rate_coverage"
        preset = "table1_sparse"
        output = "rate.csv"
        seed = 6

        [grid]
        bandwidth = 500e6
        rates_bps = [5e8, 1e9, 2e9]
        dipole_distances = [25.0, 50.0, 75.0]
    """,
    "twoway": """
        name = "twoway"
        kind = "twoway_allocation"
        preset = "table1_sparse"
        output = "twoway.csv"
        seed = 7

        [grid]
        fractions = [0.1, 0.3, 0.5, 0.7, 0.9]
        epsilons = [0.05, 0.1]
        total_bandwidth = 100e6
        forward_rate = 200e6
        reverse_rate = 8e6
        conditioning = "los_only"

        [params]
        dipole_distance = 50.0
    """,
}


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("artifacts")
    for name, body in STUDIES.items():
        study = root / f"{name}.toml"
        study.write_text(textwrap.dedent(body % {"trials": TRIALS}))
        subprocess.run([sys.executable, "-m", "mmwadhoc.cli", "run", str(study)],
                       cwd=root, check=True, capture_output=True, text=True)
    return root
