import csv
import json
import os

import pytest

from mmwadhoc.cli import ConfigError, Study, load_study, main, run_study, validate_suite
from mmwadhoc.params import preset


def _write(tmp_path, text, name="study.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


MINIMAL = """
name = "probe"
kind = "sinr_curves"
preset = "table1_sparse"
output = "{out}"
seed = 7

[grid]
thresholds_db = [0.0, 10.0]
dipole_distances = [25.0]

[montecarlo]
trials = 200
los_mode = "abstract"
"""


class TestConfigLoading:
    def test_missing_key(self, tmp_path):
        with pytest.raises(ConfigError, match="kind"):
            load_study(_write(tmp_path, 'name = "x"\noutput = "y.csv"\n'))

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(ConfigError, match="kind"):
            load_study(_write(
                tmp_path, 'name="x"\nkind="bogus"\noutput="y.csv"\npreset="table1_sparse"\n'))

    def test_unknown_preset(self, tmp_path):
        with pytest.raises(ConfigError, match="preset"):
            load_study(_write(
                tmp_path, 'name="x"\nkind="sinr_curves"\noutput="y.csv"\npreset="nope"\n'))

    def test_missing_file(self):
        with pytest.raises(ConfigError, match="not found"):
            load_study("/nonexistent/study.toml")

    def test_db_suffix_override(self, tmp_path):
        text = ('name="x"\nkind="sinr_curves"\noutput="y.csv"\npreset="table1_sparse"\n'
                '[params]\nnoise_power_db = -110.0\ndipole_distance = 50.0\n')
        study = load_study(_write(tmp_path, text))
        assert study.params.noise_power == pytest.approx(10 ** -11.0)
        assert study.params.dipole_distance == 50.0

    def test_empty_grid_list_rejected(self, tmp_path):
        text = MINIMAL.replace("[0.0, 10.0]", "[]")
        study = load_study(_write(tmp_path, text.format(out=tmp_path / "o.csv")))
        with pytest.raises(ConfigError, match="thresholds_db"):
            run_study(study)


class TestRunStudy:
    def test_sinr_curves_outputs(self, tmp_path):
        out = tmp_path / "probe.csv"
        study = load_study(_write(tmp_path, MINIMAL.format(out=out)))
        run_study(study)
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        sources = {r["source"] for r in rows}
        assert sources == {"analytic", "empirical"}
        assert all(0.0 <= float(r["value"]) <= 1.0 for r in rows)
        manifest = json.loads((tmp_path / "probe.csv.manifest.json").read_text())
        assert manifest["seed"] == 7
        assert manifest["params"]["dipole_distance"] == 25.0

    def test_byte_identical_rerun(self, tmp_path):
        out = tmp_path / "probe.csv"
        study = load_study(_write(tmp_path, MINIMAL.format(out=out)))
        run_study(study)
        first = out.read_bytes()
        run_study(study)
        assert out.read_bytes() == first

    def test_failure_removes_partial_output(self, tmp_path):
        out = tmp_path / "broken.csv"
        text = MINIMAL.format(out=out) + '\n'
        study = load_study(_write(tmp_path, text))
        study.grid["conditionings"] = ["sideways"]
        with pytest.raises(ConfigError):
            run_study(study)
        assert not out.exists()

    def test_txcap_sweep_schema(self, tmp_path):
        out = tmp_path / "cap.csv"
        study = Study(name="cap", kind="txcap_sweep", output=str(out), seed=0,
                      params=preset("table1_sparse"),
                      grid={"thresholds_db": [0.0, 10.0], "epsilon": 0.1,
                            "conditioning": "los_only"})
        run_study(study)
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == ["sweep_var", "value", "lambda_eps", "ase",
                                 "valid", "residual"]
        assert float(rows[0]["lambda_eps"]) > float(rows[1]["lambda_eps"])

    def test_twoway_allocation_peak(self, tmp_path):
        out = tmp_path / "tw.csv"
        study = Study(name="tw", kind="twoway_allocation", output=str(out), seed=0,
                      params=preset("table1_sparse", 50.0),
                      grid={"fractions": [0.3, 0.5, 0.7, 0.9],
                            "epsilons": [0.1], "conditioning": "los_only"})
        run_study(study)
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        caps = {float(r["forward_fraction"]): float(r["lambda_tw"]) for r in rows}
        assert max(caps, key=caps.get) == 0.9

    def test_mc_validation_deviations(self, tmp_path):
        out = tmp_path / "mc.csv"
        study = Study(name="mc", kind="mc_validation", output=str(out), seed=3,
                      params=preset("table1_sparse"),
                      grid={"distances": [25.0, 100.0]},
                      montecarlo={"trials": 20000})
        run_study(study)
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert all(abs(float(r["deviation"])) < 0.02 for r in rows)


class TestMain:
    def test_preset_list(self, capsys):
        assert main(["preset", "list"]) == 0
        out = capsys.readouterr().out
        assert "table1_sparse" in out and "uhf_50mhz" in out

    def test_run_reports_config_errors(self, tmp_path, capsys):
        bad = _write(tmp_path, 'name = "x"\n')
        assert main(["run", bad]) == 2
        assert "error:" in capsys.readouterr().err

    def test_dump_realization(self, tmp_path):
        out = tmp_path / "world.csv"
        assert main(["dump-realization", "--out", str(out), "--radius", "300",
                     "--seed", "1"]) == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        kinds = {r["kind"] for r in rows}
        assert {"receiver", "transmitter", "building"} <= kinds
        buildings = [r for r in rows if r["kind"] == "building"]
        assert all(float(b["width"]) == 15.0 for b in buildings)


class TestValidateSuite:
    def test_all_checks_pass(self, capfd):
        assert validate_suite() == 0
        out = capfd.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") >= 8
