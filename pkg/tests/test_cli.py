"""Command-line interface: subcommand behavior, exit codes, config file
handling, and output formats. All invocations go through main(argv).
"""

import json

import numpy as np
import pytest

from sphericity.cli import main
from sphericity.model import MonotoneDesign, sample_raw, write_sample_csv

SC1 = MonotoneDesign(N1=20, N2=10, p1=2, p2=2)


def write_demo_csv(tmp_path, design=SC1, seed=0):
    sample = sample_raw(design, 1.0, np.random.default_rng(seed))
    path = tmp_path / "sample.csv"
    write_sample_csv(sample, design, path)
    return path


class TestStat:
    def test_json_report(self, tmp_path, capsys):
        path = write_demo_csv(tmp_path)
        assert main(["stat", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)[0]
        assert report["N1"] == 20 and report["N2"] == 10
        assert report["log_lambda"] <= 0.0
        assert report["minus_2_log_lambda"] >= 0.0
        assert 0.0 <= report["p_value_expansion"] <= 1.0
        assert 0.0 <= report["p_value_chi2_series"] <= 1.0

    def test_complete_data_file(self, tmp_path, capsys):
        design = MonotoneDesign(N1=25, N2=0, p1=2, p2=2)
        path = write_demo_csv(tmp_path, design)
        assert main(["stat", str(path), "--p2", "2"]) == 0
        report = json.loads(capsys.readouterr().out)[0]
        assert report["N2"] == 0

    def test_missing_file(self, tmp_path, capsys):
        assert main(["stat", str(tmp_path / "nope.csv")]) == 1
        assert "error" in capsys.readouterr().err

    def test_malformed_file_names_row(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("x1,x2\n1.0,2.0\n1.0,zap\n")
        assert main(["stat", str(path)]) == 1
        assert "row 3" in capsys.readouterr().err

    def test_csv_format(self, tmp_path, capsys):
        path = write_demo_csv(tmp_path)
        assert main(["stat", str(path), "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("N1,N2,p1,p2,log_lambda")


class TestBounds:
    def test_published_row(self, tmp_path, capsys):
        assert main(["bounds", "--n", "60", "--n1", "40",
                     "--p1", "5", "--p2", "5", "--pretty"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[0].split(",")
        cells = dict(zip(header, lines[1].split(",")))
        assert cells["BOUND1"] == "0.0287"
        assert cells["v1"] == "0.85"
        assert cells["BOUND2"] == "0.0943"
        assert (cells["v2"], cells["c2"]) == ("0.95", "0.40")
        assert cells["BOUND4"] == "0.0856"
        assert cells["kappa2"] == "0.037"
        assert cells["m"] == "2.83"

    def test_design_via_sizes(self, tmp_path, capsys):
        assert main(["bounds", "--N1", "41", "--N2", "20",
                     "--p1", "5", "--p2", "5", "--pretty"]) == 0
        out1 = capsys.readouterr().out
        assert "0.0287" in out1

    def test_low_dimension_is_numerical_error(self, capsys):
        assert main(["bounds", "--N1", "20", "--N2", "10",
                     "--p1", "1", "--p2", "1"]) == 2
        assert "numerical error" in capsys.readouterr().err

    def test_conflicting_size_flags(self, capsys):
        assert main(["bounds", "--n", "60", "--n1", "40", "--N1", "41",
                     "--N2", "20", "--p1", "5", "--p2", "5"]) == 1

    def test_missing_dimensions(self, capsys):
        assert main(["bounds", "--n", "60", "--n1", "40"]) == 1

    def test_output_file(self, tmp_path):
        out = tmp_path / "bounds.csv"
        assert main(["bounds", "--n", "60", "--n1", "40", "--p1", "5",
                     "--p2", "5", "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("p1,p2,n,n1,BOUND1")


class TestSimulate:
    def test_json_fields(self, capsys):
        assert main(["simulate", "--N1", "20", "--N2", "10", "--p1", "2",
                     "--p2", "2", "--reps", "2000", "--seed", "1"]) == 0
        report = json.loads(capsys.readouterr().out)[0]
        assert report["reps"] == 2000
        assert report["seed"] == 1
        assert 0.0 < report["mae"] < 0.5
        assert set(report["alpha1"]) == {"0.1", "0.05", "0.01"}

    def test_seed_reproducibility(self, capsys):
        argv = ["simulate", "--N1", "20", "--N2", "10", "--p1", "2",
                "--p2", "2", "--reps", "2000", "--seed", "7"]
        assert main(argv) == 0
        out1 = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == out1

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("SPHERICITY_SEED", "42")
        assert main(["simulate", "--N1", "20", "--N2", "10", "--p1", "2",
                     "--p2", "2", "--reps", "2000"]) == 0
        assert json.loads(capsys.readouterr().out)[0]["seed"] == 42

    def test_bad_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("SPHERICITY_SEED", "not-a-number")
        assert main(["simulate", "--N1", "20", "--N2", "10", "--p1", "2",
                     "--p2", "2", "--reps", "2000"]) == 1

    def test_raw_sampler(self, capsys):
        assert main(["simulate", "--N1", "12", "--N2", "4", "--p1", "2",
                     "--p2", "2", "--reps", "1000", "--sampler", "raw"]) == 0
        assert json.loads(capsys.readouterr().out)[0]["reps"] == 1000


class TestReproduce:
    def test_unknown_table(self, capsys):
        assert main(["reproduce", "table99"]) == 1
        assert "unknown table" in capsys.readouterr().err

    def test_bound_table_deterministic(self, capsys):
        assert main(["reproduce", "table4", "--pretty"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 5
        cells = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert cells["BOUND1"] == "0.0017"
        assert cells["kappa2"] == "0.838"
        assert cells["m"] == "4.35"

    def test_replay_matches_original(self, tmp_path, capsys):
        out = tmp_path / "t6.csv"
        argv = ["reproduce", "table6", "--reps", "1000", "--seed", "0",
                "--out", str(out)]
        assert main(argv) == 0
        original = out.read_text()
        assert main(["reproduce", "--input", str(out)]) == 0
        assert capsys.readouterr().out == original

    def test_replay_bound_schema(self, tmp_path, capsys):
        out = tmp_path / "t4.csv"
        assert main(["reproduce", "table4", "--out", str(out)]) == 0
        original = out.read_text()
        assert main(["reproduce", "--input", str(out)]) == 0
        assert capsys.readouterr().out == original

    def test_replay_empty_input(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("N1,N2,p1,p2,alpha\n")
        assert main(["reproduce", "--input", str(path)]) == 1

    def test_table_and_input_conflict(self, tmp_path, capsys):
        path = tmp_path / "x.csv"
        path.write_text("n,n1,p1,p2\n60,40,5,5\n")
        assert main(["reproduce", "table4", "--input", str(path)]) == 1

    def test_no_table_no_input(self, capsys):
        assert main(["reproduce"]) == 1

    def test_type1_table_with_seeds(self, capsys):
        assert main(["reproduce", "table6", "--reps", "1000", "--seed", "0",
                     "--pretty"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 28
        header = lines[0].split(",")
        assert header[:6] == ["N1", "N2", "p1", "p2", "alpha", "alpha1"]
        first = dict(zip(header, lines[1].split(",")))
        assert first["A_prop"] == "0.120"
        assert first["A_SYS"] == "0.122"


class TestConfig:
    def test_flat_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# demo run\nn = 60\nn1 = 40\np1 = 5\np2 = 5\npretty = true\n")
        assert main(["bounds", "--config", str(cfg)]) == 0
        assert "0.0287" in capsys.readouterr().out

    def test_json_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"n": 60, "n1": 40, "p1": 5, "p2": 5}))
        assert main(["bounds", "--config", str(cfg)]) == 0
        assert capsys.readouterr().out.startswith("p1,p2,n,n1")

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("seed = 5\nreps = 2000\nN1 = 20\nN2 = 10\np1 = 2\np2 = 2\n")
        assert main(["simulate", "--config", str(cfg), "--seed", "9"]) == 0
        assert json.loads(capsys.readouterr().out)[0]["seed"] == 9

    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bogus = 1\n")
        assert main(["bounds", "--config", str(cfg)]) == 1
        assert "unknown config key" in capsys.readouterr().err

    def test_bad_line(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just some words\n")
        assert main(["bounds", "--config", str(cfg)]) == 1

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["bounds", "--config", str(tmp_path / "nope.cfg")]) == 1


class TestOutputRoundTrip:
    def test_csv_reparses(self, capsys):
        import csv as csvmod
        import io
        assert main(["bounds", "--n", "60", "--n1", "40",
                     "--p1", "5", "--p2", "5"]) == 0
        text = capsys.readouterr().out
        rows = list(csvmod.DictReader(io.StringIO(text)))
        assert len(rows) == 1
        assert float(rows[0]["BOUND1"]) == pytest.approx(0.0287, abs=5e-5)

    def test_full_precision_json(self, capsys):
        assert main(["bounds", "--n", "60", "--n1", "40", "--p1", "5",
                     "--p2", "5", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)[0]
        # 17 significant digits survive a JSON round trip exactly
        assert isinstance(report["BOUND1"], float)
