"""Shared fixtures: benchmark reproduction CSVs generated once per
session through the primary package's command line tool.
"""

import subprocess
import sys

import pytest


def run_cli(args, out_path):
    cmd = [sys.executable, "-m", "sphericity.cli", *args, "--out", str(out_path)]
    subprocess.run(cmd, check=True)
    return out_path


@pytest.fixture(scope="session")
def type1_csvs(tmp_path_factory):
    """Type I error reproduction CSVs for all four benchmark grids,
    at a desk-scale replication count."""
    base = tmp_path_factory.mktemp("type1")
    paths = []
    for table in ("table6", "table7", "table8", "table9"):
        path = base / f"{table}.csv"
        run_cli(["reproduce", table, "--reps", "1000", "--seed", "0"], path)
        paths.append(str(path))
    return paths


@pytest.fixture(scope="session")
def type1_csvs_fine(tmp_path_factory):
    """The same four grids at a replication count high enough that the
    Monte Carlo noise cannot mask the dimension trend of the biases."""
    base = tmp_path_factory.mktemp("type1_fine")
    paths = []
    for table in ("table6", "table7", "table8", "table9"):
        path = base / f"{table}.csv"
        run_cli(["reproduce", table, "--reps", "20000", "--seed", "0"], path)
        paths.append(str(path))
    return paths


@pytest.fixture(scope="session")
def bounds_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("bounds") / "table4.csv"
    run_cli(["reproduce", "table4"], path)
    return str(path)
