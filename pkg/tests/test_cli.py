import csv
import io
import json

import pytest

from deltawall import cli


def _run(capsys, *argv):
    status = cli.main(list(argv))
    return status, capsys.readouterr().out


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bound_below_threshold(capsys):
    status, out = _run(
        capsys, "bound", "--bc", "dirichlet", "--lambda", "2", "--x0", "0.5"
    )
    assert status == 0
    assert out == "no bound state (threshold: x0 = 0.5)\n"


def test_bound_at_the_wall(capsys):
    status, out = _run(capsys, "bound", "--bc", "neumann", "--lambda", "1", "--x0", "0")
    assert status == 0
    assert out == "E = -1.0\n"


def test_bound_asymptote(capsys):
    status, out = _run(
        capsys, "bound", "--bc", "d", "--lambda", "2", "--x0", "inf", "--format", "csv"
    )
    assert status == 0
    assert _rows(out) == [
        {
            "lambda": "2.0",
            "x0": "inf",
            "energy": "-1.0",
            "kappa": "1.0",
            "exists": "true",
            "asymptotic": "true",
        }
    ]


def test_bound_strong_coupling(capsys):
    status, out = _run(
        capsys, "bound", "--bc", "neumann", "--lambda", "1000", "--x0", "1"
    )
    assert status == 0
    assert out == "E = -250000.0\n"


def test_resonances(capsys):
    status, out = _run(
        capsys,
        "resonances",
        "--bc",
        "dirichlet",
        "--lambda",
        "2",
        "--x0",
        "1",
        "--n-max",
        "3",
    )
    assert status == 0
    rows = _rows(out)
    assert list(rows[0]) == list(cli.RESONANCE_COLUMNS)
    assert len(rows) == 3
    assert float(rows[0]["z1"]) == pytest.approx(7.42, abs=0.05)
    assert float(rows[0]["z2"]) == pytest.approx(1.40, abs=0.05)
    assert all(float(row["gamma"]) > 0 for row in rows)


def test_sweep_json(capsys):
    status, out = _run(
        capsys,
        "sweep",
        "--bc",
        "dirichlet",
        "--fixed",
        "lambda",
        "--value",
        "2",
        "--grid",
        "0.25",
        "1.0",
        "4",
        "--format",
        "json",
    )
    assert status == 0
    document = json.loads(out)
    assert document["columns"] == list(cli.SWEEP_COLUMNS)
    assert [row["exists"] for row in document["rows"]] == [False, False, True, True]
    assert document["rows"][1]["energy"] == 0.0
    assert document["metadata"]["config"]["fixed"] == "lambda"
    assert "version" in document["metadata"]


def test_kernels(capsys):
    status, out = _run(
        capsys, "green", "--bc", "n", "--x", "1", "--y", "1", "--energy", "-1"
    )
    assert status == 0 and out.startswith("green(1.0, 1.0; -1.0) = ")
    status, out = _run(
        capsys,
        "green",
        "--bc",
        "n",
        "--x",
        "1",
        "--y",
        "1",
        "--energy",
        "-4",
        "--lambda",
        "1",
        "--x0",
        "0.5",
    )
    assert status == 0 and out.startswith("perturbed(")
    status, out = _run(
        capsys, "heat", "--bc", "d", "--x", "1", "--y", "2", "--time", "0.5"
    )
    assert status == 0 and out.startswith("heat(")


def test_shell3d(capsys):
    status, out = _run(
        capsys,
        "shell3d",
        "--extension",
        "00",
        "--lambda",
        "1",
        "--r0",
        "1",
        "--r",
        "0.5",
    )
    assert status == 0 and out.startswith("E = ") and "psi(0.5)" in out
    status, out = _run(
        capsys, "shell3d", "--extension", "inf0", "--lambda", "1", "--r0", "0.5"
    )
    assert status == 0 and out == "no ground state (threshold: r0 = 1.0)\n"


def test_figure_to_file(tmp_path, capsys):
    path = tmp_path / "figure.csv"
    status, out = _run(capsys, "figure", "4R", "--count", "5", "--out", str(path))
    assert status == 0 and out == ""
    rows = _rows(path.read_text())
    assert len(rows) == 20
    assert {row["curve"] for row in rows} == {"0.1", "1.0", "3.0", "inf"}


def test_output_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        argv = ["figure", "5", "--alpha", "1", "--n-max", "2", "--format", "json"]
        assert cli.main(argv + ["--out", str(path)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_verify(capsys):
    status, out = _run(
        capsys, "verify", "--bc", "neumann", "--lambda", "1", "--x0", "1"
    )
    rows = _rows(out)
    assert status == 0
    assert {row["check"] for row in rows} >= {
        "shooting_eigenvalue",
        "normalization",
        "laplace_green",
        "resolvent_identity",
        "semigroup",
        "continued_pole_branch_0",
        "grid_scan_branch_0",
    }
    assert all(row["passed"] == "true" for row in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--bc", "robin", "--lambda", "1", "--x0", "1"],
        ["bound", "--bc", "d", "--lambda", "-1", "--x0", "1"],
        ["green", "--bc", "d", "--x", "1", "--y", "1", "--energy", "1"],
        ["resonances", "--bc", "d", "--lambda", "1", "--x0", "inf"],
        "sweep --bc d --fixed x0 --value 1 --grid 1 2 1".split(),
        ["figure", "9"],
        ["bound", "--bc", "d", "--lambda", "1", "--x0", "1", "--format", "xml"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2
    assert capsys.readouterr().out == ""


def test_pole_at_requested_energy_is_a_numerical_failure(capsys):
    status, out = _run(
        capsys,
        "green",
        "--bc",
        "n",
        "--x",
        "1",
        "--y",
        "1",
        "--energy",
        "-1",
        "--lambda",
        "1",
        "--x0",
        "0",
    )
    assert status == 1 and out == ""


def test_config_file(tmp_path, capsys):
    config = tmp_path / "deltawall.yaml"
    config.write_text("output:\n  format: json\n")
    status, out = _run(
        capsys,
        "sweep",
        "--bc",
        "n",
        "--fixed",
        "x0",
        "--value",
        "1",
        "--grid",
        "1",
        "2",
        "2",
        "--config",
        str(config),
    )
    assert status == 0
    assert len(json.loads(out)["rows"]) == 2
