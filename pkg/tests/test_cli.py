"""End-to-end CLI behavior: output documents, exit codes, plot data."""

import json
import subprocess
import sys

import pytest

from opgb.cli import canonical_json, main


@pytest.fixture
def specs(tmp_path):
    """Write the measure spec files used across CLI tests; returns path dict."""
    files = {
        "hermite": {"type": "classical", "family": "hermite"},
        "legendre": {"type": "classical", "family": "jacobi", "alpha": "0", "beta": "0"},
        "atoms3": {
            "type": "discrete",
            "atoms": [
                {"q": "-1", "w": "1", "d": 0},
                {"q": "0", "w": "1", "d": 0},
                {"q": "1", "w": "1", "d": 0},
            ],
        },
        "atoms6": {
            "type": "discrete",
            "atoms": [
                {"q": "-2", "w": "1"},
                {"q": "-1", "w": "2"},
                {"q": "0", "w": "1"},
                {"q": "1", "w": "3"},
                {"q": "2", "w": "1"},
                {"q": "3", "w": "2"},
            ],
        },
        "single": {"type": "discrete", "atoms": [{"q": "1", "w": "2"}]},
        "signed": {
            "type": "discrete",
            "atoms": [{"q": "0", "w": "1"}, {"q": "1", "w": "-3"}, {"q": "2", "w": "1"}],
        },
        "bad_atoms": {"type": "discrete", "atoms": "oops"},
        "list_atoms": {"type": "discrete", "atoms": [[1, 2]]},
    }
    paths = {}
    for name, doc in files.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    paths["broken"] = str(broken)
    paths["missing"] = str(tmp_path / "nope.json")
    return paths


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestPolys:
    def test_hermite_document(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["hermite"], "--n", "3"])
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "1"
        assert doc["h"] == ["1", "1/2", "1/2"]
        assert doc["p1"][2] == ["-1/2", "0", "1"]
        assert doc["p2"][2] == ["-1/2", "0", "1"]
        assert doc["hankel"] is True
        assert doc["jacobi_band"] == {"a": ["0", "0"], "b": ["1/2", "1"]}
        assert doc["mass"] == pytest.approx(1.7724538509, abs=1e-9)

    def test_discrete_document(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["atoms3"], "--n", "3"])
        assert code == 0
        doc = json.loads(out)
        assert doc["h"] == ["3", "2", "2/3"]
        assert doc["p1"][2] == ["-2/3", "0", "1"]
        assert "mass" not in doc

    def test_round_trip_bytes(self, capsys, specs):
        _, out = run_cli(capsys, ["polys", "--spec", specs["atoms3"], "--n", "3"])
        assert canonical_json(json.loads(out)) == out

    def test_float_mode(self, capsys, specs):
        code, out = run_cli(
            capsys, ["polys", "--spec", specs["atoms3"], "--n", "3", "--mode", "float"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "float"
        assert doc["h"][0] == 3.0
        assert doc["h"][2] == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_out_file(self, capsys, specs, tmp_path):
        target = tmp_path / "out.json"
        code, out = run_cli(
            capsys, ["polys", "--spec", specs["atoms3"], "--n", "2", "--out", str(target)]
        )
        assert code == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert doc["h"] == ["3", "2"]


class TestQuadrature:
    def test_legendre_two_point(self, capsys, specs):
        code, out = run_cli(capsys, ["quadrature", "--spec", specs["legendre"], "--k", "2"])
        assert code == 0
        doc = json.loads(out)
        assert doc["method"] == "eigh"
        assert doc["nodes"] == pytest.approx([-0.57735026919, 0.57735026919], abs=1e-9)
        assert doc["weights"] == pytest.approx([0.5, 0.5], abs=1e-12)
        assert doc["exactness"] < 1e-12

    def test_signed_measure_rejected(self, capsys, specs):
        code, out = run_cli(capsys, ["quadrature", "--spec", specs["signed"], "--k", "2"])
        assert code == 2
        assert json.loads(out)["error"] == "NonPositive"


class TestTransform:
    def test_christoffel(self, capsys, specs):
        code, out = run_cli(
            capsys,
            ["transform", "--spec", specs["atoms6"], "--transform", "christoffel",
             "--root", "7/2", "--n", "2"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["matches_factorization"] is True
        assert doc["roots"] == ["7/2"]
        assert len(doc["h"]) == 2

    def test_geronimus(self, capsys, specs):
        code, out = run_cli(
            capsys,
            ["transform", "--spec", specs["atoms6"], "--transform", "geronimus",
             "--g-root", "9/2", "--xi", "1/3", "--n", "3"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["matches_factorization"] is True
        assert doc["root"] == "9/2"
        assert doc["xi"] == "1/3"

    def test_linear_spectral(self, capsys, specs):
        code, out = run_cli(
            capsys,
            ["transform", "--spec", specs["atoms6"], "--transform", "linear-spectral",
             "--root", "7/2", "--g-root", "9/2", "--xi", "1/3", "--n", "3"],
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["h"]) == 3
        assert len(doc["moments"]) == 5
        assert doc["hankel"] is True

    def test_missing_roots(self, capsys, specs):
        code, out = run_cli(
            capsys, ["transform", "--spec", specs["atoms6"], "--transform", "christoffel"]
        )
        assert code == 1


class TestClassicalCheck:
    def test_hermite(self, capsys, specs):
        code, out = run_cli(capsys, ["classical-check", "--spec", specs["hermite"], "--n", "6"])
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert doc["eigenvalues"] == ["0", "-2", "-4", "-6", "-8", "-10", "-12"]
        assert {c["name"] for c in doc["checks"]} == {
            "subdiagonal_closed_form",
            "operator_diagonalization",
            "norm_ratio_parameter_shift",
        }

    def test_rejects_discrete(self, capsys, specs):
        code, out = run_cli(capsys, ["classical-check", "--spec", specs["atoms3"]])
        assert code == 1


class TestIdentities:
    def test_passes(self, capsys, specs):
        code, out = run_cli(
            capsys, ["identities", "--spec", specs["atoms6"], "--n", "5", "--seed", "7"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert all(c["residual"] <= 1e-9 for c in doc["checks"])

    def test_seed_determinism(self, capsys, specs):
        _, first = run_cli(
            capsys, ["identities", "--spec", specs["atoms6"], "--n", "4", "--seed", "3"]
        )
        _, second = run_cli(
            capsys, ["identities", "--spec", specs["atoms6"], "--n", "4", "--seed", "3"]
        )
        assert first == second


class TestPlotData:
    def test_hermite_grid(self, capsys, specs):
        code, out = run_cli(
            capsys,
            ["plot-data", "--spec", specs["hermite"], "--n", "2", "--range=-2:2",
             "--samples", "5"],
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,P0,P1,P2"
        assert len(lines) == 6
        rows = [line.split(",") for line in lines[1:]]
        assert all(len(r) == 4 for r in rows)
        assert all(float(r[1]) == 1.0 for r in rows)
        mid = rows[2]
        assert float(mid[0]) == 0.0
        assert float(mid[3]) == pytest.approx(-0.5, abs=1e-14)

    def test_bad_range(self, capsys, specs):
        code, out = run_cli(
            capsys, ["plot-data", "--spec", specs["hermite"], "--range", "oops"]
        )
        assert code == 1
        assert json.loads(out)["error"] == "schema"


class TestExitCodes:
    def test_malformed_atoms(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["bad_atoms"]])
        assert code == 1
        assert json.loads(out)["error"] == "schema"

    def test_list_form_atoms(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["list_atoms"]])
        assert code == 1
        assert json.loads(out)["error"] == "schema"

    def test_missing_file(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["missing"]])
        assert code == 1
        assert json.loads(out)["error"] == "schema"

    def test_broken_json(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["broken"]])
        assert code == 1
        assert json.loads(out)["error"] == "schema"

    def test_not_quasi_definite(self, capsys, specs):
        code, out = run_cli(capsys, ["polys", "--spec", specs["single"], "--n", "2"])
        assert code == 2
        doc = json.loads(out)
        assert doc["error"] == "NotQuasiDefinite"
        assert doc["index"] == 1


class TestEntryPoint:
    def test_installed_script(self, specs):
        proc = subprocess.run(
            ["opgb", "polys", "--spec", specs["atoms3"], "--n", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["h"] == ["3", "2"]

    def test_module_invocation(self, specs):
        proc = subprocess.run(
            [sys.executable, "-m", "opgb.cli", "quadrature", "--spec", specs["atoms3"],
             "--k", "1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["nodes"] == [pytest.approx(0.0, abs=1e-14)]
        assert doc["weights"] == [pytest.approx(3.0, abs=1e-14)]
