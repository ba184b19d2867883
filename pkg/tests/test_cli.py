import csv
import json
import math

import numpy as np
import pytest

from conftest import M
from rotrange import io
from rotrange.cli import main, parse_grid
from rotrange.errors import InvalidSpec, MatrixFileError


@pytest.fixture
def perm_file(tmp_path):
    def make(*alphas):
        path = tmp_path / ("m" + "_".join(map(str, alphas)) + ".json")
        io.write_matrix(path, M(*alphas))
        return path
    return make


class TestMatrixFile:
    def test_round_trip_bit_exact(self, tmp_path, rng):
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        A[0, 0] = 1 / 3 + 1e-300j
        path = tmp_path / "a.json"
        io.write_matrix(path, A, label="x", source="test")
        mf = io.read_matrix(path)
        assert np.array_equal(mf.matrix, A)
        assert mf.label == "x" and mf.source == "test"

    @pytest.mark.parametrize("obj", [
        [],
        {"d": 2},
        {"d": 0, "entries": []},
        {"d": 2, "entries": [[[0, 0], [0, 0]]]},
        {"d": 1, "entries": [[[0]]]},
        {"d": 1, "entries": [[["a", 0]]]},
        {"d": 1, "entries": [[[True, 0]]]},
        {"d": 1, "entries": [[[0, 0]]], "label": 3},
        {"d": True, "entries": [[[0, 0]]]},
    ])
    def test_schema_errors(self, obj):
        with pytest.raises(MatrixFileError):
            io.parse_matrix(obj)

    def test_non_finite(self, tmp_path):
        path = tmp_path / "nan.json"
        path.write_text('{"d": 1, "entries": [[[NaN, 0]]]}')
        with pytest.raises(MatrixFileError):
            io.read_matrix(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MatrixFileError):
            io.read_matrix(tmp_path / "nope.json")


class TestCheck:
    def test_pass(self, perm_file, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert main(["check", str(perm_file(1, 2, 3)), "--json", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["passes"] and rep["P"]["convention_sign"] == 1
        assert rep["P"]["coefficients_ascending"][1] == pytest.approx(-3.5)
        assert json.loads(capsys.readouterr().out) == rep

    def test_disk_fails(self, tmp_path, capsys):
        path = tmp_path / "disk.json"
        assert main(["family", "disk", "--a", "1", "--out", str(path)]) == 0
        assert main(["check", str(path)]) == 1
        rep = json.loads(capsys.readouterr().out)
        assert rep["disk_regime"]["det_zero"]
        assert rep["certificate"]["disk_regime"]

    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{bad")
        assert main(["check", str(path)]) == 2

    def test_too_small(self, tmp_path):
        path = tmp_path / "two.json"
        io.write_matrix(path, np.eye(2))
        assert main(["check", str(path)]) == 2

    def test_bad_tol(self, perm_file):
        assert main(["check", str(perm_file(1, 2, 3)), "--tol", "0"]) == 2


class TestBoundary:
    def test_outputs(self, perm_file, tmp_path, capsys):
        path = perm_file(1, 2, 1, 2)
        csv_p, svg_p, pol_p = tmp_path / "b.csv", tmp_path / "b.svg", tmp_path / "p.csv"
        rc = main(["boundary", str(path), "--samples", "64", "--csv", str(csv_p),
                   "--svg", str(svg_p), "--polar", str(pol_p)])
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["passes"] and len(rep["flat_segments"]) == 4
        rows = list(csv.reader(csv_p.open()))
        assert rows[0] == ["theta", "wM", "dwM", "re_zeta", "im_zeta", "flag"]
        assert len(rows) == 1 + 64 + 4  # one extra sample per kink
        svg = svg_p.read_text()
        assert svg.count('class="flat"') == 4 and svg.count('class="axis"') == 4
        assert 'stroke-dasharray' in svg
        polar = list(csv.reader(pol_p.open()))
        assert polar[0] == ["psi", "r"] and len(polar) == 65

    def test_triangle_svg(self, perm_file, tmp_path, capsys):
        svg_p = tmp_path / "t.svg"
        assert main(["boundary", str(perm_file(1, 1, 1)), "--samples", "48",
                     "--svg", str(svg_p)]) == 0
        assert json.loads(capsys.readouterr().out)["is_polygon"]
        assert svg_p.read_text().count('class="axis"') == 3

    def test_deterministic(self, perm_file, tmp_path, capsys):
        path = perm_file(1, 2, 3)
        outs = []
        for k in range(2):
            c = tmp_path / f"{k}.csv"
            main(["boundary", str(path), "--samples", "48", "--csv", str(c)])
            outs.append(c.read_bytes())
        assert outs[0] == outs[1]

    def test_too_few_samples(self, perm_file):
        assert main(["boundary", str(perm_file(1, 2, 3)), "--samples", "10"]) == 2

    def test_solver_failure(self, perm_file, monkeypatch):
        from rotrange import cli
        from rotrange.errors import NoConvergence

        def boom(*a, **k):
            raise NoConvergence("forced")
        monkeypatch.setattr(cli, "boundary_curve", boom)
        assert main(["boundary", str(perm_file(1, 2, 3))]) == 3

    def test_uncertified_warning(self, tmp_path, capsys, rng):
        path = tmp_path / "r.json"
        io.write_matrix(path, rng.normal(size=(3, 3)) + 0j)
        assert main(["boundary", str(path), "--samples", "48"]) == 0
        assert "warning" in json.loads(capsys.readouterr().out)


class TestFamily:
    def test_perm(self, tmp_path, capsys):
        out = tmp_path / "p.json"
        assert main(["family", "perm", "--alphas", "1,2,3", "--out", str(out)]) == 0
        assert io.read_matrix(out).d == 3
        assert main(["check", str(out)]) == 0

    def test_d4(self, tmp_path, capsys):
        out = tmp_path / "d4.json"
        assert main(["family", "d4", "--variant", "a-plus", "--a", "1", "--out", str(out)]) == 0
        A = io.read_matrix(out).matrix
        assert A[0, 3] == pytest.approx(math.sqrt(2 / 3))
        assert main(["check", str(out)]) == 0

    def test_complex_perm(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        assert main(["family", "perm", "--alphas", "1j,2,1+1j", "--out", str(out)]) == 0
        assert main(["check", str(out)]) == 0

    @pytest.mark.parametrize("argv", [
        ["d4", "--variant", "a-minus", "--a", "2"],
        ["d4", "--variant", "a-plus"],
        ["d4"],
        ["disk", "--a", "1.5"],
        ["disk"],
        ["perm", "--alphas", "1,0,1"],
        ["perm", "--alphas", "x"],
        ["perm"],
    ])
    def test_domain_errors(self, argv, tmp_path):
        assert main(["family", *argv, "--out", str(tmp_path / "x.json")]) == 2


class TestResultant:
    def test_values(self, capsys):
        for alphas, expect in (("1,1,1", 0), ("2,1,1", 108)):
            assert main(["resultant", "--d", "3", "--alphas", alphas]) == 0
            assert json.loads(capsys.readouterr().out)["closed_form"] == expect
        assert main(["resultant", "--d", "5", "--alphas", "1,1,1,1,1"]) == 0
        assert json.loads(capsys.readouterr().out)["closed_form"] == 0

    def test_unsupported(self):
        assert main(["resultant", "--d", "6", "--alphas", "1,1,1,1,1,1"]) == 2
        assert main(["resultant", "--d", "3", "--alphas", "1,1"]) == 2


class TestScan:
    def test_empty(self, tmp_path):
        out = tmp_path / "e.csv"
        assert main(["scan", "--d", "3", "--grid", "1:2:0", "--out", str(out)]) == 0
        assert out.read_text() == "alpha1,alpha2,alpha3,oracle,sign,flat_detected\n"

    def test_d3_zero_on_diagonal(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["scan", "--d", "3", "--grid", "0.5:2:4", "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 64
        for r in rows:
            diag = r["alpha1"] == r["alpha2"] == r["alpha3"]
            assert (r["sign"] == "0") == diag
            assert (r["flat_detected"] == "1") == diag

    def test_unsupported(self, tmp_path):
        assert main(["scan", "--d", "4", "--grid", "1:2:2", "--out", str(tmp_path / "x")]) == 2
        assert main(["scan", "--d", "3", "--grid", "0:2:2", "--out", str(tmp_path / "x")]) == 2

    def test_grid_parse(self):
        assert np.allclose(parse_grid("1:2:3"), [1, 1.5, 2])
        assert np.allclose(parse_grid("1,4"), [1, 4])
        with pytest.raises(InvalidSpec):
            parse_grid("1:2")
