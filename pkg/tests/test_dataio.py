"""File grammars: complex+cocycle JSON, metric CSV/JSON, deterministic writers."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import BASIS0
from oneforms import (
    InputFormatError,
    MetricData,
    dump_complex_cocycle,
    dump_metric_data,
    load_complex_cocycle,
    load_metric_data,
    write_json,
    write_rows_csv,
)
from oneforms.fixtures import FIXTURES, build_fixture

SQRT2 = math.sqrt(2)


class TestComplexCocycleJson:
    def test_round_trip_all_complex_fixtures(self, tmp_path):
        for name in FIXTURES:
            built = build_fixture(name)
            if isinstance(built, MetricData):
                continue
            kx, c = built
            path = tmp_path / f"{name}.json"
            dump_complex_cocycle(kx, c, path)
            kx2, c2 = load_complex_cocycle(path)
            assert kx2.maximal_simplices() == kx.maximal_simplices()
            assert c2.basis.theta == c.basis.theta
            for e in kx.edges:
                assert c2.value(*e) == c.value(*e), (name, e)

    def test_irrational_coordinates_survive(self, tmp_path):
        kx, c = build_fixture("figure_eight_irrational")
        path = tmp_path / "f8.json"
        dump_complex_cocycle(kx, c, path)
        obj = json.loads(path.read_text())
        assert obj["theta"] == [SQRT2]
        assert all(len(v) == 2 for v in obj["cocycle"].values())
        _, c2 = load_complex_cocycle(path)
        for e in kx.edges:
            assert c2.value(*e).coords == c.value(*e).coords

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"cocycle": {}}')
        with pytest.raises(InputFormatError, match="max_simplices"):
            load_complex_cocycle(path)
        path.write_text('{"max_simplices": [[0, 1]]}')
        with pytest.raises(InputFormatError, match="cocycle"):
            load_complex_cocycle(path)

    def test_invalid_json_reports_path(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(InputFormatError, match="broken.json"):
            load_complex_cocycle(path)

    def test_bad_edge_keys(self, tmp_path):
        path = tmp_path / "edges.json"
        base = {"theta": [], "max_simplices": [[0, 1]]}
        for key in ("1-0", "0-0", "a-b", "0:1", "0-1-2"):
            base["cocycle"] = {key: ["1"]}
            path.write_text(json.dumps(base))
            with pytest.raises(InputFormatError):
                load_complex_cocycle(path)

    def test_wrong_coordinate_count(self, tmp_path):
        path = tmp_path / "coords.json"
        path.write_text(json.dumps({
            "theta": [SQRT2],
            "max_simplices": [[0, 1]],
            "cocycle": {"0-1": ["1/2"]},
        }))
        with pytest.raises(InputFormatError, match="expected 2 coordinates"):
            load_complex_cocycle(path)

    def test_bad_rational_named_with_context(self, tmp_path):
        path = tmp_path / "rat.json"
        path.write_text(json.dumps({
            "theta": [],
            "max_simplices": [[0, 1]],
            "cocycle": {"0-1": ["0.1.2"]},
        }))
        with pytest.raises(InputFormatError, match="0-1"):
            load_complex_cocycle(path)

    def test_tol_override(self, tmp_path):
        kx, c = build_fixture("path_w")
        path = tmp_path / "p.json"
        dump_complex_cocycle(kx, c, path)
        _, c2 = load_complex_cocycle(path, tol=1e-6)
        assert c2.basis.tol == 1e-6


class TestMetricJson:
    def test_round_trip_distances(self, tmp_path):
        md = build_fixture("square_cloud")
        path = tmp_path / "sq.json"
        dump_metric_data(md, path)
        md2 = load_metric_data(path)
        assert md2.n == md.n
        assert np.allclose(md2.dist, md.dist)
        assert md2.pairs == md.pairs
        for (i, j) in md.pairs:
            assert md2.value(i, j) == md.value(i, j)

    def test_points_input(self, tmp_path):
        path = tmp_path / "pts.json"
        path.write_text(json.dumps({
            "theta": [],
            "points": [[0.0, 0.0], [3.0, 4.0]],
            "pairs": [[0, 1]],
            "f": {"0-1": ["1/2"]},
        }))
        md = load_metric_data(path)
        assert md.dist[0, 1] == pytest.approx(5.0)
        assert md.value(0, 1) == BASIS0.rational("1/2")

    def test_needs_points_or_distances(self, tmp_path):
        path = tmp_path / "none.json"
        path.write_text(json.dumps({"theta": [], "pairs": [], "f": {}}))
        with pytest.raises(InputFormatError, match="points.*distances"):
            load_metric_data(path)

    def test_bad_pair_entry(self, tmp_path):
        path = tmp_path / "pairs.json"
        path.write_text(json.dumps({
            "theta": [], "distances": [[0.0, 1.0], [1.0, 0.0]],
            "pairs": [[0, 1, 2]], "f": {},
        }))
        with pytest.raises(InputFormatError, match="bad pair entry"):
            load_metric_data(path)


class TestMetricCsv:
    def test_round_trip(self, tmp_path):
        md = build_fixture("square_cloud")
        path = tmp_path / "sq.csv"
        dump_metric_data(md, path)
        md2 = load_metric_data(path)
        assert md2.n == md.n
        assert np.allclose(md2.dist, md.dist)
        assert md2.pairs == md.pairs
        for (i, j) in md.pairs:
            assert md2.value(i, j) == md.value(i, j)

    def test_header_required(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("0,1,1.0\n")
        with pytest.raises(InputFormatError, match="theta"):
            load_metric_data(path)

    def test_line_numbers_in_errors(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("theta\n0,1,1.0\n1,0,1.0\n")
        with pytest.raises(InputFormatError, match=":3"):
            load_metric_data(path)

    def test_duplicate_pair(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("theta\n0,1,1.0\n0,1,2.0\n")
        with pytest.raises(InputFormatError, match="duplicate"):
            load_metric_data(path)

    def test_incomplete_table(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("theta\n0,2,1.0\n")
        with pytest.raises(InputFormatError, match="incomplete"):
            load_metric_data(path)

    def test_short_record(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("theta\n0,1\n")
        with pytest.raises(InputFormatError, match="expected i,j,distance"):
            load_metric_data(path)


class TestWriters:
    def test_write_json_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        obj = {"z": 1, "a": [1.5, 2], "m": {"y": None, "x": "s"}}
        write_json(obj, a)
        write_json({"m": {"x": "s", "y": None}, "a": [1.5, 2], "z": 1}, b)
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().endswith("}\n")
        assert json.loads(a.read_text()) == obj

    def test_write_json_refuses_nan(self, tmp_path):
        with pytest.raises(ValueError):
            write_json({"x": math.nan}, tmp_path / "nan.json")

    def test_write_rows_csv(self, tmp_path):
        path = tmp_path / "rows.csv"
        rows = [{"trial": 0, "eps": 0.1, "degree": 0, "d_delta": 0.0,
                 "d_gamma": 0.05, "modulus": 0.5, "d_flat": 0.1,
                 "ignored": "x"}]
        cols = ["trial", "eps", "degree", "d_delta", "d_gamma", "modulus"]
        write_rows_csv(rows, path, cols)
        lines = path.read_text().strip().split("\n")
        assert lines[0].strip() == "trial,eps,degree,d_delta,d_gamma,modulus"
        assert lines[1].strip() == "0,0.1,0,0.0,0.05,0.5"
