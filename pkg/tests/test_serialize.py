import os
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import rho_exprs
from pertwave.cauchy import Field2D, Grid2D
from pertwave.errors import FormatError
from pertwave.ring import Polynomial, RhoExpr
from pertwave.serialize import (FORMAT_VERSION, atomic_write_text,
                                bundle_to_doc, doc_to_expr, doc_to_poly,
                                dumps, expr_to_doc, field_to_csv, poly_to_doc,
                                read_doc, read_doc_lines, read_field_csv,
                                read_points_csv, read_samples_csv, write_doc,
                                write_doc_lines, write_field_csv)
from pertwave.solutions import build_phi


class TestExprDocs:
    @settings(max_examples=60, deadline=None)
    @given(rho_exprs(3))
    def test_round_trip(self, expr):
        assert doc_to_expr(expr_to_doc(expr)) == expr

    def test_doc_shape(self):
        expr = RhoExpr.rho(2) + RhoExpr.from_polynomial(
            Polynomial(2, {(1, 0): Fraction(1, 3)}))
        doc = expr_to_doc(expr)
        assert doc["format_version"] == FORMAT_VERSION
        assert doc["dim"] == 2
        assert [layer["rho_power"] for layer in doc["layers"]] == [0, 1]
        assert doc["layers"][0]["terms"] == [
            {"coeff": "1/3", "exponents": [1, 0]}]

    def test_doc_is_deterministic(self):
        expr = RhoExpr.rho(3, 2).scale(Fraction(5, 7))
        assert dumps(expr_to_doc(expr)) == dumps(expr_to_expr_roundtrip(expr))

    def test_poly_round_trip(self):
        p = Polynomial(2, {(2, 1): Fraction(-3, 2), (0, 0): Fraction(4)})
        assert doc_to_poly(poly_to_doc(p)) == p

    def test_poly_doc_rejects_rho_layers(self):
        with pytest.raises(FormatError):
            doc_to_poly(expr_to_doc(RhoExpr.rho(2)))

    def test_version_check(self):
        doc = expr_to_doc(RhoExpr.rho(2))
        doc["format_version"] = 99
        with pytest.raises(FormatError):
            doc_to_expr(doc)

    def test_malformed_docs(self):
        with pytest.raises(FormatError):
            doc_to_expr({"format_version": FORMAT_VERSION})
        doc = expr_to_doc(RhoExpr.rho(2))
        doc["layers"][0]["terms"][0]["coeff"] = "1/0"
        with pytest.raises(FormatError):
            doc_to_expr(doc)

    def test_bundle_doc(self):
        bundle = build_phi(Polynomial(2, {(1, 1): Fraction(1)}), 2)
        doc = bundle_to_doc(bundle)
        assert doc["dim"] == 2
        assert doc_to_poly(doc["seed"]) == bundle.seed
        assert doc_to_expr(doc["phi"]) == bundle.phi
        assert len(doc["coefficients"]) == 2


def expr_to_expr_roundtrip(expr):
    return expr_to_doc(doc_to_expr(expr_to_doc(expr)))


class TestFiles:
    def test_write_read_doc(self, tmp_path):
        path = str(tmp_path / "expr.json")
        expr = RhoExpr.rho(2, 3)
        write_doc(path, expr_to_doc(expr))
        assert doc_to_expr(read_doc(path)) == expr

    def test_read_doc_bad_json(self, tmp_path):
        path = str(tmp_path / "bad.json")
        with open(path, "w") as f:
            f.write("{not json")
        with pytest.raises(FormatError):
            read_doc(path)

    def test_doc_lines(self, tmp_path):
        path = str(tmp_path / "basis.jsonl")
        polys = [Polynomial(2, {(1, 0): Fraction(1)}),
                 Polynomial(2, {(0, 1): Fraction(1)})]
        write_doc_lines(path, [poly_to_doc(p) for p in polys])
        docs = read_doc_lines(path)
        assert [doc_to_poly(d) for d in docs] == polys
        with open(path) as f:
            assert len(f.read().strip().splitlines()) == 2

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        path = str(tmp_path / "out.txt")
        atomic_write_text(path, "hello\n")
        assert open(path).read() == "hello\n"
        assert os.listdir(tmp_path) == ["out.txt"]


class TestFieldCsv:
    def field(self):
        g = Grid2D(-1.0, 1.0, 3, 0.0, 0.5, 2)
        vals = np.arange(6, dtype=float).reshape(3, 2) / 7.0
        return Field2D(grid=g, values=vals)

    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "field.csv")
        f = self.field()
        write_field_csv(path, f)
        back = read_field_csv(path)
        assert back.grid == f.grid
        assert np.array_equal(back.values, f.values)

    def test_header_and_order(self):
        text = field_to_csv(self.field())
        lines = text.strip().splitlines()
        assert lines[0] == "x,t,value"
        # t is the outer loop: the first nx rows share t = 0
        assert all(line.split(",")[1] == "0" for line in lines[1:4])

    def test_float_precision_is_exact(self, tmp_path):
        g = Grid2D(0.0, 1.0, 2, 0.0, 1.0, 2)
        vals = np.array([[1.0 / 3.0, np.pi], [1e-300, 0.1 + 0.2]])
        path = str(tmp_path / "field.csv")
        write_field_csv(path, Field2D(grid=g, values=vals))
        back = read_field_csv(path)
        assert np.array_equal(back.values, vals)

    def test_rejects_ragged_grid(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        with open(path, "w") as f:
            f.write("x,t,value\n0,0,1\n1,0,2\n0,1,3\n")
        with pytest.raises(FormatError):
            read_field_csv(path)

    def test_rejects_wrong_header(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        with open(path, "w") as f:
            f.write("a,b,c\n0,0,1\n")
        with pytest.raises(FormatError):
            read_field_csv(path)


class TestPointAndSampleCsv:
    def test_points(self, tmp_path):
        path = str(tmp_path / "pts.csv")
        with open(path, "w") as f:
            f.write("t,x1\n0.1,0.2\n-0.3,0.4\n")
        pts = read_points_csv(path, 2)
        assert pts.shape == (2, 2)
        assert pts[1, 0] == -0.3

    def test_points_wrong_width(self, tmp_path):
        path = str(tmp_path / "pts.csv")
        with open(path, "w") as f:
            f.write("t,x1\n0.1,0.2\n")
        with pytest.raises(FormatError):
            read_points_csv(path, 4)

    def test_samples_sorted(self, tmp_path):
        path = str(tmp_path / "samples.csv")
        with open(path, "w") as f:
            f.write("w,u0,v0\n1.0,2.0,3.0\n-1.0,4.0,5.0\n0.0,6.0,7.0\n")
        w, u, v = read_samples_csv(path)
        assert list(w) == [-1.0, 0.0, 1.0]
        assert list(u) == [4.0, 6.0, 2.0]
        assert list(v) == [5.0, 7.0, 3.0]

    def test_samples_wrong_header(self, tmp_path):
        path = str(tmp_path / "samples.csv")
        with open(path, "w") as f:
            f.write("w,u,v\n0,1,2\n")
        with pytest.raises(FormatError):
            read_samples_csv(path)
