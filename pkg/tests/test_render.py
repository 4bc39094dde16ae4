import json
from fractions import Fraction

import pytest

from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.algebra.ratfun import RationalFunction
from boxcount.algebra.series import BoxSeries, z_series
from boxcount.render import (q_monomial, render, report_json, report_text,
                             series_dict, series_table, series_text,
                             split_fraction)

NAMES = ("t1", "t2")
t1 = LaurentPolynomial.variable(NAMES, "t1")


def graded():
    return BoxSeries({((0,), 0): 1, ((1,), 1): -2, ((1,), 2): Fraction(1, 3)},
                     2, qnames=("Q1",), qcaps=(1,))


class TextTest(object):
    def test_mcmahon(self):
        assert series_text(z_series([1, 1, 3, 6], 3)) == "1 + z + 3z^2 + 6z^3"

    def test_signs_and_fractions(self):
        series = z_series([-1, 0, Fraction(-1, 2), 1], 3)
        assert series_text(series) == "-1 - (1/2)z^2 + z^3"

    def test_zero(self):
        assert series_text(BoxSeries.zero(3)) == "0"

    def test_polynomial_coefficient(self):
        series = z_series([1, t1 + 1], 1)
        assert series_text(series) == "1 + (1 + t1)*z"

    def test_rational_coefficient(self):
        series = z_series([RationalFunction(t1, [(2, 0)])], 0)
        assert series_text(series) == "(t1)/((1 - t1))"

    def test_graded(self):
        assert series_text(graded()) == "1: 1\nQ1: -2z + (1/3)z^2"

    def test_q_monomial(self):
        assert q_monomial(("Q1", "Q2"), (2, 1)) == "Q1^2*Q2"
        assert q_monomial(("Q1", "Q2"), (0, 0)) == "1"


class StructuredTest(object):
    def test_json(self):
        data = json.loads(render(graded(), "json"))
        assert data == series_dict(graded())
        assert data["order"] == 2
        assert data["qcaps"] == {"Q1": 1}
        assert data["terms"]["Q1"] == {"1": "-2", "2": "1/3"}

    def test_json_rational_coefficient(self):
        series = z_series([RationalFunction(t1, [(2, 0)])], 0)
        assert series_dict(series)["terms"]["1"]["0"] == \
            {"num": "t1", "den": "(1 - t1)"}

    def test_split_fraction(self):
        assert split_fraction(Fraction(-3, 4)) == ("-3", "4")
        assert split_fraction(t1) == ("t1", "1")

    def test_csv(self):
        table = series_table(graded())
        assert list(table.columns) == ["q", "z", "num", "den"]
        assert len(table) == 3
        lines = render(graded(), "csv").splitlines()
        assert lines[0] == "q,z,num,den"
        assert lines[-1] == "Q1,2,1,3"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render(graded(), "xml")


class ReportTest(object):
    REPORT = {"check": "mcmahon", "order": 5, "status": "fail",
              "witness": {"n": 3}, "seed": 7}

    def test_text(self):
        assert report_text(self.REPORT) == \
            "mcmahon through order 5: fail (seed 7)\n  n: 3"

    def test_json(self):
        assert json.loads(report_json(self.REPORT)) == self.REPORT
