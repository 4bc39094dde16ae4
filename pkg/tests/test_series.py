from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boxcount.algebra.series import BoxSeries, z_series
from boxcount.exceptions import (AlgebraError, ArityError, NonInvertibleError,
                                 TruncationError)

units = st.lists(st.integers(-5, 5), min_size=2, max_size=7).filter(
    lambda c: c[0] != 0).map(BoxSeries.from_list)
one_plus = st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(
    lambda c: BoxSeries.from_list([1] + c))
no_constant = st.lists(st.integers(-4, 4), min_size=1, max_size=5).map(
    lambda c: z_series([0] + c, 5))


def one(order, **kwargs):
    return BoxSeries.constant(1, order, **kwargs)


class ArithmeticTest(object):
    def test_geometric_series(self):
        inverse = z_series([1, -1], 5).invert()
        assert inverse.coefficients() == [1] * 6

    @given(units)
    def test_inverse(self, series):
        assert series * series.invert() == one(series.order)

    def test_inverse_keeps_relative_precision(self):
        inverse = z_series([0, 1, 1], 4).invert()
        assert inverse.low == -1
        assert inverse.order == 2
        assert inverse.coefficients() == [1, -1, 1, -1]

    def test_vanishing_series_is_not_invertible(self):
        with pytest.raises(NonInvertibleError):
            BoxSeries.zero(3).invert()

    def test_truncation(self):
        series = z_series([1, 2, 3], 2)
        assert series.truncate(1).coefficients() == [1, 2]
        with pytest.raises(TruncationError):
            series.truncate(3)
        with pytest.raises(TruncationError):
            series.coefficient(3)

    def test_product_order(self):
        a = z_series([0, 1], 3)
        b = z_series([1, 1, 1, 1], 3)
        product = a * b
        assert product.order == 3
        assert product.coefficients() == [0, 1, 1, 1]

    def test_shift(self):
        shifted = z_series([1, 2], 1).shift(-2)
        assert shifted.low == -2
        assert shifted.order == -1
        assert shifted.coefficient(-1) == 2

    def test_adams(self):
        series = z_series([0, 1, 1], 4).adams(2)
        assert series.coefficient(2) == 1
        assert series.coefficient(4) == 1
        assert series.coefficient(3) == 0

    def test_first_difference(self):
        a = z_series([1, 2, 3], 2)
        b = z_series([1, 2, 4], 2)
        assert a.first_difference(b) == ((), 2)
        assert a.first_difference(a.truncate(1)) is None


class ExponentialTest(object):
    @given(one_plus)
    def test_exp_log(self, series):
        assert series.log().exp() == series

    def test_plethystic_exp_of_z(self):
        series = z_series([0, 1], 4).plethystic_exp()
        assert series.coefficients() == [1] * 5

    def test_plethystic_exp_gives_mcmahon(self):
        series = z_series(range(7), 6).plethystic_exp()
        assert series.coefficients() == [1, 1, 3, 6, 13, 24, 48]

    @given(no_constant)
    def test_plethystic_exp_of_negative_is_inverse(self, series):
        product = series.plethystic_exp() * (-series).plethystic_exp()
        assert product == one(series.order)

    def test_log_of_geometric_series(self):
        logged = z_series([1] * 5, 4).log()
        assert logged.coefficients() == [Fraction(1, n) for n in range(1, 5)]

    def test_exp_needs_positive_exponents(self):
        with pytest.raises(AlgebraError):
            z_series([1, 1], 2).exp()
        with pytest.raises(AlgebraError):
            z_series([2, 1], 2).log()


class GradedTest(object):
    QN = ("Q1", "Q2")

    def series(self, coeffs, order=3):
        return BoxSeries(coeffs, order, qnames=self.QN, qcaps=(1, 1))

    def test_caps_are_required(self):
        with pytest.raises(TruncationError):
            BoxSeries({}, 3, qnames=self.QN)

    def test_terms_above_caps_are_dropped(self):
        series = self.series({((2, 0), 0): 1, ((1, 0), 1): 3})
        assert series.q_degrees() == [(1, 0)]

    def test_graded_inverse(self):
        series = self.series({((0, 0), 0): 1, ((1, 0), 1): 1,
                              ((0, 1), 1): 1})
        inverse = series.invert()
        assert inverse.coefficient(1, (1, 0)) == -1
        assert inverse.coefficient(2, (1, 1)) == 2
        assert series * inverse == one(3, qnames=self.QN, qcaps=(1, 1))

    def test_q_part_and_lift(self):
        series = self.series({((0, 0), 0): 5, ((0, 1), 2): 7})
        assert series.q_part((0, 1)).coefficients() == [0, 0, 7, 0]
        base = series.q_part()
        assert base.lift(self.QN, (1, 1)) + 1 == \
            self.series({((0, 0), 0): 6})

    def test_substitute_q(self):
        series = self.series({((1, 0), 1): 1, ((0, 1), 1): 2,
                              ((1, 1), 2): 3})
        single = series.substitute_q("Q")
        assert single.qcaps == (1,)
        assert single.coefficient(1, (1,)) == 3
        assert single.q_degrees() == [(1,)]

    def test_degree_variables_must_match(self):
        other = BoxSeries({}, 3, qnames=("Q",), qcaps=(1,))
        with pytest.raises(ArityError):
            self.series({}) + other
