from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxcount.algebra.lattice import DT_TORUS, NEKRASOV_TORUS
from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.characters import (Character, ahat, ahat_value, char_2d,
                                 binomial_product, cylinder_char, edge_char,
                                 edge_chi, edge_chi_character,
                                 euler_cohomological, ext1_char, legged_char,
                                 tvir_3d, vertex_char)
from boxcount.exceptions import (AhatPoleError, DegenerateTorusError,
                                 DenominatorVanishesError, NotPolynomialError,
                                 WeightCollisionError)
from boxcount.partitions import (EMPTY, LeggedPartition3D, Partition2D,
                                 Partition3D, enumerate_partitions,
                                 enumerate_plane_partitions, parse_legs)

t1, t2, t3 = (LaurentPolynomial.variable(DT_TORUS, n) for n in DT_TORUS)
ONE = LaurentPolynomial.one(DT_TORUS)
BOX = Partition2D((1,))

small_partitions = st.integers(0, 3).flatmap(
    lambda n: st.sampled_from(enumerate_partitions(n)))
plane_partitions = st.integers(0, 4).flatmap(
    lambda n: st.sampled_from(enumerate_plane_partitions(n)))
nontrivial_weights = st.tuples(*[st.integers(-2, 2)] * 3).filter(any).map(
    lambda e: tuple(2 * x for x in e))
characters = st.dictionaries(nontrivial_weights, st.integers(-2, 2),
                             max_size=4).map(
    lambda terms: LaurentPolynomial(DT_TORUS, terms))


class CharacterTest(object):
    def test_counts(self):
        char = Character(t1 * 2 - t2 + ONE)
        assert char.rank == 2
        assert char.positive_count == 3
        assert char.negative_count == 1
        assert char.constant_term == 1

    def test_localized_character_is_not_a_polynomial(self):
        char = Character(cylinder_char(BOX, 0))
        assert not char.finite
        with pytest.raises(NotPolynomialError):
            char.polynomial  # pylint: disable=pointless-statement

    def test_empty_cylinder(self):
        assert cylinder_char(EMPTY, 1) == 0

    def test_char_2d(self):
        names = NEKRASOV_TORUS
        expected = LaurentPolynomial.one(names) \
            + LaurentPolynomial.variable(names, "t1", -1) \
            + LaurentPolynomial.variable(names, "t2", -1)
        assert char_2d(Partition2D((2, 1))) == expected
        assert char_2d(BOX).rank == 1

    def test_legged_single_leg_is_cylinder(self):
        part = LeggedPartition3D(parse_legs("1;;"), [])
        assert legged_char(part) == Character(cylinder_char(BOX, 0))

    def test_legged_overlap_counted_once(self):
        part = LeggedPartition3D(parse_legs("1;1;"), [])
        both = cylinder_char(BOX, 0) + cylinder_char(BOX, 1)
        assert legged_char(part) == Character(both - ONE)


class Ext1Test(object):
    @given(small_partitions, small_partitions)
    def test_forms_agree(self, lam, mu):
        closed = ext1_char(lam, mu)
        assert closed == ext1_char(lam, mu, form="arms_legs")
        assert closed.rank == lam.size + mu.size

    def test_transposed_arms_disagree(self):
        mu = Partition2D((2,))
        assert ext1_char(EMPTY, mu, "arms_legs", transposed=True) != \
            ext1_char(EMPTY, mu)

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            ext1_char(BOX, BOX, form="hooks")


class TangentTest(object):
    def test_single_box(self):
        part = Partition3D([(0, 0, 0)])
        assert tvir_3d(part) == t1 + t2 + t3 - t1 * t2 - t1 * t3 - t2 * t3

    @given(plane_partitions)
    def test_rank_vanishes(self, part):
        char = tvir_3d(part)
        assert char.rank == 0
        assert not char.constant_term

    def test_finite_vertex_is_tangent(self):
        part = LeggedPartition3D(parse_legs(";;"), [(0, 0, 0), (1, 0, 0)])
        assert vertex_char(part) == tvir_3d(Partition3D([(0, 0, 0),
                                                         (1, 0, 0)]))

    @pytest.mark.parametrize("text,deviation", [
        ("1;;", []),
        ("1;;", [(0, 1, 0)]),
        ("1;1;", [(0, 0, 1)]),
        ("2;;1", [(0, 2, 0)]),
    ])
    def test_vertex_routes_agree(self, text, deviation):
        part = LeggedPartition3D(parse_legs(text), deviation)
        char = vertex_char(part, check=True)
        assert not char.constant_term


class EdgeTest(object):
    def test_box_edges(self):
        assert edge_char(BOX, 0, 0) == t2 + t3
        assert edge_char(BOX, -1, -1) == 0

    def test_empty_edge(self):
        assert edge_char(EMPTY, 3, 1) == 0

    @pytest.mark.parametrize("lam,m,mp,chi", [
        ((1,), 5, 7, 1),
        ((2,), -1, -1, 3),
        ((1, 1), 0, -2, 4),
        ((2, 1), 1, 1, 1),
    ])
    def test_chi(self, lam, m, mp, chi):
        assert edge_chi(Partition2D(lam), m, mp) == chi
        assert edge_chi_character(Partition2D(lam), m, mp).rank == chi

    def test_chi_pairs_columns_with_m(self):
        assert edge_chi(Partition2D((2,)), 1, 0) == 1
        assert edge_chi(Partition2D((1, 1)), 1, 0) == 2
        assert edge_chi(Partition2D((2,)), 0, 1) == 2
        assert edge_chi(Partition2D((1, 1)), 0, 1) == 1

    @pytest.mark.parametrize("m,mp", [(0, 0), (-1, -1), (-2, 0)])
    def test_rank_is_virtual_dimension(self, m, mp):
        lam = Partition2D((2, 1))
        assert edge_char(lam, m, mp).rank == lam.size * (2 + m + mp)


class WeightTest(object):
    POINT = {"t1": Fraction(4), "t2": Fraction(9), "t3": Fraction(1, 4)}

    def test_ahat_of_a_weight(self):
        value = ahat(Character(t1))
        assert value.evaluate(self.POINT) == Fraction(3, 2)

    def test_ahat_value_matches_ahat(self):
        char = Character(t1 + t2 - t3)
        assert ahat_value(char, self.POINT) == Fraction(-8, 3)
        assert ahat(char).evaluate(self.POINT) == Fraction(-8, 3)

    def test_trivial_weight(self):
        assert ahat(Character(t1 + ONE)) == 0
        with pytest.raises(AhatPoleError):
            ahat(Character(t1 - ONE))
        with pytest.raises(WeightCollisionError):
            binomial_product(Character(t1 - ONE), "E")

    def test_weight_at_one(self):
        point = dict(self.POINT, t1=Fraction(1))
        assert ahat_value(Character(t1), point) == 0
        with pytest.raises(DenominatorVanishesError):
            ahat_value(Character(-t1), point)

    def test_e_weight(self):
        value = binomial_product(Character(t1), "E")
        assert value.evaluate(self.POINT) == Fraction(3, 4)

    def test_cohomological(self):
        value = euler_cohomological(Character(t1 - t2))
        assert value.evaluate({"s1": 2, "s2": 3, "s3": 5}) == Fraction(3, 2)
        with pytest.raises(DegenerateTorusError):
            euler_cohomological(Character(t1 + ONE))

    @settings(max_examples=50, deadline=None)
    @given(characters)
    def test_ahat_of_dual(self, char):
        sign = -1 if char.rank() % 2 else 1
        assert ahat(char.bar()) == ahat(char) * sign
