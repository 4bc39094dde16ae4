import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxcount.algebra.lattice import Substitution
from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.characters import ahat, ext1_char
from boxcount.exceptions import BoxcountUsageError
from boxcount.nekrasov import (FramedTuple, GaugeSpec, Matter, bbE, bbE_hat,
                               fixed_points, nekrasov_variables,
                               specialization, tangent_tuple, z_nekrasov)
from boxcount.partitions import EMPTY, Partition2D, partitions_up_to

BOX = Partition2D((1,))
partitions = st.sampled_from(partitions_up_to(4))
small_partitions = st.sampled_from(partitions_up_to(3))


class GaugeSpecTest(object):
    def test_variables(self):
        assert nekrasov_variables([2]) == ("t1", "t2", "a1", "a2")
        assert nekrasov_variables([1, 1], ["m", "m"]) == \
            ("t1", "t2", "a1_1", "a2_1", "m")

    def test_znames(self):
        assert GaugeSpec([2]).znames == ()
        assert GaugeSpec([1, 2]).znames == ("z1", "z2")

    @pytest.mark.parametrize("ranks,matter", [
        ([], []),
        ([0], []),
        ([1], [Matter(1, 2, "m")]),
    ])
    def test_rejects(self, ranks, matter):
        with pytest.raises(BoxcountUsageError):
            GaugeSpec(ranks, matter)

    def test_json(self):
        data = {"ranks": [1, 1], "matter": [{"i": 1, "j": 2, "mass": "m"}],
                "order": 2}
        assert GaugeSpec.from_json(data).to_json() == data
        with pytest.raises(BoxcountUsageError):
            GaugeSpec.from_json({"matter": []})
        with pytest.raises(BoxcountUsageError):
            GaugeSpec.from_json({"ranks": 2})

    def test_load(self, tmpdir):
        path = tmpdir.join("spec.json")
        path.write(json.dumps({"ranks": [2]}))
        assert GaugeSpec.load(str(path)).ranks == (2,)
        path.write("{ranks")
        with pytest.raises(BoxcountUsageError):
            GaugeSpec.load(str(path))
        with pytest.raises(BoxcountUsageError):
            GaugeSpec.load(str(tmpdir.join("missing.json")))


class FixedPointTest(object):
    def test_counts(self):
        assert len(fixed_points([1], 3)) == 3
        assert len(fixed_points([2], 2)) == 5
        assert len(fixed_points([1, 1], 1)) == 2
        assert fixed_points([2], 0) == [((EMPTY, EMPTY),)]

    def test_tangent_rank(self):
        framed = FramedTuple.generic([BOX, Partition2D((2,))])
        # twice the number of boxes, times the rank
        assert tangent_tuple(framed).rank == 2 * 2 * 3

    def test_framing_must_match(self):
        with pytest.raises(BoxcountUsageError):
            FramedTuple([BOX], [], ("t1", "t2"))


class InteractionTest(object):
    NAMES = nekrasov_variables([1], ["u"])
    POINT = {"t1": 4, "t2": 9, "a1": 1, "u": 25}

    def u(self):
        return LaurentPolynomial.variable(self.NAMES, "u")

    def test_empty_pair_is_one(self):
        assert bbE(EMPTY, EMPTY, self.u()).evaluate(self.POINT) == 1
        assert bbE_hat(EMPTY, EMPTY, self.u()).evaluate(self.POINT) == 1

    def test_single_box(self):
        # Ext^1(box, empty) is t1 t2, so the weight is u t1 t2 = 900
        assert bbE(BOX, EMPTY, self.u()).evaluate(self.POINT) == \
            Fraction(899, 900)
        assert bbE_hat(BOX, EMPTY, self.u()).evaluate(self.POINT) == \
            Fraction(899, 30)

    @settings(max_examples=40, deadline=None)
    @given(partitions, partitions)
    def test_hat_is_ahat_of_twisted_ext1(self, lam, mu):
        twisted = self.u() * ext1_char(lam, mu).polynomial.extend(self.NAMES)
        assert bbE_hat(lam, mu, self.u()) == ahat(twisted)


class PartitionFunctionTest(object):
    def test_pure_u1(self):
        # sum over partitions of 1 / prod(1 - w^-1)
        series = z_nekrasov(GaugeSpec([1]), 2)
        point = {"t1": 2, "t2": 3, "a1": 5}
        assert series.coefficient(0) == 1
        assert series.coefficient(1).evaluate(point) == 3
        assert series.coefficient(2).evaluate(point) == Fraction(21, 4)

    def test_pure_u1_symmetrized(self):
        series = z_nekrasov(GaugeSpec([1]), 1, symmetrized=True)
        point = {"t1": 4, "t2": 9, "a1": 1}
        assert series.coefficient(1).evaluate(point) == Fraction(1, 4)

    def test_pure_u2(self):
        series = z_nekrasov(GaugeSpec([2]), 1)
        point = {"t1": 2, "t2": 3, "a1": 5, "a2": 7}
        assert series.coefficient(1).evaluate(point) == Fraction(4410, 851)

    @pytest.mark.parametrize("symmetrized", [False, True])
    def test_massless_adjoint_counts_partitions(self, symmetrized):
        spec = GaugeSpec([1], [Matter(1, 1, "u")])
        series = z_nekrasov(spec, 4, symmetrized=symmetrized,
                            specialize={"u": 1})
        assert series.coefficients() == [1, 1, 2, 3, 5]

    def test_quiver_grading(self):
        series = z_nekrasov(GaugeSpec([1, 1]), 2)
        assert series.qnames == ("z1", "z2")
        assert series.q_degrees() == [(0, 0), (0, 1), (0, 2), (1, 0),
                                      (1, 1), (2, 0)]

    def test_fundamental_matter(self):
        spec = GaugeSpec([1], [Matter(0, 1, "m")])
        assert "m" in spec.names
        series = z_nekrasov(spec, 1)
        assert series.coefficient(1)

    def test_specialization_must_be_one(self):
        with pytest.raises(BoxcountUsageError):
            specialization(("t1", "t2", "u"), {"u": 2})
        assert specialization(("t1", "t2"), {}) is None

    def test_negative_order(self):
        with pytest.raises(BoxcountUsageError):
            z_nekrasov(GaugeSpec([1]), -1)


class SymmetryTest(object):
    NAMES = nekrasov_variables([2])
    SWAP = Substitution.permutation(NAMES, [1, 0, 2, 3])

    @settings(max_examples=30, deadline=None)
    @given(small_partitions, small_partitions)
    def test_tangent_transposes(self, lam, mu):
        char = tangent_tuple(FramedTuple.generic([lam, mu])).polynomial
        flipped = FramedTuple.generic([lam.conjugate(), mu.conjugate()])
        assert char.substitute(self.SWAP) == \
            tangent_tuple(flipped).polynomial

    def test_pure_u2_is_symmetric(self):
        series = z_nekrasov(GaugeSpec([2]), 2)
        assert series.substitute(self.SWAP) == series
