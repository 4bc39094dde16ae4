import pytest
from hypothesis import given
from hypothesis import strategies as st

from boxcount.exceptions import BoxcountParseError
from boxcount.partitions import (EMPTY, LeggedPartition3D, Partition2D,
                                 Partition3D, count_plane_partitions,
                                 enumerate_legged, enumerate_partitions,
                                 enumerate_plane_partitions, format_legs,
                                 mcmahon_coefficients, minimal_size,
                                 parse_legs, partitions_up_to,
                                 regularized_size)

MCMAHON = [1, 1, 3, 6, 13, 24, 48, 86, 160]

partitions = st.integers(0, 7).flatmap(
    lambda n: st.sampled_from(enumerate_partitions(n)))


class Partition2DTest(object):
    def test_parse(self):
        lam = Partition2D.parse("8,6,4,3,1,1")
        assert lam.parts == (8, 6, 4, 3, 1, 1)
        assert lam.size == 23
        assert str(lam) == "8,6,4,3,1,1"
        assert Partition2D.parse("") == EMPTY
        assert Partition2D.parse("∅") == EMPTY

    @pytest.mark.parametrize("text", ["1,2", "a", "2,,1", "0,1", "-1"])
    def test_parse_rejects(self, text):
        with pytest.raises(BoxcountParseError):
            Partition2D.parse(text)

    def test_arm_leg_hook(self):
        lam = Partition2D.parse("3,1")
        assert lam.arm(1, 1) == 2
        assert lam.leg(1, 1) == 1
        assert lam.hook(1, 1) == 4
        assert [lam.hook(i, j) for i, j in lam.boxes()] == [4, 2, 1, 1]

    def test_corners(self):
        lam = Partition2D.parse("2,1")
        assert lam.addable() == [(1, 3), (2, 2), (3, 1)]
        assert lam.removable() == [(1, 2), (2, 1)]

    @given(partitions)
    def test_conjugate_is_involution(self, lam):
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size

    @given(partitions)
    def test_hooks_are_positive_inside(self, lam):
        assert all(lam.hook(i, j) > 0 for i, j in lam.boxes())

    def test_counts(self):
        assert [len(enumerate_partitions(n)) for n in range(8)] == \
            [1, 1, 2, 3, 5, 7, 11, 15]
        assert len(partitions_up_to(4)) == 12
        assert enumerate_partitions(-1) == []


class PlanePartitionTest(object):
    def test_mcmahon_expansion(self):
        assert mcmahon_coefficients(8) == MCMAHON

    def test_enumeration_matches_mcmahon(self):
        assert count_plane_partitions(6) == MCMAHON[:7]

    def test_heights(self):
        part = Partition3D.from_heights([[2, 1], [1]])
        assert part.size == 4
        assert part.heights() == [[2, 1], [1, 0]]

    def test_order_ideal(self):
        with pytest.raises(BoxcountParseError):
            Partition3D([(1, 0, 0)])

    def test_symmetries_preserve_the_set(self):
        parts = set(enumerate_plane_partitions(4))
        assert {p.rotate() for p in parts} == parts
        assert {p.swap() for p in parts} == parts


class LeggedPartitionTest(object):
    def test_parse_legs(self):
        legs = parse_legs("2,1;;1")
        assert legs == (Partition2D((2, 1)), EMPTY, Partition2D((1,)))
        assert format_legs(legs) == "2,1;;1"
        with pytest.raises(BoxcountParseError):
            parse_legs("bad")

    @pytest.mark.parametrize("text,size", [
        (";;", 0),
        ("1;;", 0),
        ("1;1;", -1),
        ("1;1;1", -2),
    ])
    def test_minimal_size(self, text, size):
        assert minimal_size(parse_legs(text)) == size

    def test_leg_orientation(self):
        # column along axis 1, row along axis 2
        part = LeggedPartition3D.minimal(parse_legs("2;;"))
        assert part.contains((5, 1, 0))
        assert not part.contains((5, 0, 1))

    def test_single_box_leg_counts(self):
        # M(z) / (1 - z)
        parts = enumerate_legged(parse_legs("1;;"), 3)
        sizes = [p.deviation_size() for p in parts]
        assert [sizes.count(k) for k in range(4)] == [1, 2, 5, 11]

    def test_no_legs_counts_plane_partitions(self):
        parts = enumerate_legged(parse_legs(";;"), 4)
        sizes = [p.deviation_size() for p in parts]
        assert [sizes.count(k) for k in range(5)] == MCMAHON[:5]

    def test_regularized_size_adds_deviation(self):
        legs = parse_legs("1;1;")
        part = LeggedPartition3D(legs, [(0, 0, 1)])
        assert regularized_size(part) == minimal_size(legs) + 1

    def test_deviation_must_avoid_cylinders(self):
        with pytest.raises(BoxcountParseError):
            LeggedPartition3D(parse_legs("1;;"), [(3, 0, 0)])

    def test_rotate_moves_legs(self):
        part = LeggedPartition3D(parse_legs("1;;"), [(0, 1, 0)])
        rotated = part.rotate()
        assert format_legs(rotated.legs) == ";1;"
        assert rotated.deviation == frozenset({(0, 0, 1)})
        assert regularized_size(rotated) == regularized_size(part)

    def test_json(self):
        part = LeggedPartition3D(parse_legs("2;;"), [(0, 0, 1)])
        assert LeggedPartition3D.from_json(part.to_json()) == part
        with pytest.raises(BoxcountParseError):
            LeggedPartition3D.from_json({"legs": [[1]]})
