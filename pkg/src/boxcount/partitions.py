"""
Fixed point labels: 2d partitions, plane partitions and legged
3d partitions

Conventions:

- A 2d partition is a weakly decreasing tuple of positive parts.
  Box ``(i, j)`` (row ``i``, column ``j``) is 1-based.
- 3d boxes are 0-based triples ``(x0, x1, x2)``.
- The leg along axis ``a`` is a 2d partition whose column index runs
  along axis ``a+1`` and whose row index runs along axis ``a+2``
  (indices mod 3). Box ``(r, c)`` of the leg partition thus covers
  the line ``x[a+1] = c-1, x[a+2] = r-1``.
"""

import json
import logging
from functools import lru_cache
from typing import (Dict, FrozenSet, Iterator, List, Sequence, Set,
                    Tuple)

from boxcount.common import progress
from boxcount.exceptions import (BoxcountParseError, UnstableTruncationError)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

Box = Tuple[int, int, int]


class Partition2D(object):
    """Integer partition (monomial ideal in two variables)"""
    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[int] = ()) -> None:
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise BoxcountParseError(f"Partition {parts} has non-positive parts")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise BoxcountParseError(f"Partition {parts} is not decreasing")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Partition2D":
        """Parse the text notation ``8,6,4,3,1,1``; empty means ∅"""
        text = text.strip()
        if text in ("", "0", "∅"):
            return cls()
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError:
            raise BoxcountParseError(f"Malformed partition '{text}'")

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.parts!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition2D):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other: "Partition2D") -> bool:
        return (self.size, self.parts) < (other.size, other.parts)

    def __hash__(self) -> int:
        return hash(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """``lambda_i`` (1-based), zero beyond the last part"""
        if 1 <= i <= len(self.parts):
            return self.parts[i - 1]
        return 0

    def conjugate(self) -> "Partition2D":
        if not self.parts:
            return self
        return Partition2D(sum(1 for p in self.parts if p >= j)
                           for j in range(1, self.parts[0] + 1))

    def arm(self, i: int, j: int) -> int:
        """Arm length ``lambda_i - j``; negative outside the diagram"""
        return self.part(i) - j

    def leg(self, i: int, j: int) -> int:
        """Leg length ``lambda'_j - i``; negative outside the diagram"""
        return self.conjugate().part(j) - i

    def hook(self, i: int, j: int) -> int:
        return self.arm(i, j) + self.leg(i, j) + 1

    def contains(self, i: int, j: int) -> bool:
        return j <= self.part(i) and i >= 1 and j >= 1

    def boxes(self) -> List[Tuple[int, int]]:
        """Boxes ``(row, column)`` in row-major order"""
        return [(i, j) for i, p in enumerate(self.parts, 1)
                for j in range(1, p + 1)]

    def addable(self) -> List[Tuple[int, int]]:
        """Boxes whose addition gives a partition"""
        result = []
        for i in range(1, len(self.parts) + 2):
            j = self.part(i) + 1
            if i == 1 or self.part(i - 1) >= j:
                result.append((i, j))
        return result

    def removable(self) -> List[Tuple[int, int]]:
        """Boxes whose removal gives a partition"""
        return [(i, p) for i, p in enumerate(self.parts, 1)
                if self.part(i + 1) < p]


EMPTY = Partition2D()


def conjugate(lam: Partition2D) -> Partition2D:
    return lam.conjugate()


def arm(lam: Partition2D, box: Tuple[int, int]) -> int:
    return lam.arm(*box)


def leg(lam: Partition2D, box: Tuple[int, int]) -> int:
    return lam.leg(*box)


def _partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> List[Partition2D]:
    """All partitions of ``n`` in reverse lexicographic order"""
    if n < 0:
        return []
    return [Partition2D(parts) for parts in _partitions(n, n)]


def partitions_up_to(n: int) -> List[Partition2D]:
    """All partitions of size at most ``n``, by size"""
    return [lam for k in range(n + 1) for lam in enumerate_partitions(k)]


def _predecessors(box: Box) -> Iterator[Box]:
    for axis in range(3):
        if box[axis] > 0:
            pred = list(box)
            pred[axis] -= 1
            yield tuple(pred)


def _successors(box: Box) -> Iterator[Box]:
    for axis in range(3):
        succ = list(box)
        succ[axis] += 1
        yield tuple(succ)


class Partition3D(object):
    """Finite plane partition as an order ideal of boxes"""
    __slots__ = ("boxes",)

    def __init__(self, boxes: Sequence[Box] = ()) -> None:
        self.boxes: FrozenSet[Box] = frozenset(tuple(b) for b in boxes)
        for box in self.boxes:
            if len(box) != 3 or any(x < 0 for x in box):
                raise BoxcountParseError(f"Invalid box {box}")
            for pred in _predecessors(box):
                if pred not in self.boxes:
                    raise BoxcountParseError(
                        f"Boxes do not form an order ideal: {box} lacks "
                        f"{pred}")

    @classmethod
    def from_heights(cls, rows: Sequence[Sequence[int]]) -> "Partition3D":
        """Plane partition from its matrix of stack heights"""
        return cls([(i, j, k) for i, row in enumerate(rows)
                    for j, height in enumerate(row) for k in range(height)])

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.sorted_boxes()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition3D):
            return NotImplemented
        return self.boxes == other.boxes

    def __hash__(self) -> int:
        return hash(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    @property
    def size(self) -> int:
        return len(self.boxes)

    def sorted_boxes(self) -> List[Box]:
        return sorted(self.boxes)

    def sort_key(self) -> Tuple[int, List[Box]]:
        return (self.size, self.sorted_boxes())

    def contains(self, box: Box) -> bool:
        return tuple(box) in self.boxes

    def addable(self) -> List[Box]:
        candidates = {(0, 0, 0)}
        for box in self.boxes:
            candidates.update(_successors(box))
        return sorted(box for box in candidates - self.boxes
                      if all(p in self.boxes for p in _predecessors(box)))

    def heights(self) -> List[List[int]]:
        if not self.boxes:
            return []
        rows = max(b[0] for b in self.boxes) + 1
        cols = max(b[1] for b in self.boxes) + 1
        result = [[0] * cols for _ in range(rows)]
        for i, j, k in self.boxes:
            result[i][j] = max(result[i][j], k + 1)
        return result

    def rotate(self) -> "Partition3D":
        """Cyclic permutation of the axes, ``x -> (x2, x0, x1)``"""
        return Partition3D([(b[2], b[0], b[1]) for b in self.boxes])

    def swap(self) -> "Partition3D":
        """Exchange the axes ``x1`` and ``x2``"""
        return Partition3D([(b[0], b[2], b[1]) for b in self.boxes])


@lru_cache(maxsize=None)
def _plane_partition_levels(n: int) -> Tuple[Tuple[FrozenSet[Box], ...], ...]:
    levels: List[Set[FrozenSet[Box]]] = [{frozenset()}]
    for size in range(1, n + 1):
        current: Set[FrozenSet[Box]] = set()
        for boxes in progress(levels[-1], f"Plane partitions of {size}"):
            part = Partition3D.__new__(Partition3D)
            part.boxes = boxes
            for box in part.addable():
                current.add(boxes | {box})
        levels.append(current)
    return tuple(tuple(level) for level in levels)


def enumerate_plane_partitions(n: int) -> List[Partition3D]:
    """All plane partitions of ``n``, sorted by box list"""
    if n < 0:
        return []
    result = []
    for boxes in _plane_partition_levels(n)[n]:
        part = Partition3D.__new__(Partition3D)
        part.boxes = boxes
        result.append(part)
    return sorted(result, key=Partition3D.sort_key)


def count_plane_partitions(order: int) -> List[int]:
    """Number of plane partitions of ``n`` for ``n <= order``"""
    levels = _plane_partition_levels(order)
    return [len(level) for level in levels]


def mcmahon_coefficients(order: int) -> List[int]:
    """Coefficients of ``prod(1 - z^n)^-n`` through ``z^order``"""
    coeffs = [1] + [0] * order
    for n in range(1, order + 1):
        for _ in range(n):
            for k in range(n, order + 1):
                coeffs[k] += coeffs[k - n]
    return coeffs


Legs = Tuple[Partition2D, Partition2D, Partition2D]


def parse_legs(text: str) -> Legs:
    """Parse the leg notation ``lambda;mu;nu`` (empty slots allowed)"""
    slots = text.split(";")
    if len(slots) != 3:
        raise BoxcountParseError(
            f"Leg notation '{text}' must have three ';'-separated slots")
    return tuple(Partition2D.parse(slot) for slot in slots)  # type: ignore


def format_legs(legs: Legs) -> str:
    return ";".join(str(lam) for lam in legs)


def in_cylinder(box: Box, axis: int, lam: Partition2D) -> bool:
    """Whether ``box`` lies in the cylinder over ``lam`` along ``axis``"""
    col = box[(axis + 1) % 3]
    row = box[(axis + 2) % 3]
    return col < lam.part(row + 1)


def leg_extent(legs: Legs) -> int:
    """Largest cross-section coordinate occupied by any leg"""
    return max([lam.parts[0] for lam in legs if lam]
               + [len(lam) for lam in legs] + [0])


class LeggedPartition3D(object):
    """3d partition with cylindrical asymptotics along the three axes

    Args:
      legs:      The partitions ``(lambda, mu, nu)`` along axes 0, 1, 2
      deviation: Finite set of boxes added to the union of cylinders
    """
    __slots__ = ("legs", "deviation")

    def __init__(self, legs: Legs,
                 deviation: Sequence[Box] = (), check: bool = True) -> None:
        self.legs: Legs = tuple(legs)  # type: ignore
        self.deviation: FrozenSet[Box] = frozenset(
            tuple(b) for b in deviation)
        if check:
            self._check()

    def _check(self) -> None:
        for box in self.deviation:
            if len(box) != 3 or any(x < 0 for x in box):
                raise BoxcountParseError(f"Invalid box {box}")
            if self.in_cylinders(box):
                raise BoxcountParseError(
                    f"Deviation box {box} lies in a leg cylinder")
            for pred in _predecessors(box):
                if not self.contains(pred):
                    raise BoxcountParseError(
                        f"Boxes do not form an order ideal: {box} lacks "
                        f"{pred}")

    @classmethod
    def minimal(cls, legs: Legs) -> "LeggedPartition3D":
        """The bare union of the leg cylinders"""
        return cls(legs, (), check=False)

    @classmethod
    def from_partition(cls, part: Partition3D) -> "LeggedPartition3D":
        return cls((EMPTY, EMPTY, EMPTY), part.boxes, check=False)

    def __repr__(self) -> str:
        return (f"{self.__class__.__name__}({format_legs(self.legs)!r}, "
                f"{sorted(self.deviation)!r})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeggedPartition3D):
            return NotImplemented
        return self.legs == other.legs and self.deviation == other.deviation

    def __hash__(self) -> int:
        return hash((self.legs, self.deviation))

    @property
    def is_finite(self) -> bool:
        return not any(self.legs)

    def as_finite(self) -> Partition3D:
        if not self.is_finite:
            raise ValueError("Partition has infinite legs")
        part = Partition3D.__new__(Partition3D)
        part.boxes = self.deviation
        return part

    def in_cylinders(self, box: Box) -> bool:
        return any(in_cylinder(box, axis, lam)
                   for axis, lam in enumerate(self.legs) if lam)

    def contains(self, box: Box) -> bool:
        box = tuple(box)
        return box in self.deviation or self.in_cylinders(box)

    def boxes_in(self, size: int) -> List[Box]:
        """All boxes inside the cube ``[0, size)^3``"""
        return [(i, j, k) for i in range(size) for j in range(size)
                for k in range(size) if self.contains((i, j, k))]

    def bound(self) -> int:
        """Size of a cube containing the deviation and all cross-sections"""
        extent = leg_extent(self.legs)
        if self.deviation:
            extent = max(extent, max(max(b) for b in self.deviation) + 1)
        return extent + 1

    def addable(self, limit: int) -> List[Box]:
        """Addable boxes with all coordinates below ``limit``"""
        candidates = set(_minimal_addable(self.legs, limit))
        for box in self.deviation:
            candidates.update(_successors(box))
        return sorted(
            box for box in candidates
            if max(box) < limit and not self.contains(box)
            and all(self.contains(p) for p in _predecessors(box)))

    def rotate(self) -> "LeggedPartition3D":
        """Cyclic axis permutation; legs go to ``(nu, lambda, mu)``"""
        lam, mu, nu = self.legs
        return LeggedPartition3D(
            (nu, lam, mu), [(b[2], b[0], b[1]) for b in self.deviation],
            check=False)

    def swap(self) -> "LeggedPartition3D":
        """Exchange ``x1``, ``x2``; legs go to ``(lambda', nu', mu')``"""
        lam, mu, nu = self.legs
        return LeggedPartition3D(
            (lam.conjugate(), nu.conjugate(), mu.conjugate()),
            [(b[0], b[2], b[1]) for b in self.deviation], check=False)

    def deviation_size(self) -> int:
        return len(self.deviation)

    def sort_key(self) -> Tuple[int, List[Box]]:
        return (len(self.deviation), sorted(self.deviation))

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {
            "legs": [list(lam.parts) for lam in self.legs],
            "deviation": [list(b) for b in sorted(self.deviation)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Dict) -> "LeggedPartition3D":
        try:
            legs = tuple(Partition2D(parts) for parts in data["legs"])
            deviation = [tuple(b) for b in data.get("deviation", [])]
        except (KeyError, TypeError) as exc:
            raise BoxcountParseError(f"Malformed legged partition: {exc}")
        if len(legs) != 3:
            raise BoxcountParseError("A legged partition has three legs")
        return cls(legs, deviation)  # type: ignore


@lru_cache(maxsize=None)
def _minimal_addable(legs: Legs, limit: int) -> Tuple[Box, ...]:
    minimal = LeggedPartition3D.minimal(legs)
    result = []
    for i in range(limit):
        for j in range(limit):
            for k in range(limit):
                box = (i, j, k)
                if minimal.contains(box):
                    continue
                if all(minimal.contains(p) for p in _predecessors(box)):
                    result.append(box)
    return tuple(result)


def _count_in_cube(part: LeggedPartition3D, size: int) -> int:
    return len(part.boxes_in(size)) - size * sum(lam.size for lam in part.legs)


def regularized_size(part: LeggedPartition3D) -> int:
    """Box count in a large cube minus the leg contributions

    Evaluated in cubes of size ``N`` and ``N+1`` beyond all
    cross-sections; the two values must agree.

    Raises:
      UnstableTruncationError: if the count depends on the cube size
    """
    size = part.bound()
    value = _count_in_cube(part, size)
    check = _count_in_cube(part, size + 1)
    if value != check:
        raise UnstableTruncationError(
            f"Regularized size of {part!r} changes from {value} to {check}")
    return value


@lru_cache(maxsize=None)
def minimal_size(legs: Legs) -> int:
    """Regularized size of the bare union of cylinders"""
    return regularized_size(LeggedPartition3D.minimal(legs))


def enumerate_legged(legs: Legs, max_deviation: int) \
        -> List[LeggedPartition3D]:
    """All legged partitions with given legs and at most
    ``max_deviation`` deviation boxes

    Breadth-first addition of addable boxes starting from the bare
    cylinders. A deviation box at distance ``d`` along a leg needs
    ``d+1`` additions, so all candidates live in a finite cube.
    """
    legs = tuple(legs)  # type: ignore
    limit = leg_extent(legs) + max_deviation + 2
    level = {frozenset(): LeggedPartition3D.minimal(legs)}
    result = [LeggedPartition3D.minimal(legs)]
    for size in range(1, max_deviation + 1):
        nxt: Dict[FrozenSet[Box], LeggedPartition3D] = {}
        for part in progress(level.values(),
                             f"Legged partitions [{format_legs(legs)}] "
                             f"+{size}", total=len(level)):
            for box in part.addable(limit):
                deviation = part.deviation | {box}
                if deviation not in nxt:
                    nxt[deviation] = LeggedPartition3D(legs, deviation,
                                                       check=False)
        level = nxt
        result.extend(sorted(level.values(),
                             key=LeggedPartition3D.sort_key))
    return result
