"""
Instanton partition functions on C^2

Fixed points of the moduli of framed torsion free sheaves are tuples
of partitions. Each gauge factor of rank ``r`` contributes framing
variables ``a1..ar``; matter fields contribute mass variables. All of
them are extra slots of the exponent lattice next to ``t1, t2``.

Factor index 0 denotes the trivial factor: a single empty partition
with trivial framing. Matter with ``i=0`` or ``j=0`` is fundamental
matter with the trivial factor on the left or right.
"""

import json
import logging
from typing import (Any, Dict, Iterator, List, Mapping, Optional, Sequence,
                    Tuple)

from boxcount.algebra import lattice
from boxcount.algebra.lattice import (NEKRASOV_TORUS, Exponent, Number,
                                      Substitution, Variables)
from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.algebra.ratfun import RationalFunction
from boxcount.algebra.series import BoxSeries, simplify
from boxcount.characters import Character, binomial_product, ext1_char
from boxcount.common import parallel_map
from boxcount.exceptions import BoxcountUsageError
from boxcount.partitions import Partition2D, enumerate_partitions

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


def framing_name(factor: int, index: int, factors: int) -> str:
    """Name of the framing variable ``index`` of gauge factor ``factor``"""
    if factors == 1:
        return f"a{index}"
    return f"a{factor}_{index}"


def nekrasov_variables(ranks: Sequence[int],
                       masses: Sequence[str] = ()) -> Variables:
    """``t1, t2``, the framings of all factors, then the masses"""
    names = list(NEKRASOV_TORUS)
    for factor, rank in enumerate(ranks, 1):
        names.extend(framing_name(factor, index, len(ranks))
                     for index in range(1, rank + 1))
    for mass in masses:
        if mass not in names:
            names.append(mass)
    return tuple(names)


class FramedTuple(object):
    """Partitions with framing weights

    Args:
      partitions: One partition per framing weight
      framing:    Doubled exponents of the framing weights
      names:      Variables of the ring the framings live in
    """
    def __init__(self, partitions: Sequence[Partition2D],
                 framing: Sequence[Exponent], names: Variables) -> None:
        if len(partitions) != len(framing) or not partitions:
            raise BoxcountUsageError(
                "A framed tuple needs one framing weight per partition")
        self.partitions = tuple(partitions)
        self.framing = tuple(tuple(f) for f in framing)
        self.names = tuple(names)

    @classmethod
    def generic(cls, partitions: Sequence[Partition2D]) -> "FramedTuple":
        """Framed by the variables ``a1..ar`` of a single factor"""
        names = nekrasov_variables([len(partitions)])
        framing = [lattice.exponent(names, {framing_name(1, i, 1): 1})
                   for i in range(1, len(partitions) + 1)]
        return cls(partitions, framing, names)

    @property
    def size(self) -> int:
        return sum(lam.size for lam in self.partitions)

    def __repr__(self) -> str:
        parts = "|".join(str(lam) for lam in self.partitions)
        return f"{self.__class__.__name__}('{parts}')"


def ext1_twisted(lam: Partition2D, mu: Partition2D, weight: Exponent,
                 names: Variables) -> LaurentPolynomial:
    """``u * Ext^1(I_lambda, I_mu)`` in the ring ``names``"""
    return ext1_char(lam, mu).polynomial.extend(names).shift(weight)


def bbE(lam: Partition2D, mu: Partition2D,
        u: LaurentPolynomial) -> RationalFunction:
    """Interaction factor ``prod (1 - w^-1)`` over the weights of
    ``u * Ext^1(lambda, mu)``"""
    weight, _ = u.leading()
    return binomial_product(ext1_twisted(lam, mu, weight, u.names), "E")


def bbE_hat(lam: Partition2D, mu: Partition2D,
            u: LaurentPolynomial) -> RationalFunction:
    """Symmetrized interaction factor ``prod (w^1/2 - w^-1/2)``"""
    weight, _ = u.leading()
    return binomial_product(ext1_twisted(lam, mu, weight, u.names), "ahat")


def tangent_tuple(framed: FramedTuple) -> Character:
    """Tangent character ``sum_ij (a_j/a_i) Ext^1(lambda_i, lambda_j)``"""
    names = framed.names
    total = LaurentPolynomial.zero(names)
    for lam, a_i in zip(framed.partitions, framed.framing):
        for mu, a_j in zip(framed.partitions, framed.framing):
            weight = lattice.add(a_j, lattice.negate(a_i))
            total = total + ext1_twisted(lam, mu, weight, names)
    return Character(total)


class Matter(object):
    """Bifundamental matter between factors ``i`` and ``j``"""
    def __init__(self, i: int, j: int, mass: str) -> None:
        self.i = int(i)
        self.j = int(j)
        self.mass = str(mass)

    def __repr__(self) -> str:
        return f"Matter({self.i}, {self.j}, {self.mass!r})"

    def to_json(self) -> Dict[str, Any]:
        return {"i": self.i, "j": self.j, "mass": self.mass}


class GaugeSpec(object):
    """Product gauge group with matter

    Args:
      ranks:  Rank of every gauge factor (factors are numbered from 1)
      matter: Matter fields; factor 0 is the trivial factor
      order:  Instanton number cap
    """
    def __init__(self, ranks: Sequence[int], matter: Sequence[Matter] = (),
                 order: Optional[int] = None) -> None:
        self.ranks = tuple(int(r) for r in ranks)
        self.matter = tuple(matter)
        self.order = order
        if not self.ranks:
            raise BoxcountUsageError("Gauge group needs at least one factor")
        for rank in self.ranks:
            if rank < 1:
                raise BoxcountUsageError(
                    f"Gauge factor rank must be positive, got {rank}")
        for field in self.matter:
            for index in (field.i, field.j):
                if not 0 <= index <= len(self.ranks):
                    raise BoxcountUsageError(
                        f"Matter {field} refers to unknown factor {index}")
        self.names = nekrasov_variables(
            self.ranks, [field.mass for field in self.matter])

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "GaugeSpec":
        try:
            ranks = data["ranks"]
            matter = [Matter(entry["i"], entry["j"], entry["mass"])
                      for entry in data.get("matter", [])]
            order = data.get("order")
        except (KeyError, TypeError) as exc:
            raise BoxcountUsageError(f"Malformed gauge spec: {exc}")
        if not isinstance(ranks, list):
            raise BoxcountUsageError("'ranks' must be a list")
        return cls(ranks, matter, order)

    @classmethod
    def load(cls, path: str) -> "GaugeSpec":
        try:
            with open(path) as fdes:
                data = json.load(fdes)
        except OSError as exc:
            raise BoxcountUsageError(f"Cannot read {path}: {exc}")
        except ValueError as exc:
            raise BoxcountUsageError(f"Cannot parse {path}: {exc}")
        return cls.from_json(data)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "ranks": list(self.ranks),
            "matter": [field.to_json() for field in self.matter],
        }
        if self.order is not None:
            data["order"] = self.order
        return data

    @property
    def znames(self) -> Tuple[str, ...]:
        """Per factor instanton counting variables"""
        if len(self.ranks) == 1:
            return ()
        return tuple(f"z{f}" for f in range(1, len(self.ranks) + 1))

    def framing(self, factor: int) -> List[Exponent]:
        if factor == 0:
            return [lattice.zero_exponent(self.names)]
        return [lattice.exponent(
                    self.names,
                    {framing_name(factor, i, len(self.ranks)): 1})
                for i in range(1, self.ranks[factor - 1] + 1)]

    def mass(self, field: Matter) -> Exponent:
        return lattice.exponent(self.names, {field.mass: 1})


FixedPoint = Tuple[Tuple[Partition2D, ...], ...]


def _tuples(rank: int, n: int) -> Iterator[Tuple[Partition2D, ...]]:
    if rank == 1:
        for lam in enumerate_partitions(n):
            yield (lam,)
        return
    for first in range(n, -1, -1):
        for lam in enumerate_partitions(first):
            for rest in _tuples(rank - 1, n - first):
                yield (lam,) + rest


def fixed_points(ranks: Sequence[int], n: int) -> List[FixedPoint]:
    """Tuples of partitions, one ``rank``-tuple per factor, with ``n``
    boxes in total"""
    result: List[FixedPoint] = []

    def split(index: int, remaining: int, prefix: FixedPoint):
        if index == len(ranks):
            if remaining == 0:
                result.append(prefix)
            return
        if index == len(ranks) - 1:
            sizes = [remaining]
        else:
            sizes = range(remaining, -1, -1)
        for size in sizes:
            for tup in _tuples(ranks[index], size):
                split(index + 1, remaining - size, prefix + (tup,))

    split(0, n, ())
    return result


class _Summand(object):
    """Contribution of one fixed point; picklable for worker processes"""
    def __init__(self, spec: GaugeSpec, kind: str,
                 subst: Optional[Substitution]) -> None:
        self.spec = spec
        self.kind = kind
        self.subst = subst

    def character(self, point: FixedPoint) -> LaurentPolynomial:
        spec = self.spec
        names = spec.names
        empty = (Partition2D(),)

        def factor(index: int) -> Tuple[Partition2D, ...]:
            return empty if index == 0 else point[index - 1]

        total = LaurentPolynomial.zero(names)
        for field in spec.matter:
            mass = spec.mass(field)
            for eta, a_eta in zip(factor(field.i), spec.framing(field.i)):
                for nu, a_nu in zip(factor(field.j), spec.framing(field.j)):
                    weight = lattice.add(mass, lattice.add(
                        a_nu, lattice.negate(a_eta)))
                    total = total + ext1_twisted(eta, nu, weight, names)
        for index in range(1, len(spec.ranks) + 1):
            parts, framing = point[index - 1], spec.framing(index)
            for lam, a_p in zip(parts, framing):
                for mu, a_q in zip(parts, framing):
                    weight = lattice.add(a_q, lattice.negate(a_p))
                    total = total - ext1_twisted(lam, mu, weight, names)
        if self.subst is not None:
            total = total.substitute(self.subst)
        return total

    def __call__(self, point: FixedPoint) -> RationalFunction:
        witness = {"fixed point": format_fixed_point(point)}
        return binomial_product(self.character(point), self.kind, witness)


def format_fixed_point(point: FixedPoint) -> str:
    return " ; ".join("|".join(str(lam) or "∅" for lam in tup)
                      for tup in point)


def specialization(names: Variables,
                   values: Mapping[str, Number]) -> Optional[Substitution]:
    """Monomial substitution setting the given variables to 1"""
    if not values:
        return None
    for name, value in values.items():
        if value != 1:
            raise BoxcountUsageError(
                f"Only the specialization {name}=1 is supported for "
                "instanton sums")
    return Substitution(names, names, monomials={
        name: lattice.zero_exponent(names) for name in values})


def z_nekrasov(spec: GaugeSpec, order: int, symmetrized: bool = False,
               specialize: Optional[Mapping[str, Number]] = None,
               jobs: int = 1) -> BoxSeries:
    """Instanton partition function through ``z^order``

    Sums matter over gauge interaction factors over all fixed points
    with at most ``order`` boxes. With more than one gauge factor the
    series is additionally graded by ``z1..zk``; ``z`` counts all boxes.

    Raises:
      WeightCollisionError, AhatPoleError: on a trivial denominator
        weight, with the fixed point as witness
    """
    if order < 0:
        raise BoxcountUsageError("Instanton order must be non-negative")
    summand = _Summand(spec, "ahat" if symmetrized else "E",
                       specialization(spec.names, specialize or {}))
    znames = spec.znames
    coeffs: Dict[Tuple[Tuple[int, ...], int], Any] = {}
    for n in range(order + 1):
        points = fixed_points(spec.ranks, n)
        log.info("Instanton number %i: %i fixed points", n, len(points))
        values = parallel_map(summand, points, jobs,
                              desc=f"Instanton number {n}")
        for point, value in zip(points, values):
            if znames:
                qexp = tuple(sum(lam.size for lam in tup) for tup in point)
            else:
                qexp = ()
            key = (qexp, n)
            coeffs[key] = coeffs[key] + value if key in coeffs else value
    caps = (order,) * len(znames) if znames else None
    return BoxSeries(coeffs, order, low=0, qnames=znames,
                     qcaps=caps).map(simplify)
