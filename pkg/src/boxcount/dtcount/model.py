"""
Partition functions of the vertex model on a toric graph

A term of the partition function assigns a partition to every compact
edge. Its weight is the product of the edge weights and of the vertex
weights with the legs induced by the assignment. Characters of a
vertex are taken in its local chart and mapped to the global torus by
its frame; edge characters are first rotated from the ``t1`` axis to
the axis of their first slot.
"""

import itertools
import logging
from typing import (Any, List, Mapping, Optional, Sequence, Tuple, Union)

from boxcount.algebra.lattice import DT_TORUS, Number, Substitution
from boxcount.algebra.series import BoxSeries
from boxcount.common import progress
from boxcount.dtcount.geometry import Edge, ToricGraph, xn
from boxcount.dtcount.vertex import edge_weight, vertex_series
from boxcount.exceptions import BoxcountDegeneracyError, BoxcountUsageError
from boxcount.partitions import (Partition2D, minimal_size,
                                 partitions_up_to)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

QCaps = Union[int, Mapping[str, int]]


def resolve_qcaps(graph: ToricGraph, qcaps: QCaps) -> Tuple[int, ...]:
    """Caps per degree variable of ``graph``

    Raises:
      BoxcountUsageError: if a cap is missing or negative
    """
    if isinstance(qcaps, int):
        caps = {name: qcaps for name in graph.qnames}
    else:
        caps = dict(qcaps)
    result = []
    for name in graph.qnames:
        if name not in caps:
            raise BoxcountUsageError(f"No degree cap given for {name}")
        if caps[name] < 0:
            raise BoxcountUsageError(f"Degree cap of {name} is negative")
        result.append(int(caps[name]))
    return tuple(result)


def _compose(first: Substitution,
             then: Optional[Substitution]) -> Substitution:
    return first if then is None else first.then(then)


def edge_substitution(graph: ToricGraph, edge: Edge) -> Substitution:
    """Edge chart along ``t1`` to the global torus"""
    vertex, axis = edge.slots[0]
    rotate = Substitution.permutation(
        DT_TORUS, [axis, (axis + 1) % 3, (axis + 2) % 3])
    return rotate.then(graph.vertices[vertex].substitution)


class _Assembler(object):
    """Weights of single edge assignments"""
    def __init__(self, graph: ToricGraph, qcaps: Tuple[int, ...],
                 zorder: int, subst: Optional[Substitution],
                 numeric: Optional[Mapping[str, Number]], jobs: int) -> None:
        self.graph = graph
        self.qcaps = qcaps
        self.zorder = zorder
        self.numeric = numeric
        self.jobs = jobs
        self.compact = [index for index, edge in enumerate(graph.edges)
                        if edge.is_compact]
        self.vertex_subst = [_compose(v.substitution, subst)
                             for v in graph.vertices]
        self.edge_subst = {
            index: _compose(edge_substitution(graph, graph.edges[index]),
                            subst)
            for index in self.compact}
        self.qindex = {name: i for i, name in enumerate(graph.qnames)}

    def assignments(self) -> List[Tuple[Partition2D, ...]]:
        choices = []
        for index in self.compact:
            edge = self.graph.edges[index]
            cap = self.qcaps[self.qindex[edge.qname]]
            choices.append(partitions_up_to(cap // edge.degree))
        return list(itertools.product(*choices))

    def qexp(self, assignment: Sequence[Partition2D]) -> Tuple[int, ...]:
        qexp = [0] * len(self.qcaps)
        for index, lam in zip(self.compact, assignment):
            edge = self.graph.edges[index]
            qexp[self.qindex[edge.qname]] += lam.size * edge.degree
        return tuple(qexp)

    def term(self, assignment: Sequence[Partition2D]) -> Optional[BoxSeries]:
        """Contribution of one assignment, None if out of range"""
        qexp = self.qexp(assignment)
        if any(e > c for e, c in zip(qexp, self.qcaps)):
            return None
        chi = 0
        coefficient: Any = 1
        for index, lam in zip(self.compact, assignment):
            edge = self.graph.edges[index]
            weight = edge_weight(lam, edge.m, edge.mp, edge.degree,
                                 self.edge_subst[index], self.numeric)
            if not weight.coefficient:
                return None
            chi += weight.z_power
            coefficient = coefficient * weight.coefficient
        mapping = dict(zip(self.compact, assignment))
        legs = [self.graph.legs(v, mapping)
                for v in range(len(self.graph.vertices))]
        lows = [minimal_size(leg) for leg in legs]
        base = chi + sum(lows)
        if base > self.zorder:
            return None
        product: Optional[BoxSeries] = None
        for v, leg in enumerate(legs):
            series = vertex_series(leg, self.zorder - base + lows[v],
                                   self.vertex_subst[v], self.numeric,
                                   self.jobs)
            product = series if product is None else product * series
        assert product is not None
        return product.lift(self.graph.qnames, self.qcaps) \
            .shift(chi, qexp).scale(coefficient)


def z_partition_function(graph: ToricGraph, qcaps: QCaps, zorder: int,
                         subst: Optional[Substitution] = None,
                         numeric: Optional[Mapping[str, Number]] = None,
                         jobs: int = 1) -> BoxSeries:
    """Vertex model partition function through ``z^zorder``

    Args:
      graph:   Toric graph with boundary partitions on unbounded edges
      qcaps:   Degree cap for all, or per degree variable
      zorder:  Highest z power computed exactly
      subst:   Monomial specialization of the global torus
      numeric: Rational point for the global torus variables

    Raises:
      BoxcountUsageError: on missing caps
      AhatPoleError: with the offending partition
    """
    caps = resolve_qcaps(graph, qcaps)
    assembler = _Assembler(graph, caps, zorder, subst, numeric, jobs)
    assignments = assembler.assignments()
    log.info("Summing %i edge assignments on %s through z^%i",
             len(assignments), graph.name, zorder)
    total = BoxSeries.zero(zorder, graph.qnames, caps)
    for assignment in progress(assignments, f"Z({graph.name})",
                               len(assignments), log):
        try:
            term = assembler.term(assignment)
        except BoxcountDegeneracyError as exc:
            exc.witness.setdefault(
                "assignment", ";".join(str(lam) for lam in assignment))
            raise
        if term is not None:
            total = total + term
    return total


def dtpt_divide(full: BoxSeries, zorder: int) -> BoxSeries:
    """Divide out the degree zero part

    Raises:
      BoxcountDegeneracyError: if the degree zero part does not start
        with ``1``
    """
    base = full.q_part()
    if base.valuation() != 0 or base.coefficient(0) != 1:
        raise BoxcountDegeneracyError(
            "Degree zero part is not invertible as a series starting at 1",
            witness={"valuation": base.valuation()})
    return (full * base.invert()).truncate(zorder)


def zx2(lam: Optional[str], mu: Optional[str], qcap: int, zorder: int,
        subst: Optional[Substitution] = None,
        numeric: Optional[Mapping[str, Number]] = None,
        jobs: int = 1) -> BoxSeries:
    """Partition function of ``X2`` with affine legs ``lam`` and ``mu``"""
    return z_partition_function(xn(2, [lam, mu]), {"Q1": qcap}, zorder,
                                subst, numeric, jobs)


def virdim_normalize(series: BoxSeries, virdim: int) -> BoxSeries:
    """Multiply by ``z^(-virdim/2)``

    Raises:
      BoxcountUsageError: for odd ``virdim``
    """
    if virdim % 2:
        raise BoxcountUsageError(
            f"Normalization needs an even virtual dimension, got {virdim}")
    return series.shift(-virdim // 2)
