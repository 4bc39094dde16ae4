"""
Local weights of the DT vertex model

The vertex weight sums ``(-z)^|pi| ahat(-T_pi)`` over legged
partitions ``pi`` with fixed legs; the edge weight of a thickened
curve is ``(-z)^chi Q^(|lambda| deg) ahat(-T_edge)``. Characters are
computed in the local torus of the vertex; a substitution (frame,
CY slice) is applied to them before ``ahat``. With ``numeric`` given,
every fixed point term is evaluated at that rational point instead.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import (Any, Dict, Mapping, NamedTuple, Optional, Tuple)

from boxcount.algebra.lattice import COHOMOLOGY, Number, Substitution
from boxcount.algebra.linear import LinearFraction
from boxcount.algebra.series import BoxSeries, simplify
from boxcount.characters import (Character, ahat, ahat_value, edge_char,
                                 edge_chi, euler_cohomological, tvir_3d,
                                 vertex_char)
from boxcount.common import parallel_map
from boxcount.exceptions import BoxcountUsageError
from boxcount.partitions import (EMPTY, LeggedPartition3D, Legs, Partition2D,
                                 enumerate_legged, enumerate_plane_partitions,
                                 format_legs, minimal_size)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

#: No legs at all
EMPTY_LEGS: Legs = (EMPTY, EMPTY, EMPTY)

#: The slice ``c1 = 0`` of the cohomological torus, ``s3 = -s1 - s2``
C1_SLICE: Dict[str, Tuple[int, int, int]] = {"s3": (-1, -1, 0)}

NumericKey = Optional[Tuple[Tuple[str, Fraction], ...]]


def numeric_key(numeric: Optional[Mapping[str, Number]]) -> NumericKey:
    if numeric is None:
        return None
    return tuple(sorted((k, Fraction(v)) for k, v in numeric.items()))


def fixed_point_weight(char: Character, subst: Optional[Substitution],
                       numeric: NumericKey, witness: Dict[str, Any]) -> Any:
    """``ahat(-char)`` after ``subst``, or its value at ``numeric``"""
    char = -char
    if subst is not None:
        char = char.substitute(subst)
    if numeric is not None:
        return ahat_value(char, dict(numeric), witness)
    return simplify(ahat(char, witness))


class _VertexTerm(object):
    """Signed weight of one legged partition"""
    def __init__(self, subst: Optional[Substitution],
                 numeric: NumericKey) -> None:
        self.subst = subst
        self.numeric = numeric

    def __call__(self, part: LeggedPartition3D) -> Tuple[int, Any]:
        size = minimal_size(part.legs) + part.deviation_size()
        value = fixed_point_weight(vertex_char(part), self.subst,
                                   self.numeric, {"partition": part.dumps()})
        return size, -value if size % 2 else value


_VERTEX_CACHE: Dict[Tuple[Legs, Optional[Substitution], NumericKey],
                    BoxSeries] = {}


def clear_cache() -> None:
    """Forget memoized vertex and edge weights"""
    _VERTEX_CACHE.clear()
    _edge_weight.cache_clear()


def vertex_series(legs: Legs, zorder: int,
                  subst: Optional[Substitution] = None,
                  numeric: Optional[Mapping[str, Number]] = None,
                  jobs: int = 1) -> BoxSeries:
    """Vertex weight ``V(lambda, mu, nu)`` through ``z^zorder``

    Deviations up to ``zorder`` minus the minimal regularized size of
    the legs are enumerated.

    Raises:
      BoxcountUsageError: if ``zorder`` is below the minimal size
      AhatPoleError: with the offending partition
    """
    legs = tuple(legs)  # type: ignore
    key = (legs, subst, numeric_key(numeric))
    cached = _VERTEX_CACHE.get(key)
    if cached is not None and cached.order >= zorder:
        return cached.truncate(zorder)
    low = minimal_size(legs)
    if zorder < low:
        raise BoxcountUsageError(
            f"Order z^{zorder} is below the minimal size {low} of legs "
            f"'{format_legs(legs)}'")
    parts = enumerate_legged(legs, zorder - low)
    log.debug("Vertex [%s]: %i partitions through z^%i",
              format_legs(legs), len(parts), zorder)
    terms = parallel_map(_VertexTerm(subst, key[2]), parts, jobs=jobs,
                         desc=f"Vertex [{format_legs(legs)}]")
    coeffs: Dict[Tuple[Tuple[int, ...], int], Any] = {}
    for size, value in terms:
        if not value:
            continue
        if ((), size) in coeffs:
            coeffs[((), size)] = coeffs[((), size)] + value
        else:
            coeffs[((), size)] = value
    result = BoxSeries(coeffs, zorder, low=low).map(simplify)
    _VERTEX_CACHE[key] = result
    return result


def degree0_series(zorder: int, subst: Optional[Substitution] = None,
                   numeric: Optional[Mapping[str, Number]] = None,
                   jobs: int = 1) -> BoxSeries:
    """Degree zero DT series of affine space, the vertex with no legs"""
    return vertex_series(EMPTY_LEGS, zorder, subst, numeric, jobs)


def cohomological_degree0(zorder: int, c1_slice: bool = False) -> BoxSeries:
    """Degree zero series with cohomological weights in ``s1, s2, s3``

    Args:
      c1_slice: restrict each fixed point weight to ``s3 = -s1 - s2``
    """
    coeffs = {}
    for n in range(zorder + 1):
        total = LinearFraction.constant(0, COHOMOLOGY)
        for part in enumerate_plane_partitions(n):
            term = euler_cohomological(tvir_3d(part),
                                       {"partition": repr(part)})
            if c1_slice:
                term = term.specialize(C1_SLICE)
            total = total + term
        coeffs[((), n)] = simplify(total * (-1) ** n)
    return BoxSeries(coeffs, zorder, low=0)


class EdgeWeight(NamedTuple):
    """``coefficient * z^z_power * Q^q_power``

    The coefficient includes the sign of ``(-z)^z_power``.
    """
    z_power: int
    q_power: int
    coefficient: Any


@lru_cache(maxsize=None)
def _edge_weight(lam: Partition2D, m: int, mp: int, degree: int,
                 subst: Optional[Substitution],
                 numeric: NumericKey) -> EdgeWeight:
    chi = edge_chi(lam, m, mp)
    witness = {"edge": str(lam), "degrees": (m, mp)}
    value = fixed_point_weight(edge_char(lam, m, mp), subst, numeric,
                               witness)
    if chi % 2:
        value = -value
    return EdgeWeight(chi, lam.size * degree, value)


def edge_weight(lam: Partition2D, m: int, mp: int, degree: int = 1,
                subst: Optional[Substitution] = None,
                numeric: Optional[Mapping[str, Number]] = None) -> EdgeWeight:
    """Weight of the edge curve with cross-section ``lam``

    Raises:
      AhatPoleError: with the offending partition
    """
    return _edge_weight(lam, m, mp, degree, subst, numeric_key(numeric))
