"""
Toric graphs: vertices with local frames, edges with normal degrees

A vertex carries its frame, the three tangent weights of the toric
chart as integer vectors over the global torus ``t1, t2, t3``. An edge
names the slots ``(vertex, axis)`` it occupies: two for a compact
edge, one for an unbounded edge carrying a boundary partition. The
normal degrees ``(m, mp)`` of a compact edge refer to its first slot
``(v, a)``: ``m`` is the degree along axis ``a+1``, ``mp`` along
``a+2``. They are derived from the frames and must match the
supplied values. The partition of an edge is given in the frame of
its first slot; at the far end it is transposed iff the frames list
the normal directions in the opposite cyclic order.
"""

import json
import logging
from typing import (Any, Callable, Dict, List, Mapping, NamedTuple, Optional,
                    Sequence, Tuple)

import networkx as nx

from boxcount.algebra import lattice
from boxcount.algebra.lattice import DT_TORUS, Substitution
from boxcount.exceptions import BoxcountGeometryError, BoxcountParseError
from boxcount.partitions import EMPTY, Legs, Partition2D

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

Weight = Tuple[int, int, int]
Frame = Tuple[Weight, Weight, Weight]

IDENTITY: Frame = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class Slot(NamedTuple):
    vertex: int
    axis: int


def _sub(a: Weight, b: Weight, k: int = 1) -> Weight:
    return tuple(x - k * y for x, y in zip(a, b))  # type: ignore


def _neg(a: Weight) -> Weight:
    return tuple(-x for x in a)  # type: ignore


def _ratio(diff: Weight, base: Weight) -> Optional[int]:
    """``k`` with ``diff == k * base``, if any"""
    pivot = next(i for i, x in enumerate(base) if x)
    if diff[pivot] % base[pivot]:
        return None
    k = diff[pivot] // base[pivot]
    if tuple(k * x for x in base) != tuple(diff):
        return None
    return k


def determinant(frame: Frame) -> int:
    (a, b, c), (d, e, f), (g, h, i) = frame
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def derive_degrees(near: Frame, a: int, far: Frame,
                   b: int) -> Tuple[int, int, bool]:
    """Normal degrees of the edge from slot ``a`` of ``near`` to slot
    ``b`` of ``far``

    Returns:
      ``(m, mp, transposed)``

    Raises:
      BoxcountGeometryError: if the frames do not glue along the edge
    """
    tangent = near[a]
    if far[b] != _neg(tangent):
        raise BoxcountGeometryError(
            "Tangent weights at the two ends of an edge must be opposite",
            witness={"near": near[a], "far": far[b]})
    n1, n2 = near[(a + 1) % 3], near[(a + 2) % 3]
    f1, f2 = far[(b + 1) % 3], far[(b + 2) % 3]
    for transposed, (g1, g2) in ((False, (f1, f2)), (True, (f2, f1))):
        m = _ratio(_sub(n1, g1), tangent)
        mp = _ratio(_sub(n2, g2), tangent)
        if m is not None and mp is not None:
            return m, mp, transposed
    raise BoxcountGeometryError(
        "Normal weights at the two ends of an edge do not glue",
        witness={"near": near, "far": far})


class Vertex(object):
    """Torus fixed point with the tangent weights of its chart"""
    def __init__(self, ident: str, frame: Sequence[Sequence[int]]) -> None:
        self.id = str(ident)
        try:
            self.frame: Frame = tuple(
                tuple(int(x) for x in weight) for weight in frame)  # type: ignore
        except (TypeError, ValueError):
            raise BoxcountGeometryError(
                f"Frame of vertex '{ident}' must be three integer vectors")
        if len(self.frame) != 3 or any(len(w) != 3 for w in self.frame):
            raise BoxcountGeometryError(
                f"Frame of vertex '{ident}' must be three integer vectors")
        if determinant(self.frame) == 0:
            raise BoxcountGeometryError(
                f"Frame of vertex '{ident}' is degenerate",
                witness={"frame": self.frame})

    def __repr__(self) -> str:
        return f"Vertex({self.id!r}, {self.frame!r})"

    @property
    def substitution(self) -> Substitution:
        """Local torus variables to global monomials"""
        return Substitution(DT_TORUS, DT_TORUS, monomials={
            name: lattice.scale(weight, 2)
            for name, weight in zip(DT_TORUS, self.frame)
        })

    def to_json(self) -> Dict[str, Any]:
        return {"id": self.id, "frame": [list(w) for w in self.frame]}


class Edge(object):
    """Compact or unbounded edge of a toric graph

    Args:
      slots:    One slot for unbounded, two for compact edges
      m, mp:    Normal degrees seen from the first slot
      qname:    Degree variable (compact edges)
      degree:   Exponent of ``qname`` per box of the edge partition
      boundary: Fixed partition of an unbounded edge
    """
    def __init__(self, slots: Sequence[Slot], m: Optional[int] = None,
                 mp: Optional[int] = None, qname: Optional[str] = None,
                 degree: int = 1,
                 boundary: Optional[Partition2D] = None) -> None:
        self.slots = tuple(Slot(*slot) for slot in slots)
        self.m = m
        self.mp = mp
        self.qname = qname
        self.degree = int(degree)
        self.boundary = boundary if boundary is not None else EMPTY
        self.transposed = False
        if len(self.slots) not in (1, 2):
            raise BoxcountGeometryError("An edge has one or two endpoints")
        if self.is_compact:
            if m is None or mp is None:
                raise BoxcountGeometryError(
                    "Compact edges need normal degrees 'm' and 'mp'")
            if not qname:
                raise BoxcountGeometryError(
                    "Compact edges need a degree variable 'Q'")
            if self.degree < 1:
                raise BoxcountGeometryError("Edge degree must be positive")
            if self.boundary:
                raise BoxcountGeometryError(
                    "Only unbounded edges carry boundary partitions")

    @property
    def is_compact(self) -> bool:
        return len(self.slots) == 2

    def __repr__(self) -> str:
        if self.is_compact:
            return (f"Edge({self.slots[0]}-{self.slots[1]}, "
                    f"({self.m},{self.mp}), {self.qname})")
        return f"Edge({self.slots[0]}, boundary={self.boundary})"

    def partition_at(self, slot: Slot, lam: Partition2D) -> Partition2D:
        """Edge partition ``lam`` seen from ``slot``"""
        if slot == self.slots[0] or not self.transposed:
            return lam
        return lam.conjugate()

    def to_json(self, vertices: Sequence[Vertex]) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "v": [[vertices[s.vertex].id, s.axis] for s in self.slots]}
        if self.is_compact:
            data.update({"m": self.m, "mp": self.mp, "Q": self.qname})
            if self.degree != 1:
                data["degree"] = self.degree
        elif self.boundary:
            data["boundary"] = str(self.boundary)
        return data


class ToricGraph(object):
    """The one-skeleton of a toric threefold

    Args:
      vertices: Fixed points with frames
      edges:    Compact edges and unbounded edges with boundaries;
                slots without an edge are unbounded with empty boundary
      name:     Label used in output
    """
    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge],
                 name: str = "graph") -> None:
        self.name = name
        self.vertices = list(vertices)
        self.edges = list(edges)
        self._slot_edges: Dict[Slot, int] = {}
        self.validate()

    def __repr__(self) -> str:
        return (f"{self.__class__.__name__}({self.name!r}, "
                f"vertices={len(self.vertices)}, edges={len(self.edges)})")

    def validate(self) -> None:
        """Check slots, frames, degrees and connectivity

        Raises:
          BoxcountGeometryError: on any inconsistency
        """
        if not self.vertices:
            raise BoxcountGeometryError("A toric graph needs a vertex")
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise BoxcountGeometryError("Vertex ids must be unique")
        self._slot_edges = {}
        for index, edge in enumerate(self.edges):
            for slot in edge.slots:
                if not 0 <= slot.vertex < len(self.vertices) or \
                   slot.axis not in (0, 1, 2):
                    raise BoxcountGeometryError(
                        f"Edge {edge} refers to unknown slot {slot}")
                if slot in self._slot_edges:
                    raise BoxcountGeometryError(
                        f"Slot {slot} is used by two edges")
                self._slot_edges[slot] = index
            if edge.is_compact:
                (v, a), (w, b) = edge.slots
                if v == w:
                    raise BoxcountGeometryError(
                        f"Edge {edge} is a loop")
                m, mp, transposed = derive_degrees(
                    self.vertices[v].frame, a, self.vertices[w].frame, b)
                if (m, mp) != (edge.m, edge.mp):
                    raise BoxcountGeometryError(
                        f"Degrees of {edge} do not match the frames",
                        witness={"supplied": (edge.m, edge.mp),
                                 "frames": (m, mp)})
                edge.transposed = transposed
        graph = self.graph
        if not nx.is_connected(graph):
            raise BoxcountGeometryError(
                f"Toric graph '{self.name}' is not connected")
        for node, degree in graph.degree():
            if degree > 3:
                raise BoxcountGeometryError(
                    f"Vertex {node} has more than three edges")

    @property
    def graph(self) -> nx.MultiGraph:
        """Vertices and compact edges as a networkx multigraph"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(v.id for v in self.vertices)
        for edge in self.compact_edges:
            (v, _), (w, _) = edge.slots
            graph.add_edge(self.vertices[v].id, self.vertices[w].id,
                           key=edge.qname)
        return graph

    @property
    def compact_edges(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.is_compact]

    @property
    def qnames(self) -> Tuple[str, ...]:
        """Degree variables in order of first appearance"""
        names: List[str] = []
        for edge in self.compact_edges:
            if edge.qname not in names:
                names.append(edge.qname)
        return tuple(names)

    @property
    def euler_characteristic(self) -> int:
        """Number of torus fixed points"""
        return len(self.vertices)

    def edge_at(self, slot: Slot) -> Optional[Edge]:
        index = self._slot_edges.get(Slot(*slot))
        return None if index is None else self.edges[index]

    def legs(self, vertex: int,
             assignment: Mapping[int, Partition2D]) -> Legs:
        """Leg partitions at ``vertex``

        Args:
          assignment: Partition per index of a compact edge in ``edges``
        """
        result = []
        for axis in range(3):
            slot = Slot(vertex, axis)
            index = self._slot_edges.get(slot)
            if index is None:
                result.append(EMPTY)
                continue
            edge = self.edges[index]
            if edge.is_compact:
                result.append(edge.partition_at(slot, assignment[index]))
            else:
                result.append(edge.boundary)
        return tuple(result)  # type: ignore

    @classmethod
    def from_json(cls, data: Mapping[str, Any],
                  name: Optional[str] = None) -> "ToricGraph":
        """Build from the geometry JSON format or a ``builtin`` shortcut"""
        if not isinstance(data, Mapping):
            raise BoxcountGeometryError("Geometry must be a JSON object")
        if "builtin" in data:
            params = {k: v for k, v in data.items()
                      if k not in ("builtin", "name")}
            return builtin(data["builtin"], **params)
        name = data.get("name", name or "graph")
        try:
            vertices = [Vertex(entry["id"], entry["frame"])
                        for entry in data["vertices"]]
        except (KeyError, TypeError) as exc:
            raise BoxcountGeometryError(
                f"Vertices need 'id' and 'frame': missing {exc}")
        index = {v.id: i for i, v in enumerate(vertices)}
        edges = []
        for entry in data.get("edges", []):
            try:
                slots = [Slot(index[ident], int(axis))
                         for ident, axis in entry["v"]]
            except KeyError as exc:
                raise BoxcountGeometryError(
                    f"Edge {entry} refers to unknown vertex {exc}")
            except (TypeError, ValueError):
                raise BoxcountGeometryError(
                    f"Edge endpoints must be [vertex, axis] pairs: {entry}")
            boundary = entry.get("boundary")
            try:
                boundary = Partition2D.parse(boundary) if boundary else None
            except BoxcountParseError as exc:
                raise BoxcountGeometryError(str(exc))
            edges.append(Edge(slots, m=entry.get("m"), mp=entry.get("mp"),
                              qname=entry.get("Q"),
                              degree=entry.get("degree", 1),
                              boundary=boundary))
        return cls(vertices, edges, name)

    @classmethod
    def load(cls, path: str) -> "ToricGraph":
        try:
            with open(path) as fdes:
                data = json.load(fdes)
        except OSError as exc:
            raise BoxcountGeometryError(f"Cannot read {path}: {exc}")
        except ValueError as exc:
            raise BoxcountGeometryError(f"Cannot parse {path}: {exc}")
        return cls.from_json(data, name=path)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [e.to_json(self.vertices) for e in self.edges],
        }


def _compact(graph_vertices: Sequence[Vertex], near: Slot, far: Slot,
             qname: str, degree: int = 1) -> Edge:
    m, mp, _ = derive_degrees(graph_vertices[near.vertex].frame, near.axis,
                              graph_vertices[far.vertex].frame, far.axis)
    return Edge((near, far), m, mp, qname, degree)


def c3() -> ToricGraph:
    """Affine space: a single vertex with three empty legs"""
    return ToricGraph([Vertex("v0", IDENTITY)], [], "C3")


def local_curve(m: int = -1, mp: int = -1) -> ToricGraph:
    """Total space of O(m) + O(mp) over the projective line"""
    e1, e2, e3 = IDENTITY
    far = (_neg(e1), _sub(e3, e1, mp), _sub(e2, e1, m))
    vertices = [Vertex("v0", IDENTITY), Vertex("v1", far)]
    edge = _compact(vertices, Slot(0, 0), Slot(1, 0), "Q1")
    return ToricGraph(vertices, [edge], f"local_curve({m},{mp})")


def conifold() -> ToricGraph:
    """The resolved conifold, O(-1) + O(-1) over the projective line"""
    graph = local_curve(-1, -1)
    graph.name = "conifold"
    return graph


def p3() -> ToricGraph:
    """Projective space; tangent weights ``u_j - u_i`` at ``p_i``"""
    weights = [(0, 0, 0)] + list(IDENTITY)
    others = {i: [j for j in range(4) if j != i] for i in range(4)}
    vertices = [Vertex(f"p{i}", [_sub(weights[j], weights[i])
                                 for j in others[i]])
                for i in range(4)]
    edges = []
    count = 0
    for i in range(4):
        for j in range(i + 1, 4):
            count += 1
            edges.append(_compact(vertices, Slot(i, others[i].index(j)),
                                  Slot(j, others[j].index(i)), f"Q{count}"))
    return ToricGraph(vertices, edges, "P3")


def p1cubed() -> ToricGraph:
    """Product of three projective lines"""
    points = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    index = {p: i for i, p in enumerate(points)}
    vertices = [
        Vertex("p" + "".join(map(str, p)),
               [tuple((1 - 2 * p[k]) * x for x in IDENTITY[k])
                for k in range(3)])
        for p in points]
    edges = []
    count = 0
    for p in points:
        for k in range(3):
            if p[k]:
                continue
            q = tuple(x + (i == k) for i, x in enumerate(p))
            count += 1
            edges.append(_compact(vertices, Slot(index[p], k),
                                  Slot(index[q], k), f"Q{count}"))
    return ToricGraph(vertices, edges, "P1cubed")


def xn(n: int = 2,
       boundary: Optional[Sequence[Optional[str]]] = None) -> ToricGraph:
    """The chain ``A_(n-1) x A^1`` of ``n`` vertices

    Vertex ``p_k`` has axis 0 toward ``p_(k+1)``, axis 1 along the
    affine line and axis 2 toward ``p_(k-1)``. The compact edges have
    degrees ``(-2, 0)`` seen from ``p_(k+1)``.

    Args:
      boundary: Partitions on the axis 1 legs, one per vertex
    """
    n = int(n)
    if n < 1:
        raise BoxcountGeometryError("Xn needs n >= 1")
    boundary = list(boundary or [])
    if len(boundary) > n:
        raise BoxcountGeometryError(
            f"Xn with n={n} has {n} affine legs, got {len(boundary)}")
    boundary += [None] * (n - len(boundary))
    e1, e2, e3 = IDENTITY
    toward, away = e1, e3
    vertices = []
    for k in range(n):
        vertices.append(Vertex(f"p{k}", (toward, e2, away)))
        toward, away = _sub(away, toward, -2), _neg(toward)
    edges = [_compact(vertices, Slot(k + 1, 2), Slot(k, 0), f"Q{k + 1}")
             for k in range(n - 1)]
    for k, text in enumerate(boundary):
        if text:
            edges.append(Edge([Slot(k, 1)], boundary=_parse(text)))
    return ToricGraph(vertices, edges, f"X{n}")


def _parse(text: Any) -> Partition2D:
    if isinstance(text, Partition2D):
        return text
    try:
        return Partition2D.parse(str(text))
    except BoxcountParseError as exc:
        raise BoxcountGeometryError(str(exc))


#: Built-in geometries by name
CATALOG: Dict[str, Callable[..., ToricGraph]] = {
    "C3": c3,
    "local_curve": local_curve,
    "conifold": conifold,
    "P3": p3,
    "P1cubed": p1cubed,
    "Xn": xn,
}


def builtin(name: str, **params: Any) -> ToricGraph:
    """Build a catalog geometry by name

    Raises:
      BoxcountGeometryError: for unknown names or parameters
    """
    try:
        factory = CATALOG[name]
    except KeyError:
        raise BoxcountGeometryError(
            f"Unknown built-in geometry '{name}'",
            witness={"known": ", ".join(sorted(CATALOG))})
    try:
        return factory(**params)
    except TypeError as exc:
        raise BoxcountGeometryError(
            f"Bad parameters for geometry '{name}': {exc}")
