import json

import pytest

from boxcount.dtcount import CATALOG, Edge, Slot, ToricGraph, Vertex, builtin
from boxcount.dtcount.geometry import IDENTITY, derive_degrees
from boxcount.exceptions import BoxcountGeometryError
from boxcount.partitions import EMPTY, Partition2D


def degrees(graph):
    return [(edge.m, edge.mp) for edge in graph.compact_edges]


class CatalogTest(object):
    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_builds_and_round_trips(self, name):
        graph = builtin(name)
        data = graph.to_json()
        assert ToricGraph.from_json(json.loads(json.dumps(data))).to_json() \
            == data

    def test_c3(self):
        graph = builtin("C3")
        assert graph.euler_characteristic == 1
        assert graph.qnames == ()

    @pytest.mark.parametrize("m,mp", [(-1, -1), (0, -2), (1, -3), (2, 0)])
    def test_local_curve(self, m, mp):
        graph = builtin("local_curve", m=m, mp=mp)
        assert degrees(graph) == [(m, mp)]
        assert graph.qnames == ("Q1",)

    def test_conifold_is_transposed_at_the_far_end(self):
        graph = builtin("conifold")
        edge = graph.compact_edges[0]
        assert edge.transposed
        lam = Partition2D((2,))
        assert edge.partition_at(edge.slots[0], lam) == lam
        assert edge.partition_at(edge.slots[1], lam) == lam.conjugate()

    def test_p3(self):
        graph = builtin("P3")
        assert graph.euler_characteristic == 4
        assert len(graph.qnames) == 6
        assert set(degrees(graph)) == {(1, 1)}
        assert graph.graph.number_of_edges() == 6

    def test_p1cubed(self):
        graph = builtin("P1cubed")
        assert graph.euler_characteristic == 8
        assert set(degrees(graph)) == {(0, 0)}

    def test_xn_chain(self):
        graph = builtin("Xn", n=3)
        assert degrees(graph) == [(-2, 0), (-2, 0)]
        assert graph.qnames == ("Q1", "Q2")

    def test_xn_boundary_legs(self):
        graph = builtin("Xn", n=2, boundary=["1"])
        lam = Partition2D((2,))
        assert graph.legs(0, {0: lam}) == (Partition2D((1, 1)),
                                           Partition2D((1,)), EMPTY)
        assert graph.legs(1, {0: lam}) == (EMPTY, EMPTY, lam)

    def test_unknown(self):
        with pytest.raises(BoxcountGeometryError):
            builtin("P7")
        with pytest.raises(BoxcountGeometryError):
            builtin("C3", n=2)
        with pytest.raises(BoxcountGeometryError):
            builtin("Xn", n=0)


class ValidationTest(object):
    FAR = ((-1, 0, 0), (1, 0, 1), (1, 1, 0))

    def data(self, **edge):
        entry = {"v": [["a", 0], ["b", 0]], "m": -1, "mp": -1, "Q": "Q1"}
        entry.update(edge)
        return {"name": "test",
                "vertices": [{"id": "a", "frame": [list(w) for w in IDENTITY]},
                             {"id": "b", "frame": [list(w) for w in self.FAR]}],
                "edges": [entry]}

    def test_valid(self):
        graph = ToricGraph.from_json(self.data())
        assert degrees(graph) == [(-1, -1)]

    def test_wrong_degrees(self):
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.from_json(self.data(m=0, mp=-2))

    def test_unknown_vertex(self):
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.from_json(self.data(v=[["a", 0], ["c", 0]]))

    def test_non_opposite_tangents(self):
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.from_json(self.data(v=[["a", 1], ["b", 0]]))

    def test_missing_degree_variable(self):
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.from_json(self.data(Q=None))

    def test_disconnected(self):
        data = self.data()
        data["edges"] = []
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.from_json(data)

    def test_degenerate_frame(self):
        with pytest.raises(BoxcountGeometryError):
            Vertex("v", [(1, 0, 0), (2, 0, 0), (0, 0, 1)])

    def test_slot_used_twice(self):
        vertices = [Vertex("v0", IDENTITY)]
        edges = [Edge([Slot(0, 1)], boundary=Partition2D((1,))),
                 Edge([Slot(0, 1)], boundary=Partition2D((2,)))]
        with pytest.raises(BoxcountGeometryError):
            ToricGraph(vertices, edges)

    def test_boundary_only_on_unbounded_edges(self):
        with pytest.raises(BoxcountGeometryError):
            Edge([Slot(0, 0), Slot(1, 0)], -1, -1, "Q1",
                 boundary=Partition2D((1,)))

    def test_builtin_shortcut(self):
        graph = ToricGraph.from_json({"builtin": "local_curve", "m": 0,
                                      "mp": -2})
        assert degrees(graph) == [(0, -2)]

    def test_load(self, tmpdir):
        path = tmpdir.join("graph.json")
        path.write(json.dumps(self.data()))
        assert ToricGraph.load(str(path)).name == "test"
        with pytest.raises(BoxcountGeometryError):
            ToricGraph.load(str(tmpdir.join("missing.json")))

    def test_derive_degrees(self):
        assert derive_degrees(IDENTITY, 0, self.FAR, 0) == (-1, -1, True)
