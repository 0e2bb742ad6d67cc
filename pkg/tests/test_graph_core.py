"""Tests for satforge.graph_core: builders, cliques, paths and cycles."""

from __future__ import annotations

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from satforge.errors import InvalidArgumentError
from satforge.graph_core import (
    ConstructionSpec,
    Graph,
    blow_up,
    cayley_graph,
    complete_bipartite,
    complete_graph,
    contains_clique,
    contains_cycle,
    cycle_graph,
    empty_graph,
    exists_path_of_length,
    find_cycle_through,
    find_path,
    join,
    petersen,
    regular_degree,
)
from satforge.group_sets import SymmetricSet

C17 = cayley_graph(17, SymmetricSet(17, (1, 3, 14, 16)))


@st.composite
def graphs(draw, max_order: int = 8) -> Graph:
    n = draw(st.integers(1, max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def assert_is_cycle(
    case: unittest.TestCase, graph: Graph, cycle: tuple[int, ...], m: int
) -> None:
    case.assertEqual(len(cycle), m)
    case.assertEqual(len(set(cycle)), m)
    for i in range(m):
        case.assertTrue(graph.has_edge(cycle[i], cycle[(i + 1) % m]), cycle)


class GraphTest(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidArgumentError):
            Graph(0, ())
        with self.assertRaises(InvalidArgumentError):
            Graph(2, (0b10, 0))
        with self.assertRaises(InvalidArgumentError):
            Graph(2, (0b01, 0b00))
        with self.assertRaises(InvalidArgumentError):
            Graph.from_edges(3, [(0, 3)])

    def test_edges_are_lexicographic(self):
        g = Graph.from_edges(4, [(2, 3), (0, 2), (0, 1)])
        self.assertEqual(list(g.edges()), [(0, 1), (0, 2), (2, 3)])
        self.assertEqual(list(g.non_edges()), [(0, 3), (1, 2), (1, 3)])
        self.assertEqual(g.edge_count, 3)

    def test_add_edge_is_persistent(self):
        g = empty_graph(3)
        h = g.add_edge(0, 2)
        self.assertFalse(g.has_edge(0, 2))
        self.assertTrue(h.has_edge(2, 0))

    def test_cayley_examples(self):
        self.assertEqual(C17.order, 17)
        self.assertEqual(regular_degree(C17), 4)
        self.assertEqual(C17.edge_count, 34)
        self.assertTrue(C17.is_circulant())
        self.assertEqual(C17.neighbors(0), [1, 3, 14, 16])
        self.assertEqual(C17.spec.family, "cayley")
        with self.assertRaises(InvalidArgumentError):
            cayley_graph(18, SymmetricSet(17, (1, 16)))

    def test_cayley_rows_are_rotations(self):
        for v in range(17):
            expected = {(v + s) % 17 for s in (1, 3, 14, 16)}
            self.assertEqual(set(C17.neighbors(v)), expected)

    def test_small_builders(self):
        self.assertEqual(complete_graph(4).edge_count, 6)
        self.assertEqual(empty_graph(5).edge_count, 0)
        self.assertEqual(regular_degree(cycle_graph(5)), 2)
        with self.assertRaises(InvalidArgumentError):
            cycle_graph(2)

    def test_petersen(self):
        g = petersen()
        self.assertEqual(g.order, 10)
        self.assertEqual(regular_degree(g), 3)
        self.assertEqual(g.edge_count, 15)
        self.assertFalse(g.is_circulant())


class JoinTest(unittest.TestCase):
    def test_bipartite_is_join_of_empties(self):
        self.assertEqual(join(empty_graph(3), empty_graph(3)), complete_bipartite(3, 3))
        self.assertEqual(join(complete_graph(1), complete_graph(1)), complete_graph(2))

    def test_join_edges_and_spec(self):
        g, h = cycle_graph(5), empty_graph(3)
        j = join(g, h)
        self.assertEqual(j.order, 8)
        self.assertEqual(j.edge_count, g.edge_count + h.edge_count + 15)
        self.assertEqual(j.spec.family, "join")
        self.assertEqual([c.family for c in j.spec.children], ["cycle", "empty"])

    def test_regularity_condition(self):
        self.assertIsNone(regular_degree(join(complete_graph(1), empty_graph(2))))
        # 5-cycle (deg 2) + empty(3): 2 + 3 == 0 + 5
        self.assertEqual(regular_degree(join(cycle_graph(5), empty_graph(3))), 5)

    @given(graphs(max_order=6), graphs(max_order=6))
    @settings(max_examples=50, deadline=None)
    def test_join_degrees(self, g, h):
        j = join(g, h)
        for v in range(g.order):
            self.assertEqual(j.degree(v), g.degree(v) + h.order)
        for v in range(h.order):
            self.assertEqual(j.degree(g.order + v), h.degree(v) + g.order)


class BlowUpTest(unittest.TestCase):
    def test_bipartite(self):
        self.assertEqual(blow_up(complete_graph(2), 3), complete_bipartite(3, 3))

    def test_composes(self):
        g = cycle_graph(5)
        self.assertEqual(blow_up(blow_up(g, 2), 3), blow_up(g, 6))

    def test_degree_scales(self):
        b = blow_up(C17, 3)
        self.assertEqual(b.order, 51)
        self.assertEqual(regular_degree(b), 12)
        self.assertEqual(b.spec.family, "blow_up")
        self.assertEqual(b.spec.params, {"t": 3})

    def test_factor_must_be_positive(self):
        with self.assertRaises(InvalidArgumentError):
            blow_up(C17, 0)


class CliqueTest(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(contains_clique(complete_graph(4), 4), (0, 1, 2, 3))
        self.assertIsNone(contains_clique(petersen(), 3))
        self.assertIsNone(contains_clique(C17, 3))
        self.assertIsNone(contains_clique(complete_graph(4), 5))
        with self.assertRaises(InvalidArgumentError):
            contains_clique(C17, 1)

    @given(graphs(), st.integers(2, 5))
    @settings(max_examples=150, deadline=None)
    def test_matches_subset_enumeration(self, g, s):
        found = contains_clique(g, s)
        self.assertEqual(found is not None, oracles.has_clique(g, s))
        if found is not None:
            self.assertEqual(len(found), s)
            for i, u in enumerate(found):
                for v in found[i + 1 :]:
                    self.assertTrue(g.has_edge(u, v))


class PathTest(unittest.TestCase):
    def test_examples(self):
        c5 = cycle_graph(5)
        self.assertTrue(exists_path_of_length(c5, 0, 2, 3))
        self.assertTrue(exists_path_of_length(c5, 0, 2, 2))
        self.assertFalse(exists_path_of_length(c5, 0, 2, 4))
        self.assertTrue(exists_path_of_length(C17, 0, 5, 4))
        self.assertEqual(find_path(c5, 0, 1, 4), (0, 4, 3, 2, 1))

    def test_errors(self):
        with self.assertRaises(InvalidArgumentError):
            find_path(C17, 3, 3, 2)
        with self.assertRaises(InvalidArgumentError):
            find_path(C17, 0, 1, 0)
        self.assertIsNone(find_path(complete_graph(3), 0, 1, 3))

    @given(graphs(max_order=7), st.data())
    @settings(max_examples=150, deadline=None)
    def test_matches_sequence_enumeration(self, g, data):
        if g.order < 2:
            return
        u = data.draw(st.integers(0, g.order - 1))
        v = data.draw(st.integers(0, g.order - 1).filter(lambda x: x != u))
        length = data.draw(st.integers(1, g.order - 1))
        path = find_path(g, u, v, length)
        self.assertEqual(path is not None, oracles.has_path(g, u, v, length))
        if path is not None:
            self.assertEqual((path[0], path[-1], len(path)), (u, v, length + 1))
            self.assertEqual(len(set(path)), length + 1)
            for a, b in zip(path, path[1:]):
                self.assertTrue(g.has_edge(a, b))


class CycleTest(unittest.TestCase):
    def test_examples(self):
        p = petersen()
        self.assertIsNone(contains_cycle(p, 3))
        self.assertIsNone(contains_cycle(p, 4))
        assert_is_cycle(self, p, contains_cycle(p, 5), 5)
        self.assertIsNone(contains_cycle(C17, 5))
        k4 = complete_graph(4)
        assert_is_cycle(self, k4, contains_cycle(k4, 4), 4)
        self.assertIsNone(contains_cycle(complete_graph(4), 5))
        with self.assertRaises(InvalidArgumentError):
            contains_cycle(p, 2)

    def test_cycle_starts_at_least_vertex(self):
        g = join(empty_graph(2), cycle_graph(5))
        cycle = contains_cycle(cycle_graph(5), 5)
        self.assertEqual(cycle[0], 0)
        cycle = contains_cycle(g, 3)
        self.assertEqual(cycle[0], min(cycle))

    def test_through_vertex(self):
        cycle = find_cycle_through(C17, 4, 4)
        self.assertEqual(cycle[0], 4)
        assert_is_cycle(self, C17, cycle, 4)

    @given(graphs(), st.integers(3, 6))
    @settings(max_examples=150, deadline=None)
    def test_matches_sequence_enumeration(self, g, m):
        cycle = contains_cycle(g, m)
        self.assertEqual(cycle is not None, oracles.has_cycle(g, m))
        if cycle is not None:
            assert_is_cycle(self, g, cycle, m)
            self.assertEqual(cycle[0], min(cycle))


class SpecTest(unittest.TestCase):
    def test_round_trip(self):
        spec = join(cycle_graph(5), empty_graph(3)).spec
        again = ConstructionSpec.from_dict(spec.to_dict())
        self.assertEqual(again.to_dict(), spec.to_dict())


if __name__ == "__main__":
    unittest.main()
