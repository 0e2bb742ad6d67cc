"""Full reproduction grids. Minutes, not seconds: set SATFORGE_SLOW_TESTS=1."""

from __future__ import annotations

import os
import random
import tempfile
import unittest
from pathlib import Path

import oracles
from satforge.constructions import (
    C5_EMPTY_ORDERS,
    C5_FOUND,
    C5_TABLE,
    c_odd_cycle,
    g3,
    h4,
    k4_family,
    k5_family,
    large_clique_family,
    regular_saturated,
)
from satforge.errors import UnsupportedParametersError
from satforge.graph_core import Graph, regular_degree
from satforge.group_sets import (
    SymmetricSet,
    check_construction_hypotheses,
    restricted_sumset,
    super_sum_set,
)
from satforge.saturation import Target, check_saturation, verify_graph
from satforge.search import (
    CERTIFIED_EMPTY,
    FOUND_UNLISTED,
    VERIFIED,
    find_clique_circulants,
    reproduce_table,
)
from satforge.store import BaseStore

SLOW = os.environ.get("SATFORGE_SLOW_TESTS") == "1"


def verified(graph: Graph) -> bool:
    return verify_graph(graph).ok


@unittest.skipUnless(SLOW, "set SATFORGE_SLOW_TESTS=1 to run the full grids")
class TableReproductionTest(unittest.TestCase):
    def test_full_table(self):
        artifact = reproduce_table()
        self.assertTrue(artifact.ok, artifact.diff())
        for n in C5_TABLE:
            self.assertEqual(artifact.row(n).status, VERIFIED)
            self.assertEqual(artifact.row(n).degree, len(C5_TABLE[n]))
        for n in C5_EMPTY_ORDERS:
            self.assertEqual(artifact.row(n).status, CERTIFIED_EMPTY)
        for n in C5_FOUND:
            self.assertEqual(artifact.row(n).status, FOUND_UNLISTED)
            self.assertIn(f"+ n={n}", "\n".join(artifact.diff()))
            graph = regular_saturated(Target("cycle", 5), n)
            self.assertTrue(verified(graph))
            self.assertEqual(regular_degree(graph), len(C5_FOUND[n]))


@unittest.skipUnless(SLOW, "set SATFORGE_SLOW_TESTS=1 to run the full grids")
class FamilyGridTest(unittest.TestCase):
    def test_super_sum_grid(self):
        for alpha in range(1, 5):
            for k in range(1, 5):
                with self.subTest(alpha=alpha, k=k):
                    s, _ = super_sum_set(alpha, k)
                    hypotheses = check_construction_hypotheses(s, 2 * alpha + 2)
                    self.assertTrue(hypotheses.passed)
                    graph = c_odd_cycle(alpha, k)
                    self.assertTrue(verified(graph))
                    self.assertEqual(regular_degree(graph), 2 * (k + 1))

    def test_g3_grid(self):
        for n in range(10, 121):
            k, r = divmod(n, 3)
            try:
                graph = g3(k, r)
            except UnsupportedParametersError:
                continue
            with self.subTest(k=k, r=r):
                self.assertTrue(verified(graph))
                self.assertEqual(regular_degree(graph), k + r - 1)

    def test_h4_range(self):
        for k in range(3, 21):
            with self.subTest(k=k):
                graph = h4(k)
                self.assertTrue(verified(graph))
                self.assertEqual(regular_degree(graph), 2 * k + 2)

    def test_k4_range(self):
        with tempfile.TemporaryDirectory() as tmp:
            store = BaseStore(Path(tmp))
            for d in (14, 15, 20, 25):
                find_clique_circulants(d, 4, store=store)
            self.assertEqual(store.orders(4), [14, 15, 25])
            gaps = []
            for n in range(36, 101):
                try:
                    graph = k4_family(n, store)
                except UnsupportedParametersError:
                    gaps.append(n)
                    continue
                with self.subTest(n=n):
                    self.assertTrue(verified(graph))
        self.assertEqual(gaps, [55])

    def test_k5_range(self):
        for n in range(59, 101):
            with self.subTest(n=n):
                self.assertTrue(verified(k5_family(n)))

    def test_large_clique(self):
        for r in range(0, 5):
            with self.subTest(part="i", r=r):
                graph = large_clique_family(2, 10, r, "i")
                self.assertTrue(verified(graph))
                self.assertEqual(regular_degree(graph), 4 * 10 + r - 1)
        for r in range(1, 6):
            with self.subTest(part="ii", r=r):
                graph = large_clique_family(2, 10, r, "ii")
                self.assertEqual(graph.order, 80 + r)
                self.assertTrue(verified(graph))
                self.assertEqual(regular_degree(graph), 60 + r - 1)


@unittest.skipUnless(SLOW, "set SATFORGE_SLOW_TESTS=1 to run the full grids")
class OracleGridTest(unittest.TestCase):
    def test_random_graphs(self):
        rng = random.Random(9)
        targets = [
            Target("clique", 3),
            Target("clique", 4),
            Target("cycle", 3),
            Target("cycle", 4),
            Target("cycle", 5),
        ]
        for _ in range(10_000):
            n = rng.randint(3, 9)
            density = rng.random()
            pairs = ((u, v) for u in range(n) for v in range(u + 1, n))
            edges = [pair for pair in pairs if rng.random() < density]
            graph = Graph.from_edges(n, edges)
            target = rng.choice(targets)
            self.assertEqual(
                check_saturation(graph, target).saturated,
                oracles.is_saturated(graph, target.kind, target.size),
                (n, edges, str(target)),
            )

    def test_restricted_sumsets(self):
        rng = random.Random(40)
        for _ in range(200):
            n = rng.randint(5, 40)
            reps = rng.sample(range(1, n // 2 + 1), rng.randint(1, min(3, n // 2)))
            s = SymmetricSet.from_generators(n, reps)
            k = rng.randint(1, 5)
            expected = oracles.restricted_sumset(n, list(s), k)
            self.assertEqual(set(restricted_sumset(s, k)), expected)


if __name__ == "__main__":
    unittest.main()
