"""Tests for satforge.search: orbit-subset searches and the C5 table."""

from __future__ import annotations

import random
import tempfile
import unittest
from pathlib import Path
from unittest import mock

import oracles
from satforge.constructions import h4_set
from satforge.errors import InvalidArgumentError, TableDiscrepancyError
from satforge.group_sets import iter_bits, super_sum_set
from satforge.search import (
    CERTIFIED_EMPTY,
    CSV_COLUMNS,
    FOUND_UNLISTED,
    VERIFIED,
    SearchJob,
    _CycleSets,
    find_clique_circulants,
    find_complete_k1_sets,
    find_cycle_sets,
    orbit_masks,
    reproduce_table,
    run_search,
)
from satforge.store import BaseStore


def hit_sets(result) -> list[tuple[int, ...]]:
    return [hit.set.elements for hit in result.hits]


class SearchJobTest(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidArgumentError):
            SearchJob(2, "cycle_sets", 4)
        with self.assertRaises(InvalidArgumentError):
            SearchJob(17, "paths", 4)
        with self.assertRaises(InvalidArgumentError):
            SearchJob(17, "cycle_sets", 4, mode="some-hits")
        with self.assertRaises(InvalidArgumentError):
            SearchJob(17, "cycle_sets", 4, budget=0)

    def test_cap(self):
        self.assertEqual(SearchJob(17, "cycle_sets", 4).cap, 8)
        self.assertEqual(SearchJob(17, "cycle_sets", 4, max_orbit_pairs=3).cap, 3)
        self.assertFalse(SearchJob(17, "cycle_sets", 4, max_orbit_pairs=3).unrestricted)
        self.assertTrue(SearchJob(17, "cycle_sets", 4, max_orbit_pairs=30).unrestricted)

    def test_certify_empty_ignores_cap(self):
        job = SearchJob(17, "cycle_sets", 4, max_orbit_pairs=1, mode="certify-empty")
        self.assertEqual(job.cap, 8)
        self.assertTrue(job.unrestricted)

    def test_orbits(self):
        self.assertEqual(orbit_masks(6), [(1, 0b100010), (2, 0b010100), (3, 0b001000)])


class CycleSetsTest(unittest.TestCase):
    def test_first_hit(self):
        result = find_cycle_sets(17, 4)
        self.assertEqual(hit_sets(result), [(1, 3, 14, 16)])
        self.assertFalse(result.exhausted)
        self.assertGreater(result.nodes_expanded, 0)
        self.assertTrue(result.hits[0].report["ok"])

    def test_all_hits_contains_listed(self):
        result = find_cycle_sets(21, 4, "all-hits", max_orbit_pairs=3)
        self.assertIn((1, 6, 8, 13, 15, 20), hit_sets(result))
        self.assertTrue(result.exhausted)

    def test_certify_empty(self):
        result = find_cycle_sets(19, 4, "certify-empty")
        self.assertTrue(result.exhausted)
        self.assertEqual(result.hits, [])
        self.assertTrue(result.certified_empty)
        self.assertTrue(result.job.unrestricted)

    def test_odd_k_refused(self):
        with self.assertLogs("satforge.search", level="WARNING"):
            with self.assertRaises(InvalidArgumentError):
                find_cycle_sets(17, 3)

    def test_super_sum_sets_are_found(self):
        for k in (1, 2, 3, 4):
            s, n = super_sum_set(1, k)
            result = find_cycle_sets(n, 4, "all-hits", max_orbit_pairs=k + 1)
            self.assertIn(s.elements, hit_sets(result))

    def test_capped_certify_empty_still_finds_hits(self):
        result = find_cycle_sets(17, 4, "certify-empty", max_orbit_pairs=1)
        self.assertFalse(result.certified_empty)
        self.assertEqual(hit_sets(result), [(1, 3, 14, 16)])

    def test_every_hit_is_brute_force_valid(self):
        result = find_cycle_sets(17, 4, "all-hits", max_orbit_pairs=2)
        self.assertTrue(result.hits)
        for hit in result.hits:
            elements = list(hit.set)
            wanted = set(range(1, 17)) - set(elements)
            self.assertEqual(oracles.restricted_sumset(17, elements, 4), wanted)
            self.assertNotIn(0, oracles.sumset(17, elements, 5))


def k_fold(n: int, elements: list[int], k: int) -> set[int]:
    acc = {0}
    for _ in range(k):
        acc = {(a + x) % n for a in acc for x in elements}
    return acc


class CertifyEmptyRejectionsTest(unittest.TestCase):
    """A sample of what certify-empty turned down, re-checked by brute force."""

    def rejected(self, n: int) -> tuple[list[int], list[int]]:
        pruned: list[int] = []
        refused: list[int] = []
        hereditary, accept = _CycleSets.hereditary, _CycleSets.accept

        def record_hereditary(predicate: _CycleSets, mask: int) -> bool:
            ok = hereditary(predicate, mask)
            if not ok:
                pruned.append(mask)
            return ok

        def record_accept(predicate: _CycleSets, mask: int) -> bool:
            ok = accept(predicate, mask)
            if not ok:
                refused.append(mask)
            return ok

        with mock.patch.object(
            _CycleSets, "hereditary", record_hereditary
        ), mock.patch.object(_CycleSets, "accept", record_accept):
            result = find_cycle_sets(n, 4, "certify-empty")
        self.assertTrue(result.certified_empty)
        return pruned, refused

    def sample(self, masks: list[int], seed: int) -> list[list[int]]:
        count = min(len(masks), max(10, len(masks) // 100))
        picked = random.Random(seed).sample(masks, count)
        return [list(iter_bits(mask)) for mask in picked]

    def test_rejections(self):
        for n in (19, 31):
            pruned, refused = self.rejected(n)
            self.assertTrue(pruned)
            for elements in self.sample(pruned, n):
                with self.subTest(n=n, pruned=elements):
                    self.assertIn(0, k_fold(n, elements, 5))
            for elements in self.sample(refused, n):
                with self.subTest(n=n, refused=elements):
                    zero_free = 0 not in k_fold(n, elements, 5)
                    wanted = set(range(1, n)) - set(elements)
                    covered = oracles.restricted_sumset(n, elements, 4) >= wanted
                    self.assertFalse(zero_free and covered)


class BudgetTest(unittest.TestCase):
    def test_budget_stops_early(self):
        result = find_cycle_sets(37, 4, "all-hits", budget=5)
        self.assertFalse(result.exhausted)
        self.assertLessEqual(result.nodes_expanded, 5)

    def test_hits_and_nodes_independent_of_jobs(self):
        job = SearchJob(
            21, "cycle_sets", 4, max_orbit_pairs=3, budget=60, mode="all-hits"
        )
        one = run_search(job, jobs=1)
        two = run_search(job, jobs=2)
        self.assertEqual(hit_sets(one), hit_sets(two))
        self.assertEqual(one.nodes_expanded, two.nodes_expanded)
        self.assertEqual(one.exhausted, two.exhausted)

    def test_parallel_first_hit(self):
        self.assertEqual(hit_sets(find_cycle_sets(17, 4, jobs=2)), [(1, 3, 14, 16)])


class CliqueCirculantsTest(unittest.TestCase):
    def test_h4_set_is_found(self):
        result = find_clique_circulants(19, 4, "all-hits", max_orbit_pairs=4)
        self.assertIn(h4_set(3).elements, hit_sets(result))
        for hit in result.hits:
            self.assertTrue(hit.report["saturation"]["verdict"] == "saturated")

    def test_triangle_circulants(self):
        result = find_clique_circulants(17, 3, "all-hits", max_orbit_pairs=3)
        self.assertIn(tuple(range(6, 12)), hit_sets(result))

    def test_hits_are_stored(self):
        with tempfile.TemporaryDirectory() as tmp:
            store = BaseStore(Path(tmp))
            find_clique_circulants(19, 4, "first-hit", store=store)
            self.assertEqual(store.orders(4), [19])
            self.assertTrue(store.load(19, 4))

    def test_small_clique_rejected(self):
        with self.assertRaises(InvalidArgumentError):
            find_clique_circulants(17, 2)


class CompleteK1Test(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(hit_sets(find_complete_k1_sets(5, 2)), [(1, 4)])
        fours = find_complete_k1_sets(17, 4, "all-hits", max_orbit_pairs=2)
        self.assertIn((1, 3, 14, 16), hit_sets(fours))
        twos = find_complete_k1_sets(17, 2, "all-hits", max_orbit_pairs=3)
        self.assertIn(tuple(range(6, 12)), hit_sets(twos))

    def test_hits_are_complete(self):
        for hit in find_complete_k1_sets(17, 4, "all-hits", max_orbit_pairs=3).hits:
            elements = list(hit.set)
            wanted = set(range(17)) - set(elements)
            self.assertEqual(oracles.sumset(17, elements, 4), wanted)


class TableTest(unittest.TestCase):
    def test_partial_table(self):
        artifact = reproduce_table([17, 19, 21])
        self.assertTrue(artifact.ok)
        self.assertEqual(artifact.row(17).status, VERIFIED)
        self.assertEqual(artifact.row(17).degree, 4)
        self.assertEqual(artifact.row(19).status, CERTIFIED_EMPTY)
        self.assertEqual(artifact.row(21).status, VERIFIED)
        lines = artifact.to_csv().splitlines()
        self.assertEqual(lines[0], ",".join(CSV_COLUMNS))
        self.assertEqual(len(lines), 4)

    def test_diff_mentions_disagreements_only(self):
        artifact = reproduce_table([17])
        self.assertEqual(artifact.diff(), [])
        self.assertEqual(artifact.to_dict()["rows"][0]["listed_set"], [1, 3, 14, 16])

    def test_order_with_unlisted_set(self):
        artifact = reproduce_table([35])
        self.assertTrue(artifact.ok)
        row = artifact.row(35)
        self.assertEqual(row.status, FOUND_UNLISTED)
        self.assertEqual(row.degree, 10)
        self.assertIsNone(row.listed)
        self.assertTrue(any(line.startswith("+ n=35") for line in artifact.diff()))

    def test_strict_raises_on_cap_miss(self):
        with self.assertRaises(TableDiscrepancyError):
            reproduce_table([53], max_orbit_pairs=1)
        artifact = reproduce_table([53], max_orbit_pairs=1, strict=False)
        self.assertFalse(artifact.ok)


if __name__ == "__main__":
    unittest.main()
