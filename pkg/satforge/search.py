"""Exhaustive and budgeted searches over symmetric subsets of Z_n.

A symmetric set is a union of orbits {x, n-x}, 1 <= x <= n/2, so candidates
are orbit subsets, enumerated by orbit count and then lexicographically. The
enumeration is a DFS over orbit prefixes. Each target has a hereditary part
(true for S implies true for every subset of S):

    cycle_sets k         0 ∉ (k+1)S
    clique_circulants s  Cay(Z_n, S) is K_s-free
    complete_k1 k        kS ∩ S = ∅

A prefix that fails it cuts its whole subtree. Pruned subtrees are covered
but not counted; every admitted prefix counts as one expanded node.

Work is split into tasks keyed by (orbit count, first orbit). Tasks run in
order under jobs=1 or on a process pool otherwise, and their outcomes are
merged in task order with per-hit node ordinals, so hits, node counts and
budget cut-offs are the same for every worker count.
"""

from __future__ import annotations

import csv
import io
import logging
from collections.abc import Iterator
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Literal

from satforge.constructions import C5_EMPTY_ORDERS, C5_FOUND, C5_TABLE
from satforge.errors import (
    ConstructionDiscrepancyError,
    InvalidArgumentError,
    TableDiscrepancyError,
)
from satforge.graph_core import cayley_graph, clique_within
from satforge.group_sets import (
    SymmetricSet,
    WalkSearch,
    add_masks,
    check_construction_hypotheses,
    full_mask,
    is_complete_kl,
    iter_bits,
    rotate,
    sumset_layers,
)
from satforge.saturation import is_clique_saturated, is_cycle_saturated
from satforge.store import BaseStore

logger = logging.getLogger(__name__)

TargetName = Literal["cycle_sets", "clique_circulants", "complete_k1"]
Mode = Literal["first-hit", "all-hits", "certify-empty"]

TARGETS = ("cycle_sets", "clique_circulants", "complete_k1")
MODES = ("first-hit", "all-hits", "certify-empty")


@dataclass(frozen=True)
class SearchJob:
    n: int
    target: TargetName
    param: int
    max_orbit_pairs: int | None = None
    budget: int | None = None
    mode: Mode = "first-hit"

    def __post_init__(self) -> None:
        if self.n < 3:
            raise InvalidArgumentError(f"n must be at least 3, got {self.n}")
        if self.target not in TARGETS:
            raise InvalidArgumentError(f"unknown search target {self.target!r}")
        if self.mode not in MODES:
            raise InvalidArgumentError(f"unknown search mode {self.mode!r}")
        if self.budget is not None and self.budget < 1:
            raise InvalidArgumentError("budget must be positive")

    @property
    def orbit_count(self) -> int:
        return self.n // 2

    @property
    def cap(self) -> int:
        """Largest orbit count searched; certify-empty always covers every orbit."""
        if self.max_orbit_pairs is None or self.mode == "certify-empty":
            return self.orbit_count
        return min(self.max_orbit_pairs, self.orbit_count)

    @property
    def unrestricted(self) -> bool:
        return self.cap == self.orbit_count

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "target": self.target,
            "param": self.param,
            "max_orbit_pairs": self.max_orbit_pairs,
            "budget": self.budget,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class SearchHit:
    set: SymmetricSet
    report: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {**self.set.to_json(), "report": self.report}


@dataclass
class SearchResult:
    job: SearchJob
    hits: list[SearchHit] = field(default_factory=list)
    exhausted: bool = False
    nodes_expanded: int = 0

    @property
    def certified_empty(self) -> bool:
        """No hit anywhere in the space the job covered.

        `job.unrestricted` says how big that space was.
        """
        return self.exhausted and not self.hits

    def to_dict(self) -> dict[str, Any]:
        return {
            "job": self.job.to_dict(),
            "hits": [hit.to_dict() for hit in self.hits],
            "exhausted": self.exhausted,
            "certified_empty": self.certified_empty,
            "unrestricted": self.job.unrestricted,
            "nodes_expanded": self.nodes_expanded,
        }


# Target predicates


class _CycleSets:
    """0 ∉ (k+1)S and R_k(S) = Z_n \\ (S ∪ {0})."""

    def __init__(self, n: int, k: int) -> None:
        self.n, self.k = n, k
        self._cache: tuple[int, list[int]] = (0, [])

    def _layers(self, mask: int) -> list[int]:
        if self._cache[0] != mask:
            self._cache = (mask, sumset_layers(self.n, mask, self.k + 1))
        return self._cache[1]

    def hereditary(self, mask: int) -> bool:
        return not self._layers(mask)[self.k + 1] & 1

    def accept(self, mask: int) -> bool:
        n, k = self.n, self.k
        size = mask.bit_count()
        # |kS| is at most the number of k-multisets of S.
        if comb(size + k - 1, k) < n - 1 - size:
            return False
        layers = self._layers(mask)
        targets = full_mask(n) & ~mask & ~1
        if layers[k] & targets != targets:
            return False
        return WalkSearch(n, mask, k, layers).first_unreachable(targets) is None


class _CliqueCirculants:
    def __init__(self, n: int, s: int) -> None:
        if s < 3:
            raise InvalidArgumentError(f"clique size must be at least 3, got {s}")
        self.n, self.s = n, s

    def _rows(self, mask: int) -> tuple[int, ...]:
        return tuple(rotate(mask, v, self.n) for v in range(self.n))

    def hereditary(self, mask: int) -> bool:
        rows = self._rows(mask)
        return clique_within(rows, rows[0], self.s - 1) is None

    def accept(self, mask: int) -> bool:
        rows = self._rows(mask)
        missing = full_mask(self.n) & ~mask & ~1
        return all(
            clique_within(rows, rows[0] & rows[v], self.s - 2) is not None
            for v in iter_bits(missing)
        )


class _CompleteK1:
    """kS = Z_n \\ S."""

    def __init__(self, n: int, k: int) -> None:
        if k < 2:
            raise InvalidArgumentError(f"k must be at least 2, got {k}")
        self.n, self.k = n, k

    def _ksum(self, mask: int) -> int:
        acc = mask
        for _ in range(self.k - 1):
            acc = add_masks(acc, mask, self.n)
        return acc

    def hereditary(self, mask: int) -> bool:
        return not self._ksum(mask) & mask

    def accept(self, mask: int) -> bool:
        return (self._ksum(mask) | mask) == full_mask(self.n)


def _predicate(job: SearchJob) -> _CycleSets | _CliqueCirculants | _CompleteK1:
    if job.target == "cycle_sets":
        return _CycleSets(job.n, job.param)
    if job.target == "clique_circulants":
        return _CliqueCirculants(job.n, job.param)
    return _CompleteK1(job.n, job.param)


def orbit_masks(n: int) -> list[tuple[int, int]]:
    """(representative, mask) for every orbit {x, n-x}, x = 1..n/2."""
    return [(x, (1 << x) | (1 << (n - x))) for x in range(1, n // 2 + 1)]


# Tasks


@dataclass
class TaskOutcome:
    size: int
    first: int
    hits: list[tuple[int, int]] = field(default_factory=list)  # (node ordinal, mask)
    nodes: int = 0
    finished: bool = True


class _TaskRunner:
    def __init__(self, job: SearchJob, limit: int | None, stop_at_first: bool) -> None:
        self.predicate = _predicate(job)
        self.orbits = [mask for _, mask in orbit_masks(job.n)]
        self.limit = limit
        self.stop_at_first = stop_at_first

    def run(self, size: int, first: int) -> TaskOutcome:
        self.outcome = TaskOutcome(size, first)
        self.size = size
        self.halted = False
        mask = self.orbits[first]
        if self.predicate.hereditary(mask) and self._admit():
            self._descend(mask, 1, first + 1)
        self.outcome.finished = not self.halted
        return self.outcome

    def _admit(self) -> bool:
        if self.limit is not None and self.outcome.nodes >= self.limit:
            self.halted = True
            return False
        self.outcome.nodes += 1
        return True

    def _descend(self, mask: int, count: int, start: int) -> None:
        if count == self.size:
            if self.predicate.accept(mask):
                self.outcome.hits.append((self.outcome.nodes, mask))
                if self.stop_at_first:
                    self.halted = True
            return
        last = len(self.orbits) - (self.size - count)
        for i in range(start, last + 1):
            if self.halted:
                return
            child = mask | self.orbits[i]
            if not self.predicate.hereditary(child):
                continue
            if not self._admit():
                return
            self._descend(child, count + 1, i + 1)


def _run_task(
    job: SearchJob, size: int, first: int, limit: int | None, stop_at_first: bool
) -> TaskOutcome:
    return _TaskRunner(job, limit, stop_at_first).run(size, first)


def _tasks(job: SearchJob) -> Iterator[tuple[int, int]]:
    total = job.orbit_count
    for size in range(1, job.cap + 1):
        for first in range(total - size + 1):
            yield size, first


class _Merger:
    """Folds task outcomes, in task order, into one SearchResult."""

    def __init__(self, job: SearchJob, stop_at_first: bool) -> None:
        self.job = job
        self.stop_at_first = stop_at_first
        self.offset = 0
        self.masks: list[int] = []
        self.done = False
        self.exhausted = True

    def add(self, outcome: TaskOutcome) -> None:
        budget = self.job.budget
        for ordinal, mask in outcome.hits:
            if budget is not None and self.offset + ordinal > budget:
                break
            self.masks.append(mask)
            if self.stop_at_first:
                self.offset += ordinal
                self.exhausted = False
                self.done = True
                return
        over = budget is not None and self.offset + outcome.nodes > budget
        if over or not outcome.finished:
            self.offset += outcome.nodes
            if budget is not None:
                self.offset = min(self.offset, budget)
            self.exhausted = False
            self.done = True
            return
        self.offset += outcome.nodes


def _collect(job: SearchJob, jobs: int) -> _Merger:
    stop_at_first = job.mode != "all-hits"
    merger = _Merger(job, stop_at_first)
    if jobs <= 1:
        runner = _TaskRunner(job, job.budget, stop_at_first)
        for size, first in _tasks(job):
            merger.add(runner.run(size, first))
            if merger.done:
                break
        return merger

    window = 2 * jobs
    pending: list[Future[TaskOutcome]] = []
    tasks = _tasks(job)
    pool = ProcessPoolExecutor(max_workers=jobs)
    try:
        while True:
            while len(pending) < window:
                nxt = next(tasks, None)
                if nxt is None:
                    break
                size, first = nxt
                pending.append(
                    pool.submit(_run_task, job, size, first, job.budget, stop_at_first)
                )
            if not pending:
                break
            merger.add(pending.pop(0).result())
            if merger.done:
                break
    finally:
        # Running tasks are abandoned, not awaited, once the merge is done.
        pool.shutdown(wait=not merger.done, cancel_futures=True)
    return merger


def hit_report(job: SearchJob, s: SymmetricSet) -> dict[str, Any]:
    """Replay a hit through the full, unfiltered predicate."""
    if job.target == "cycle_sets":
        hypotheses = check_construction_hypotheses(s, job.param)
        verdict = is_cycle_saturated(cayley_graph(job.n, s), job.param + 1)
        return {
            "hypotheses": hypotheses.to_dict(),
            "saturation": verdict.to_dict(),
            "ok": hypotheses.passed and verdict.saturated,
        }
    if job.target == "clique_circulants":
        verdict = is_clique_saturated(cayley_graph(job.n, s), job.param)
        return {"saturation": verdict.to_dict(), "ok": verdict.saturated}
    return {"complete_kl": True, "ok": is_complete_kl(s, job.param, 1)}


def run_search(job: SearchJob, jobs: int = 1) -> SearchResult:
    logger.info(
        "search %s on Z_%d (param %d, cap %d, mode %s)",
        job.target,
        job.n,
        job.param,
        job.cap,
        job.mode,
    )
    merger = _collect(job, max(1, jobs))
    hits = []
    for mask in merger.masks:
        s = SymmetricSet(job.n, tuple(iter_bits(mask)))
        report = hit_report(job, s)
        if not report["ok"]:
            raise ConstructionDiscrepancyError(
                f"search hit {s} fails replay: {report}"
            )
        hits.append(SearchHit(s, report))
        logger.info("hit: %s", s)
    result = SearchResult(job, hits, merger.exhausted, merger.offset)
    logger.info(
        "search done: %d hit(s), %d node(s), exhausted=%s",
        len(hits),
        result.nodes_expanded,
        result.exhausted,
    )
    return result


def find_cycle_sets(
    n: int,
    k: int,
    mode: Mode = "first-hit",
    max_orbit_pairs: int | None = None,
    budget: int | None = None,
    jobs: int = 1,
) -> SearchResult:
    if k < 2 or k % 2:
        logger.warning(
            "cycle-set searches need an even k (got %d); sporadic odd cases "
            "such as k = 5 are not covered by the Cayley-graph construction",
            k,
        )
        raise InvalidArgumentError(f"k must be an even integer >= 2, got {k}")
    job = SearchJob(n, "cycle_sets", k, max_orbit_pairs, budget, mode)
    return run_search(job, jobs)


def find_clique_circulants(
    n: int,
    s: int,
    mode: Mode = "first-hit",
    max_orbit_pairs: int | None = None,
    budget: int | None = None,
    jobs: int = 1,
    store: BaseStore | None = None,
) -> SearchResult:
    job = SearchJob(n, "clique_circulants", s, max_orbit_pairs, budget, mode)
    result = run_search(job, jobs)
    if store is not None and s == 4 and result.hits:
        store.save(n, s, [hit.set for hit in result.hits])
    return result


def find_complete_k1_sets(
    n: int,
    k: int,
    mode: Mode = "first-hit",
    max_orbit_pairs: int | None = None,
    budget: int | None = None,
    jobs: int = 1,
) -> SearchResult:
    if k < 2:
        raise InvalidArgumentError(f"k must be at least 2, got {k}")
    job = SearchJob(n, "complete_k1", k, max_orbit_pairs, budget, mode)
    return run_search(job, jobs)


# The C5 table

VERIFIED = "verified"
CERTIFIED_EMPTY = "certified-empty"
FOUND_UNLISTED = "found-unlisted"
NO_HIT_UNDER_CAP = "no-hit-under-cap"
DISCREPANCY = "discrepancy"

CSV_COLUMNS = (
    "n",
    "listed_set",
    "degree",
    "status",
    "first_hit",
    "nodes_expanded",
    "detail",
)

PASSING = (VERIFIED, CERTIFIED_EMPTY, FOUND_UNLISTED)


@dataclass
class TableRow:
    n: int
    status: str
    listed: tuple[int, ...] | None = None
    degree: int | None = None
    first_hit: tuple[int, ...] | None = None
    nodes_expanded: int = 0
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "listed_set": list(self.listed) if self.listed else None,
            "degree": self.degree,
            "status": self.status,
            "first_hit": list(self.first_hit) if self.first_hit else None,
            "nodes_expanded": self.nodes_expanded,
            "detail": self.detail,
        }


@dataclass
class TableArtifact:
    rows: list[TableRow]

    @property
    def ok(self) -> bool:
        return all(row.status in PASSING for row in self.rows)

    def row(self, n: int) -> TableRow:
        return next(r for r in self.rows if r.n == n)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    row.n,
                    " ".join(map(str, row.listed or ())),
                    "" if row.degree is None else row.degree,
                    row.status,
                    " ".join(map(str, row.first_hit or ())),
                    row.nodes_expanded,
                    row.detail,
                ]
            )
        return buffer.getvalue()

    def diff(self) -> list[str]:
        """Orders where the search disagrees with, or goes beyond, the listed sets."""
        lines = []
        for row in self.rows:
            listed = list(row.listed or ())
            found = list(row.first_hit or ())
            if row.status == DISCREPANCY:
                lines.append(f"! n={row.n}: {row.detail}")
            elif row.status == FOUND_UNLISTED:
                lines.append(f"+ n={row.n}: listing has no set, found {found}")
            elif row.listed and row.first_hit and row.first_hit != row.listed:
                lines.append(f"~ n={row.n}: listed {listed}, first hit {found}")
            elif row.listed and row.first_hit is None:
                lines.append(
                    f"~ n={row.n}: listed set verified, no hit within the orbit cap"
                )
        return lines

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "diff": self.diff(),
        }


def _verify_listed(n: int, elements: tuple[int, ...]) -> tuple[bool, str, int | None]:
    s = SymmetricSet(n, elements)
    hypotheses = check_construction_hypotheses(s, 4)
    verdict = is_cycle_saturated(cayley_graph(n, s), 5)
    ok = hypotheses.passed and verdict.saturated and verdict.regular == len(s)
    detail = ""
    if not ok:
        detail = f"hypotheses {hypotheses.to_dict()}, saturation {verdict.to_dict()}"
    return ok, detail, verdict.regular


def reproduce_table(
    orders: list[int] | None = None,
    max_orbit_pairs: int = 5,
    jobs: int = 1,
    strict: bool = True,
) -> TableArtifact:
    """Re-derive the C5 table for odd n in 17..51."""
    rows = []
    for n in orders or list(range(17, 52, 2)):
        listed = C5_TABLE.get(n)
        first = find_cycle_sets(n, 4, "first-hit", max_orbit_pairs, None, jobs)
        first_hit = first.hits[0].set.elements if first.hits else None
        row = TableRow(
            n, NO_HIT_UNDER_CAP, listed, None, first_hit, first.nodes_expanded
        )
        if listed is not None:
            ok, detail, degree = _verify_listed(n, listed)
            row.status = VERIFIED if ok else DISCREPANCY
            row.detail, row.degree = detail, degree
        elif n in C5_FOUND:
            ok, detail, degree = _verify_listed(n, C5_FOUND[n])
            row.status = FOUND_UNLISTED if ok else DISCREPANCY
            row.detail, row.degree = detail, degree
            row.first_hit = row.first_hit or C5_FOUND[n]
        elif n in C5_EMPTY_ORDERS:
            certify = find_cycle_sets(n, 4, "certify-empty", None, None, jobs)
            row.nodes_expanded = certify.nodes_expanded
            if certify.certified_empty:
                row.status = CERTIFIED_EMPTY
            else:
                row.status = DISCREPANCY
                row.detail = "not exhausted"
                if certify.hits:
                    found = certify.hits[0].set
                    row.detail = f"expected no generating set, found {found}"
        elif first_hit is not None:
            row.status = VERIFIED
            row.degree = len(first_hit)
        logger.info("table row n=%d: %s", n, row.status)
        rows.append(row)
    artifact = TableArtifact(rows)
    if strict and not artifact.ok:
        bad = [r.n for r in rows if r.status not in PASSING]
        raise TableDiscrepancyError(f"table rows failed for n = {bad}", artifact)
    return artifact
