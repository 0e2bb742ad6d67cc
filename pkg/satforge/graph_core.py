"""Simple undirected graphs on 0..n-1 with bitset adjacency rows.

Row `rows[v]` is an int whose bit u is set iff u ~ v. Every query in the
saturation checks reduces to intersecting rows, so the representation is kept
bare: no per-vertex objects, no adjacency lists.

Labels are deterministic. `join(G, H)` puts G's vertices first and shifts H's
by |G|; `blow_up(G, t)` maps copy i of vertex v to v*t + i. Replaying a
ConstructionSpec therefore reproduces the same labeled graph.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Any

from satforge.errors import InvalidArgumentError
from satforge.group_sets import SymmetricSet, full_mask, iter_bits, rotate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Claim:
    """What a builder promises about its output."""

    order: int
    degree: int | None
    target: str | None

    def to_dict(self) -> dict[str, Any]:
        return {"order": self.order, "degree": self.degree, "target": self.target}

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> Claim:
        return cls(obj["order"], obj.get("degree"), obj.get("target"))


@dataclass(frozen=True, eq=False)
class ConstructionSpec:
    """Provenance of a graph: enough to rebuild it bit for bit."""

    family: str
    params: dict[str, Any] = field(default_factory=dict)
    children: tuple[ConstructionSpec, ...] = ()
    claim: Claim | None = None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family, "params": dict(self.params)}
        if self.children:
            out["children"] = [child.to_dict() for child in self.children]
        if self.claim is not None:
            out["claim"] = self.claim.to_dict()
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> ConstructionSpec:
        if not isinstance(obj, dict) or "family" not in obj:
            raise InvalidArgumentError(f"not a construction spec: {obj!r}")
        claim = obj.get("claim")
        return cls(
            family=str(obj["family"]),
            params=dict(obj.get("params", {})),
            children=tuple(cls.from_dict(c) for c in obj.get("children", ())),
            claim=Claim.from_dict(claim) if claim else None,
            notes=tuple(obj.get("notes", ())),
        )

    def with_claim(self, claim: Claim, *notes: str) -> ConstructionSpec:
        return replace(self, claim=claim, notes=self.notes + notes)


@dataclass(frozen=True)
class Graph:
    order: int
    rows: tuple[int, ...]
    spec: ConstructionSpec | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise InvalidArgumentError(f"a graph needs at least one vertex, got {n}")
        if len(self.rows) != n:
            raise InvalidArgumentError(
                f"expected {n} adjacency rows, got {len(self.rows)}"
            )
        for v, row in enumerate(self.rows):
            if row < 0 or row >> n:
                raise InvalidArgumentError(f"row {v} names a vertex outside 0..{n - 1}")
            if (row >> v) & 1:
                raise InvalidArgumentError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not (self.rows[u] >> v) & 1:
                    raise InvalidArgumentError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise InvalidArgumentError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise InvalidArgumentError(f"edge ({u}, {v}) outside 0..{order - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    def with_spec(self, spec: ConstructionSpec) -> Graph:
        return replace(self, spec=spec)

    @property
    def all_vertices(self) -> int:
        return full_mask(self.order)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[tuple[int, int]]:
        """Non-adjacent pairs (u, v), u < v, in lexicographic order."""
        full = self.all_vertices
        for u, row in enumerate(self.rows):
            missing = (full & ~row) >> (u + 1)
            for v in iter_bits(missing):
                yield u, u + 1 + v

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise InvalidArgumentError(f"cannot add a loop at {u}")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.order, tuple(rows))

    def is_circulant(self) -> bool:
        """True when every row is the rotation of row 0.

        That is, v -> v+1 is an automorphism.
        """
        n, first = self.order, self.rows[0]
        return all(self.rows[v] == rotate(first, v, n) for v in range(1, n))


def cayley_graph(n: int, s: SymmetricSet) -> Graph:
    if s.modulus != n:
        raise InvalidArgumentError(f"connection set lives in Z_{s.modulus}, not Z_{n}")
    rows = tuple(rotate(s.mask, v, n) for v in range(n))
    spec = ConstructionSpec("cayley", {"n": n, "set": list(s.elements)})
    return Graph(n, rows, spec)


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n, ConstructionSpec("empty", {"n": n}))


def complete_graph(n: int) -> Graph:
    full = full_mask(n)
    rows = tuple(full & ~(1 << v) for v in range(n))
    return Graph(n, rows, ConstructionSpec("complete", {"n": n}))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgumentError(f"a cycle needs at least 3 vertices, got {n}")
    graph = cayley_graph(n, SymmetricSet.from_generators(n, [1]))
    return graph.with_spec(ConstructionSpec("cycle", {"n": n}))


def join(g: Graph, h: Graph) -> Graph:
    """G + H: disjoint union plus every edge between the two sides."""
    ng, nh = g.order, h.order
    left = tuple(row | (full_mask(nh) << ng) for row in g.rows)
    right = tuple((row << ng) | full_mask(ng) for row in h.rows)
    spec = None
    if g.spec is not None and h.spec is not None:
        spec = ConstructionSpec("join", {}, (g.spec, h.spec))
    return Graph(ng + nh, left + right, spec)


def complete_bipartite(a: int, b: int) -> Graph:
    graph = join(empty_graph(a), empty_graph(b))
    return graph.with_spec(ConstructionSpec("bipartite", {"a": a, "b": b}))


def blow_up(g: Graph, t: int) -> Graph:
    """Replace every vertex by an independent class of size t."""
    if t < 1:
        raise InvalidArgumentError(f"blow-up factor must be positive, got {t}")
    block = full_mask(t)
    rows: list[int] = []
    for v in range(g.order):
        row = 0
        for u in iter_bits(g.rows[v]):
            row |= block << (u * t)
        rows.extend([row] * t)
    spec = None
    if g.spec is not None:
        spec = ConstructionSpec("blow_up", {"t": t}, (g.spec,))
    return Graph(g.order * t, tuple(rows), spec)


def petersen() -> Graph:
    """Kneser graph K(5,2).

    Vertices are the 2-subsets of {0..4} in lexicographic order, adjacent iff
    disjoint.
    """
    pairs = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in combinations(range(len(pairs)), 2)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return Graph.from_edges(10, edges).with_spec(ConstructionSpec("petersen"))


def regular_degree(g: Graph) -> int | None:
    degrees = set(g.degrees())
    return degrees.pop() if len(degrees) == 1 else None


# Cliques


def _colour_classes(rows: tuple[int, ...], candidates: int, limit: int) -> int:
    """Greedy colour count of the candidates, stopping once `limit` is reached."""
    colours = 0
    uncoloured = candidates
    while uncoloured:
        colours += 1
        if colours >= limit:
            return colours
        available = uncoloured
        while available:
            low = available & -available
            v = low.bit_length() - 1
            uncoloured &= ~low
            available &= ~rows[v] & ~low
    return colours


def clique_within(
    rows: tuple[int, ...], candidates: int, size: int
) -> list[int] | None:
    """A clique of `size` vertices inside the `candidates` mask, if any."""
    if size <= 0:
        return []
    if candidates.bit_count() < size:
        return None
    if size == 1:
        return [(candidates & -candidates).bit_length() - 1]
    if size == 2:
        for v in iter_bits(candidates):
            inside = rows[v] & candidates
            if inside:
                return [v, (inside & -inside).bit_length() - 1]
        return None
    if _colour_classes(rows, candidates, size) < size:
        return None

    pivot = max(iter_bits(candidates), key=lambda u: (rows[u] & candidates).bit_count())
    remaining = candidates
    # A clique avoiding every branch vertex lies in N(pivot) and extends by the pivot.
    for v in iter_bits(candidates & ~rows[pivot]):
        found = clique_within(rows, remaining & rows[v], size - 1)
        if found is not None:
            return [v, *found]
        remaining &= ~(1 << v)
        if remaining.bit_count() < size:
            break
    return None


def contains_clique(g: Graph, s: int) -> tuple[int, ...] | None:
    if s < 2:
        raise InvalidArgumentError(f"clique size must be at least 2, got {s}")
    found = clique_within(g.rows, g.all_vertices, s)
    return tuple(sorted(found)) if found is not None else None


def clique_through(g: Graph, v: int, s: int) -> tuple[int, ...] | None:
    found = clique_within(g.rows, g.rows[v], s - 1)
    return tuple(sorted([v, *found])) if found is not None else None


# Paths and cycles


def walk_layers(
    rows: tuple[int, ...], target: int, length: int, allowed: int
) -> list[int]:
    """layers[r] = vertices of `allowed` with a walk of exactly r edges to `target`."""
    layers = [1 << target]
    for _ in range(length):
        reach = 0
        for w in iter_bits(layers[-1]):
            reach |= rows[w]
        layers.append(reach & allowed)
    return layers


def _extend(
    rows: tuple[int, ...],
    path: list[int],
    visited: int,
    remaining: int,
    target: int,
    layers: list[int],
) -> bool:
    pos = path[-1]
    if remaining == 1:
        if (rows[pos] >> target) & 1:
            path.append(target)
            return True
        return False
    options = rows[pos] & layers[remaining - 1] & ~visited & ~(1 << target)
    for w in iter_bits(options):
        path.append(w)
        if _extend(rows, path, visited | (1 << w), remaining - 1, target, layers):
            return True
        path.pop()
    return False


def _path_between(
    rows: tuple[int, ...],
    u: int,
    v: int,
    length: int,
    layers: list[int],
) -> list[int] | None:
    if not (layers[length] >> u) & 1:
        return None
    path = [u]
    return path if _extend(rows, path, 1 << u, length, v, layers) else None


def find_path(g: Graph, u: int, v: int, length: int) -> tuple[int, ...] | None:
    """A path u = x_0, ..., x_length = v on distinct vertices, if any."""
    if u == v:
        raise InvalidArgumentError("path endpoints must differ")
    if length < 1:
        raise InvalidArgumentError(f"path length must be positive, got {length}")
    if length >= g.order:
        return None
    layers = walk_layers(g.rows, v, length, g.all_vertices)
    path = _path_between(g.rows, u, v, length, layers)
    return tuple(path) if path is not None else None


def exists_path_of_length(g: Graph, u: int, v: int, length: int) -> bool:
    return find_path(g, u, v, length) is not None


def _cycle_at(g: Graph, v: int, m: int, allowed: int) -> tuple[int, ...] | None:
    layers = walk_layers(g.rows, v, m, allowed)
    # No closed walk of length m at v: no cycle either.
    if not (layers[m] >> v) & 1:
        return None
    for w in iter_bits(g.rows[v] & layers[m - 1]):
        path = _path_between(g.rows, w, v, m - 1, layers)
        if path is not None:
            return (v, *path[:-1])
    return None


def find_cycle_through(g: Graph, v: int, m: int) -> tuple[int, ...] | None:
    if m < 3:
        raise InvalidArgumentError(f"cycle length must be at least 3, got {m}")
    if m > g.order:
        return None
    return _cycle_at(g, v, m, g.all_vertices)


def contains_cycle(g: Graph, m: int) -> tuple[int, ...] | None:
    """An m-cycle as a vertex sequence starting at its least vertex."""
    if m < 3:
        raise InvalidArgumentError(f"cycle length must be at least 3, got {m}")
    if m > g.order:
        return None
    full = g.all_vertices
    for u in range(g.order - m + 1):
        allowed = full & ~full_mask(u)
        cycle = _cycle_at(g, u, m, allowed)
        if cycle is not None:
            return cycle
    return None
