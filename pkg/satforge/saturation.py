"""Exact decision procedures for "G is F-saturated", F a clique or a cycle.

G is F-saturated when it has no copy of F and adding any non-edge creates
one. For F = K_s the second half is checked on the common neighbourhood:
adding uv creates a K_s iff N(u) ∩ N(v) holds a K_{s-2}. For F = C_m it is a
path of m-1 edges between u and v.

Circulant graphs get a shortcut: every non-edge is a translate of some
{0, v}, and every copy of F can be translated through vertex 0, so only those
are examined. The outcome is the same; `use_symmetry=False` disables it.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, Literal

from satforge.errors import InvalidArgumentError
from satforge.graph_core import (
    ConstructionSpec,
    Graph,
    clique_through,
    clique_within,
    contains_clique,
    contains_cycle,
    find_cycle_through,
    find_path,
    regular_degree,
)

logger = logging.getLogger(__name__)

SATURATED = "saturated"
CONTAINS_FORBIDDEN = "contains_forbidden"
NON_EDGE_UNWITNESSED = "non_edge_unwitnessed"

TargetKind = Literal["clique", "cycle"]


@dataclass(frozen=True)
class Target:
    kind: TargetKind
    size: int

    def __post_init__(self) -> None:
        if self.kind not in ("clique", "cycle"):
            raise InvalidArgumentError(
                f"target kind must be clique or cycle, got {self.kind!r}"
            )
        if self.size < 3:
            raise InvalidArgumentError(
                f"{self.kind} size must be at least 3, got {self.size}"
            )

    @classmethod
    def parse(cls, text: str) -> Target:
        """`clique:4` or `cycle:5`."""
        kind, sep, size = text.strip().partition(":")
        if not sep or not size.strip().isdigit():
            raise InvalidArgumentError(f"expected clique:s or cycle:m, got {text!r}")
        return cls(kind.strip().lower(), int(size))  # type: ignore[arg-type]

    def __str__(self) -> str:
        return f"{self.kind}:{self.size}"


@dataclass(frozen=True)
class SaturationVerdict:
    target: Target
    verdict: str
    certificate: tuple[int, ...] = ()
    regular: int | None = None
    edge_count: int = 0
    order: int = 0

    @property
    def saturated(self) -> bool:
        return self.verdict == SATURATED

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": str(self.target),
            "verdict": self.verdict,
            "certificate": list(self.certificate),
            "n": self.order,
            "degree": self.regular,
            "edges": self.edge_count,
        }


def _non_edges(graph: Graph, circulant: bool) -> Iterator[tuple[int, int]]:
    if circulant:
        row = graph.rows[0]
        return ((0, v) for v in range(1, graph.order) if not (row >> v) & 1)
    return graph.non_edges()


def _verdict(
    graph: Graph,
    target: Target,
    verdict: str,
    certificate: tuple[int, ...] = (),
) -> SaturationVerdict:
    return SaturationVerdict(
        target=target,
        verdict=verdict,
        certificate=certificate,
        regular=regular_degree(graph),
        edge_count=graph.edge_count,
        order=graph.order,
    )


def is_clique_saturated(
    graph: Graph, s: int, use_symmetry: bool = True
) -> SaturationVerdict:
    target = Target("clique", s)
    circulant = use_symmetry and graph.is_circulant()

    found = clique_through(graph, 0, s) if circulant else contains_clique(graph, s)
    if found is not None:
        logger.debug("K_%d found: %s", s, found)
        return _verdict(graph, target, CONTAINS_FORBIDDEN, found)

    for u, v in _non_edges(graph, circulant):
        common = graph.rows[u] & graph.rows[v]
        if clique_within(graph.rows, common, s - 2) is None:
            logger.debug(
                "non-edge (%d, %d) has no K_%d in its common neighbourhood",
                u,
                v,
                s - 2,
            )
            return _verdict(graph, target, NON_EDGE_UNWITNESSED, (u, v))
    return _verdict(graph, target, SATURATED)


def is_cycle_saturated(
    graph: Graph, m: int, use_symmetry: bool = True
) -> SaturationVerdict:
    target = Target("cycle", m)
    circulant = use_symmetry and graph.is_circulant()

    found = find_cycle_through(graph, 0, m) if circulant else contains_cycle(graph, m)
    if found is not None:
        logger.debug("C_%d found: %s", m, found)
        return _verdict(graph, target, CONTAINS_FORBIDDEN, found)

    for u, v in _non_edges(graph, circulant):
        if find_path(graph, u, v, m - 1) is None:
            logger.debug("non-edge (%d, %d) has no path of length %d", u, v, m - 1)
            return _verdict(graph, target, NON_EDGE_UNWITNESSED, (u, v))
    return _verdict(graph, target, SATURATED)


def check_saturation(
    graph: Graph, target: Target, use_symmetry: bool = True
) -> SaturationVerdict:
    if target.kind == "clique":
        return is_clique_saturated(graph, target.size, use_symmetry)
    return is_cycle_saturated(graph, target.size, use_symmetry)


@dataclass(frozen=True)
class Report:
    """One verified construction, as emitted on stdout and in result logs."""

    family: str
    params: dict[str, Any]
    verdict: SaturationVerdict
    spec: dict[str, Any] = field(default_factory=dict)
    claimed_order: int | None = None
    claimed_degree: int | None = None

    @property
    def order(self) -> int:
        return self.verdict.order

    @property
    def degree(self) -> int | None:
        return self.verdict.regular

    @property
    def ok(self) -> bool:
        if not self.verdict.saturated:
            return False
        if self.claimed_order is not None and self.claimed_order != self.order:
            return False
        return self.claimed_degree is None or self.claimed_degree == self.degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": self.params,
            "n": self.order,
            "degree": self.degree,
            "edges": self.verdict.edge_count,
            "target": str(self.verdict.target),
            "verdict": self.verdict.verdict,
            "certificate": list(self.verdict.certificate),
            "claimed": {"n": self.claimed_order, "degree": self.claimed_degree},
            "ok": self.ok,
            "spec": self.spec,
        }


def verify_graph(
    graph: Graph, target: Target | None = None, use_symmetry: bool = True
) -> Report:
    spec = graph.spec or ConstructionSpec("graph", {"n": graph.order})
    claim = spec.claim
    if target is None:
        if claim is None or claim.target is None:
            raise InvalidArgumentError(
                f"{spec.family}: no saturation target given or claimed"
            )
        target = Target.parse(claim.target)
    verdict = check_saturation(graph, target, use_symmetry)
    matches_claim = claim is not None and claim.target == str(target)
    report = Report(
        family=spec.family,
        params=dict(spec.params),
        verdict=verdict,
        spec=spec.to_dict(),
        claimed_order=claim.order if matches_claim and claim else None,
        claimed_degree=claim.degree if matches_claim and claim else None,
    )
    logger.info(
        "%s %s: n=%d degree=%s %s -> %s",
        spec.family,
        spec.params,
        graph.order,
        verdict.regular,
        target,
        verdict.verdict,
    )
    return report


def verify_construction(spec: ConstructionSpec, target: Target | None = None) -> Report:
    """Build the graph a spec describes and check it against `target` or its claim."""
    from satforge.constructions import build

    return verify_graph(build(spec), target)
