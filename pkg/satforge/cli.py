"""Command-line front end: construct, verify, search, table, coverage.

JSON goes to stdout and one-line summaries to stderr, so runs can be piped
into files or `jq` without losing the human-readable part.

Exit codes:
    0  ok (saturated and the claim holds / search completed)
    1  ran fine but the verdict or claim failed
    2  bad parameters
    3  unreadable input, output or config
    4  a construction or the table disagrees with what it claims
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from satforge import __version__
from satforge.config import Settings, load_settings
from satforge.constructions import (
    build,
    c5_bipartite,
    c_odd_cycle,
    g3,
    gprime,
    h4,
    k4_family,
    k5_family,
    large_clique_family,
    regular_saturated,
    spec_from_expression,
)
from satforge.errors import (
    GraphFormatError,
    InvalidArgumentError,
    SatforgeError,
    TableDiscrepancyError,
    UnsupportedParametersError,
)
from satforge.graph_core import (
    ConstructionSpec,
    Graph,
    blow_up,
    cayley_graph,
    join,
    petersen,
)
from satforge.graph_io import FORMATS, read_graph, write_graph
from satforge.group_sets import SymmetricSet
from satforge.logs import init_logging
from satforge.saturation import Target, check_saturation, verify_graph
from satforge.search import (
    MODES,
    SearchJob,
    TargetName,
    find_clique_circulants,
    find_complete_k1_sets,
    find_cycle_sets,
    reproduce_table,
)
from satforge.store import BaseStore, ResultLog

logger = logging.getLogger(__name__)

FAMILIES = (
    "cayley",
    "g3",
    "h4",
    "gprime",
    "k4",
    "k5",
    "large-clique",
    "odd-cycle",
    "petersen",
    "join",
    "blowup",
    "bipartite",
)

SEARCH_TARGETS: dict[str, TargetName] = {
    "cycle-sets": "cycle_sets",
    "clique-circulants": "clique_circulants",
    "complete-k1": "complete_k1",
}

DEFAULT_TARGETS = {"petersen": "clique:3"}


def emit(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def _need(args: argparse.Namespace, *names: str) -> list[Any]:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidArgumentError(
            f"construct {args.family} needs {', '.join(missing)}"
        )
    return [getattr(args, n) for n in names]


def _expression(text: str) -> Graph:
    """A builder expression, or `@file.json` holding a spec."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            spec = ConstructionSpec.from_dict(json.loads(path.read_text()))
        except OSError as exc:
            raise GraphFormatError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: invalid JSON: {exc}") from exc
    else:
        spec = spec_from_expression(text)
    return build(spec)


def _construct_graph(args: argparse.Namespace, store: BaseStore) -> Graph:
    family = args.family
    if family == "cayley":
        s = SymmetricSet.from_text(*_need(args, "set"))
        return cayley_graph(s.modulus, s)
    if family == "g3":
        return g3(*_need(args, "k", "r"))
    if family == "h4":
        return h4(*_need(args, "k"))
    if family == "gprime":
        return gprime(*_need(args, "k"))
    if family == "k4":
        return k4_family(*_need(args, "n"), store=store)
    if family == "k5":
        return k5_family(*_need(args, "n"))
    if family == "large-clique":
        delta, k, r = _need(args, "delta", "k", "r")
        return large_clique_family(delta, k, r, args.part)
    if family == "odd-cycle":
        return c_odd_cycle(*_need(args, "alpha", "k"))
    if family == "petersen":
        return petersen()
    if family == "bipartite":
        return c5_bipartite(*_need(args, "n"))
    if family == "join":
        left, right = _need(args, "left", "right")
        return join(_expression(left), _expression(right))
    base, t = _need(args, "base", "t")
    return blow_up(_expression(base), t)


def cmd_construct(args: argparse.Namespace, settings: Settings) -> int:
    store = BaseStore(settings.base_dir)
    graph = _construct_graph(args, store)
    target_text = args.target or DEFAULT_TARGETS.get(args.family)
    target = Target.parse(target_text) if target_text else None
    report = verify_graph(graph, target)
    if args.out is not None:
        write_graph(graph, args.out, args.format)
    emit(report.to_dict())
    print(
        f"{report.family}: n={report.order} degree={report.degree} "
        f"{report.verdict.target} -> {report.verdict.verdict}"
        f"{'' if report.ok else ' (claim not met)'}",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    graph = read_graph(args.graph)
    target = Target.parse(args.target)
    verdict = check_saturation(graph, target, use_symmetry=not args.no_symmetry)
    emit(verdict.to_dict())
    print(f"{args.graph}: {verdict.target} -> {verdict.verdict}", file=sys.stderr)
    return 0 if verdict.saturated else 1


def cmd_search(args: argparse.Namespace, settings: Settings) -> int:
    target = SEARCH_TARGETS[args.target]
    settings = settings.with_overrides(
        base_dir=args.store,
        jobs=args.jobs,
        budget=args.budget,
        max_orbit_pairs=args.max_orbit_pairs,
    )
    options = {
        "mode": args.mode,
        "max_orbit_pairs": settings.max_orbit_pairs,
        "budget": settings.budget,
        "jobs": settings.jobs,
    }
    param = args.s if target == "clique_circulants" else args.k
    if param is None:
        flag = "--s" if target == "clique_circulants" else "--k"
        raise InvalidArgumentError(f"--target {args.target} needs {flag}")
    if args.resume and args.out is not None:
        job = SearchJob(
            args.n, target, param, settings.max_orbit_pairs, settings.budget, args.mode
        ).to_dict()
        records = ResultLog(args.out).records()
        done = next((r for r in records if r.get("job") == job), None)
        if done is not None:
            print(json.dumps(done, sort_keys=True))
            print(
                f"{args.target} n={args.n}: already in {args.out}, not rerun",
                file=sys.stderr,
            )
            if args.mode == "certify-empty" and not done.get("certified_empty"):
                return 1
            return 0

    if target == "clique_circulants":
        store = BaseStore(settings.base_dir)
        result = find_clique_circulants(args.n, param, store=store, **options)
    else:
        finder = find_cycle_sets if target == "cycle_sets" else find_complete_k1_sets
        result = finder(args.n, param, **options)

    record = result.to_dict()
    if args.out is not None:
        ResultLog(args.out).append(record)
    print(json.dumps(record, sort_keys=True))
    hits = ", ".join(str(h.set) for h in result.hits[:3]) or "none"
    print(
        f"{args.target} n={args.n}: {len(result.hits)} hit(s) [{hits}], "
        f"{result.nodes_expanded} node(s), exhausted={result.exhausted}",
        file=sys.stderr,
    )
    if args.mode == "certify-empty" and not result.certified_empty:
        return 1
    return 0


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    settings = settings.with_overrides(
        jobs=args.jobs, table_max_orbit_pairs=args.max_orbit_pairs
    )
    artifact = reproduce_table(
        orders=args.orders,
        max_orbit_pairs=settings.table_max_orbit_pairs,
        jobs=settings.jobs,
        strict=False,
    )
    csv_text = artifact.to_csv()
    if args.csv is not None:
        try:
            args.csv.parent.mkdir(parents=True, exist_ok=True)
            args.csv.write_text(csv_text)
        except OSError as exc:
            raise GraphFormatError(f"cannot write {args.csv}: {exc}") from exc
        emit(artifact.to_dict())
    else:
        sys.stdout.write(csv_text)
    for line in artifact.diff():
        print(line, file=sys.stderr)
    if not artifact.ok:
        print("error: table reproduction found discrepancies", file=sys.stderr)
        return TableDiscrepancyError.exit_code
    print(f"table: {len(artifact.rows)} row(s) ok", file=sys.stderr)
    return 0


def cmd_coverage(args: argparse.Namespace, settings: Settings) -> int:
    target = Target.parse(args.target)
    store = BaseStore(settings.with_overrides(base_dir=args.store).base_dir)
    covered: dict[str, Any] = {}
    gaps: list[int] = []
    failed: list[int] = []
    for n in range(args.start, args.stop + 1):
        try:
            graph = regular_saturated(target, n, store)
        except UnsupportedParametersError as exc:
            logger.debug("n=%d: %s", n, exc)
            gaps.append(n)
            continue
        entry: dict[str, Any] = {"family": graph.spec.family if graph.spec else None}
        if graph.spec is not None:
            entry["params"] = graph.spec.params
        if args.verify:
            report = verify_graph(graph, target)
            entry["ok"] = report.ok
            if not report.ok:
                failed.append(n)
        covered[str(n)] = entry
    emit({"target": str(target), "covered": covered, "gaps": gaps, "failed": failed})
    print(
        f"{target}: {len(covered)} order(s) covered, {len(gaps)} gap(s)",
        file=sys.stderr,
    )
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satforge",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="More logging (-vv for debug)",
    )
    parser.add_argument(
        "-q", "--quiet", action="count", default=0, help="Only log errors"
    )
    parser.add_argument(
        "--config", type=Path, default=None, help="Path to a satforge.toml"
    )
    parser.add_argument("--no-config", action="store_true", help="Ignore config files")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="Build a family member and verify it")
    construct.add_argument("family", choices=FAMILIES)
    for name in ("k", "r", "n", "alpha", "delta", "t"):
        construct.add_argument(f"--{name}", type=int, default=None)
    construct.add_argument(
        "--part", choices=("i", "ii"), default="i", help="large-clique part"
    )
    construct.add_argument("--set", help="cayley: connection set as 'n: a,b,c'")
    construct.add_argument("--left", help="join: builder expression or @spec.json")
    construct.add_argument("--right", help="join: builder expression or @spec.json")
    construct.add_argument("--base", help="blowup: builder expression or @spec.json")
    construct.add_argument(
        "--target", help="clique:s or cycle:m (default: the family's claim)"
    )
    construct.add_argument(
        "--out", type=Path, default=None, help="Write the graph here"
    )
    construct.add_argument("--format", choices=FORMATS, default="graph6")
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser("verify", help="Check a stored graph for saturation")
    verify.add_argument(
        "--graph", type=Path, required=True, help="graph6 or edge-list JSON file"
    )
    verify.add_argument("--target", required=True, help="clique:s or cycle:m")
    verify.add_argument(
        "--no-symmetry", action="store_true", help="Skip the circulant shortcut"
    )
    verify.set_defaults(handler=cmd_verify)

    search = sub.add_parser("search", help="Search symmetric subsets of Z_n")
    search.add_argument("--n", type=int, required=True)
    search.add_argument("--target", choices=tuple(SEARCH_TARGETS), required=True)
    search.add_argument("--k", type=int, default=None)
    search.add_argument("--s", type=int, default=None)
    search.add_argument("--mode", choices=MODES, default="first-hit")
    search.add_argument("--budget", type=int, default=None, help="Node expansion limit")
    search.add_argument("--jobs", type=int, default=None)
    search.add_argument("--max-orbit-pairs", type=int, default=None)
    search.add_argument(
        "--out", type=Path, default=None, help="Append the result to this JSONL file"
    )
    search.add_argument(
        "--resume",
        action="store_true",
        help="Reuse a matching record from --out instead of rerunning",
    )
    search.add_argument(
        "--store", type=Path, default=None, help="Base-graph store directory"
    )
    search.set_defaults(handler=cmd_search)

    table = sub.add_parser("table", help="Reproduce the C5 generating-set table")
    table.add_argument("--jobs", type=int, default=None)
    table.add_argument(
        "--csv", type=Path, default=None, help="Write the CSV here and print JSON"
    )
    table.add_argument("--max-orbit-pairs", type=int, default=None)
    table.add_argument(
        "--orders", type=int, nargs="+", default=None, help="Only these odd orders"
    )
    table.set_defaults(handler=cmd_table)

    coverage = sub.add_parser("coverage", help="Which orders a target is covered for")
    coverage.add_argument("--target", required=True)
    coverage.add_argument("--from", dest="start", type=int, required=True)
    coverage.add_argument("--to", dest="stop", type=int, required=True)
    coverage.add_argument(
        "--verify", action="store_true", help="Also verify every graph"
    )
    coverage.add_argument("--store", type=Path, default=None)
    coverage.set_defaults(handler=cmd_coverage)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    init_logging(args.verbose - args.quiet)
    try:
        settings = load_settings(args.config, args.no_config)
        return int(args.handler(args, settings))
    except SatforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
