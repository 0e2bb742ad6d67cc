"""On-disk state: the base-graph store and the search result log.

The base store holds verified circulant connection sets, one JSON file per
(order, clique size) at `{base_dir}/{n}_{s}.json`:

    {"n": 25, "s": 4, "sets": [[1, 4, ...], ...]}

The result log is append-only JSONL, one SearchResult per line.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from pathlib import Path
from typing import Any

from satforge.errors import GraphFormatError
from satforge.group_sets import SymmetricSet

logger = logging.getLogger(__name__)


class BaseStore:
    def __init__(self, base_dir: Path) -> None:
        self.base_dir = Path(base_dir)

    def path_for(self, n: int, s: int) -> Path:
        return self.base_dir / f"{n}_{s}.json"

    def load(self, n: int, s: int) -> list[SymmetricSet]:
        path = self.path_for(n, s)
        if not path.is_file():
            return []
        try:
            data = json.loads(path.read_text())
            return [SymmetricSet(n, tuple(values)) for values in data["sets"]]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise GraphFormatError(f"corrupt base store entry {path}: {exc}") from exc

    def save(self, n: int, s: int, sets: list[SymmetricSet]) -> Path:
        """Merge `sets` into the entry for (n, s); order is kept stable and sorted."""
        merged = {tuple(x.elements) for x in self.load(n, s)}
        merged.update(tuple(x.elements) for x in sets)
        ordered = sorted(merged, key=lambda e: (len(e), e))
        path = self.path_for(n, s)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            record = {"n": n, "s": s, "sets": [list(e) for e in ordered]}
            path.write_text(json.dumps(record, indent=2) + "\n")
        except OSError as exc:
            raise GraphFormatError(f"cannot write {path}: {exc}") from exc
        logger.info(
            "stored %d base set(s) for n=%d, s=%d in %s", len(ordered), n, s, path
        )
        return path

    def orders(self, s: int) -> list[int]:
        """Orders with at least one stored set for clique size s."""
        if not self.base_dir.is_dir():
            return []
        found = []
        for path in self.base_dir.glob(f"*_{s}.json"):
            head = path.stem.split("_")[0]
            if head.isdigit() and self.load(int(head), s):
                found.append(int(head))
        return sorted(found)


class ResultLog:
    def __init__(self, path: Path) -> None:
        self.path = Path(path)

    def append(self, record: dict[str, Any]) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as handle:
                handle.write(json.dumps(record, sort_keys=True) + "\n")
        except OSError as exc:
            raise GraphFormatError(f"cannot append to {self.path}: {exc}") from exc

    def records(self) -> Iterator[dict[str, Any]]:
        if not self.path.is_file():
            return
        with self.path.open() as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError as exc:
                    raise GraphFormatError(f"{self.path}:{lineno}: {exc}") from exc
