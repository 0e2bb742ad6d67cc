"""Settings for batch runs: store location, worker count, search budgets.

Discovery follows the usual project-file chain: an explicit `--config` path,
then `satforge.toml` or `.satforge.toml` in the working directory, then a
`[tool.satforge]` table in `pyproject.toml`. Flags override the environment,
which overrides the file, which overrides the defaults below.
"""

from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from satforge.errors import ConfigError

logger = logging.getLogger(__name__)

BASE_DIR_ENV = "SATFORGE_BASE_DIR"
JOBS_ENV = "SATFORGE_JOBS"

CONFIG_FILENAMES = ("satforge.toml", ".satforge.toml")

DEFAULT_BASE_DIR = Path("data") / "bases"


@dataclass(frozen=True)
class Settings:
    base_dir: Path = DEFAULT_BASE_DIR
    jobs: int = 1
    # None means unlimited / unrestricted.
    budget: int | None = None
    max_orbit_pairs: int | None = None
    table_max_orbit_pairs: int = 5
    source: str = "defaults"

    def with_overrides(self, **overrides: Any) -> Settings:
        """Apply flag values, ignoring the ones left unset (None)."""
        present = {k: v for k, v in overrides.items() if v is not None}
        if "base_dir" in present:
            present["base_dir"] = Path(present["base_dir"])
        return replace(self, **present)


_KEY_TYPES: dict[str, tuple[type, ...]] = {
    "base_dir": (str,),
    "jobs": (int,),
    "budget": (int,),
    "max_orbit_pairs": (int,),
    "table_max_orbit_pairs": (int,),
}


def discover(cwd: Path | None = None) -> Path | None:
    root = cwd or Path.cwd()
    for name in CONFIG_FILENAMES:
        candidate = root / name
        if candidate.is_file():
            return candidate
    pyproject = root / "pyproject.toml"
    if pyproject.is_file():
        try:
            data = tomllib.loads(pyproject.read_text())
        except tomllib.TOMLDecodeError:
            # A broken pyproject.toml is not ours to report.
            return None
        if "satforge" in data.get("tool", {}):
            return pyproject
    return None


def _table_from(path: Path) -> dict[str, Any]:
    try:
        data = tomllib.loads(path.read_text())
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if path.name == "pyproject.toml":
        data = data.get("tool", {}).get("satforge", {})
    # Keys may sit at top level or be grouped under [search] / [store].
    flat: dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return flat


def _coerce(table: dict[str, Any], path: Path) -> dict[str, Any]:
    known = {f.name for f in fields(Settings)} - {"source"}
    values: dict[str, Any] = {}
    for key, value in table.items():
        key = key.replace("-", "_")
        if key not in known:
            logger.warning("%s: unknown config key %r ignored", path, key)
            continue
        expected = _KEY_TYPES[key]
        if isinstance(value, bool) or not isinstance(value, expected):
            raise ConfigError(
                f"{path}: {key} must be {expected[0].__name__}, "
                f"got {type(value).__name__}"
            )
        if isinstance(value, int) and value < 0:
            raise ConfigError(f"{path}: {key} must be non-negative")
        values[key] = Path(value) if key == "base_dir" else value
    return values


def load_settings(
    config_path: Path | None = None,
    no_config: bool = False,
    cwd: Path | None = None,
) -> Settings:
    settings = Settings()
    path = None if no_config else (config_path or discover(cwd))
    if config_path is not None and not config_path.is_file():
        raise ConfigError(f"config file not found: {config_path}")
    if path is not None:
        values = _coerce(_table_from(path), path)
        settings = replace(settings, **values, source=str(path))
        logger.info("loaded settings from %s", path)

    env_dir = os.environ.get(BASE_DIR_ENV)
    if env_dir:
        settings = replace(settings, base_dir=Path(env_dir))
    env_jobs = os.environ.get(JOBS_ENV)
    if env_jobs:
        try:
            settings = replace(settings, jobs=max(1, int(env_jobs)))
        except ValueError as exc:
            raise ConfigError(
                f"{JOBS_ENV} must be an integer, got {env_jobs!r}"
            ) from exc
    return settings
