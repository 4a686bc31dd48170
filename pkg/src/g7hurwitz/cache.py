"""On-disk cache for the group table and the subgroup census.

Artifacts are stored as canonical JSON next to a ``manifest.json`` that
records a format version and the sha256 of each artifact.  A file is only
trusted when both match; anything else is rebuilt and rewritten.  The cache
never changes results, only how long they take.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .matgroup import GroupTable, build_g7, lattice, table_from_json, table_to_json

log = logging.getLogger(__name__)

__all__ = ["CacheManifest", "ArtifactCache", "default_cache_dir", "canonical_json", "CACHE_ENV", "CACHE_VERSION"]

CACHE_ENV = "G7HURWITZ_CACHE_DIR"
CACHE_VERSION = "1"
MANIFEST = "manifest.json"


def default_cache_dir() -> Path:
    """``$G7HURWITZ_CACHE_DIR``, else ``~/.cache/g7hurwitz``."""
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "g7hurwitz"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class CacheManifest:
    version: str = CACHE_VERSION
    entries: dict[str, dict[str, str]] = field(default_factory=dict)

    @classmethod
    def load(cls, path: Path) -> CacheManifest:
        try:
            data = json.loads(path.read_text())
            return cls(str(data["version"]), dict(data["entries"]))
        except (OSError, ValueError, KeyError, TypeError):
            return cls()

    def save(self, path: Path) -> None:
        path.write_text(canonical_json({"version": self.version, "entries": self.entries}))


class ArtifactCache:
    """Named JSON artifacts under one directory. ``enabled=False`` makes every lookup a miss."""

    def __init__(self, root: Path | str | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.enabled = enabled
        self.hits: list[str] = []

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST

    def _read(self, name: str):
        man = CacheManifest.load(self.manifest_path)
        entry = man.entries.get(name)
        if man.version != CACHE_VERSION or entry is None:
            return None
        try:
            text = (self.root / entry["path"]).read_text()
        except OSError:
            return None
        if sha256_text(text) != entry["hash"]:
            log.warning("cache artifact %s fails its hash check; rebuilding", name)
            return None
        return json.loads(text)

    def _write(self, name: str, text: str) -> None:
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            fname = f"{name}.json"
            (self.root / fname).write_text(text)
            man = CacheManifest.load(self.manifest_path)
            if man.version != CACHE_VERSION:
                man = CacheManifest()
            man.entries[name] = {"hash": sha256_text(text), "path": fname}
            man.save(self.manifest_path)
        except OSError as exc:
            log.warning("could not write cache artifact %s: %s", name, exc)

    def get_or_build(self, name: str, build: Callable[[], object]):
        if self.enabled:
            data = self._read(name)
            if data is not None:
                self.hits.append(name)
                return data
        # a fresh build goes through the same serialization as a cached one,
        # so callers see identical objects either way
        text = canonical_json(build())
        if self.enabled:
            self._write(name, text)
        return json.loads(text)

    def group_table(self) -> GroupTable:
        data = self.get_or_build("group_table", lambda: table_to_json(build_g7()))
        return table_from_json(data)

    def census(self, host: GroupTable) -> dict:
        return self.get_or_build("census", lambda: lattice(host).to_json())
