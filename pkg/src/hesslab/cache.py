"""Content-addressed result cache: one JSON file per canonical key."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def default_dir() -> Path:
    env = os.environ.get("HESSLAB_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hesslab"


class Cache:
    def __init__(self, root: Path | str | None = None, version: str = __version__):
        self.root = Path(root) if root else default_dir()
        self.version = version

    def digest(self, key: dict) -> str:
        return hashlib.sha256(canonical({"key": key, "tool_version": self.version}).encode()).hexdigest()

    def path(self, key: dict) -> Path:
        return self.root / f"{self.digest(key)}.json"

    def get(self, key: dict):
        path = self.path(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if entry.get("key") != key or entry.get("tool_version") != self.version:
            return None
        return entry["value"]

    def put(self, key: dict, value) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical({"key": key, "tool_version": self.version, "value": value}))
        os.replace(tmp, path)
        return path

    def entries(self) -> list[dict]:
        if not self.root.exists():
            return []
        out = []
        for f in sorted(self.root.glob("*.json")):
            try:
                entry = json.loads(f.read_text())
            except (OSError, json.JSONDecodeError):
                continue
            out.append({"file": f.name, "key": entry.get("key"), "tool_version": entry.get("tool_version")})
        return out

    def clear(self) -> int:
        n = 0
        if self.root.exists():
            for f in self.root.glob("*.json"):
                f.unlink()
                n += 1
        return n

    def memo(self, key: dict, compute, use: bool = True):
        """Return the cached value for key, computing and storing it on a miss."""
        if use:
            hit = self.get(key)
            if hit is not None:
                return hit
        value = compute()
        if use:
            self.put(key, value)
        return value
