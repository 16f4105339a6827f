"""On-disk result cache for the command-line tool.

The file is a single JSON object; its layout is internal and may change
between versions. Each entry records the tool version, a timestamp and a
SHA-256 digest of its payload. An entry whose version or digest does not
match is ignored, so the caller recomputes instead of returning stale or
damaged output.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import tempfile
import time
from contextlib import contextmanager
from typing import Any, Callable

from .report import Report

FORMAT = 1
ENV_VAR = "PERMCOMP_CACHE"


def canonical_json(obj: Any) -> str:
    """Deterministic JSON: keys stringified first, then sorted."""
    return json.dumps(json.loads(json.dumps(obj, default=str)), sort_keys=True, separators=(",", ":"))


def _digest(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


class ResultCache:
    def __init__(self, path: str, version: str):
        self.path = path
        self.version = version
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(op: Any, params: Any = None) -> str:
        return canonical_json([op, params])

    def _load(self) -> dict:
        try:
            with open(self.path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return {}
        if not isinstance(data, dict) or data.get("format") != FORMAT:
            return {}
        entries = data.get("entries")
        return entries if isinstance(entries, dict) else {}

    @contextmanager
    def _locked(self):
        lock_path = self.path + ".lock"
        os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
        with open(lock_path, "w") as lock:
            fcntl.flock(lock, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(lock, fcntl.LOCK_UN)

    def get(self, op: Any, params: Any = None):
        entry = self._load().get(self.key(op, params))
        if (
            not isinstance(entry, dict)
            or entry.get("version") != self.version
            or "payload" not in entry
            or entry.get("digest") != _digest(entry["payload"])
        ):
            self.misses += 1
            return None
        self.hits += 1
        return entry["payload"]

    def put(self, op: Any, params: Any, payload: Any) -> None:
        payload = json.loads(canonical_json(payload))
        with self._locked():
            entries = self._load()
            entries[self.key(op, params)] = {
                "version": self.version,
                "timestamp": time.time(),
                "digest": _digest(payload),
                "payload": payload,
            }
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(self.path)), suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump({"format": FORMAT, "entries": entries}, fh, sort_keys=True)
            os.replace(tmp, self.path)

    def compute(self, op: Any, params: Any, fn: Callable[[], Any]) -> Any:
        """Cached payload, or ``fn()`` normalised to JSON and stored."""
        hit = self.get(op, params)
        if hit is not None:
            return hit
        value = json.loads(canonical_json(fn()))
        self.put(op, params, value)
        return value

    def report(self, op: Any, fn: Callable[[], Report], params: Any = None) -> Report:
        return Report.from_json(self.compute(op, params, lambda: fn().to_json()))


class NullCache:
    """Stand-in used with ``--no-cache``: always recomputes."""

    hits = misses = 0

    def compute(self, op, params, fn):
        return json.loads(canonical_json(fn()))

    def report(self, op, fn, params=None) -> Report:
        return Report.from_json(self.compute(op, params, lambda: fn().to_json()))
