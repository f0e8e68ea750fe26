"""Content-addressed JSON cache for solver results.

One file per solve under a sha256 key of the canonical problem data;
writes go through a temp file and an atomic rename so concurrent sweeps
never observe partial entries.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile

__all__ = ["SolveCache", "solve_key"]

_VERSION = "arc-widom-lp-v1"


def solve_key(alpha: float, n: int, u0: complex, grid_m: int, grid_k: int,
              tol: float, max_rounds: int) -> str:
    u0 = complex(u0)
    payload = {
        "version": _VERSION,
        "alpha": repr(float(alpha)),
        "n": int(n),
        "u0": "inf" if math.isinf(abs(u0)) else [repr(u0.real), repr(u0.imag)],
        "grid_m": int(grid_m),
        "grid_k": int(grid_k),
        "tol": repr(float(tol)),
        "max_rounds": int(max_rounds),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class SolveCache:
    """Directory of solve results keyed by content hash."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = os.fspath(directory)
        os.makedirs(self.directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"solve_{key}.json")

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            return None

    def put(self, key: str, record: dict) -> None:
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
