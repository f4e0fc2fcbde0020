"""File-backed checkpoints for long trace computations.

Layout: <root>/v<SCHEMA_VERSION>/<key>/chunk_<idx>.json, one file per chunk,
written atomically.  A corrupt or foreign file is ignored with a warning and
the chunk is recomputed; directories of other schema versions are never
touched.
"""

from __future__ import annotations

import json
import os
import warnings
from pathlib import Path

SCHEMA_VERSION = 1


class FileCheckpoint:
    """Get/put interface over one directory of chunk files."""

    def __init__(self, root: str | os.PathLike, key: str):
        self.dir = Path(root) / f"v{SCHEMA_VERSION}" / key
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, idx: int) -> Path:
        return self.dir / f"chunk_{idx:06d}.json"

    def get(self, idx: int):
        path = self._path(idx)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, OSError) as exc:
            warnings.warn(f"ignoring unreadable checkpoint {path}: {exc}")
            return None
        if (
            not isinstance(data, dict)
            or data.get("schema_version") != SCHEMA_VERSION
            or not isinstance(data.get("coeffs"), list)
            or not all(isinstance(c, int) for c in data["coeffs"])
        ):
            warnings.warn(f"ignoring checkpoint with unexpected shape: {path}")
            return None
        return data["coeffs"]

    def put(self, idx: int, coeffs: list[int]) -> None:
        path = self._path(idx)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "coeffs": list(coeffs)}, fh)
        os.replace(tmp, path)


def nww_key(type_name: str, w: int, wp: int, n_chunks: int) -> str:
    """Stable directory key for one trace computation."""
    return f"{type_name}/nww_{w}_{wp}_c{n_chunks}"
