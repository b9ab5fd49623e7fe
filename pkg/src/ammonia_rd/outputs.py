"""File emission: atomic writes, fixed-precision CSV, snapshot naming."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

FLOAT_FMT = "%.17g"


def atomic_write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return FLOAT_FMT % x


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path, header, columns) -> Path:
    rows = zip(*columns)
    return atomic_write(path, csv_text(header, rows))


def grid_text(field) -> str:
    field = np.asarray(field, dtype=float)
    return "\n".join(",".join(FLOAT_FMT % v for v in row) for row in field) + "\n"


def time_label(t: float) -> str:
    return f"{round(float(t), 9):g}"


def snapshot_name(species: str, t: float) -> str:
    return f"{species}_t{time_label(t)}.csv"


def write_json(path, data) -> Path:
    return atomic_write(path, json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None if np.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj
