"""CSV and JSON writers shared by the CLI and the figure recipes.

CSV files are RFC-4180 with a header row and 17 significant digits; every
JSON document carries ``schema_version``.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1
FORMATS = ("csv", "json", "both")


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        rows = [[float(v) for v in row] for row in r]
    return header, np.array(rows).reshape(len(rows), len(header))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        # JSON has no inf/nan; keep them readable
        return x if math.isfinite(x) else str(x)
    return obj


def write_json(path, payload: dict, kind: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(_jsonable(payload))
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def emit_table(out_dir, stem, header, rows, meta: dict, fmt="both", kind="table"):
    """Write ``stem.csv`` and/or ``stem.json``; the JSON holds the metadata and,
    when no CSV is written, the columns themselves."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    out_dir = Path(out_dir)
    written = []
    rows = [list(r) for r in rows]
    if fmt in ("csv", "both"):
        written.append(write_csv(out_dir / f"{stem}.csv", header, rows))
    if fmt in ("json", "both"):
        payload = {"metadata": meta}
        if fmt == "json":
            payload["columns"] = {h: [r[i] for r in rows] for i, h in enumerate(header)}
        else:
            payload["csv"] = f"{stem}.csv"
        written.append(write_json(out_dir / f"{stem}.json", payload, kind))
    return written
