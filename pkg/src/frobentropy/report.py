"""Deterministic report assembly: JSON with a config fingerprint, plus CSV.

Reports must be byte-identical across runs and worker counts for the same
config: keys are sorted, floats use repr round-tripping, and nothing
time- or host-dependent is ever written.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from fractions import Fraction
from pathlib import Path

VERSION = "0.1.0"


def fingerprint(config_text: str) -> str:
    digest = hashlib.sha256()
    digest.update(VERSION.encode())
    digest.update(b"\x00")
    digest.update(config_text.encode())
    return digest.hexdigest()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return (int(obj) if obj.denominator == 1
                else {"num": obj.numerator, "den": obj.denominator})
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj == float("inf"):
        return "inf"
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def write_json(report: dict, path):
    Path(path).write_text(dumps_report(report))


def _fmt(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def entropy_csv_columns(dim: int, t_grid) -> list:
    cols = ["e", "L_e", "mu_eR"]
    cols += [f"beta_{i}" for i in range(2 * dim + 1)]
    for t in t_grid:
        cols.append(f"lower_t={_fmt(float(t))}")
        cols.append(f"upper_t={_fmt(float(t))}")
    return cols


def write_entropy_csv(path, dim: int, t_grid, rows):
    """rows: iterable of dicts with keys e, L_e, mu_eR, betti, bounds[t]."""
    cols = entropy_csv_columns(dim, t_grid)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        record = [row["e"], row["L_e"], row["mu_eR"]]
        betti = list(row["betti"])
        betti += [0] * (2 * dim + 1 - len(betti))
        record += betti
        for t in t_grid:
            cert = row["bounds"][float(t)]
            record.append(_fmt(cert.lower))
            record.append(_fmt(cert.upper))
        writer.writerow([_fmt(x) for x in record])
    Path(path).write_text(buf.getvalue())


def write_table_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    Path(path).write_text(buf.getvalue())


def degrees_cell(degrees) -> str:
    """Degree multiset as a CSV-safe semicolon-joined cell."""
    parts = []
    for d in degrees:
        if isinstance(d, tuple):
            parts.append("(" + " ".join(str(x) for x in d) + ")")
        else:
            parts.append(str(d))
    return ";".join(parts)
