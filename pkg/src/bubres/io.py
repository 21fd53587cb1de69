"""Run configuration persistence and tabular export.

Numbers are written with 17 significant digits so doubles round-trip
bit-exactly; complex values become re_/im_ column pairs in CSV and
{"re": ..., "im": ...} objects in JSON.  Output is deterministic: identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def format_float(x):
    return format(float(x), ".17g")


def _flatten(record):
    out = []
    for key, value in record:
        if isinstance(value, complex):
            out.append((f"re_{key}", format_float(value.real)))
            out.append((f"im_{key}", format_float(value.imag)))
        elif isinstance(value, float):
            out.append((key, format_float(value)))
        else:
            out.append((key, str(value)))
    return out


def export_table(records, fmt, path, header_comments=()):
    """Write homogeneous records (sequences of (name, value) pairs) to disk.

    CSV: optional '#' comment lines, a header row, one record per line.
    JSON: {"meta": [...], "rows": [...]} with complex values as re/im objects.
    """
    records = [list(r) for r in records]
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if records:
        names = [k for k, _ in _flatten(records[0])]
        for r in records[1:]:
            if [k for k, _ in _flatten(r)] != names:
                raise ValueError("records are not homogeneous")
    else:
        names = []
    try:
        handle = open(path, "w", encoding="utf-8", newline="")
    except OSError as err:
        raise OSError(f"cannot write table to {path!r}: {err}") from err
    with handle:
        if fmt == "csv":
            for line in header_comments:
                handle.write(f"# {line}\n")
            handle.write(",".join(names) + "\n")
            for r in records:
                handle.write(",".join(v for _, v in _flatten(r)) + "\n")
        else:
            rows = []
            for r in records:
                obj = {}
                for key, value in r:
                    if isinstance(value, complex):
                        obj[key] = {"re": value.real, "im": value.imag}
                    else:
                        obj[key] = value
                rows.append(obj)
            json.dump({"meta": list(header_comments), "rows": rows}, handle, indent=1)
            handle.write("\n")


def parse_csv_table(path):
    """Read back an export_table CSV: (comments, header, rows of strings)."""
    comments, header, rows = [], None, []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[2:] if line.startswith("# ") else line[1:])
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append(line.split(","))
    return comments, header, rows


_CONFIG_FIELDS = {
    "epsilon": float, "weber": float, "cavitation": float, "gamma": float,
    "l": int, "l_max": int, "s": int, "m": int,
    "tol": float, "max_iter": int, "poly_lmax": int,
    "t0": float, "t1": float, "nt": int, "r0": float, "r1": float, "nr": int,
    "theta": float, "phi": float, "beta0_re": float, "beta0_im": float,
    "format": str, "out": str, "kind": str,
}


@dataclass
class RunConfig:
    """Flat key-value run configuration; round-trips losslessly on disk."""

    values: dict = field(default_factory=dict)

    def set(self, key, value):
        if key not in _CONFIG_FIELDS:
            raise KeyError(f"unknown config key {key!r}")
        self.values[key] = _CONFIG_FIELDS[key](value)

    def get(self, key, default=None):
        return self.values.get(key, default)

    def lines(self):
        out = []
        for key in sorted(self.values):
            v = self.values[key]
            out.append(f"{key} = {format_float(v) if isinstance(v, float) else v}")
        return out

    def save(self, path):
        with open(path, "w", encoding="utf-8") as handle:
            for line in self.lines():
                handle.write(line + "\n")

    @classmethod
    def load(cls, path):
        cfg = cls()
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                raw = raw.strip()
                if not raw or raw.startswith("#"):
                    continue
                key, _, value = raw.partition("=")
                cfg.set(key.strip(), value.strip())
        return cfg
