"""CSV/JSON readers and writers, and run manifests.

Parsers reject malformed input rather than repairing it. Numbers are written
with 15 significant digits and undefined values as the string ``undefined``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field, is_dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .gambit import CensusData
from .graph import WEIGHTED, Network

UNDEFINED = "undefined"
CENSUS_HEADER = ["census", "group", "individual"]
EDGE_HEADER = ["u", "v", "weight"]
TRACE_HEADER = ["run", "census", "assortativity", "defined", "edges", "associations_observed"]
SUMMARY_HEADER = ["census", "median", "q25", "q75", "min", "max", "n_undefined"]
NULLS_HEADER = ["replicate", "value", "defined"]


class DataError(ValueError):
    """Input file is missing, malformed or violates a data invariant."""


def fmt(x) -> str:
    if x is None:
        return UNDEFINED
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".15g")


def _read_rows(path, header):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path}: not valid UTF-8 ({exc})") from None
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DataError(f"{path}: empty file")
    if [h.strip() for h in rows[0]] != header:
        raise DataError(f"{path}: header must be {','.join(header)}")
    body = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        row = [f.strip() for f in row]
        if any(f == "" for f in row):
            raise DataError(f"{path}:{lineno}: empty field")
        if any("," in f for f in row):
            raise DataError(f"{path}:{lineno}: labels may not contain commas")
        body.append((lineno, row))
    return body


def parse_census_csv(path) -> CensusData:
    """Read ``census,group,individual`` rows (any order) into CensusData.

    Censuses and groups keep the order in which their labels first appear.
    """
    rows = _read_rows(path, CENSUS_HEADER)
    if not rows:
        raise DataError(f"{path}: no census rows")
    censuses = {}
    seen = {}
    for lineno, (c, g, ind) in rows:
        prev = seen.get((c, ind))
        if prev is not None:
            prev_line, prev_group = prev
            raise DataError(
                f"{path}: individual {ind!r} listed twice in census {c!r} "
                f"(line {prev_line} group {prev_group!r}, line {lineno} group {g!r})"
            )
        seen[(c, ind)] = (lineno, g)
        censuses.setdefault(c, {}).setdefault(g, set()).add(ind)
    try:
        return CensusData(
            tuple(tuple(frozenset(m) for m in groups.values()) for groups in censuses.values()),
            tuple(censuses),
            tuple(tuple(groups) for groups in censuses.values()),
        )
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def census_csv(data: CensusData) -> bytes:
    """Rows in census order, group order, then sorted individual. Empty groups
    cannot be represented and are skipped."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CENSUS_HEADER)
    for c, census in enumerate(data.censuses):
        for g, group in enumerate(census):
            for ind in sorted(group):
                w.writerow([data.census_labels[c], data.group_labels[c][g], ind])
    return buf.getvalue().encode("utf-8")


def parse_edgelist_csv(path) -> Network:
    """Read a ``u,v,weight`` edge list; duplicate pairs, self-loops and
    non-positive weights are errors. The result is a weighted network."""
    rows = _read_rows(path, EDGE_HEADER)
    edges = {}
    lines = {}
    for lineno, (u, v, w) in rows:
        try:
            weight = float(w)
        except ValueError:
            raise DataError(f"{path}:{lineno}: weight {w!r} is not a number") from None
        if not (weight > 0 and math.isfinite(weight)):
            raise DataError(f"{path}:{lineno}: weight must be positive and finite, got {w}")
        if u == v:
            raise DataError(f"{path}:{lineno}: self-loop on {u!r}")
        key = (u, v) if u <= v else (v, u)
        if key in edges:
            raise DataError(f"{path}:{lineno}: duplicate edge {u!r}-{v!r} (first on line {lines[key]})")
        edges[key] = weight
        lines[key] = lineno
    return Network((), edges, kind=WEIGHTED)


def edgelist_csv(net: Network) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EDGE_HEADER)
    for (u, v), weight in net.edges.items():
        w.writerow([u, v, fmt(weight)])
    return buf.getvalue().encode("utf-8")


def _table(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue().encode("utf-8")


def trace_csv(trace, threshold_column: bool = False) -> bytes:
    """``run,census,assortativity,defined,edges,associations_observed``.

    Accepts one trace or a ``{threshold: trace}`` mapping; with
    ``threshold_column`` a leading ``threshold`` column is added.
    """
    traces = trace if isinstance(trace, dict) else {getattr(trace, "threshold", None): trace}
    header = (["threshold"] if threshold_column else []) + TRACE_HEADER
    rows = []
    for thr, tr in traces.items():
        for run, census, val, edges, assoc in tr.rows():
            row = [run, census, val, val is not None, edges, assoc]
            rows.append(([thr] if threshold_column else []) + row)
    return _table(header, rows)


def summary_csv(summaries, threshold_column: bool = False) -> bytes:
    """``census,median,q25,q75,min,max,n_undefined`` (optionally threshold-prefixed)."""
    if not isinstance(summaries, dict):
        summaries = {None: summaries}
    header = (["threshold"] if threshold_column else []) + SUMMARY_HEADER
    rows = []
    for thr, s in summaries.items():
        for row in s.rows():
            rows.append(([thr] if threshold_column else []) + list(row))
    return _table(header, rows)


def nulls_csv(result) -> bytes:
    return _table(NULLS_HEADER, [(i + 1, v, v is not None) for i, v in enumerate(result.null_values)])


def _jsonable(obj):
    if isinstance(obj, RunManifest):
        return _jsonable(obj.as_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if obj is None:
        return UNDEFINED
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return UNDEFINED
        # shortest repr of the 15-significant-digit value has <= 15 digits
        return float(format(x, ".15g"))
    return obj


def emit_json(result) -> bytes:
    """Deterministic JSON: sorted keys, 15 significant digits, None -> "undefined"."""
    return (json.dumps(_jsonable(result), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return "sha256:" + h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a result: command, parameters, seed,
    tool version and digests of the input files."""

    command: str
    parameters: dict
    seed: int | None = None
    version: str = __version__
    inputs: dict = field(default_factory=dict)

    @classmethod
    def build(cls, command, parameters, seed=None, input_paths=()):
        inputs = {str(p): file_digest(p) for p in input_paths if p is not None}
        return cls(command, dict(parameters), seed, __version__, inputs)

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "parameters": {k: v for k, v in self.parameters.items() if v is not None},
            "version": self.version,
            "inputs": dict(self.inputs),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out
