"""File formats.

Complex + cocycle (JSON)::

    {
      "theta": [1.4142135623730951],          # irrational basis, may be []
      "tol": 1e-9,                            # optional
      "max_simplices": [[0, 1], [1, 2]],
      "cocycle": {"0-1": ["1/3", "0"], ...}   # 1+k rational strings per edge
    }

Every edge key is "x-y" with x < y; the value lists the coordinates
(q0, q1, ..., qk) of the x->y value over the basis (1, theta_1..theta_k),
each as an exact rational string like "2/5" or "-1".

Metric data (JSON)::

    {
      "theta": [...],
      "points": [[x, y], ...],  "metric": "euclidean",   # or instead:
      "distances": [[...], ...],
      "pairs": [[0, 1], ...],
      "f": {"0-1": ["1/4"], ...}
    }

Metric data (CSV): first record ``theta[,t1,t2...]``, then one record per
unordered pair ``i,j,distance[,q0,q1,...]`` -- coordinates present iff the
pair belongs to S.  Every pair i < j must appear exactly once.

Reports and tables are written with sorted keys and fixed float
formatting so identical runs are byte-identical.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .complexes import Cocycle, SimplicialComplex
from .errors import InputFormatError
from .geometrize import MetricData
from .values import PeriodBasis, parse_rational

__all__ = [
    "load_complex_cocycle",
    "dump_complex_cocycle",
    "load_metric_data",
    "dump_metric_data",
    "write_json",
    "write_rows_csv",
]


def _parse_edge_key(key: str) -> tuple[int, int]:
    parts = key.split("-")
    if len(parts) != 2:
        raise InputFormatError(
            f"edge key {key!r} is not of the form 'x-y'")
    try:
        x, y = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputFormatError(
            f"edge key {key!r} has non-integer endpoints") from None
    if not x < y:
        raise InputFormatError(
            f"edge key {key!r} must list the smaller vertex first")
    return x, y


def _coords_from_strings(strings, basis: PeriodBasis, where: str):
    if not isinstance(strings, (list, tuple)):
        raise InputFormatError(f"{where}: coordinate list expected")
    if len(strings) != basis.dim:
        raise InputFormatError(
            f"{where}: expected {basis.dim} coordinates "
            f"(1 + {len(basis.theta)} thetas), got {len(strings)}")
    try:
        coords = tuple(parse_rational(s) for s in strings)
    except InputFormatError as exc:
        raise InputFormatError(f"{where}: {exc}") from None
    return basis.value(coords)


def _basis_from_obj(obj: dict, tol_override: float | None) -> PeriodBasis:
    theta = obj.get("theta", [])
    if not isinstance(theta, list):
        raise InputFormatError('"theta" must be a list of floats')
    tol = tol_override if tol_override is not None else obj.get("tol", 1e-9)
    return PeriodBasis(tuple(float(t) for t in theta), tol=float(tol))


def load_complex_cocycle(path, tol: float | None = None
                         ) -> tuple[SimplicialComplex, Cocycle]:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise InputFormatError(f"{path}: top-level JSON object expected")
    for key in ("max_simplices", "cocycle"):
        if key not in obj:
            raise InputFormatError(f"{path}: missing key {key!r}")
    basis = _basis_from_obj(obj, tol)
    kx = SimplicialComplex(obj["max_simplices"])
    values = {}
    for key, strings in obj["cocycle"].items():
        edge = _parse_edge_key(key)
        values[edge] = _coords_from_strings(strings, basis,
                                            f"{path}: cocycle[{key!r}]")
    return kx, Cocycle(kx, basis, values)


def _coord_strings(value) -> list[str]:
    return [str(q) for q in value.coords]


def dump_complex_cocycle(kx: SimplicialComplex, c: Cocycle, path) -> None:
    obj = {
        "theta": list(c.basis.theta),
        "max_simplices": [list(s) for s in kx.maximal_simplices()],
        "cocycle": {f"{x}-{y}": _coord_strings(c.value(x, y))
                    for (x, y) in kx.edges},
    }
    write_json(obj, path)


# ---------------------------------------------------------------------------
# metric data
# ---------------------------------------------------------------------------

def load_metric_data(path, tol: float | None = None) -> MetricData:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_metric_csv(path, tol)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc})") from None
    basis = _basis_from_obj(obj, tol)
    pairs = set()
    for item in obj.get("pairs", []):
        if not (isinstance(item, list) and len(item) == 2):
            raise InputFormatError(f"{path}: bad pair entry {item!r}")
        pairs.add((int(item[0]), int(item[1])))
    f = {}
    for key, strings in obj.get("f", {}).items():
        edge = _parse_edge_key(key)
        f[edge] = _coords_from_strings(strings, basis,
                                       f"{path}: f[{key!r}]")
    if "points" in obj:
        return MetricData.from_points(obj["points"], pairs, f, basis,
                                      metric=obj.get("metric", "euclidean"))
    if "distances" in obj:
        return MetricData(np.asarray(obj["distances"], dtype=float),
                          frozenset(pairs), f, basis)
    raise InputFormatError(f'{path}: need either "points" or "distances"')


def _load_metric_csv(path: Path, tol: float | None) -> MetricData:
    rows = list(csv.reader(path.read_text().splitlines()))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows or rows[0][0].strip() != "theta":
        raise InputFormatError(
            f"{path}: first CSV record must start with 'theta'")
    theta = tuple(float(t) for t in rows[0][1:] if t.strip())
    basis = PeriodBasis(theta, tol=tol if tol is not None else 1e-9)
    entries = {}
    f = {}
    n = 0
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 3:
            raise InputFormatError(
                f"{path}:{lineno}: expected i,j,distance[,coords...]")
        try:
            i, j, d = int(row[0]), int(row[1]), float(row[2])
        except ValueError:
            raise InputFormatError(
                f"{path}:{lineno}: bad pair record {row!r}") from None
        if not i < j:
            raise InputFormatError(f"{path}:{lineno}: need i < j")
        if (i, j) in entries:
            raise InputFormatError(f"{path}:{lineno}: duplicate pair "
                                   f"({i}, {j})")
        entries[(i, j)] = d
        n = max(n, j + 1)
        coords = [cell for cell in row[3:] if cell.strip()]
        if coords:
            f[(i, j)] = _coords_from_strings(coords, basis,
                                             f"{path}:{lineno}")
    expected = {(i, j) for i in range(n) for j in range(i + 1, n)}
    if set(entries) != expected:
        missing = sorted(expected - set(entries))[:3]
        raise InputFormatError(
            f"{path}: incomplete distance table, e.g. missing {missing}")
    dist = np.zeros((n, n))
    for (i, j), d in entries.items():
        dist[i, j] = dist[j, i] = d
    return MetricData(dist, frozenset(f), f, basis)


def dump_metric_data(md: MetricData, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        lines = [",".join(["theta"] + [repr(t) for t in md.basis.theta])]
        for i in range(md.n):
            for j in range(i + 1, md.n):
                row = [str(i), str(j), repr(float(md.dist[i, j]))]
                if (i, j) in md.pairs:
                    row.extend(_coord_strings(md.f[(i, j)]))
                lines.append(",".join(row))
        path.write_text("\n".join(lines) + "\n")
        return
    obj = {
        "theta": list(md.basis.theta),
        "distances": [[float(x) for x in row] for row in md.dist],
        "pairs": [list(p) for p in sorted(md.pairs)],
        "f": {f"{i}-{j}": _coord_strings(md.f[(i, j)])
              for (i, j) in sorted(md.pairs)},
    }
    write_json(obj, path)


# ---------------------------------------------------------------------------
# deterministic writers
# ---------------------------------------------------------------------------

def write_json(obj, path) -> None:
    Path(path).write_text(
        json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n")


def write_rows_csv(rows: list[dict], path, columns: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
