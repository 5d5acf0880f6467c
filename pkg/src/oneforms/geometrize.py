"""Point-cloud front end: finite metric space + antisymmetric pair data.

Given a finite metric space (points or a distance table), a symmetric
set S of measured pairs and antisymmetric values f on S, there is a
largest scale -- computed by `epsilon_max` -- below which every Rips
triangle with all sides in S satisfies the additivity identity
f(x,y) + f(y,z) + f(z,x) = 0.  Below that scale the values f induce a
genuine cocycle on the Rips complex and the barcode engine applies.

All diameter comparisons are strict (d < eps), matching the convention
used by `epsilon_max`, so a scale equal to the reported maximum is
still admissible for the complex itself but `geometrize_pipeline`
requires strictly smaller scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .barcodes import BarcodeReport, analyze
from .complexes import Cocycle, SimplicialComplex
from .errors import GeometrizeError, InputFormatError
from .values import PeriodBasis, RealValue

__all__ = [
    "MetricData",
    "epsilon_max",
    "rips_complex",
    "induced_cocycle",
    "geometrize_pipeline",
]


def _euclidean(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


@dataclass
class MetricData:
    """A finite metric space with partial antisymmetric pair values.

    dist is the full n-by-n distance table; pairs is the set S of sorted
    index pairs on which f is measured; f maps each sorted pair (i, j)
    with i < j to the value in the i->j direction (the j->i value is its
    negative).
    """

    dist: np.ndarray
    pairs: frozenset
    f: dict
    basis: PeriodBasis
    check_triangle: bool = True

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InputFormatError(f"distance table must be square, "
                                   f"got shape {d.shape}")
        n = d.shape[0]
        if np.any(np.diag(d) != 0):
            raise InputFormatError("distance table has nonzero diagonal")
        if np.any(d < 0):
            raise InputFormatError("negative distance")
        if not np.allclose(d, d.T, rtol=0, atol=1e-12):
            raise InputFormatError("distance table is not symmetric")
        if self.check_triangle:
            for i in range(n):
                for j in range(n):
                    if np.any(d[i, j] > d[i, :] + d[:, j] + 1e-9):
                        raise InputFormatError(
                            f"triangle inequality fails through pair "
                            f"({i}, {j})")
        self.dist = d
        pairs = set()
        for (i, j) in self.pairs:
            if i == j:
                raise InputFormatError(f"pair ({i}, {i}) is degenerate")
            if not (0 <= i < n and 0 <= j < n):
                raise InputFormatError(f"pair ({i}, {j}) out of range")
            pairs.add((min(i, j), max(i, j)))
        self.pairs = frozenset(pairs)
        fixed = {}
        for (i, j), val in self.f.items():
            key = (min(i, j), max(i, j))
            if key not in self.pairs:
                raise InputFormatError(
                    f"f value given on pair {key} outside S")
            if not isinstance(val, RealValue):
                raise InputFormatError("f values must be RealValue")
            fixed[key] = val if (i, j) == key else -val
        missing = self.pairs - set(fixed)
        if missing:
            raise InputFormatError(
                f"pairs without f values: {sorted(missing)[:3]}")
        self.f = fixed

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def value(self, i: int, j: int) -> RealValue:
        key = (min(i, j), max(i, j))
        val = self.f[key]
        return val if i < j else -val

    @staticmethod
    def from_points(points, pairs, f, basis: PeriodBasis,
                    metric: str = "euclidean") -> "MetricData":
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2:
            raise InputFormatError("points must be a 2d coordinate array")
        if metric == "euclidean":
            d = _euclidean(pts)
        elif metric == "manhattan":
            d = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
        elif metric == "chebyshev":
            d = np.abs(pts[:, None, :] - pts[None, :, :]).max(axis=2)
        else:
            raise InputFormatError(f"unknown metric {metric!r}")
        return MetricData(d, frozenset(pairs), dict(f), basis,
                          check_triangle=False)


def _violating_triples(md: MetricData):
    """Yield (i, j, k, max_distance) for non-additive all-in-S triples."""
    by_vertex: dict[int, set[int]] = {}
    for (i, j) in md.pairs:
        by_vertex.setdefault(i, set()).add(j)
        by_vertex.setdefault(j, set()).add(i)
    for (i, j) in sorted(md.pairs):
        for k in sorted(by_vertex.get(i, ()) & by_vertex.get(j, ())):
            if k <= j:
                continue
            total = md.value(i, j) + md.value(j, k) + md.value(k, i)
            if not total.is_zero():
                yield i, j, k, float(max(md.dist[i, j], md.dist[j, k],
                                         md.dist[i, k]))


def epsilon_max(md: MetricData) -> float:
    """Largest scale at which every all-in-S Rips triangle is additive.

    Returns the minimum over violating triples of the triple's largest
    pairwise distance (strict Rips keeps that scale itself admissible),
    or math.inf when no triple violates.
    """
    best = math.inf
    for *_ijk, m in _violating_triples(md):
        best = min(best, m)
    return best


def rips_complex(md: MetricData, eps: float, dim_cap: int = 3
                 ) -> SimplicialComplex:
    """Simplices = vertex sets of diameter strictly below eps."""
    if not eps > 0:
        raise InputFormatError(f"scale must be positive, got {eps}")
    if dim_cap < 0:
        raise InputFormatError("dimension cap must be >= 0")
    n = md.n
    close = md.dist < eps
    simplices: list[tuple[int, ...]] = [(v,) for v in range(n)]
    frontier = simplices
    for _ in range(min(dim_cap, n - 1)):
        nxt = []
        for s in frontier:
            for v in range(s[-1] + 1, n):
                if all(close[u, v] for u in s):
                    nxt.append(s + (v,))
        if not nxt:
            break
        simplices.extend(nxt)
        frontier = nxt
    return SimplicialComplex(simplices)


def induced_cocycle(md: MetricData, kx: SimplicialComplex) -> Cocycle:
    """Copy f onto the edges of a complex, verifying the data suffices.

    Refuses when an edge pair was never measured (incomplete data) or
    when some 2-simplex is non-additive, naming the offender; the latter
    is exactly the scale-too-large condition.
    """
    values = {}
    for (u, v) in kx.edges:
        if (u, v) not in md.pairs:
            raise GeometrizeError(
                f"edge ({u}, {v}) has no measured f value (pair not in S)")
        values[(u, v)] = md.value(u, v)
    for (x, y, z) in kx.simplices(2):
        total = md.value(x, y) + md.value(y, z) + md.value(z, x)
        if not total.is_zero():
            raise GeometrizeError(
                f"triple ({x}, {y}, {z}) violates additivity "
                f"(sum embeds to {total.embed:.6g}); the scale exceeds "
                "the admissible maximum for this data")
    return Cocycle(kx, md.basis, values)


def geometrize_pipeline(md: MetricData, scales, *, field: int = 2,
                        dim_cap: int = 3, r_max: int | None = None,
                        window_max: int = 8,
                        run_config: dict | None = None
                        ) -> list[tuple[float, BarcodeReport]]:
    """Rips + induced cocycle + barcode analysis at each requested scale."""
    e_max = epsilon_max(md)
    out = []
    for eps in scales:
        eps = float(eps)
        if not eps < e_max:
            witness = next(iter(_violating_triples(md)), None)
            extra = (f"; e.g. triple ({witness[0]}, {witness[1]}, "
                     f"{witness[2]}) is non-additive" if witness else "")
            raise GeometrizeError(
                f"scale {eps} is not below the admissible maximum "
                f"{e_max}{extra}")
        kx = rips_complex(md, eps, dim_cap)
        c = induced_cocycle(md, kx)
        rep = analyze(kx, c, field=field, r_max=r_max,
                      window_max=window_max, run_config=run_config)
        out.append((eps, rep))
    return out
