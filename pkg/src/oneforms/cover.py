"""Windowed free-abelian covers of a complex with a cocycle.

The periods of a cocycle generate a finitely generated subgroup of the
reals.  In exact coordinates that subgroup is a lattice: its Hermite
normal form basis gives deterministic membership tests, orbit
canonicalization, and the translation window used to truncate the
infinite cover to something finite.

A windowed cover enumerates the cells (base cell, translate) whose
lifted vertices all stay inside the coefficient box |n_i| <= N.  Cells
listed with an in-window anchor translate but a vertex outside the box
are recorded as flagged: they mark where truncation bites, and nothing
near them is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .complexes import Cocycle, SimplicialComplex, Simplex, integrate_tree
from .errors import (
    DimensionMismatchError,
    InputFormatError,
    PrecisionError,
    WindowTooSmallError,
)
from .values import PeriodBasis, RealValue


# ---------------------------------------------------------------------------
# integer lattice of period coordinate vectors
# ---------------------------------------------------------------------------

def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Canonical row Hermite normal form of an integer row span."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    n = len(work[0])
    r = 0
    pivcols: list[int] = []
    for col in range(n):
        while True:
            nz = [i for i in range(r, len(work)) if work[i][col] != 0]
            if not nz:
                break
            if len(nz) == 1:
                i = nz[0]
                work[r], work[i] = work[i], work[r]
                break
            i = min(nz, key=lambda k: abs(work[k][col]))
            work[r], work[i] = work[i], work[r]
            piv = work[r][col]
            for k in nz:
                if k == r or work[k][col] == 0:
                    continue
                q = work[k][col] // piv
                work[k] = [a - q * b for a, b in zip(work[k], work[r])]
        if r < len(work) and work[r][col] != 0:
            if work[r][col] < 0:
                work[r] = [-a for a in work[r]]
            pivcols.append(col)
            r += 1
            if r == len(work):
                break
    work = work[:r]
    # reduce entries above each pivot into [0, pivot)
    for i in range(r):
        c = pivcols[i]
        piv = work[i][c]
        for j in range(i):
            q = work[j][c] // piv
            if q:
                work[j] = [a - q * b for a, b in zip(work[j], work[i])]
    return work


class PeriodLattice:
    """Subgroup of the exact reals generated by a list of periods."""

    def __init__(self, basis: PeriodBasis, periods: Sequence[RealValue]):
        self.basis = basis
        for per in periods:
            if per.basis != basis:
                raise DimensionMismatchError("period from a different basis")
        denoms = [c.denominator for per in periods for c in per.coords]
        scale = 1
        for d in denoms:
            scale = scale * d // np.gcd(scale, d) if scale else d
        scale = int(scale) if scale else 1
        int_rows = [[int(c * scale) for c in per.coords] for per in periods]
        hnf = _hnf_rows(int_rows)
        self.generators: tuple[RealValue, ...] = tuple(
            basis.value([Fraction(a, scale) for a in row]) for row in hnf)
        self.pivot_cols: tuple[int, ...] = tuple(
            next(i for i, a in enumerate(g.coords) if a != 0)
            for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def margin(self) -> float:
        """Largest generator embedding, the unsafe-band width."""
        if not self.generators:
            return 0.0
        return max(abs(g.embed) for g in self.generators)

    def combination(self, coeffs: Sequence[int]) -> RealValue:
        if len(coeffs) != self.rank:
            raise DimensionMismatchError("coefficient count != lattice rank")
        out = self.basis.zero()
        for n, g in zip(coeffs, self.generators):
            if n:
                out = out + g.scale(n)
        return out

    def coefficients(self, value: RealValue) -> tuple[int, ...] | None:
        """Integer coordinates of a lattice member, else None."""
        residue = list(value.coords)
        coeffs = []
        for g, c in zip(self.generators, self.pivot_cols):
            q = residue[c] / g.coords[c]
            if q.denominator != 1:
                return None
            n = int(q)
            coeffs.append(n)
            if n:
                residue = [a - n * b for a, b in zip(residue, g.coords)]
        if any(a != 0 for a in residue):
            return None
        return tuple(coeffs)

    def member(self, value: RealValue) -> bool:
        return self.coefficients(value) is not None

    def reduce(self, value: RealValue) -> RealValue:
        """Canonical representative of value + lattice.

        First the Hermite pivot coordinates are brought into [0, pivot),
        which is exact and translation invariant; then, when the leading
        generator has a usable positive embedding, whole multiples of it
        shift the representative so its embedding lands in [0, embed).
        """
        rep = value
        for g, c in zip(self.generators, self.pivot_cols):
            q = rep.coords[c] / g.coords[c]
            n = q.numerator // q.denominator  # exact floor
            if n:
                rep = rep - g.scale(n)
        if not self.generators:
            return rep
        lead = self.generators[0]
        e1 = lead.embed
        tol = self.basis.tol
        if e1 <= tol:
            return rep
        n = int(np.floor(rep.embed / e1))
        cand = rep - lead.scale(n) if n else rep
        for _ in range(4):
            if cand.is_zero():
                return cand
            if cand.embed < -tol:
                cand = cand + lead
                continue
            if (cand - lead).is_zero():
                return self.basis.zero()
            if cand.embed >= e1 + tol:
                cand = cand - lead
                continue
            if abs(cand.embed) < tol or abs(cand.embed - e1) < tol:
                raise PrecisionError(
                    f"orbit representative {cand.coords} sits within tolerance "
                    "of the fundamental-domain boundary")
            return cand
        raise PrecisionError("orbit normalization failed to settle")


def compute_lattice(kx: SimplicialComplex, c: Cocycle) -> PeriodLattice:
    """Period lattice of a cocycle (potentials integrated over a tree)."""
    _, periods = integrate_tree(kx, c)
    return PeriodLattice(c.basis, periods)


# ---------------------------------------------------------------------------
# window specification and the windowed cover
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowSpec:
    """Coefficient box |n_i| <= radius in lattice-generator coordinates."""

    radius: int
    rank: int

    def __post_init__(self):
        if self.radius < 0 or self.rank < 0:
            raise InputFormatError("window radius and rank must be >= 0")

    def translates(self) -> list[tuple[int, ...]]:
        rng = range(-self.radius, self.radius + 1)
        return [tuple(t) for t in product(rng, repeat=self.rank)]

    def contains(self, coeffs: Sequence[int]) -> bool:
        return all(abs(n) <= self.radius for n in coeffs)


class WindowedCover:
    """Finite window of the free-abelian cover determined by a cocycle."""

    def __init__(self, kx: SimplicialComplex, c: Cocycle,
                 potentials: dict[int, RealValue],
                 lattice: PeriodLattice, window: WindowSpec):
        if window.rank != lattice.rank:
            raise DimensionMismatchError("window rank != lattice rank")
        self.base = kx
        self.cocycle = c
        self.potentials = potentials
        self.lattice = lattice
        self.window = window

        # integer lattice coordinates of each edge's translation defect,
        # anchored at the smaller endpoint
        self._edge_shift: dict[tuple[int, int], tuple[int, ...]] = {}
        for u, v in kx.edges:
            defect = c.value(u, v) - (potentials[v] - potentials[u])
            coeffs = lattice.coefficients(defect)
            if coeffs is None:
                raise InputFormatError(
                    f"edge ({u},{v}) has a period outside the lattice; "
                    "cocycle data is inconsistent")
            self._edge_shift[(u, v)] = coeffs

        translates = window.translates()
        self.translates = translates
        tindex = {t: i for i, t in enumerate(translates)}
        self.vertices: list[tuple[int, tuple[int, ...]]] = []
        self.vertex_values: list[RealValue] = []
        self._vindex: dict[tuple[int, tuple[int, ...]], int] = {}
        for t in translates:
            shift = lattice.combination(t)
            for v in kx.vertices:
                idx = len(self.vertices)
                self.vertices.append((v, t))
                self.vertex_values.append(potentials[v] + shift)
                self._vindex[(v, t)] = idx

        self.cells: list[list[tuple[int, ...]]] = [
            [(i,) for i in range(len(self.vertices))]]
        self.cell_labels: list[list[tuple[Simplex, tuple[int, ...]]]] = [
            [(s, t) for t in translates for s in kx.simplices(0)]]
        flagged: list[tuple[int, Simplex, tuple[int, ...]]] = []
        complete_count = {s: 0 for r in range(kx.dim + 1)
                          for s in kx.simplices(r)}
        for s in kx.simplices(0):
            complete_count[s] = len(translates)

        for r in range(1, kx.dim + 1):
            level_cells: list[tuple[int, ...]] = []
            level_labels: list[tuple[Simplex, tuple[int, ...]]] = []
            for t in translates:
                for s in kx.simplices(r):
                    vidx = []
                    ok = True
                    for v in s:
                        sh = self._vertex_shift(s[0], v)
                        tv = tuple(a + b for a, b in zip(t, sh))
                        if not window.contains(tv):
                            ok = False
                            break
                        vidx.append(self._vindex[(v, tv)])
                    if ok:
                        level_cells.append(tuple(sorted(vidx)))
                        level_labels.append((s, t))
                        complete_count[s] += 1
                    else:
                        flagged.append((r, s, t))
            self.cells.append(level_cells)
            self.cell_labels.append(level_labels)
        self.flagged = tuple(flagged)

        missing = [s for s, cnt in complete_count.items() if cnt == 0]
        if missing:
            raise WindowTooSmallError(
                f"window radius {window.radius} holds no complete copy of "
                f"cells {missing[:3]}; enlarge the window")

        self._cell_index: list[dict[tuple[int, ...], int]] = [
            {cell: i for i, cell in enumerate(level)} for level in self.cells]

        vals = sorted(set(self.vertex_values), key=lambda v: v.embed)
        # exact-dedupe guard: embeds sorted, adjacent distinct coords must
        # clear the collision tolerance (RealValue comparison raises if not)
        for a, b in zip(vals, vals[1:]):
            a.compare(b)
        self.critical_values: tuple[RealValue, ...] = tuple(vals)
        self._value_rank = {v: i for i, v in enumerate(vals)}
        self._vertex_rank = np.array(
            [self._value_rank[v] for v in self.vertex_values], dtype=np.int64)

        self._cell_maxrank: list[np.ndarray] = []
        self._cell_minrank: list[np.ndarray] = []
        for r, level in enumerate(self.cells):
            if level:
                arr = np.array(level, dtype=np.int64)
                ranks = self._vertex_rank[arr]
                self._cell_maxrank.append(ranks.max(axis=1))
                self._cell_minrank.append(ranks.min(axis=1))
            else:
                self._cell_maxrank.append(np.zeros(0, dtype=np.int64))
                self._cell_minrank.append(np.zeros(0, dtype=np.int64))
        self._boundary_cache: dict[int, np.ndarray] = {}

    # -- structure ---------------------------------------------------------

    def _vertex_shift(self, anchor: int, v: int) -> tuple[int, ...]:
        if anchor == v:
            return (0,) * self.lattice.rank
        key = (anchor, v) if anchor < v else (v, anchor)
        sh = self._edge_shift[key]
        if anchor < v:
            return sh
        return tuple(-a for a in sh)

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def cell_count(self, r: int) -> int:
        if r < 0 or r > self.dim:
            return 0
        return len(self.cells[r])

    def vertex_index(self, v: int, translate: Sequence[int]) -> int | None:
        return self._vindex.get((v, tuple(translate)))

    def translate_cell(self, r: int, idx: int, g: Sequence[int]
                       ) -> int | None:
        """Index of the deck translate of a cell, None if out of window."""
        s, t = self.cell_labels[r][idx]
        tv = tuple(a + b for a, b in zip(t, g))
        if not self.window.contains(tv):
            return None
        if r == 0:
            return self._vindex.get((s[0], tv))
        vidx = []
        for v in s:
            sh = self._vertex_shift(s[0], v)
            tvv = tuple(a + b for a, b in zip(tv, sh))
            got = self._vindex.get((v, tvv))
            if got is None:
                return None
            vidx.append(got)
        return self._cell_index[r].get(tuple(sorted(vidx)))

    def boundary(self, r: int) -> np.ndarray:
        """Signed dense boundary matrix (integer entries +-1)."""
        if r in self._boundary_cache:
            return self._boundary_cache[r]
        if r < 1 or r > self.dim:
            rows = self.cell_count(r - 1) if r >= 1 else 0
            out = np.zeros((rows, self.cell_count(r)), dtype=np.int64)
        else:
            out = np.zeros((len(self.cells[r - 1]), len(self.cells[r])),
                           dtype=np.int64)
            index = self._cell_index[r - 1]
            for j, cell in enumerate(self.cells[r]):
                for i in range(len(cell)):
                    face = cell[:i] + cell[i + 1:]
                    out[index[face], j] = (-1) ** i
        self._boundary_cache[r] = out
        return out

    # -- thresholds --------------------------------------------------------

    def frontier(self) -> tuple[float, float]:
        embeds = [v.embed for v in self.vertex_values]
        return min(embeds), max(embeds)

    def safe_range(self) -> tuple[float, float]:
        lo, hi = self.frontier()
        m = self.lattice.margin()
        return lo + m, hi - m

    def is_safe(self, value: RealValue) -> bool:
        if self.lattice.rank == 0:
            # nothing is truncated: sublevels saturate outside the value range
            return True
        lo, hi = self.safe_range()
        return lo <= value.embed <= hi

    def safe_values(self) -> list[RealValue]:
        return [v for v in self.critical_values if self.is_safe(v)]

    def value_rank(self, value: RealValue) -> int:
        try:
            return self._value_rank[value]
        except KeyError:
            raise InputFormatError(
                f"{value!r} is not a vertex value of this window") from None

    def sublevel_cell_mask(self, r: int, rank_idx: int) -> np.ndarray:
        """Cells of X_t for t = critical_values[rank_idx] (max vertex <= t)."""
        return self._cell_maxrank[r] <= rank_idx

    def superlevel_cell_mask(self, r: int, rank_idx: int) -> np.ndarray:
        """Cells of X^t (min vertex >= t)."""
        return self._cell_minrank[r] >= rank_idx

    def relative_pair_dims(self, value: RealValue, p: int, r_max: int,
                           side: str = "lower") -> list[int]:
        """Homology dims of (X_t, X_{<t}) or (X^t, X^{>t}) at a vertex value.

        Lower-star: the relative complex consists of cells whose extreme
        vertex sits exactly at the value, with boundary entries leaving
        the stratum dropped.
        """
        from .fieldlinalg import kernel_basis, rank as _rank

        if side not in ("lower", "upper"):
            raise InputFormatError(f"side must be lower/upper, not {side!r}")
        if value not in self._value_rank:
            return [0] * (r_max + 1)
        t = self._value_rank[value]
        masks = []
        for r in range(min(r_max + 1, self.dim + 1) + 1):
            if r > self.dim:
                masks.append(np.zeros(0, dtype=bool))
            elif side == "lower":
                masks.append(self._cell_maxrank[r] == t)
            else:
                masks.append(self._cell_minrank[r] == t)
        dims = []
        for r in range(r_max + 1):
            if r > self.dim:
                dims.append(0)
                continue
            ncols = int(masks[r].sum())
            if ncols == 0:
                dims.append(0)
                continue
            if r == 0:
                zdim = ncols
            else:
                sub = self.boundary(r)[np.ix_(np.nonzero(masks[r - 1])[0],
                                              np.nonzero(masks[r])[0])]
                zdim = kernel_basis(sub % p, p).dim
            if r + 1 <= self.dim:
                nxt = self.boundary(r + 1)[np.ix_(np.nonzero(masks[r])[0],
                                                  np.nonzero(masks[r + 1])[0])]
                bdim = _rank(nxt % p, p)
            else:
                bdim = 0
            dims.append(zdim - bdim)
        return dims

    def to_json_dict(self) -> dict:
        return {
            "window_radius": self.window.radius,
            "lattice_rank": self.lattice.rank,
            "lattice_generators": [g.coord_strings()
                                   for g in self.lattice.generators],
            "vertices": [
                {"base": v, "translate": list(t),
                 "value": self.vertex_values[i].coord_strings(),
                 "embed": self.vertex_values[i].embed}
                for i, (v, t) in enumerate(self.vertices)],
            "cells": [
                [{"base": list(s), "translate": list(t)}
                 for s, t in level]
                for level in self.cell_labels],
            "flagged": [
                {"dim": r, "base": list(s), "translate": list(t)}
                for r, s, t in self.flagged],
            "frontier": list(self.frontier()),
            "safe_range": list(self.safe_range()),
        }


def build_cover(kx: SimplicialComplex, c: Cocycle, radius: int,
                potentials: dict[int, RealValue] | None = None,
                lattice: PeriodLattice | None = None) -> WindowedCover:
    """Construct the windowed cover of a connected complex."""
    if len(kx.connected_components()) != 1:
        raise InputFormatError(
            "build_cover expects a connected complex; split into components")
    if potentials is None or lattice is None:
        h, periods = integrate_tree(kx, c)
        potentials = h
        lattice = PeriodLattice(c.basis, periods)
    return WindowedCover(kx, c, potentials, lattice,
                         WindowSpec(radius, lattice.rank))


# ---------------------------------------------------------------------------
# critical orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalOrbits:
    """Vertex-value orbits of a windowed cover under the period lattice."""

    reps: tuple[RealValue, ...]                    # canonical, sorted by embed
    members: tuple[tuple[RealValue, ...], ...]     # in-window values per orbit
    rep_of: dict[RealValue, RealValue]             # value -> canonical rep

    def orbit_count(self) -> int:
        return len(self.reps)

    def orbit_index(self, value: RealValue) -> int:
        return self.reps.index(self.rep_of[value])


def critical_orbits(cover: WindowedCover) -> CriticalOrbits:
    groups: dict[RealValue, list[RealValue]] = {}
    rep_of: dict[RealValue, RealValue] = {}
    for v in cover.critical_values:
        rep = cover.lattice.reduce(v)
        rep_of[v] = rep
        groups.setdefault(rep, []).append(v)
    reps = sorted(groups, key=lambda v: v.embed)
    members = tuple(tuple(sorted(groups[r], key=lambda v: v.embed))
                    for r in reps)
    return CriticalOrbits(tuple(reps), members, rep_of)


# ---------------------------------------------------------------------------
# weak tameness report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TamenessReport:
    weakly_tame: bool
    tame: bool
    orbit_count: int
    table: tuple[tuple[str, tuple[int, ...]], ...]  # (rep repr, R^f per degree)


def verify_weak_tameness(cover: WindowedCover, p: int = 2,
                         r_max: int | None = None) -> TamenessReport:
    """Tabulate R^f(t) = dim H(X_t, X_<t) + dim H(X^t, X^>t) per orbit.

    Simplicial input plus vertex-value thresholds make both finiteness
    conditions automatic; the table documents the actual numbers at one
    safe representative per orbit.
    """
    if r_max is None:
        r_max = cover.dim
    orbits = critical_orbits(cover)
    rows = []
    for rep, members in zip(orbits.reps, orbits.members):
        at = _central_safe_member(cover, members)
        if at is None:
            continue
        lower = cover.relative_pair_dims(at, p, r_max, side="lower")
        upper = cover.relative_pair_dims(at, p, r_max, side="upper")
        total = tuple(a + b for a, b in zip(lower, upper))
        rows.append(("+".join(rep.coord_strings()), total))
    return TamenessReport(weakly_tame=True, tame=True,
                          orbit_count=orbits.orbit_count(),
                          table=tuple(rows))


def _central_safe_member(cover: WindowedCover,
                         members: Sequence[RealValue]) -> RealValue | None:
    lo, hi = cover.safe_range()
    center = (lo + hi) / 2.0
    best = None
    for v in members:
        if not cover.is_safe(v):
            continue
        if best is None or abs(v.embed - center) < abs(best.embed - center):
            best = v
    return best
