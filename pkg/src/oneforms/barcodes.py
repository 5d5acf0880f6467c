"""Barcode configurations of a cocycle computed through windowed covers.

For each degree r and thresholds a <= b the windowed cover yields four
subspaces of H_r of the window: images of sublevel and superlevel
homology and their strict variants (evaluated at neighbouring vertex
values, which is exact under the lower-star convention).  The two-sided
quotient dimension

    delta(a, b) = dim (I_a & I^b) / (I_<a & I^b  +  I_a & I^>b)

counts classes born exactly at a that survive from above exactly to b;
the kernel analogue gamma(a, b) counts sublevel classes dying exactly
at b modulo earlier deaths.  Summing over one safe representative per
vertex-value orbit turns these into translation-invariant point
configurations on the line (delta, locations b - a) and the open
half-line (gamma, locations b - a > 0).

Windows lie: near the frontier, truncation invents and destroys
classes.  Only thresholds at least one lattice-generator embedding away
from the frontier are used, and the whole computation is re-run at
growing window radii until two consecutive radii agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complexes import (
    Cocycle,
    SimplicialComplex,
    check_cocycle,
    integrate_tree,
)
from .cover import (
    CriticalOrbits,
    PeriodLattice,
    WindowSpec,
    WindowedCover,
    _central_safe_member,
    critical_orbits,
)
from .errors import (
    DegreeError,
    InputFormatError,
    UnsafeThresholdError,
    WindowTooSmallError,
)
from .fieldlinalg import (
    Subspace,
    image_basis,
    kernel_basis,
    quotient_dim,
    rref,
    subspace_intersection,
    subspace_sum,
    zero_subspace,
)
from .values import PeriodBasis, RealValue

__all__ = [
    "Configuration",
    "CoverAnalysis",
    "BarcodeReport",
    "ChainModel",
    "analyze",
    "stabilize",
    "chain_model",
    "lambda_config",
]


# ---------------------------------------------------------------------------
# configurations: finite multisets of exact locations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """Point masses at exact locations on the line or open half-line."""

    domain: str  # "line" or "halfline"
    points: tuple[tuple[RealValue, int], ...]

    @staticmethod
    def from_mapping(masses: Mapping[RealValue, int], domain: str
                     ) -> "Configuration":
        pts = [(t, m) for t, m in masses.items() if m != 0]
        pts.sort(key=lambda tm: (tm[0].embed, tm[0].coord_strings()))
        return Configuration(domain, tuple(pts))

    def mass(self) -> int:
        return sum(m for _, m in self.points)

    def merge(self, other: "Configuration") -> "Configuration":
        if other.domain != self.domain:
            raise InputFormatError("cannot merge configurations on "
                                   f"{self.domain} and {other.domain}")
        acc: dict[RealValue, int] = {}
        for t, m in self.points + other.points:
            acc[t] = acc.get(t, 0) + m
        return Configuration.from_mapping(acc, self.domain)

    def mirror(self) -> "Configuration":
        return Configuration.from_mapping(
            {-t: m for t, m in self.points}, self.domain)

    def embeds(self) -> list[tuple[float, int]]:
        return [(t.embed, m) for t, m in self.points]

    def to_json_list(self) -> list[dict]:
        return [{"t_coords": t.coord_strings(), "t_embed": t.embed, "mult": m}
                for t, m in self.points]


def lambda_config(delta: Configuration, gamma_r: Configuration,
                  gamma_prev: Configuration | None) -> Configuration:
    """Death combination on the open half-line:
    positive-location part of delta plus gamma_r plus gamma_{r-1}."""
    acc: dict[RealValue, int] = {}
    for t, m in delta.points:
        if t.embed > 0 and not t.is_zero():
            acc[t] = acc.get(t, 0) + m
    for cfg in (gamma_r, gamma_prev):
        if cfg is None:
            continue
        for t, m in cfg.points:
            acc[t] = acc.get(t, 0) + m
    return Configuration.from_mapping(acc, "halfline")


# ---------------------------------------------------------------------------
# homology bundles of sub/superlevel subcomplexes
# ---------------------------------------------------------------------------

def _solve_in_span(M: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """Solve M X = Y for a full-column-rank M with span containing Y."""
    mcols = M.shape[1]
    if mcols == 0:
        if np.any(Y % p):
            raise AssertionError("solve target outside span of empty matrix")
        return np.zeros((0, Y.shape[1]), dtype=np.int64)
    R, piv = rref(np.hstack([M, Y]) % p, p)
    if len(piv) != mcols or any(c >= mcols for c in piv):
        raise AssertionError("solve target escaped the span; internal error")
    return R[:mcols, mcols:]


class _Bundle:
    """Cycle/boundary data of one sub- or superlevel subcomplex in one degree."""

    __slots__ = ("cells_global", "z_basis", "b_basis", "reps", "h", "_span")

    def __init__(self, cells_global: np.ndarray, z: Subspace, b: Subspace,
                 p: int):
        self.cells_global = cells_global
        self.z_basis = z.basis
        self.b_basis = b.basis
        # RREF pivots pick the leftmost maximal independent columns, so
        # pivots of [B | Z] landing in the Z block extend B to Z in one pass.
        nb = b.dim
        if z.dim == 0:
            rep_idx: list[int] = []
        else:
            _, piv = rref(np.hstack([self.b_basis, self.z_basis]) % p, p)
            assert len([c for c in piv if c < nb]) == nb
            rep_idx = [c - nb for c in piv if c >= nb]
        self.reps = np.ascontiguousarray(self.z_basis[:, rep_idx])
        self.h = self.reps.shape[1]
        self._span = np.hstack([self.b_basis, self.reps])

    def coords(self, chains: np.ndarray, p: int) -> np.ndarray:
        """Homology coordinates of cycle columns, boundary part discarded."""
        x = _solve_in_span(self._span, chains, p)
        return x[self.b_basis.shape[1]:]


class CoverAnalysis:
    """Sublevel/superlevel homology calculus of one windowed cover."""

    def __init__(self, cover: WindowedCover, p: int, r_max: int):
        self.cover = cover
        self.p = p
        self.r_max = r_max
        self.n_vals = len(cover.critical_values)
        self._bundles: dict[tuple[str, int, int], _Bundle] = {}
        self._images: dict[tuple[str, int, int], Subspace] = {}
        self._maps: dict[tuple[int, int, int], np.ndarray] = {}
        self._kernels: dict[tuple[int, int, int], Subspace] = {}

    # -- ranks -------------------------------------------------------------

    def _rank_at(self, value: RealValue) -> int:
        """Index of the largest critical value <= value, -1 if below all."""
        vals = self.cover.critical_values
        lo, hi = 0, len(vals)
        while lo < hi:
            mid = (lo + hi) // 2
            if vals[mid].compare(value) <= 0:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def _rank_strictly_below(self, value: RealValue) -> int:
        vals = self.cover.critical_values
        lo, hi = 0, len(vals)
        while lo < hi:
            mid = (lo + hi) // 2
            if vals[mid].compare(value) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def _check_safe(self, value: RealValue) -> None:
        if not self.cover.is_safe(value):
            lo, hi = self.cover.safe_range()
            raise UnsafeThresholdError(
                f"threshold {value!r} outside the safe band "
                f"[{lo:.6g}, {hi:.6g}] of window radius "
                f"{self.cover.window.radius}")

    # -- bundles -----------------------------------------------------------

    def _bundle(self, kind: str, r: int, rank_idx: int) -> _Bundle:
        key = (kind, r, rank_idx)
        got = self._bundles.get(key)
        if got is not None:
            return got
        cov = self.cover
        p = self.p
        if r > cov.dim or (kind == "sub" and rank_idx < 0) or \
           (kind == "sup" and rank_idx >= self.n_vals):
            bundle = _Bundle(np.zeros(0, dtype=np.int64),
                             zero_subspace(0, p), zero_subspace(0, p), p)
            self._bundles[key] = bundle
            return bundle
        if kind == "sub":
            mask_r = cov.sublevel_cell_mask(r, rank_idx)
            mask_rm = (cov.sublevel_cell_mask(r - 1, rank_idx)
                       if r >= 1 else None)
            mask_rp = (cov.sublevel_cell_mask(r + 1, rank_idx)
                       if r + 1 <= cov.dim else None)
        else:
            mask_r = cov.superlevel_cell_mask(r, rank_idx)
            mask_rm = (cov.superlevel_cell_mask(r - 1, rank_idx)
                       if r >= 1 else None)
            mask_rp = (cov.superlevel_cell_mask(r + 1, rank_idx)
                       if r + 1 <= cov.dim else None)
        cells_global = np.nonzero(mask_r)[0]
        ncells = cells_global.size
        if ncells == 0:
            bundle = _Bundle(cells_global, zero_subspace(0, p),
                             zero_subspace(0, p), p)
            self._bundles[key] = bundle
            return bundle
        if r == 0:
            z = image_basis(np.eye(ncells, dtype=np.int64), p)
        else:
            sub = self.cover.boundary(r)[np.ix_(np.nonzero(mask_rm)[0],
                                                cells_global)]
            z = kernel_basis(sub % p, p)
        if mask_rp is not None:
            nxt = self.cover.boundary(r + 1)[np.ix_(cells_global,
                                                    np.nonzero(mask_rp)[0])]
            b = image_basis(nxt % p, p)
        else:
            b = zero_subspace(ncells, p)
        bundle = _Bundle(cells_global, z, b, p)
        self._bundles[key] = bundle
        return bundle

    def _full_bundle(self, r: int) -> _Bundle:
        return self._bundle("sub", r, self.n_vals - 1)

    def homology_dim(self, r: int) -> int:
        return self._full_bundle(r).h

    def _lift(self, src: _Bundle, dst: _Bundle, chains: np.ndarray
              ) -> np.ndarray:
        """Re-index chain columns from src cells into dst cells (a superset)."""
        out = np.zeros((dst.cells_global.size, chains.shape[1]),
                       dtype=np.int64)
        if src.cells_global.size:
            pos = np.searchsorted(dst.cells_global, src.cells_global)
            if (pos >= dst.cells_global.size).any() or \
               (dst.cells_global[pos] != src.cells_global).any():
                raise AssertionError("cell sets not nested; internal error")
            out[pos] = chains
        return out

    # -- image subspaces in H(window) ---------------------------------------

    def _image(self, kind: str, r: int, rank_idx: int) -> Subspace:
        key = (kind, r, rank_idx)
        got = self._images.get(key)
        if got is not None:
            return got
        full = self._full_bundle(r)
        if full.h == 0:
            sub = zero_subspace(0, self.p)
        else:
            bundle = self._bundle(kind, r, rank_idx)
            if bundle.z_basis.shape[1] == 0:
                sub = zero_subspace(full.h, self.p)
            else:
                lifted = self._lift(bundle, full, bundle.z_basis)
                coords = full.coords(lifted, self.p)
                sub = image_basis(coords, self.p)
        self._images[key] = sub
        return sub

    def sublevel_image(self, r: int, a: RealValue) -> Subspace:
        """Image of H_r(sublevel at a) inside H_r of the whole window."""
        self._check_degree(r)
        self._check_safe(a)
        return self._image("sub", r, self._rank_at(a))

    def superlevel_image(self, r: int, b: RealValue) -> Subspace:
        """Image of H_r(superlevel at b) inside H_r of the whole window."""
        self._check_degree(r)
        self._check_safe(b)
        return self._image("sup", r, self._rank_strictly_below(b) + 1)

    def _check_degree(self, r: int) -> None:
        if r < 0 or r > self.r_max:
            raise DegreeError(f"degree {r} outside 0..{self.r_max}")

    # -- two-sided counts ----------------------------------------------------

    def delta_dim(self, r: int, a: RealValue, b: RealValue) -> int:
        """Multiplicity of the (a, b) two-sided birth-death site."""
        self._check_degree(r)
        self._check_safe(a)
        self._check_safe(b)
        ia = self._rank_at(a)
        ib = self._rank_strictly_below(b) + 1
        i_a = self._image("sub", r, ia)
        i_lt = self._image("sub", r, self._rank_strictly_below(a))
        i_b = self._image("sup", r, ib)
        i_gt = self._image("sup", r, self._rank_at(b) + 1)
        num = subspace_intersection(i_a, i_b)
        den = subspace_sum(subspace_intersection(i_lt, i_b),
                           subspace_intersection(i_a, i_gt))
        return quotient_dim(num, den)

    # -- kernels -------------------------------------------------------------

    def _map_sub(self, r: int, rank_from: int, rank_to: int) -> np.ndarray:
        """Matrix of H_r(sub at rank_from) -> H_r(sub at rank_to)."""
        key = (r, rank_from, rank_to)
        got = self._maps.get(key)
        if got is not None:
            return got
        src = self._bundle("sub", r, rank_from)
        dst = self._bundle("sub", r, rank_to)
        if src.h == 0 or dst.cells_global.size == 0:
            mat = np.zeros((dst.h, src.h), dtype=np.int64)
        else:
            lifted = self._lift(src, dst, src.reps)
            mat = dst.coords(lifted, self.p)
        self._maps[key] = mat
        return mat

    def _kernel_sub(self, r: int, rank_from: int, rank_to: int) -> Subspace:
        """Kernel of the sublevel inclusion map on H_r, inside the source."""
        key = (r, rank_from, rank_to)
        got = self._kernels.get(key)
        if got is not None:
            return got
        src = self._bundle("sub", r, rank_from)
        ker = kernel_basis(self._map_sub(r, rank_from, rank_to), self.p)
        assert ker.ambient == src.h
        self._kernels[key] = ker
        return ker

    def gamma_dim(self, r: int, a: RealValue, b: RealValue) -> int:
        """Multiplicity of the (a, b) death site (kernel quotient)."""
        self._check_degree(r)
        self._check_safe(a)
        self._check_safe(b)
        if a.compare(b) >= 0:
            raise InputFormatError("gamma_dim needs a < b")
        ia = self._rank_at(a)
        ib = self._rank_at(b)
        t_ab = self._kernel_sub(r, ia, ib)
        # deaths already present strictly before b
        ib_pred = max(self._rank_strictly_below(b), ia)
        t_a_ltb = self._kernel_sub(r, ia, ib_pred)
        # deaths inherited from strictly below a
        ia_pred = self._rank_strictly_below(a)
        t_lta = self._kernel_sub(r, ia_pred, ib)
        if t_lta.dim:
            n = self._map_sub(r, ia_pred, ia)
            pushed = image_basis((n @ t_lta.basis) % self.p, self.p)
        else:
            src = self._bundle("sub", r, ia)
            pushed = zero_subspace(src.h, self.p)
        return quotient_dim(t_ab, subspace_sum(pushed, t_a_ltb))

    # -- cumulative rank function --------------------------------------------

    def f_rank(self, r: int, t: RealValue) -> int:
        """dim of the span of I_a & I^b over safe pairs with a - b <= t."""
        self._check_degree(r)
        safe = self.cover.safe_values()
        total: Subspace | None = None
        for a in safe:
            b_star = None
            for b in safe:
                if (a - b).compare(t) <= 0:
                    b_star = b
                    break
            if b_star is None:
                continue
            term = subspace_intersection(
                self._image("sub", r, self._rank_at(a)),
                self._image("sup", r, self._rank_strictly_below(b_star) + 1))
            total = term if total is None else subspace_sum(total, term)
        return 0 if total is None else total.dim


# ---------------------------------------------------------------------------
# per-component scan
# ---------------------------------------------------------------------------

@dataclass
class ComponentResult:
    """Everything the stabilization loop compares between radii."""

    cover: WindowedCover
    analysis: CoverAnalysis
    orbits: CriticalOrbits
    scan_reps: dict[RealValue, RealValue]        # orbit rep -> safe member used
    delta: list[Configuration]
    gamma: list[Configuration]
    relative_dims: dict[RealValue, tuple[int, ...]]  # orbit rep -> dims by r

    def counts(self, r_max: int) -> tuple[list[int], list[int], list[int]]:
        beta = [self.delta[r].mass() for r in range(r_max + 1)]
        rho = [self.gamma[r].mass() for r in range(r_max + 1)]
        c = [beta[r] + rho[r] + (rho[r - 1] if r >= 1 else 0)
             for r in range(r_max + 1)]
        return beta, rho, c

    def fingerprint(self):
        """Exact state compared across consecutive window radii."""
        return (
            tuple(tuple((t.coords, m) for t, m in cfg.points)
                  for cfg in self.delta),
            tuple(tuple((t.coords, m) for t, m in cfg.points)
                  for cfg in self.gamma),
            tuple(sorted((rep.coords, dims)
                         for rep, dims in self.relative_dims.items())),
        )


def _scan_component(cover: WindowedCover, p: int, r_max: int
                    ) -> ComponentResult:
    orbits = critical_orbits(cover)
    safe = cover.safe_values()
    if not safe:
        raise WindowTooSmallError(
            f"no vertex value is safe at window radius {cover.window.radius}")
    analysis = CoverAnalysis(cover, p, r_max)
    scan_reps: dict[RealValue, RealValue] = {}
    for rep, members in zip(orbits.reps, orbits.members):
        at = _central_safe_member(cover, members)
        if at is None:
            raise WindowTooSmallError(
                f"orbit of {rep!r} has no safe representative at radius "
                f"{cover.window.radius}")
        scan_reps[rep] = at

    delta_cfgs: list[Configuration] = []
    gamma_cfgs: list[Configuration] = []
    for r in range(r_max + 1):
        dmass: dict[RealValue, int] = {}
        gmass: dict[RealValue, int] = {}
        for rep in orbits.reps:
            a = scan_reps[rep]
            for b in safe:
                m = analysis.delta_dim(r, a, b)
                if m:
                    t = b - a
                    dmass[t] = dmass.get(t, 0) + m
                if b.compare(a) > 0:
                    m = analysis.gamma_dim(r, a, b)
                    if m:
                        t = b - a
                        gmass[t] = gmass.get(t, 0) + m
        delta_cfgs.append(Configuration.from_mapping(dmass, "line"))
        gamma_cfgs.append(Configuration.from_mapping(gmass, "halfline"))

    relative: dict[RealValue, tuple[int, ...]] = {}
    for rep in orbits.reps:
        dims = cover.relative_pair_dims(scan_reps[rep], p, r_max, "lower")
        relative[rep] = tuple(dims)
    return ComponentResult(cover, analysis, orbits, scan_reps,
                           delta_cfgs, gamma_cfgs, relative)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class ChainModel:
    """Finite chain complex in split form: per degree the blocks
    (paired-below, paired-above, surviving) with identity boundary on
    the paired parts."""

    p: int
    block_dims: list[tuple[int, int, int]]   # (minus, plus, h) per degree
    boundaries: list[np.ndarray]             # boundaries[r]: C_r -> C_{r-1}

    def total_dims(self) -> list[int]:
        return [sum(b) for b in self.block_dims]

    def homology_dims(self) -> list[int]:
        from .fieldlinalg import kernel_basis as _kb, rank as _rk
        out = []
        for r in range(len(self.block_dims)):
            z = _kb(self.boundaries[r] % self.p, self.p).dim
            nxt = (_rk(self.boundaries[r + 1] % self.p, self.p)
                   if r + 1 < len(self.boundaries) else 0)
            out.append(z - nxt)
        return out


def chain_model(beta: Sequence[int], rho: Sequence[int], p: int = 2
               ) -> ChainModel:
    """Assemble the split chain complex with dim C_r = beta_r + rho_r +
    rho_{r-1} and boundary the identity from the paired-below block onto
    the previous degree's paired-above block."""
    r_max = len(beta) - 1
    dims = []
    for r in range(r_max + 1):
        minus = rho[r - 1] if r >= 1 else 0
        dims.append((minus, rho[r], beta[r]))
    boundaries = []
    for r in range(r_max + 1):
        rows = sum(dims[r - 1]) if r >= 1 else 0
        cols = sum(dims[r])
        mat = np.zeros((rows, cols), dtype=np.int64)
        if r >= 1:
            minus_r = dims[r][0]
            off = dims[r - 1][0]  # plus block of C_{r-1} sits after its minus
            for i in range(minus_r):
                mat[off + i, i] = 1
        boundaries.append(mat)
    return ChainModel(p, dims, boundaries)


@dataclass
class BarcodeReport:
    """Merged multi-component result plus run metadata."""

    field: int
    r_max: int
    theta: tuple[float, ...]
    delta: list[Configuration]
    gamma: list[Configuration]
    lam: list[Configuration]
    beta: list[int]
    rho: list[int]
    count: list[int]
    euler_base: int
    orbit_table: list[dict]
    window_meta: list[dict]
    stabilized: bool
    radius: int
    delta_sign: str = "formula"
    run_config: dict | None = None

    def alternating_count_sum(self) -> int:
        return sum((-1) ** r * c for r, c in enumerate(self.count))

    def to_json_dict(self) -> dict:
        degrees = {}
        for r in range(self.r_max + 1):
            dcfg = self.delta[r] if self.delta_sign == "formula" \
                else self.delta[r].mirror()
            degrees[str(r)] = {
                "delta": dcfg.to_json_list(),
                "gamma": self.gamma[r].to_json_list(),
                "lambda": self.lam[r].to_json_list(),
                "beta": self.beta[r],
                "rho": self.rho[r],
                "count": self.count[r],
            }
        return {
            "schema": "oneforms-report/1",
            "field": self.field,
            "r_max": self.r_max,
            "theta": list(self.theta),
            "delta_sign": self.delta_sign,
            "degrees": degrees,
            "euler": {
                "base_complex": self.euler_base,
                "alternating_count_sum": self.alternating_count_sum(),
            },
            "orbits": self.orbit_table,
            "windows": self.window_meta,
            "stabilized": self.stabilized,
            "window_radius": self.radius,
            "run_config": self.run_config,
        }


def _window_metadata(res: ComponentResult, comp_idx: int) -> dict:
    cov = res.cover
    lo, hi = cov.frontier()
    slo, shi = cov.safe_range()
    return {
        "component": comp_idx,
        "window_radius": cov.window.radius,
        "lattice_rank": cov.lattice.rank,
        "lattice_generators": [g.coord_strings()
                               for g in cov.lattice.generators],
        "cells": [len(level) for level in cov.cells],
        "flagged_cells": len(cov.flagged),
        "frontier": [lo, hi],
        "safe_range": [slo, shi],
        "orbit_count": res.orbits.orbit_count(),
    }


def analyze(kx: SimplicialComplex, c: Cocycle, *, field: int = 2,
            r_max: int | None = None, window_start: int = 1,
            window_max: int = 8, delta_sign: str = "formula",
            run_config: dict | None = None) -> BarcodeReport:
    """Compute all barcode data, stabilizing each component's window.

    A component is accepted once two consecutive window radii produce
    identical configurations, counts and orbit tables (exact cocycles
    need a single copy and are trivially stable).  If the cap is reached
    first, the report carries stabilized=False; it is never silently
    truncated.
    """
    if delta_sign not in ("formula", "figure"):
        raise InputFormatError(f"unknown delta sign {delta_sign!r}")
    check_cocycle(kx, c)
    if r_max is None:
        r_max = kx.dim
    if r_max < 0:
        raise DegreeError("r_max must be >= 0")
    p = field

    comp_results: list[ComponentResult] = []
    all_stable = True
    radius_used = window_start
    for comp in kx.connected_components():
        sub = kx.restrict_to_vertices(comp)
        cvals = {e: c.value(*e) for e in sub.edges}
        csub = Cocycle(sub, c.basis, cvals)
        h, periods = integrate_tree(sub, csub)
        lattice = PeriodLattice(c.basis, periods)
        if lattice.rank == 0:
            cover = WindowedCover(sub, csub, h, lattice, WindowSpec(0, 0))
            comp_results.append(_scan_component(cover, p, r_max))
            continue
        prev: ComponentResult | None = None
        settled = False
        n = max(window_start, 1)
        while n <= window_max:
            try:
                cover = WindowedCover(sub, csub, h, lattice,
                                      WindowSpec(n, lattice.rank))
                res = _scan_component(cover, p, r_max)
            except WindowTooSmallError:
                n += 1
                continue
            if prev is not None and res.fingerprint() == prev.fingerprint():
                comp_results.append(res)
                radius_used = max(radius_used, n)
                settled = True
                break
            prev = res
            n += 1
        if not settled:
            if prev is None:
                raise WindowTooSmallError(
                    f"no window radius up to {window_max} admitted a "
                    "complete scan; raise the cap")
            comp_results.append(prev)
            radius_used = max(radius_used, window_max)
            all_stable = False

    delta = [Configuration("line", ())] * (r_max + 1)
    gamma = [Configuration("halfline", ())] * (r_max + 1)
    orbit_table: list[dict] = []
    window_meta: list[dict] = []
    for ci, res in enumerate(comp_results):
        for r in range(r_max + 1):
            delta[r] = delta[r].merge(res.delta[r])
            gamma[r] = gamma[r].merge(res.gamma[r])
        for rep in res.orbits.reps:
            orbit_table.append({
                "component": ci,
                "rep_coords": rep.coord_strings(),
                "rep_embed": rep.embed,
                "window_members": len(
                    res.orbits.members[res.orbits.reps.index(rep)]),
                "relative_dims": list(res.relative_dims[rep]),
            })
        window_meta.append(_window_metadata(res, ci))

    beta = [delta[r].mass() for r in range(r_max + 1)]
    rho = [gamma[r].mass() for r in range(r_max + 1)]
    count = [beta[r] + rho[r] + (rho[r - 1] if r >= 1 else 0)
             for r in range(r_max + 1)]
    lam = [lambda_config(delta[r], gamma[r], gamma[r - 1] if r else None)
           for r in range(r_max + 1)]
    return BarcodeReport(
        field=p, r_max=r_max, theta=c.basis.theta,
        delta=delta, gamma=gamma, lam=lam,
        beta=beta, rho=rho, count=count,
        euler_base=kx.euler_characteristic(),
        orbit_table=orbit_table, window_meta=window_meta,
        stabilized=all_stable, radius=radius_used,
        delta_sign=delta_sign, run_config=run_config,
    )


# `stabilize` is the contract name for the radius-growing entry point.
stabilize = analyze
