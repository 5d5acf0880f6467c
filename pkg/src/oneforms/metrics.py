"""Matching distances between configurations and the stability harness.

Two regimes, matching the two configuration-space topologies:

* collision -- points can only move, never appear or vanish, so finite
  distance requires equal total mass and the distance is the min over
  multiplicity-respecting bijections of the max pointwise shift;
* bottleneck -- a point may instead be deleted by pushing it into the
  boundary set K = {0}, at cost equal to its distance to K.

Both are computed exactly by a threshold search: the optimum is one of
the finitely many candidate costs, and feasibility at a threshold is a
bipartite-matching question.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .barcodes import Configuration, analyze
from .complexes import Cocycle, SimplicialComplex, coboundary, d_flat
from .errors import CocycleError, InputFormatError
from .values import RealValue

__all__ = [
    "MatchingProblem",
    "matching_distance",
    "stability_experiment",
    "d_sup",
]

# sup-norm reading of the same quantity; both names are in circulation
d_sup = d_flat


def _expand(cfg: Configuration) -> list[RealValue]:
    out: list[RealValue] = []
    for t, m in cfg.points:
        out.extend([t] * m)
    return out


def _pair_cost(x: RealValue, y: RealValue) -> float:
    if x.coords == y.coords:
        return 0.0
    return abs(x.embed - y.embed)


def _delete_cost(x: RealValue) -> float:
    return 0.0 if x.is_zero() else abs(x.embed)


def _has_perfect_matching(adj: list[list[int]], n_right: int) -> bool:
    """Kuhn's augmenting-path matching on a boolean bipartite graph."""
    match_right = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(adj)):
        if not try_augment(u, [False] * n_right):
            return False
    return True


@dataclass(frozen=True)
class MatchingProblem:
    """A pair of configurations plus the boundary set selecting the regime.

    boundary K is empty (collision) or the origin (bottleneck); the
    bottleneck regime only makes sense for half-line configurations but
    is defined for any domain tag as deletion-to-zero.
    """

    c1: Configuration
    c2: Configuration
    regime: str = "collision"  # or "bottleneck"

    def __post_init__(self):
        if self.regime not in ("collision", "bottleneck"):
            raise InputFormatError(f"unknown matching regime {self.regime!r}")
        if self.c1.domain != self.c2.domain:
            raise InputFormatError(
                f"configuration domains differ: {self.c1.domain} vs "
                f"{self.c2.domain}")

    def distance(self) -> float:
        xs = _expand(self.c1)
        ys = _expand(self.c2)
        if self.regime == "collision":
            if len(xs) != len(ys):
                return math.inf
            return _bottleneck_assignment(
                [[_pair_cost(x, y) for y in ys] for x in xs])
        # bottleneck regime: left = xs + dummies for ys, right = ys + dummies
        # for xs; matching a point to a dummy deletes it at its K-distance,
        # dummy-dummy pairs are free.
        n1, n2 = len(xs), len(ys)
        size = n1 + n2
        if size == 0:
            return 0.0
        cost = [[0.0] * size for _ in range(size)]
        for i in range(n1):
            for j in range(n2):
                cost[i][j] = _pair_cost(xs[i], ys[j])
            for j in range(n2, size):
                cost[i][j] = _delete_cost(xs[i])
        for i in range(n1, size):
            for j in range(n2):
                cost[i][j] = _delete_cost(ys[j])
        return _bottleneck_assignment(cost)


def _bottleneck_assignment(cost: list[list[float]]) -> float:
    """Min over perfect matchings of the max edge cost (square matrix)."""
    n = len(cost)
    if n == 0:
        return 0.0
    candidates = sorted({c for row in cost for c in row})
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        thr = candidates[mid]
        adj = [[j for j in range(n) if cost[i][j] <= thr] for i in range(n)]
        if _has_perfect_matching(adj, n):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def matching_distance(c1: Configuration, c2: Configuration,
                      regime: str = "collision") -> float:
    return MatchingProblem(c1, c2, regime).distance()


# ---------------------------------------------------------------------------
# stability experiments
# ---------------------------------------------------------------------------

def _direction(rng, vertices: list[int]) -> dict[int, int]:
    """A non-constant integer vertex direction for a coboundary move."""
    if len(vertices) < 2:
        raise InputFormatError(
            "stability experiment needs at least two vertices")
    while True:
        u = {v: int(rng.integers(-5, 6)) for v in vertices}
        if len(set(u.values())) > 1:
            return u


def stability_experiment(kx: SimplicialComplex, c: Cocycle,
                         eps_list, trials: int, seed: int = 0, *,
                         field: int = 2, r_max: int | None = None,
                         window_max: int = 8,
                         perturbations: list[Cocycle] | None = None
                         ) -> list[dict]:
    """Perturb a cocycle within its class and measure output movement.

    Each trial draws one integer vertex direction and reuses it at every
    scale, with the coboundary scaled exactly so that the flat distance
    between the inputs equals eps.  Rows carry per-degree matching
    distances of the delta configurations (collision regime) and the
    gamma configurations (bottleneck regime, deletions into {0}), plus
    the per-row empirical modulus max(distance)/eps.

    Explicitly supplied perturbed cocycles are used instead of random
    directions; any of them lying outside the class of c is rejected.
    """
    import numpy as np

    if r_max is None:
        r_max = kx.dim
    base = analyze(kx, c, field=field, r_max=r_max, window_max=window_max)
    rows: list[dict] = []

    if perturbations is not None:
        for i, c2 in enumerate(perturbations):
            d0 = d_flat(kx, c, c2)
            if math.isinf(d0):
                raise CocycleError(
                    f"perturbation {i} changes the cohomology class; "
                    "trial rejected")
            rep2 = analyze(kx, c2, field=field, r_max=r_max,
                           window_max=window_max)
            rows.extend(_compare_rows(base, rep2, i, d0, r_max))
        return rows

    eps_list = [Fraction(e) if not isinstance(e, Fraction) else e
                for e in eps_list]
    rng = np.random.default_rng(seed)
    directions = [_direction(rng, kx.vertices) for _ in range(trials)]
    for i, u in enumerate(directions):
        span = 0
        for comp in kx.connected_components():
            vals = [u[v] for v in comp]
            span = max(span, max(vals) - min(vals))
        for eps in eps_list:
            if eps == 0:
                c2 = c
            else:
                t = Fraction(2, 1) * eps / span
                pot = {v: c.basis.rational(t * u[v]) for v in kx.vertices}
                c2 = c + coboundary(kx, c.basis, pot)
            d0 = d_flat(kx, c, c2)
            rep2 = analyze(kx, c2, field=field, r_max=r_max,
                           window_max=window_max)
            rows.extend(_compare_rows(base, rep2, i, float(eps), r_max,
                                      d_flat_actual=d0))
    return rows


def _compare_rows(base, other, trial: int, eps: float, r_max: int,
                  d_flat_actual: float | None = None) -> list[dict]:
    out = []
    for r in range(r_max + 1):
        dd = matching_distance(base.delta[r], other.delta[r], "collision")
        dg = matching_distance(base.gamma[r], other.gamma[r], "bottleneck")
        worst = max(dd, dg)
        out.append({
            "trial": trial,
            "eps": eps,
            "degree": r,
            "d_delta": dd,
            "d_gamma": dg,
            "modulus": (worst / eps) if eps else 0.0,
            "d_flat": eps if d_flat_actual is None else d_flat_actual,
        })
    return out
