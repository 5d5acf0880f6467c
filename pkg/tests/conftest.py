"""Shared helpers: random inputs and oracle comparison plumbing."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from oneforms import (
    PeriodBasis,
    SimplicialComplex,
    analyze,
    build_cover,
    coboundary,
)
from oneforms.fixtures import build_fixture
from oracle import ExactOracle

BASIS0 = PeriodBasis(())


def rand_complex(rng: np.random.Generator, max_verts: int = 8
                 ) -> SimplicialComplex:
    """Random complex, <= max_verts vertices, dim <= 2, maybe disconnected."""
    n = int(rng.integers(1, max_verts + 1))
    maxs: list[list[int]] = [[v] for v in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < 0.35:
            maxs.append([u, v])
    for u, v, w in combinations(range(n), 3):
        if rng.random() < 0.10:
            maxs.append([u, v, w])
    return SimplicialComplex(maxs)


def rand_graph(rng: np.random.Generator, max_verts: int = 7
               ) -> SimplicialComplex:
    """Random graph (dim <= 1): any antisymmetric labels form a cocycle."""
    n = int(rng.integers(2, max_verts + 1))
    maxs: list[list[int]] = [[v] for v in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < 0.45:
            maxs.append([u, v])
    return SimplicialComplex(maxs)


def rand_potential(rng: np.random.Generator, kx: SimplicialComplex
                   ) -> dict[int, Fraction]:
    """Random rational vertex potential; value collisions are allowed."""
    return {v: Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 9)))
            for v in kx.vertices}


def exact_cocycle(kx: SimplicialComplex, pot: dict[int, Fraction]):
    return coboundary(kx, BASIS0, {v: BASIS0.rational(q)
                                   for v, q in pot.items()})


def config_fractions(cfg) -> dict[Fraction, int]:
    """Rational-only view of a Configuration over the empty period basis."""
    out: dict[Fraction, int] = {}
    for t, m in cfg.points:
        assert len(t.coords) == 1
        out[t.coords[0]] = m
    return out


def assert_oracle_agreement(kx: SimplicialComplex, pot: dict[int, Fraction],
                            context: str = "") -> None:
    """Engine output == brute-force output, exactly, for an exact cocycle."""
    c = exact_cocycle(kx, pot)
    rep = analyze(kx, c)
    oracle = ExactOracle(kx.maximal_simplices(), pot)
    odelta, ogamma = oracle.configurations(kx.dim)
    for r in range(kx.dim + 1):
        got_d = config_fractions(rep.delta[r])
        got_g = config_fractions(rep.gamma[r])
        assert got_d == odelta[r], (
            f"delta[{r}] mismatch {context}: engine {got_d} "
            f"oracle {odelta[r]} (potential {pot})")
        assert got_g == ogamma[r], (
            f"gamma[{r}] mismatch {context}: engine {got_g} "
            f"oracle {ogamma[r]} (potential {pot})")


@pytest.fixture(scope="session")
def fig8_report():
    """Figure-eight analysis is the most expensive call; share one run."""
    kx, c = build_fixture("figure_eight_irrational")
    return analyze(kx, c)


@pytest.fixture(scope="session")
def fig8_cover():
    """Radius-3 cover of the figure eight (the stabilization radius)."""
    kx, c = build_fixture("figure_eight_irrational")
    return build_cover(kx, c, 3)
