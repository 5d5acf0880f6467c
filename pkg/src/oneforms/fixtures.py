"""Canonical example inputs used by the test suite and `generate`.

Each builder returns fresh objects; tests freeze the expected outputs.
The torus is the 7-vertex minimal triangulation (vertices mod 7 with
triangles {i, i+1, i+3} and {i, i+2, i+3}); the two torus cocycles share
that complex.  The figure eight is realized simplicially as two hollow
triangles glued at vertex 0, since a one-vertex loop is not a simplicial
complex; the periods (1 and the irrational basis element) are spread in
thirds along each loop.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .complexes import Cocycle, SimplicialComplex, coboundary
from .errors import InputFormatError
from .geometrize import MetricData
from .values import PeriodBasis

__all__ = ["FIXTURES", "build_fixture", "torus_complex"]

SQRT2 = math.sqrt(2)


def _exact_from_potentials(kx: SimplicialComplex, basis: PeriodBasis,
                           pots: dict[int, Fraction]) -> Cocycle:
    return coboundary(kx, basis, {v: basis.rational(q)
                                  for v, q in pots.items()})


def circle_exact():
    basis = PeriodBasis(())
    kx = SimplicialComplex([[0, 1], [1, 2], [2, 3], [0, 3]])
    pots = {0: Fraction(0), 1: Fraction(2, 5), 2: Fraction(1),
            3: Fraction(3, 5)}
    return kx, _exact_from_potentials(kx, basis, pots)


def circle_integral():
    basis = PeriodBasis(())
    kx = SimplicialComplex([[0, 1], [1, 2], [0, 2]])
    third = basis.rational(Fraction(1, 3))
    c = Cocycle(kx, basis, {(0, 1): third, (1, 2): third, (0, 2): -third})
    return kx, c


def path_w():
    basis = PeriodBasis(())
    kx = SimplicialComplex([[0, 1], [1, 2]])
    pots = {0: Fraction(0), 1: Fraction(1), 2: Fraction(1, 2)}
    return kx, _exact_from_potentials(kx, basis, pots)


def figure_eight_irrational():
    basis = PeriodBasis((SQRT2,))
    kx = SimplicialComplex([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]])
    third = Fraction(1, 3)
    val = lambda q0, q1: basis.value((Fraction(q0), Fraction(q1)))
    c = Cocycle(kx, basis, {
        (0, 1): val(third, 0), (1, 2): val(third, 0), (0, 2): val(-third, 0),
        (0, 3): val(0, third), (3, 4): val(0, third), (0, 4): val(0, -third),
    })
    return kx, c


def torus_complex() -> SimplicialComplex:
    tris = []
    for i in range(7):
        tris.append([i, (i + 1) % 7, (i + 3) % 7])
        tris.append([i, (i + 2) % 7, (i + 3) % 7])
    return SimplicialComplex(tris)


def _torus_winding_value(a: int, b: int) -> Fraction:
    """Value of the degree-one winding cocycle on the sorted edge (a, b)."""
    e = b - a
    return Fraction(e, 7) if e <= 3 else Fraction(e - 7, 7)


def torus_integral():
    basis = PeriodBasis(())
    kx = torus_complex()
    winding = Cocycle(kx, basis, {
        (a, b): basis.rational(_torus_winding_value(a, b))
        for (a, b) in kx.edges})
    # coboundary wobble chosen so vertex 0 ascends along all six edges in
    # the cover: without it every lift value is regular and all outputs
    # vanish, which would make the duality check vacuous
    u = {0: Fraction(0), 1: Fraction(1, 100), 2: Fraction(2, 100),
         3: Fraction(3, 100), 4: Fraction(55, 100), 5: Fraction(52, 100),
         6: Fraction(57, 100)}
    wobble = coboundary(kx, basis, {v: basis.rational(q)
                                    for v, q in u.items()})
    return kx, winding + wobble


def torus_exact():
    basis = PeriodBasis(())
    kx = torus_complex()
    pots = {v: Fraction(v, 10) + Fraction(v * v, 100) for v in range(7)}
    return kx, _exact_from_potentials(kx, basis, pots)


def square_cloud() -> MetricData:
    basis = PeriodBasis(())
    points = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    pairs = {(0, 1), (1, 2), (2, 3), (0, 3)}
    quarter = basis.rational(Fraction(1, 4))
    f = {(0, 1): quarter, (1, 2): quarter, (2, 3): quarter,
         (0, 3): -quarter}
    return MetricData.from_points(points, pairs, f, basis)


FIXTURES = {
    "circle_exact": circle_exact,
    "circle_integral": circle_integral,
    "path_w": path_w,
    "figure_eight_irrational": figure_eight_irrational,
    "torus_integral": torus_integral,
    "torus_exact": torus_exact,
    "square_cloud": square_cloud,
}


def build_fixture(name: str):
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise InputFormatError(
            f"unknown fixture {name!r}; choose from "
            f"{sorted(FIXTURES)}") from None
    return builder()
