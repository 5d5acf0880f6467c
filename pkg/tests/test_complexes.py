"""Complexes, cocycles, tree integration, flat distance."""

import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import (
    BASIS0,
    exact_cocycle,
    rand_complex,
    rand_graph,
    rand_potential,
)
from oneforms import (
    Cocycle,
    CocycleError,
    InputFormatError,
    PeriodBasis,
    PeriodLattice,
    SimplicialComplex,
    betti,
    boundary_matrix,
    check_cocycle,
    coboundary,
    d_flat,
    d_sup,
    integrate_tree,
)
from oneforms.fixtures import build_fixture, torus_complex

SQRT2 = math.sqrt(2)


class TestSimplicialComplex:
    def test_closure_of_a_triangle(self):
        kx = SimplicialComplex([[2, 0, 1]])
        assert kx.dim == 2
        assert kx.simplices(0) == ((0,), (1,), (2,))
        assert kx.simplices(1) == ((0, 1), (0, 2), (1, 2))
        assert kx.simplices(2) == ((0, 1, 2),)
        assert kx.has_simplex((1, 0))
        assert not kx.has_simplex((0, 3))

    def test_vertex_labels_may_be_sparse(self):
        kx = SimplicialComplex([[5, 9]])
        assert kx.vertices == (5, 9)
        assert kx.vertex_index(9) == 1

    def test_input_validation(self):
        with pytest.raises(InputFormatError):
            SimplicialComplex([])
        with pytest.raises(InputFormatError):
            SimplicialComplex([[0, 0, 1]])
        with pytest.raises(InputFormatError):
            SimplicialComplex([[-1, 0]])

    def test_euler_characteristic(self):
        assert SimplicialComplex([[0]]).euler_characteristic() == 1
        assert SimplicialComplex([[0, 1, 2]]).euler_characteristic() == 1
        hollow = SimplicialComplex([[0, 1], [1, 2], [0, 2]])
        assert hollow.euler_characteristic() == 0
        assert torus_complex().euler_characteristic() == 0

    def test_connected_components(self):
        kx = SimplicialComplex([[0, 1], [2, 3], [4]])
        assert kx.connected_components() == [(0, 1), (2, 3), (4,)]

    def test_restrict_to_vertices(self):
        kx = SimplicialComplex([[0, 1, 2], [2, 3]])
        sub = kx.restrict_to_vertices([0, 1, 2])
        assert sub.simplices(2) == ((0, 1, 2),)
        assert not sub.has_simplex((2, 3))

    def test_maximal_simplices_regenerate_the_complex(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            kx = rand_complex(rng)
            rebuilt = SimplicialComplex(kx.maximal_simplices())
            for r in range(kx.dim + 1):
                assert rebuilt.simplices(r) == kx.simplices(r)

    def test_pseudomanifold_check(self):
        ok, witness = torus_complex().is_pseudomanifold()
        assert ok and witness is None
        wedge = build_fixture("figure_eight_irrational")[0]
        ok, witness = wedge.is_pseudomanifold()
        assert not ok

    def test_vertex_star_counts(self):
        kx = SimplicialComplex([[0, 1, 2]])
        assert kx.vertex_star_counts(0) == (1, 2, 1)


class TestBoundaryAndBetti:
    def test_single_edge_boundary(self):
        kx = SimplicialComplex([[0, 1]])
        d1 = boundary_matrix(kx, 1, 2)
        assert np.array_equal(d1.to_dense(), np.array([[1], [1]]))

    def test_hollow_triangle_rank(self):
        kx = SimplicialComplex([[0, 1], [1, 2], [0, 2]])
        from oneforms import rank
        assert rank(boundary_matrix(kx, 1, 2)) == 2
        assert betti(kx) == [1, 1]

    def test_boundary_squared_zero_everywhere(self):
        rng = np.random.default_rng(5)
        complexes = [SimplicialComplex([[0, 1, 2]]), torus_complex()]
        complexes += [rand_complex(rng) for _ in range(20)]
        for kx in complexes:
            for p in (2, 3):
                for r in range(2, kx.dim + 1):
                    prod = boundary_matrix(kx, r - 1, p).matmul(
                        boundary_matrix(kx, r, p))
                    assert prod.nnz == 0, (kx, r, p)

    def test_degree_out_of_range(self):
        from oneforms import DegreeError
        kx = SimplicialComplex([[0, 1]])
        with pytest.raises(DegreeError):
            boundary_matrix(kx, 5, 2)

    def test_point_betti(self):
        assert betti(SimplicialComplex([[0]])) == [1]

    def test_torus_betti_mod2(self):
        assert betti(torus_complex(), 2) == [1, 2, 1]


class TestCocycle:
    def test_triangle_sum_zero_is_valid(self):
        kx = SimplicialComplex([[0, 1, 2]])
        one = BASIS0.rational(1)
        c = Cocycle(kx, BASIS0, {(0, 1): one, (1, 2): one,
                                 (0, 2): BASIS0.rational(2)})
        check_cocycle(kx, c)  # raises on failure

    def test_triangle_sum_nonzero_is_invalid(self):
        kx = SimplicialComplex([[0, 1, 2]])
        one = BASIS0.rational(1)
        c = Cocycle(kx, BASIS0, {(0, 1): one, (1, 2): one, (0, 2): one})
        with pytest.raises(CocycleError, match=r"\(0,1,2\)"):
            check_cocycle(kx, c)

    def test_graph_cocycle_vacuously_valid(self):
        kx = build_fixture("figure_eight_irrational")[0]
        vals = {e: BASIS0.rational(7) for e in kx.edges}
        check_cocycle(kx, Cocycle(kx, PeriodBasis(()), vals))

    def test_antisymmetry_of_lookup(self):
        kx = SimplicialComplex([[0, 1]])
        c = Cocycle(kx, BASIS0, {(1, 0): BASIS0.rational(3)})
        assert c.value(1, 0).coords[0] == Fraction(3)
        assert c.value(0, 1).coords[0] == Fraction(-3)

    def test_missing_edge_value(self):
        kx = SimplicialComplex([[0, 1], [1, 2]])
        c = Cocycle(kx, BASIS0, {(0, 1): BASIS0.rational(1)})
        with pytest.raises(CocycleError, match="missing value"):
            check_cocycle(kx, c)
        with pytest.raises(CocycleError, match="no value"):
            c.value(1, 2)

    def test_value_on_non_edge_rejected(self):
        kx = SimplicialComplex([[0, 1]])
        with pytest.raises(CocycleError, match="non-edge"):
            Cocycle(kx, BASIS0, {(0, 3): BASIS0.rational(1)})

    def test_loop_edge_rejected(self):
        kx = SimplicialComplex([[0, 1]])
        with pytest.raises(CocycleError, match="loop"):
            Cocycle(kx, BASIS0, {(0, 0): BASIS0.rational(1)})


class TestIntegrateTree:
    def test_exact_cocycle_integrates_back(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            kx = rand_complex(rng)
            pot = rand_potential(rng, kx)
            c = exact_cocycle(kx, pot)
            h, periods = integrate_tree(kx, c)
            assert all(per.is_zero() for per in periods)
            for comp in kx.connected_components():
                root = comp[0]
                for v in comp:
                    assert h[v].coords[0] == pot[v] - pot[root]

    def test_circle_with_period_one(self):
        kx, c = build_fixture("circle_integral")
        h, periods = integrate_tree(kx, c)
        assert len(periods) == 1
        assert periods[0].coords == (Fraction(1),)

    def test_figure_eight_periods(self):
        kx, c = build_fixture("figure_eight_irrational")
        h, periods = integrate_tree(kx, c)
        coord_set = {per.coords for per in periods}
        assert coord_set == {(Fraction(1), Fraction(0)),
                             (Fraction(0), Fraction(1))}

    def test_lattice_invariant_under_relabeling(self):
        # relabeling permutes the breadth-first order, hence the spanning
        # tree and the raw period values; the lattice they generate must
        # not change
        rng = np.random.default_rng(29)
        checked = 0
        while checked < 20:
            kx = rand_graph(rng)
            if kx.dim < 1 or not kx.edges:
                continue
            vals = {e: BASIS0.rational(
                Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))))
                for e in kx.edges}
            c = Cocycle(kx, BASIS0, vals)
            lat1 = PeriodLattice(BASIS0, integrate_tree(kx, c)[1])
            perm = {v: int(nv) for nv, v in
                    enumerate(rng.permutation(kx.vertices))}
            kx2 = SimplicialComplex(
                [[perm[v] for v in s] for s in kx.maximal_simplices()])
            vals2 = {}
            for u, v in kx.edges:
                a, b = perm[u], perm[v]
                vals2[(min(a, b), max(a, b))] = \
                    c.value(u, v) if a < b else c.value(v, u)
            c2 = Cocycle(kx2, BASIS0, vals2)
            lat2 = PeriodLattice(BASIS0, integrate_tree(kx2, c2)[1])
            assert [g.coords for g in lat1.generators] == \
                [g.coords for g in lat2.generators], (vals, perm)
            checked += 1

    def test_lattice_invariant_under_relabeling_integral(self):
        kx, c = build_fixture("circle_integral")
        base = PeriodLattice(BASIS0, integrate_tree(kx, c)[1])
        for perm in ((1, 2, 0), (2, 0, 1), (2, 1, 0)):
            m = dict(zip(kx.vertices, perm))
            kx2 = SimplicialComplex(
                [[m[u], m[v]] for u, v in kx.edges])
            vals = {}
            for u, v in kx.edges:
                a, b = m[u], m[v]
                vals[(min(a, b), max(a, b))] = \
                    c.value(u, v) if a < b else c.value(v, u)
            c2 = Cocycle(kx2, BASIS0, vals)
            lat = PeriodLattice(BASIS0, integrate_tree(kx2, c2)[1])
            assert [g.coords for g in lat.generators] == \
                [g.coords for g in base.generators]


class TestFlatDistance:
    def test_identical_cocycles(self):
        kx, c = build_fixture("path_w")
        assert d_flat(kx, c, c) == 0.0
        assert d_sup is d_flat

    def test_small_coboundary_move(self):
        kx, c = build_fixture("path_w")
        u = {0: Fraction(0), 1: Fraction(1, 5), 2: Fraction(0)}
        c2 = c + exact_cocycle(kx, u)
        assert d_flat(kx, c, c2) == pytest.approx(0.1)

    def test_class_mismatch_is_infinite(self):
        kx, c = build_fixture("circle_integral")
        zero = Cocycle(kx, BASIS0, {e: BASIS0.zero() for e in kx.edges})
        assert math.isinf(d_flat(kx, c, zero))

    def test_pseudometric_on_random_triples(self):
        rng = np.random.default_rng(31)
        done = 0
        while done < 50:
            kx = rand_complex(rng)
            if len(kx.vertices) < 2:
                continue
            base = exact_cocycle(kx, rand_potential(rng, kx))
            cs = [base + exact_cocycle(kx, rand_potential(rng, kx))
                  for _ in range(3)]
            d01 = d_flat(kx, cs[0], cs[1])
            d10 = d_flat(kx, cs[1], cs[0])
            d12 = d_flat(kx, cs[1], cs[2])
            d02 = d_flat(kx, cs[0], cs[2])
            assert d01 == pytest.approx(d10)
            assert d02 <= d01 + d12 + 1e-12
            assert d_flat(kx, cs[0], cs[0]) == 0.0
            done += 1

    def test_validity_preserved_by_coboundary(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            kx = rand_complex(rng)
            c = exact_cocycle(kx, rand_potential(rng, kx))
            check_cocycle(kx, c)
            c2 = c + exact_cocycle(kx, rand_potential(rng, kx))
            check_cocycle(kx, c2)

    def test_different_complexes_rejected(self):
        kx1, c1 = build_fixture("path_w")
        kx2, c2 = build_fixture("circle_integral")
        with pytest.raises(CocycleError):
            c1 + c2
