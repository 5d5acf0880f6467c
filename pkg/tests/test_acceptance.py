"""Headline requirements, one test (and one printed verdict line) each.

Everything here is end-to-end: forced values on the named example
inputs, the independent brute-force cross-check, the mirror identities,
perturbation bounds, the bundled structural invariants, and
bit-for-bit determinism of serialized reports.
"""

import json
import random
import time
from fractions import Fraction

import numpy as np

from conftest import (
    BASIS0,
    assert_oracle_agreement,
    config_fractions,
    exact_cocycle,
    rand_complex,
    rand_potential,
)
from oneforms import (
    Cocycle,
    CoverAnalysis,
    MetricData,
    PeriodBasis,
    chain_model,
    analyze,
    build_cover,
    write_json,
)
from oneforms.barcodes import Configuration
from oneforms.complexes import SimplicialComplex, boundary_matrix
from oneforms.fieldlinalg import (
    image_basis,
    kernel_basis,
    rank,
    subspace_intersection,
    subspace_sum,
)
from oneforms.fixtures import build_fixture
from oneforms.geometrize import geometrize_pipeline, rips_complex
from oneforms.metrics import matching_distance, stability_experiment

R = BASIS0.rational
F = Fraction


def verdict(label):
    print(f"\nPASS  {label}")


def test_exact_oracle_equivalence():
    """>= 100 random exact inputs match the brute-force reference, < 60 s."""
    t0 = time.monotonic()
    rng = np.random.default_rng(20260815)
    for i in range(100):
        kx = rand_complex(rng)
        pot = rand_potential(rng, kx)
        assert_oracle_agreement(kx, pot, f"case {i}")
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"oracle sweep took {elapsed:.1f}s"
    verdict(f"exact-class oracle equivalence (100 inputs, {elapsed:.1f}s)")


def test_circle_fixture_values():
    """Both circle inputs give their analytically forced configurations."""
    kx, c = build_fixture("circle_exact")
    rep = analyze(kx, c)
    assert config_fractions(rep.delta[0]) == {F(1): 1}
    assert config_fractions(rep.delta[1]) == {F(-1): 1}
    assert all(rep.gamma[r].mass() == 0 for r in range(2))

    kx, c = build_fixture("circle_integral")
    rep = analyze(kx, c)
    assert all(rep.delta[r].mass() == 0 for r in range(2))
    assert all(rep.gamma[r].mass() == 0 for r in range(2))
    assert rep.beta == [0, 0] and rep.rho == [0, 0] and rep.count == [0, 0]
    assert rep.alternating_count_sum() == 0 == rep.euler_base
    verdict("circle fixtures: forced values, Euler cross-check")


def test_path_fixture_values_and_count_identity():
    kx, c = build_fixture("path_w")
    rep = analyze(kx, c)
    assert rep.beta[0] == 1
    assert rep.rho[0] == 1
    assert rep.count == [2, 1]
    assert config_fractions(rep.gamma[0]) == {F(1, 2): 1}
    assert config_fractions(rep.delta[0]) == {F(1): 1}
    for r in range(2):
        orbit_total = sum(o["relative_dims"][r] for o in rep.orbit_table)
        assert orbit_total == rep.count[r]
    verdict("path fixture: forced values, per-orbit count identity")


def test_irrational_class_figure_eight(fig8_cover):
    t0 = time.monotonic()
    kx, c = build_fixture("figure_eight_irrational")
    rep = analyze(kx, c)
    elapsed = time.monotonic() - t0
    assert rep.beta == [0, 1]
    assert rep.alternating_count_sum() == -1 == rep.euler_base
    assert rep.stabilized, "no agreement across consecutive radii"
    assert elapsed < 120.0, f"analysis took {elapsed:.1f}s"

    # lattice-translation invariance of both dimension grids
    cover = fig8_cover
    analysis = CoverAnalysis(cover, 2, 1)
    shifts = [cover.lattice.combination(g)
              for g in ((1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1))]
    rng = random.Random(20260815)
    vals = cover.safe_values()
    checked = 0
    while checked < 50:
        a, b = rng.choice(vals), rng.choice(vals)
        g = rng.choice(shifts)
        if not (cover.is_safe(a + g) and cover.is_safe(b + g)):
            continue
        r = rng.choice((0, 1))
        assert analysis.delta_dim(r, a, b) == analysis.delta_dim(r, a + g,
                                                                 b + g)
        if b.compare(a) > 0:
            assert analysis.gamma_dim(r, a, b) == analysis.gamma_dim(
                r, a + g, b + g)
        checked += 1
    verdict(f"irrational class: counts, Euler, stabilization, "
            f"{checked} translation triples ({elapsed:.1f}s)")


def test_torus_mirror_identities():
    """Line configs mirror between degrees r and n-r; half-line configs
    match the negated class between r and n-1-r.  Exact, all degrees."""
    for name in ("torus_integral", "torus_exact"):
        kx, c = build_fixture(name)
        n = kx.dim
        neg = Cocycle(kx, c.basis, {e: -c.value(*e) for e in kx.edges})
        pos_rep = analyze(kx, c, r_max=n)
        neg_rep = analyze(kx, neg, r_max=n)
        for r in range(n + 1):
            assert pos_rep.delta[r] == pos_rep.delta[n - r].mirror(), \
                (name, "line", r)
        for r in range(n):
            assert pos_rep.gamma[r] == neg_rep.gamma[n - 1 - r], \
                (name, "half-line", r)
    verdict("mirror identities on both torus inputs, all degrees")


def test_stability_bounds_and_monotone_maxima():
    """<= 4*eps in every trial; per-eps maxima ordered with eps."""
    eps_grid = [F(1, 10), F(1, 20), F(1, 100)]
    for name, trials in (("path_w", 20), ("torus_exact", 20),
                         ("torus_integral", 20)):
        kx, c = build_fixture(name)
        rows = stability_experiment(kx, c, eps_grid, trials, seed=11)
        worst = {float(e): 0.0 for e in eps_grid}
        for row in rows:
            d = max(row["d_delta"], row["d_gamma"])
            assert d <= 4 * row["eps"] + 1e-9, (name, row)
            worst[row["eps"]] = max(worst[row["eps"]], d)
        ordered = [worst[float(e)] for e in eps_grid]  # eps descending
        assert ordered[2] <= ordered[1] <= ordered[0], (name, worst)
    verdict("perturbation bound 4*eps and monotone per-eps maxima "
            "(3 fixtures x 3 eps x 20 trials)")


def test_invariant_bundle():
    """Compact re-run of every module's structural invariant."""
    rng = np.random.default_rng(99)

    # rank-nullity over both supported field styles
    for p in (2, 5):
        M = rng.integers(0, p, size=(6, 9))
        assert rank(M, p) + kernel_basis(M, p).dim == 9

    # modular law: A <= C implies (A + B) ^ C = A + (B ^ C)
    for p in (2, 3):
        for _ in range(10):
            A = image_basis(rng.integers(0, p, size=(7, 2)), p)
            C = subspace_sum(A, image_basis(rng.integers(0, p, (7, 2)), p))
            B = image_basis(rng.integers(0, p, size=(7, 3)), p)
            lhs = subspace_intersection(subspace_sum(A, B), C)
            rhs = subspace_sum(A, subspace_intersection(B, C))
            assert lhs.contains(rhs) and rhs.contains(lhs)

    # boundary of boundary vanishes, base complex and window alike
    kx = rand_complex(rng)
    for r in range(1, kx.dim):
        prod = boundary_matrix(kx, r, 2).matmul(boundary_matrix(kx, r + 1, 2))
        assert prod.nnz == 0

    # deck equivariance: translating a lift shifts its value by the
    # lattice element, and the windowed boundaries commute with it
    kx, c = build_fixture("circle_integral")
    cover = build_cover(kx, c, 2)
    g = (1,)
    shift = cover.lattice.combination(g)
    for idx in range(len(cover.vertex_values)):
        j = cover.translate_cell(0, idx, g)
        if j is not None:
            assert cover.vertex_values[j] == cover.vertex_values[idx] + shift

    # per-orbit count identity on a second, 2-dimensional input
    rep = analyze(*build_fixture("torus_exact"))
    for r in range(3):
        assert sum(o["relative_dims"][r] for o in rep.orbit_table) \
            == rep.count[r]

    # one-sided death profile is monotone and tops out at homology
    kx, c = build_fixture("torus_exact")
    cover2 = build_cover(kx, c, 1)
    an = CoverAnalysis(cover2, 2, 2)
    vals = cover2.safe_values()
    for r in range(3):
        by_t = sorted(((a - b).embed, an.f_rank(r, a - b))
                      for a in vals for b in vals)
        for (t1, r1), (t2, r2) in zip(by_t, by_t[1:]):
            assert r1 <= r2 or t1 == t2
        assert by_t[-1][1] == an.homology_dim(r)

    # chain model: homology equals the line-configuration masses
    rep = analyze(*build_fixture("path_w"))
    model = chain_model(rep.beta, rep.rho, 2)
    assert model.homology_dims() == rep.beta

    # jump decomposition: relative dim at t splits into the image jump
    # plus the half-line row at t and previous-degree column at t
    kx, c = build_fixture("path_w")
    cover3 = build_cover(kx, c, 0)
    an3 = CoverAnalysis(cover3, 2, 1)
    eps = R("1/1000")
    vals = [v for v in cover3.safe_values() if cover3.is_safe(v - eps)]
    for r in range(2):
        for t in vals:
            rel = cover3.relative_pair_dims(t, 2, 1, "lower")[r]
            jump = an3.sublevel_image(r, t).dim \
                - an3.sublevel_image(r, t - eps).dim
            grow = sum(an3.gamma_dim(r, t, b)
                       for b in vals if b.compare(t) > 0)
            die = sum(an3.gamma_dim(r - 1, a, t)
                      for a in vals if a.compare(t) < 0) if r else 0
            assert rel == jump + grow + die

    # matching distances are metrics on equal-mass configurations
    pyrng = random.Random(3)

    def rand_cfg():
        pts = [R(F(pyrng.randint(-8, 8), pyrng.randint(1, 4)))
               for _ in range(3)]
        return Configuration.from_mapping(
            {p: 1 for p in pts}, "line")

    for _ in range(25):
        x, y, z = rand_cfg(), rand_cfg(), rand_cfg()
        dxy = matching_distance(x, y, "collision")
        assert dxy == matching_distance(y, x, "collision")
        assert matching_distance(x, x, "collision") == 0.0
        assert dxy <= matching_distance(x, z, "collision") \
            + matching_distance(z, y, "collision") + 1e-9

    # growing the scale only grows the flag complex
    pts = rng.random((7, 2))
    md = MetricData.from_points(pts, frozenset(), {}, PeriodBasis(()))
    prev = set()
    for eps in (0.2, 0.5, 0.9, 1.4):
        cur = {s for r in range(3) for s in rips_complex(md, eps, 2)
               .simplices(r)}
        assert prev <= cur
        prev = cur

    verdict("invariant bundle: linear algebra, boundaries, deck action, "
            "counts, rank profile, chain model, jump split, metric axioms, "
            "scale monotonicity")


def test_determinism_byte_identical_reports(tmp_path):
    """Same seed, same input => byte-identical serialized artifacts."""
    paths = []
    for run in (0, 1):
        out = tmp_path / f"run{run}"
        out.mkdir()
        for name in ("path_w", "circle_exact", "circle_integral",
                     "torus_exact"):
            kx, c = build_fixture(name)
            rep = analyze(kx, c, run_config={"seed": 7, "input": name})
            write_json(rep.to_json_dict(), out / f"{name}.json")
        rows = stability_experiment(*build_fixture("path_w"),
                                    [F(1, 10)], 5, seed=7)
        write_json(rows, out / "stability.json")
        md = build_fixture("square_cloud")
        (eps, rep), = geometrize_pipeline(md, [1.2])
        write_json(rep.to_json_dict(), out / "cloud.json")
        paths.append(out)
    first = sorted(paths[0].iterdir())
    second = sorted(paths[1].iterdir())
    assert [p.name for p in first] == [p.name for p in second]
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name
    verdict(f"determinism: {len(first)} artifacts byte-identical "
            "across reruns")
