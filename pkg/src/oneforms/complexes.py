"""Finite simplicial complexes carrying exact simplicial 1-cocycles.

A complex is specified by its maximal simplices; the closure is computed
here.  A cocycle assigns an exact RealValue to every oriented edge,
antisymmetrically, and must satisfy the triangle identity on every
2-simplex.  Integrating over a spanning tree produces vertex potentials
h and one period per non-tree edge; the periods generate the subgroup of
the reals that drives the covering construction downstream.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

import math

from .errors import CocycleError, DegreeError, InputFormatError
from .fieldlinalg import SparseMatrix, kernel_basis, rank
from .values import PeriodBasis, RealValue

Simplex = tuple[int, ...]


class SimplicialComplex:
    """Abstract simplicial complex on integer vertex labels."""

    def __init__(self, max_simplices: Iterable[Sequence[int]]):
        closure: set[Simplex] = set()
        for s in max_simplices:
            vs = tuple(sorted(set(int(v) for v in s)))
            if len(vs) == 0:
                raise InputFormatError("empty simplex in input")
            if len(vs) != len(s):
                raise InputFormatError(f"repeated vertex in simplex {tuple(s)}")
            if any(v < 0 for v in vs):
                raise InputFormatError(f"negative vertex label in {vs}")
            for r in range(1, len(vs) + 1):
                closure.update(combinations(vs, r))
        if not closure:
            raise InputFormatError("complex has no simplices")
        self._by_dim: list[tuple[Simplex, ...]] = []
        d = 0
        while True:
            level = tuple(sorted(s for s in closure if len(s) == d + 1))
            if not level:
                break
            self._by_dim.append(level)
            d += 1
        self.vertices: tuple[int, ...] = tuple(s[0] for s in self._by_dim[0])
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._index: list[dict[Simplex, int]] = [
            {s: i for i, s in enumerate(level)} for level in self._by_dim
        ]

    @property
    def dim(self) -> int:
        return len(self._by_dim) - 1

    def simplices(self, r: int) -> tuple[Simplex, ...]:
        if r < 0 or r > self.dim:
            return ()
        return self._by_dim[r]

    def simplex_index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def vertex_index(self, v: int) -> int:
        return self._vindex[v]

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return self.simplices(1)

    def has_simplex(self, s: Sequence[int]) -> bool:
        s = tuple(sorted(s))
        r = len(s) - 1
        return 0 <= r <= self.dim and s in self._index[r]

    def euler_characteristic(self) -> int:
        return sum((-1) ** r * len(level) for r, level in enumerate(self._by_dim))

    def adjacency(self) -> dict[int, list[int]]:
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for v in nbrs:
            nbrs[v].sort()
        return nbrs

    def connected_components(self) -> list[tuple[int, ...]]:
        """Vertex sets of the components, each sorted, ordered by minimum."""
        nbrs = self.adjacency()
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack = [v]
            comp = []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in nbrs[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def restrict_to_vertices(self, keep: Iterable[int]) -> "SimplicialComplex":
        """Full subcomplex on a vertex subset."""
        keep_set = set(keep)
        maxs = []
        for level in reversed(self._by_dim):
            for s in level:
                if all(v in keep_set for v in s):
                    maxs.append(s)
        if not maxs:
            raise InputFormatError("vertex subset spans no simplices")
        return SimplicialComplex(maxs)

    def maximal_simplices(self) -> list[Simplex]:
        """Simplices that are faces of nothing bigger, sorted by (dim, verts)."""
        out = []
        for r, level in enumerate(self._by_dim):
            if r == self.dim:
                out.extend(level)
                continue
            higher = self._index[r + 1]
            for s in level:
                free = True
                for v in self.vertices:
                    if v not in s and tuple(sorted(s + (v,))) in higher:
                        free = False
                        break
                if free:
                    out.append(s)
        return out

    def vertex_star_counts(self, v: int) -> tuple[int, ...]:
        """Number of incident simplices of each dimension (including v)."""
        out = []
        for level in self._by_dim:
            out.append(sum(1 for s in level if v in s))
        return tuple(out)

    def is_pseudomanifold(self, n: int | None = None) -> tuple[bool, Simplex | None]:
        """Check every (n-1)-simplex lies in exactly two n-simplices.

        Returns (ok, witness); witness is an offending (n-1)-simplex.
        """
        if n is None:
            n = self.dim
        if n < 1 or n > self.dim:
            return False, None
        count: dict[Simplex, int] = {s: 0 for s in self.simplices(n - 1)}
        for s in self.simplices(n):
            for f in combinations(s, n):
                count[f] += 1
        for f, c in count.items():
            if c != 2:
                return False, f
        return True, None

    def __repr__(self) -> str:
        sizes = ", ".join(str(len(l)) for l in self._by_dim)
        return f"SimplicialComplex(dim={self.dim}, cells=({sizes}))"


def boundary_matrix(kx: SimplicialComplex, r: int, p: int = 2) -> SparseMatrix:
    """Boundary operator from r-chains to (r-1)-chains over Z/p.

    For r = 0 this is the zero map into a 0-dimensional space, so kernels
    are full and unreduced homology comes out of the usual rank formulas.
    """
    if r < 0 or r > kx.dim + 1:
        raise DegreeError(f"degree {r} outside 0..{kx.dim + 1}")
    cols_cells = kx.simplices(r)
    rows_cells = kx.simplices(r - 1) if r >= 1 else ()
    columns = []
    for s in cols_cells:
        col = []
        if r >= 1:
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                col.append((kx.simplex_index(face), (-1) ** i))
            col.sort()
        columns.append(col)
    return SparseMatrix(len(rows_cells), len(cols_cells), columns, p)


def betti(kx: SimplicialComplex, p: int = 2, r_max: int | None = None) -> list[int]:
    """Betti numbers over Z/p for degrees 0..r_max (default: dim)."""
    if r_max is None:
        r_max = kx.dim
    out = []
    for r in range(r_max + 1):
        z = kernel_basis(boundary_matrix(kx, r, p)).dim
        b = rank(boundary_matrix(kx, r + 1, p)) if r + 1 <= kx.dim else 0
        out.append(z - b)
    return out


class Cocycle:
    """Exact antisymmetric edge labels with vanishing triangle sums."""

    def __init__(self, kx: SimplicialComplex, basis: PeriodBasis,
                 values: Mapping[tuple[int, int], RealValue]):
        self.kx = kx
        self.basis = basis
        data: dict[tuple[int, int], RealValue] = {}
        for (u, v), val in values.items():
            if u == v:
                raise CocycleError(f"loop edge ({u},{v}) is not simplicial")
            key = (u, v) if u < v else (v, u)
            rv = val if u < v else -val
            if key in data and data[key] != rv:
                raise CocycleError(f"conflicting values for edge {key}")
            if not kx.has_simplex(key):
                raise CocycleError(f"value given for non-edge {key}")
            data[key] = rv
        self._data = data

    def value(self, x: int, y: int) -> RealValue:
        """Value on the oriented edge x -> y."""
        key = (x, y) if x < y else (y, x)
        try:
            rv = self._data[key]
        except KeyError:
            raise CocycleError(f"no value for edge {key}") from None
        return rv if x < y else -rv

    def items(self):
        return sorted(self._data.items())

    def __add__(self, other: "Cocycle") -> "Cocycle":
        if other.kx is not self.kx and other.kx.simplices(1) != self.kx.simplices(1):
            raise CocycleError("cocycles live on different complexes")
        vals = {e: v + other._data[e] for e, v in self._data.items()}
        return Cocycle(self.kx, self.basis, vals)

    def __neg__(self) -> "Cocycle":
        return Cocycle(self.kx, self.basis, {e: -v for e, v in self._data.items()})


def coboundary(kx: SimplicialComplex, basis: PeriodBasis,
               potentials: Mapping[int, RealValue]) -> Cocycle:
    """The exact cocycle d(h): edge (x, y) gets h(y) - h(x)."""
    vals = {}
    for u, v in kx.edges:
        vals[(u, v)] = potentials[v] - potentials[u]
    return Cocycle(kx, basis, vals)


def check_cocycle(kx: SimplicialComplex, c: Cocycle) -> None:
    """Validate completeness and the triangle identity; raise CocycleError."""
    for e in kx.edges:
        if e not in c._data:
            raise CocycleError(f"missing value for edge {e}")
    for extra in c._data:
        if not kx.has_simplex(extra):
            raise CocycleError(f"value on non-edge {extra}")
    for a, b, cc in kx.simplices(2):
        total = c.value(a, b) + c.value(b, cc) - c.value(a, cc)
        if not total.is_zero():
            raise CocycleError(
                f"triangle identity fails on ({a},{b},{cc}): "
                f"residual coordinates {total.coord_strings()}")


def integrate_tree(kx: SimplicialComplex, c: Cocycle
                   ) -> tuple[dict[int, RealValue], list[RealValue]]:
    """Integrate the cocycle over a breadth-first spanning forest.

    Each component is rooted at its smallest vertex with potential 0.
    Returns (potentials, periods); periods are the defects
    c(x,y) - (h(y) - h(x)) on non-tree edges, in sorted edge order.
    """
    nbrs = kx.adjacency()
    h: dict[int, RealValue] = {}
    tree: set[tuple[int, int]] = set()
    for comp in kx.connected_components():
        root = comp[0]
        h[root] = c.basis.zero()
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for y in nbrs[x]:
                    if y not in h:
                        h[y] = h[x] + c.value(x, y)
                        tree.add((x, y) if x < y else (y, x))
                        nxt.append(y)
            frontier = nxt
    periods = []
    for u, v in kx.edges:
        if (u, v) in tree:
            continue
        periods.append(c.value(u, v) - (h[v] - h[u]))
    return h, periods


def d_flat(kx: SimplicialComplex, c1: Cocycle, c2: Cocycle) -> float:
    """Flat pseudo-distance between two cocycles.

    If c1 - c2 is exact with potential u, returns (max u - min u)/2 on
    embeddings, minimized over per-component shifts.  If the difference
    has a nonzero period the forms lie in different classes and the
    distance is unbounded: returns inf.
    """
    diff = c1 + (-c2)
    h, periods = integrate_tree(kx, diff)
    if any(not per.is_zero() for per in periods):
        return math.inf
    worst = 0.0
    for comp in kx.connected_components():
        embeds = [h[v].embed for v in comp]
        worst = max(worst, (max(embeds) - min(embeds)) / 2.0)
    return worst
