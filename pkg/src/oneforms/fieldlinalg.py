"""Exact linear algebra over a prime field Z/p.

Matrices are built column-sparse (boundary operators are very sparse)
and densified for elimination: every matrix this package meets is small
enough that a vectorized dense sweep beats a pointer-chasing sparse one,
so the densification threshold is effectively "always".  GF(2), the
default field, gets a bit-packed elimination path because it dominates
the runtime of the windowed-cover scans.

Subspaces are kept in reduced column echelon form with strictly
increasing pivot rows, which makes equality of subspaces a plain array
comparison and keeps every derived basis canonical.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    ContainmentError,
    DimensionMismatchError,
    InputFormatError,
)

__all__ = [
    "PrimeField",
    "FieldElem",
    "SparseMatrix",
    "Subspace",
    "rank",
    "image_basis",
    "kernel_basis",
    "subspace_sum",
    "subspace_intersection",
    "quotient_dim",
    "zero_subspace",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field Z/p for a prime modulus p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise InputFormatError(f"field modulus must be prime, got {p!r}")
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a field")
        return pow(a, self.p - 2, self.p)

    def element(self, value: int) -> FieldElem:
        return FieldElem(value % self.p, self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class FieldElem:
    """A residue together with its modulus; arithmetic checks moduli."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise DimensionMismatchError("mixed moduli in field arithmetic")
            return other
        if isinstance(other, int):
            return FieldElem(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElem(self.value + other.value, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElem(self.value * other.value, self.p)

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        return FieldElem(PrimeField(self.p).inv(self.value), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __bool__(self) -> bool:
        return self.value != 0


# ---------------------------------------------------------------------------
# dense elimination cores
# ---------------------------------------------------------------------------

def _rref_gf2(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) on bit-packed words."""
    m, n = M.shape
    if m == 0 or n == 0:
        return M.astype(np.int64), []
    nbytes = (n + 7) // 8
    nwords = (nbytes + 7) // 8
    bits = np.packbits(np.ascontiguousarray(M, dtype=np.uint8) & 1,
                       axis=1, bitorder="little")
    if nbytes != nwords * 8:
        bits = np.concatenate(
            [bits, np.zeros((m, nwords * 8 - nbytes), np.uint8)], axis=1)
    P = np.ascontiguousarray(bits).view(np.uint64)
    r = 0
    pivots: list[int] = []
    for c in range(n):
        w, b = divmod(c, 64)
        mask = np.uint64(1 << b)
        nz = np.nonzero(P[r:, w] & mask)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            P[[r, pr]] = P[[pr, r]]
        hit = (P[:, w] & mask) != 0
        hit[r] = False
        if hit.any():
            P[hit] ^= P[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    out = np.unpackbits(P.view(np.uint8), axis=1, bitorder="little")[:, :n]
    return out.astype(np.int64), pivots


def _rref_modp(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R = np.mod(np.asarray(M, dtype=np.int64), p)
    m, n = R.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        hit = np.nonzero(R[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            R[hit] = (R[hit] - np.outer(R[hit, c], R[r])) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a dense matrix over Z/p."""
    M = np.atleast_2d(np.asarray(M))
    if p == 2 and sys.byteorder == "little":
        return _rref_gf2(M)
    return _rref_modp(M, p)


# ---------------------------------------------------------------------------
# matrix and subspace containers
# ---------------------------------------------------------------------------

MatrixLike = Union["SparseMatrix", np.ndarray]


class SparseMatrix:
    """Column-major sparse matrix over Z/p.

    Each column is a tuple of (row, value) pairs with strictly increasing
    rows and nonzero values; the representation is canonical, so equality
    is structural.
    """

    __slots__ = ("rows", "cols", "columns", "field")

    def __init__(self, rows: int, cols: int,
                 columns: Sequence[Sequence[tuple[int, int]]],
                 field: PrimeField | int):
        if isinstance(field, int):
            field = PrimeField(field)
        if len(columns) != cols:
            raise DimensionMismatchError(
                f"expected {cols} columns, got {len(columns)}")
        norm = []
        for j, col in enumerate(columns):
            prev = -1
            entries = []
            for row, val in col:
                if not 0 <= row < rows:
                    raise DimensionMismatchError(
                        f"row {row} out of range in column {j}")
                if row <= prev:
                    raise InputFormatError(
                        f"column {j} rows not strictly increasing")
                prev = row
                v = val % field.p
                if v:
                    entries.append((row, v))
            norm.append(tuple(entries))
        self.rows = rows
        self.cols = cols
        self.columns = tuple(norm)
        self.field = field

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    @classmethod
    def from_dense(cls, arr: np.ndarray, field: PrimeField | int) -> "SparseMatrix":
        if isinstance(field, int):
            field = PrimeField(field)
        arr = np.atleast_2d(np.asarray(arr, dtype=np.int64)) % field.p
        cols = []
        for j in range(arr.shape[1]):
            nz = np.nonzero(arr[:, j])[0]
            cols.append([(int(i), int(arr[i, j])) for i in nz])
        return cls(arr.shape[0], arr.shape[1], cols, field)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for j, col in enumerate(self.columns):
            for row, val in col:
                out[row, j] = val
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.field != other.field:
            raise DimensionMismatchError("mixed fields in matmul")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"shape mismatch {self.shape} @ {other.shape}")
        dense = (self.to_dense() @ other.to_dense()) % self.field.p
        return SparseMatrix.from_dense(dense, self.field)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SparseMatrix)
                and self.shape == other.shape
                and self.field == other.field
                and self.columns == other.columns)

    def __repr__(self) -> str:
        return (f"SparseMatrix({self.rows}x{self.cols}, p={self.field.p}, "
                f"nnz={self.nnz})")


def _as_dense(m: MatrixLike, p: int | None) -> tuple[np.ndarray, int]:
    if isinstance(m, SparseMatrix):
        return m.to_dense(), m.field.p
    if p is None:
        raise InputFormatError("field modulus required for ndarray input")
    return np.atleast_2d(np.asarray(m, dtype=np.int64)) % p, p


class Subspace:
    """Subspace of (Z/p)^ambient, basis in reduced column echelon form."""

    __slots__ = ("ambient", "p", "basis", "pivots")

    def __init__(self, ambient: int, p: int, basis: np.ndarray,
                 pivots: tuple[int, ...]):
        basis = np.ascontiguousarray(basis, dtype=np.int64)
        if basis.ndim != 2 or basis.shape[0] != ambient:
            raise DimensionMismatchError(
                f"basis shape {basis.shape} does not match ambient {ambient}")
        basis.flags.writeable = False
        self.ambient = ambient
        self.p = p
        self.basis = basis
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def _reduce_against(self, vecs: np.ndarray) -> np.ndarray:
        """Subtract the projection onto this subspace, pivot by pivot."""
        res = np.array(vecs, dtype=np.int64) % self.p
        for j, prow in enumerate(self.pivots):
            coeff = res[prow] % self.p
            mask = coeff != 0
            if np.any(mask):
                res[:, mask] = (res[:, mask]
                                - np.outer(self.basis[:, j], coeff[mask])) % self.p
        return res

    def contains_vector(self, v: np.ndarray) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(self.ambient, 1)
        return not np.any(self._reduce_against(v))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient or other.p != self.p:
            raise DimensionMismatchError("subspaces in different ambient spaces")
        if other.dim == 0:
            return True
        return not np.any(self._reduce_against(other.basis))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.p == other.p
                and self.basis.shape == other.basis.shape
                and np.array_equal(self.basis, other.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"


def zero_subspace(ambient: int, p: int) -> Subspace:
    return Subspace(ambient, p, np.zeros((ambient, 0), dtype=np.int64), ())


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def rank(m: MatrixLike, p: int | None = None) -> int:
    dense, p = _as_dense(m, p)
    if dense.size == 0:
        return 0
    _, pivots = rref(dense, p)
    return len(pivots)


def image_basis(m: MatrixLike, p: int | None = None) -> Subspace:
    """Canonical echelon basis of the column span."""
    dense, p = _as_dense(m, p)
    ambient = dense.shape[0]
    if dense.size == 0:
        return zero_subspace(ambient, p)
    R, pivots = rref(dense.T, p)
    basis = np.ascontiguousarray(R[: len(pivots)].T)
    return Subspace(ambient, p, basis, tuple(pivots))


def kernel_basis(m: MatrixLike, p: int | None = None) -> Subspace:
    """Canonical echelon basis of the null space (of columns)."""
    dense, p = _as_dense(m, p)
    nrows, ncols = dense.shape
    if ncols == 0:
        return zero_subspace(0, p)
    if nrows == 0:
        return image_basis(np.eye(ncols, dtype=np.int64), p)
    R, pivots = rref(dense, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    K = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, f]) % p
    return image_basis(K, p)


def _check_compatible(u: Subspace, w: Subspace) -> None:
    if u.ambient != w.ambient or u.p != w.p:
        raise DimensionMismatchError(
            f"ambient/field mismatch: ({u.ambient}, p={u.p}) vs "
            f"({w.ambient}, p={w.p})")


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    if u.dim == 0:
        return w
    if w.dim == 0:
        return u
    return image_basis(np.hstack([u.basis, w.basis]), u.p)


def subspace_intersection(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    if u.dim == 0 or w.dim == 0:
        return zero_subspace(u.ambient, u.p)
    stacked = np.hstack([u.basis, w.basis])
    ker = kernel_basis(stacked, u.p)
    if ker.dim == 0:
        return zero_subspace(u.ambient, u.p)
    combos = (u.basis @ ker.basis[: u.dim]) % u.p
    return image_basis(combos, u.p)


def quotient_dim(u: Subspace, w: Subspace) -> int:
    """dim(u / w); w must be contained in u."""
    _check_compatible(u, w)
    if not u.contains(w):
        raise ContainmentError(
            f"quotient denominator (dim {w.dim}) is not contained in the "
            f"numerator (dim {u.dim})")
    return u.dim - w.dim
