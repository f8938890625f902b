"""Exact rational dense linear algebra.

Everything here is computed over Q with fractions.Fraction entries: row
reduction, rank, kernel and complement bases, and cohomology dimensions of
complexes whose composites are verified to vanish exactly.  No floating
point is used anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ComplexError(ValueError):
    """Raised when matrices fed as a complex do not compose to zero."""


def as_scalar(x) -> Fraction:
    """Coerce int, Fraction or a rational string like '3/4' to a Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class Mat:
    """Dense matrix of Scalars, row-major."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return Mat(r, c, tuple(as_scalar(x) for row in rows for x in row))

    @staticmethod
    def from_cols(cols: Sequence[Sequence], rows: int | None = None) -> "Mat":
        c = len(cols)
        r = len(cols[0]) if c else rows
        if r is None:
            raise ValueError("row count needed for a matrix with no columns")
        return Mat(r, c, tuple(as_scalar(cols[j][i]) for i in range(r) for j in range(c)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, (_ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.data[i * self.cols + j]
                         for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.data)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols,
                   tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols,
                   tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-a for a in self.data))

    def scale(self, s) -> "Mat":
        s = as_scalar(s)
        return Mat(self.rows, self.cols, tuple(s * a for a in self.data))

    def matmul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            base = i * self.cols
            row_out = out[i]
            for k in range(self.cols):
                a = self.data[base + k]
                if a == 0:
                    continue
                obase = k * other.cols
                for j in range(other.cols):
                    b = other.data[obase + j]
                    if b != 0:
                        row_out[j] += a * b
        return Mat(self.rows, other.cols, tuple(x for row in out for x in row))

    def __matmul__(self, other):
        if isinstance(other, Mat):
            return self.matmul(other)
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times coordinate vector; cost scales with nnz(vec)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [_ZERO] * self.rows
        data = self.data
        cols = self.cols
        for j, v in enumerate(vec):
            if v != 0:
                for i in range(self.rows):
                    a = data[i * cols + j]
                    if a != 0:
                        out[i] += a * v
        return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n given by a basis matrix whose columns span it."""

    ambient_dim: int
    basis: Mat

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows do not match ambient dimension")
        if rank(self.basis) != self.basis.cols:
            raise ValueError("basis columns are linearly dependent")

    @property
    def dim(self) -> int:
        return self.basis.cols

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Mat.zero(ambient_dim, 0))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Mat.identity(ambient_dim))

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        cols = [tuple(as_scalar(x) for x in v) for v in vectors]
        return Subspace(ambient_dim, Mat.from_cols(cols, rows=ambient_dim))

    def contains(self, vec: Sequence) -> bool:
        """Exact membership test by reducing against the basis."""
        red = _reducer(self.basis)
        return red.reduces_to_zero(vec)


class _reducer:
    """Row-echelon data of basis^T for repeated membership tests."""

    def __init__(self, basis: Mat):
        R, pivots = rref(basis.transpose())
        self.rows = [R.row(i) for i in range(len(pivots))]
        self.pivots = pivots

    def reduces_to_zero(self, vec: Sequence) -> bool:
        v = list(vec)
        for r, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                for j, rj in enumerate(r):
                    if rj != 0:
                        v[j] -= c * rj
        return all(x == 0 for x in v)


def rref(m: Mat) -> tuple:
    """Reduced row-echelon form and the ordered pivot column indices.

    Pivot choice is the first row with a nonzero entry in column order,
    which keeps the output deterministic.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    pr = 0
    for pc in range(m.cols):
        pivot_row = None
        for i in range(pr, m.rows):
            if rows[i][pc] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        pv = rows[pr][pc]
        if pv != 1:
            inv = 1 / pv
            rows[pr] = [x * inv for x in rows[pr]]
        prow = rows[pr]
        for i in range(m.rows):
            if i == pr:
                continue
            f = rows[i][pc]
            if f != 0:
                ri = rows[i]
                for j in range(pc, m.cols):
                    if prow[j] != 0:
                        ri[j] -= f * prow[j]
        pivots.append(pc)
        pr += 1
        if pr == m.rows:
            break
    return Mat(m.rows, m.cols, tuple(x for row in rows for x in row)), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> Subspace:
    """Basis of ker(m) as a Subspace of the column coordinate space."""
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        cols.append(v)
    return Subspace(m.cols, Mat.from_cols(cols, rows=m.cols))


def image_basis(m: Mat) -> Subspace:
    """Basis of the column space: the pivot columns of m."""
    _, pivots = rref(m)
    return Subspace(m.rows, Mat.from_cols([m.col(p) for p in pivots], rows=m.rows))


def quotient_data(ambient_dim: int, s: Subspace) -> tuple:
    """A complement to s and the projection onto complement coordinates.

    The complement is spanned by the standard basis vectors at the non-pivot
    coordinates of the row-reduced basis, so the splitting is deterministic.
    The projection P satisfies P @ s.basis = 0 and P @ complement.basis = I.
    """
    if s.ambient_dim != ambient_dim:
        raise ValueError("subspace does not live in the given ambient space")
    R, pivots = rref(s.basis.transpose())
    pivset = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    comp_cols = []
    for f in free:
        v = [_ZERO] * ambient_dim
        v[f] = _ONE
        comp_cols.append(v)
    complement = Subspace(ambient_dim, Mat.from_cols(comp_cols, rows=ambient_dim))
    proj_rows = []
    for f in free:
        row = [_ZERO] * ambient_dim
        row[f] = _ONE
        for i, p in enumerate(pivots):
            row[p] = -R[i, f]
        proj_rows.append(row)
    projection = (Mat.from_rows(proj_rows) if proj_rows
                  else Mat.zero(0, ambient_dim))
    return complement, projection


def cohomology_dim(d_in: Mat, d_out: Mat) -> int:
    """dim ker(d_out) - rank(d_in) for a two-step complex d_in, d_out."""
    if d_in.rows != d_out.cols:
        raise ValueError("middle dimensions of the complex do not match")
    if not d_out.matmul(d_in).is_zero():
        raise ComplexError("d_out @ d_in is not zero")
    return (d_out.cols - rank(d_out)) - rank(d_in)


@dataclass(frozen=True)
class CochainComplex:
    """A finite complex: spaces of the given dims, differentials between them.

    diffs[k] maps degree k to degree k+1; all composites are checked to be
    exactly zero at construction.
    """

    dims: tuple
    diffs: tuple

    def __post_init__(self):
        if len(self.diffs) != len(self.dims) - 1:
            raise ValueError("need exactly one differential per adjacent pair")
        for k, d in enumerate(self.diffs):
            if (d.rows, d.cols) != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"differential {k} has the wrong shape")
        for k in range(len(self.diffs) - 1):
            if not self.diffs[k + 1].matmul(self.diffs[k]).is_zero():
                raise ComplexError(f"d{k + 1} @ d{k} is not zero")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def differential(self, k: int) -> Mat:
        return self.diffs[k]

    def cohomology(self, k: int) -> int:
        """dim H^k, treating the complex as zero outside its window."""
        if not 0 <= k <= self.top_degree:
            raise ValueError("degree outside the complex")
        kin = rank(self.diffs[k - 1]) if k >= 1 else 0
        if k <= len(self.diffs) - 1:
            kdim = self.dims[k] - rank(self.diffs[k])
        else:
            kdim = self.dims[k]
        return kdim - kin

    def cocycle_dim(self, k: int) -> int:
        if k <= len(self.diffs) - 1:
            return self.dims[k] - rank(self.diffs[k])
        return self.dims[k]
