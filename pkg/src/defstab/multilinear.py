"""Multilinear maps V^k -> W over canonical coordinate bases.

Two flavors are supported: alternating maps (coefficients stored on strictly
increasing input multi-indices) and full tensor maps (all k-tuples).  The
flat coordinate order is lexicographic multi-index first, output index last,
and flatten/unflatten are exact mutual inverses for that order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .linalg import Mat, Scalar, as_scalar

ALTERNATING = "alternating"
TENSOR = "tensor"

_ZERO = Scalar(0)


def parity_sign(e: int) -> int:
    """(-1)**e as an exact int, valid for negative exponents too."""
    return -1 if e & 1 else 1


@lru_cache(maxsize=None)
def alt_index_tuples(n: int, k: int) -> tuple:
    """Strictly increasing k-tuples from range(n), lexicographic."""
    return tuple(itertools.combinations(range(n), k))

@lru_cache(maxsize=None)
def tensor_index_tuples(n: int, k: int) -> tuple:
    """All k-tuples from range(n), lexicographic."""
    return tuple(itertools.product(range(n), repeat=k))

@lru_cache(maxsize=None)
def _index_position(flavor: str, n: int, k: int) -> dict:
    tuples = alt_index_tuples(n, k) if flavor == ALTERNATING else tensor_index_tuples(n, k)
    return {t: i for i, t in enumerate(tuples)}


def space_dim(flavor: str, arity: int, dim_in: int, dim_out: int) -> int:
    if flavor == ALTERNATING:
        return comb(dim_in, arity) * dim_out
    return dim_in ** arity * dim_out


def merge_sign(a: tuple, b: tuple):
    """Koszul sign for sorting the concatenation of two increasing tuples.

    Returns (sign, merged) or (None, None) when the tuples overlap.
    """
    sign = 1
    merged = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None, None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


def removal_sign(a: tuple, idx: int) -> tuple:
    """Interior-product sign and remaining tuple when deleting a[idx]."""
    return (-1) ** idx, a[:idx] + a[idx + 1:]


@dataclass(frozen=True)
class MultiMap:
    """A k-linear map K^dim_in x ... x K^dim_in -> K^dim_out."""

    flavor: str
    arity: int
    dim_in: int
    dim_out: int
    coeffs: tuple

    def __post_init__(self):
        if self.flavor not in (ALTERNATING, TENSOR):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        expected = space_dim(self.flavor, self.arity, self.dim_in, self.dim_out)
        if len(self.coeffs) != expected:
            raise ValueError(f"expected {expected} coefficients, got {len(self.coeffs)}")

    # -- canonical indexing ---------------------------------------------------
    def index_tuples(self) -> tuple:
        if self.flavor == ALTERNATING:
            return alt_index_tuples(self.dim_in, self.arity)
        return tensor_index_tuples(self.dim_in, self.arity)

    def coeff(self, multi: tuple, out: int) -> Scalar:
        pos = _index_position(self.flavor, self.dim_in, self.arity)[multi]
        return self.coeffs[pos * self.dim_out + out]

    def items(self):
        """Yield ((multi_index, out_index), coeff) over nonzero coefficients."""
        tuples = self.index_tuples()
        m = self.dim_out
        for flat, c in enumerate(self.coeffs):
            if c != 0:
                yield (tuples[flat // m], flat % m), c

    @staticmethod
    def zero(flavor: str, arity: int, dim_in: int, dim_out: int) -> "MultiMap":
        return MultiMap(flavor, arity, dim_in, dim_out,
                        (_ZERO,) * space_dim(flavor, arity, dim_in, dim_out))

    @staticmethod
    def from_entries(flavor: str, arity: int, dim_in: int, dim_out: int,
                     entries: dict) -> "MultiMap":
        """Build from {(multi_index, out_index): coeff}; indices canonical."""
        pos = _index_position(flavor, dim_in, arity)
        co = [_ZERO] * space_dim(flavor, arity, dim_in, dim_out)
        for (multi, out), c in entries.items():
            co[pos[multi] * dim_out + out] += as_scalar(c)
        return MultiMap(flavor, arity, dim_in, dim_out, tuple(co))

    @staticmethod
    def basis_element(flavor: str, arity: int, dim_in: int, dim_out: int,
                      multi: tuple, out: int) -> "MultiMap":
        return MultiMap.from_entries(flavor, arity, dim_in, dim_out, {(multi, out): 1})

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._check_same_space(other)
        return MultiMap(self.flavor, self.arity, self.dim_in, self.dim_out,
                        tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        self._check_same_space(other)
        return MultiMap(self.flavor, self.arity, self.dim_in, self.dim_out,
                        tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "MultiMap":
        s = as_scalar(s)
        return MultiMap(self.flavor, self.arity, self.dim_in, self.dim_out,
                        tuple(s * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check_same_space(self, other: "MultiMap"):
        if (self.flavor, self.arity, self.dim_in, self.dim_out) != \
           (other.flavor, other.arity, other.dim_in, other.dim_out):
            raise ValueError("maps live in different spaces")


def _det(rows) -> Scalar:
    """Determinant of a small list-of-lists by expansion (k <= 4 in practice)."""
    k = len(rows)
    if k == 0:
        return Scalar(1)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = _ZERO
    for j in range(k):
        a = rows[0][j]
        if a == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def mm_eval(m: MultiMap, args) -> tuple:
    """Evaluate on coordinate vectors; multilinear, alternating per flavor."""
    if len(args) != m.arity:
        raise ValueError(f"expected {m.arity} arguments, got {len(args)}")
    for a in args:
        if len(a) != m.dim_in:
            raise ValueError("argument has the wrong dimension")
    out = [_ZERO] * m.dim_out
    if m.flavor == TENSOR:
        for (multi, o), c in m.items():
            prod = c
            for pos, idx in enumerate(multi):
                v = args[pos][idx]
                if v == 0:
                    prod = _ZERO
                    break
                prod = prod * v
            if prod != 0:
                out[o] += prod
    else:
        for (multi, o), c in m.items():
            rows = [[args[j][i] for j in range(m.arity)] for i in multi]
            d = _det(rows)
            if d != 0:
                out[o] += c * d
    return tuple(out)


def insert(m: MultiMap, v) -> MultiMap:
    """Plug v into the first argument; arity drops by one."""
    if m.arity < 1:
        raise ValueError("cannot insert into an arity-0 map")
    v = tuple(as_scalar(x) for x in v)
    if len(v) != m.dim_in:
        raise ValueError("vector has the wrong dimension")
    entries = {}
    if m.flavor == TENSOR:
        for (multi, o), c in m.items():
            val = v[multi[0]]
            if val != 0:
                key = (multi[1:], o)
                entries[key] = entries.get(key, _ZERO) + c * val
    else:
        for (multi, o), c in m.items():
            for pos, idx in enumerate(multi):
                val = v[idx]
                if val != 0:
                    s, rest = removal_sign(multi, pos)
                    key = (rest, o)
                    entries[key] = entries.get(key, _ZERO) + s * c * val
    return MultiMap.from_entries(m.flavor, m.arity - 1, m.dim_in, m.dim_out, entries)


def wedge(a: MultiMap, b: MultiMap) -> MultiMap:
    """Shuffle-sum wedge of a scalar-valued alternating form with b."""
    if a.flavor != ALTERNATING or b.flavor != ALTERNATING:
        raise ValueError("wedge needs alternating maps")
    if a.dim_out != 1:
        raise ValueError("first factor must be scalar valued")
    if a.dim_in != b.dim_in:
        raise ValueError("different underlying spaces")
    entries = {}
    for (am, _), ca in a.items():
        for (bm, o), cb in b.items():
            s, merged = merge_sign(am, bm)
            if s is None:
                continue
            key = (merged, o)
            entries[key] = entries.get(key, _ZERO) + s * ca * cb
    return MultiMap.from_entries(ALTERNATING, a.arity + b.arity, a.dim_in, b.dim_out, entries)


def pullback(m: MultiMap, p: Mat) -> MultiMap:
    """Precompose every argument with p: result(x_1..x_k) = m(p x_1,..,p x_k)."""
    if p.rows != m.dim_in:
        raise ValueError("matrix target does not match the map's input space")
    new_in = p.cols
    entries = {}
    if m.flavor == TENSOR:
        for (multi, o), c in m.items():
            # expand the product of rows p[i_t, :]
            partial = {(): c}
            for idx in multi:
                nxt = {}
                base = idx * p.cols
                for key, coeff in partial.items():
                    for j in range(new_in):
                        pv = p.data[base + j]
                        if pv != 0:
                            k2 = key + (j,)
                            nxt[k2] = nxt.get(k2, _ZERO) + coeff * pv
                partial = nxt
            for key, coeff in partial.items():
                k2 = (key, o)
                entries[k2] = entries.get(k2, _ZERO) + coeff
    else:
        k = m.arity
        minors = {}
        for (multi, o), c in m.items():
            for newm in alt_index_tuples(new_in, k):
                mk = (multi, newm)
                if mk not in minors:
                    minors[mk] = _det([[p[i, j] for j in newm] for i in multi])
                d = minors[mk]
                if d != 0:
                    key = (newm, o)
                    entries[key] = entries.get(key, _ZERO) + c * d
    return MultiMap.from_entries(m.flavor, m.arity, new_in, m.dim_out, entries)


def flatten(m: MultiMap) -> tuple:
    """Flat coordinates: lexicographic multi-index, then output index."""
    return m.coeffs


def unflatten(flavor: str, arity: int, dim_in: int, dim_out: int, vec) -> MultiMap:
    vec = tuple(as_scalar(x) for x in vec)
    return MultiMap(flavor, arity, dim_in, dim_out, vec)
