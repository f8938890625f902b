"""Associative algebras: the graded bracket on tensor maps, Hochschild
complexes, rigidity, and the unit-normalized subcomplex machinery.

Tensor (k+1)-linear maps V^{k+1} -> V sit in degree k, so multiplications
are degree-1 elements and associativity is the Maurer-Cartan equation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dgla import Bracket, Dgla, DglaSub, Verdict, stability_criterion, twisted_dgla
from .linalg import CochainComplex, Mat, Scalar, Subspace, as_scalar, quotient_data
from .multilinear import TENSOR, MultiMap, mm_eval, parity_sign, tensor_index_tuples, _index_position

_ZERO = Scalar(0)

G_WINDOW = (-1, 3)


class NotAssociative(ValueError):
    """Raised when an operation needs an associative multiplication."""


class MissingUnit(ValueError):
    """Raised when an operation needs a unital algebra."""


@dataclass(frozen=True)
class AssocAlgebra:
    """An associative algebra from a multiplication tensor, optionally unital."""

    dim: int
    m: tuple
    unit: tuple | None = None

    def __post_init__(self):
        n = self.dim
        if len(self.m) != n or any(len(r) != n for r in self.m) or \
           any(len(rr) != n for r in self.m for rr in r):
            raise ValueError("multiplication tensor has the wrong shape")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for t in range(n):
                        s = _ZERO
                        for r in range(n):
                            s += self.m[i][j][r] * self.m[r][k][t]
                            s -= self.m[j][k][r] * self.m[i][r][t]
                        if s != 0:
                            raise NotAssociative(
                                f"associativity fails on basis triple ({i},{j},{k})")
        if self.unit is not None:
            if len(self.unit) != n:
                raise ValueError("unit vector has the wrong dimension")
            for i in range(n):
                e = tuple(Scalar(1) if t == i else _ZERO for t in range(n))
                if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                    raise MissingUnit(f"declared unit does not act as identity on e_{i}")

    @staticmethod
    def from_products(dim: int, entries: dict, unit=None) -> "AssocAlgebra":
        """Build from {(i, j, k): value} meaning e_i e_j = sum value e_k."""
        m = [[[_ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in entries.items():
            m[i][j][k] += as_scalar(v)
        u = tuple(as_scalar(x) for x in unit) if unit is not None else None
        return AssocAlgebra(dim, tuple(tuple(tuple(r) for r in p) for p in m), u)

    def mul_vec(self, u, v) -> tuple:
        n = self.dim
        out = [_ZERO] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                f = u[i] * v[j]
                row = self.m[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += f * row[k]
        return tuple(out)

    def multiplication_map(self) -> MultiMap:
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.m[i][j][k] != 0:
                        entries[(((i, j)), k)] = self.m[i][j][k]
        return MultiMap.from_entries(TENSOR, 2, self.dim, self.dim, entries)


# -- the graded bracket on tensor maps ------------------------------------------

def _insert_terms(A: tuple, p: int, B: tuple, q: int, l: int):
    """Insertion of dx^B (x) e_q into every slot of dx^A (x) e_p, with the
    positional sign (-1)^{i*l}."""
    for i, a in enumerate(A):
        if a == q:
            yield (A[:i] + B + A[i + 1:], p), parity_sign(i * l)


def gerstenhaber_basis_bracket(A: tuple, p: int, B: tuple, q: int,
                               k: int, l: int) -> dict:
    """Bracket of tensor basis maps, normalized like the alternating one:
    [f, g] = (-1)^{kl} (f obar g) - (g obar f), where obar inserts the second
    map into every slot of the first.  With this convention the twist by a
    multiplication equals the Hochschild differential entry-wise."""
    out = {}
    s_kl = parity_sign(k * l)
    for key, s in _insert_terms(A, p, B, q, l):
        out[key] = out.get(key, 0) + s_kl * s
    for key, s in _insert_terms(B, q, A, p, k):
        out[key] = out.get(key, 0) - s
    return {key: v for key, v in out.items() if v != 0}


def gerstenhaber_bracket(a: MultiMap, b: MultiMap) -> MultiMap:
    """Bilinear extension of the basis bracket to tensor maps V^* -> V."""
    if a.flavor != TENSOR or b.flavor != TENSOR:
        raise ValueError("the bracket needs tensor-flavor maps")
    if a.dim_in != b.dim_in or a.dim_out != a.dim_in or b.dim_out != b.dim_in:
        raise ValueError("both maps must be V^k -> V over the same V")
    n = a.dim_in
    k, l = a.arity - 1, b.arity - 1
    entries = {}
    for (A, p), ca in a.items():
        for (B, q), cb in b.items():
            for key, s in gerstenhaber_basis_bracket(A, p, B, q, k, l).items():
                entries[key] = entries.get(key, _ZERO) + ca * cb * s
    return MultiMap.from_entries(TENSOR, a.arity + b.arity - 2, n, n, entries)


def is_assoc(m: MultiMap) -> bool:
    """Whether a bilinear map is associative; both routes are compared."""
    if m.flavor != TENSOR or m.arity != 2 or m.dim_out != m.dim_in:
        raise ValueError("need a bilinear map V^2 -> V")
    n = m.dim_in
    via_bracket = gerstenhaber_bracket(m, m).is_zero()

    def e(i):
        return tuple(Scalar(1) if t == i else _ZERO for t in range(n))

    via_triples = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = mm_eval(m, [mm_eval(m, [e(i), e(j)]), e(k)])
                right = mm_eval(m, [e(i), mm_eval(m, [e(j), e(k)])])
                if left != right:
                    via_triples = False
    if via_bracket != via_triples:
        raise AssertionError("bracket route and associator route disagree")
    return via_triples


# -- the DGLA of a vector space (tensor flavor) ----------------------------------

def gerstenhaber_dims(n: int) -> dict:
    lo, hi = G_WINDOW
    return {d: n ** (d + 1) * n for d in range(lo, hi + 1)}


@lru_cache(maxsize=None)
def gerstenhaber_dgla(n: int) -> Dgla:
    """The graded Lie algebra of tensor maps on K^n with zero differential."""
    dims = gerstenhaber_dims(n)

    def rule(i, j, a, b):
        A = tensor_index_tuples(n, i + 1)[a // n]
        B = tensor_index_tuples(n, j + 1)[b // n]
        p, q = a % n, b % n
        pos = _index_position(TENSOR, n, i + j + 1)
        out = {}
        for (C, r), v in gerstenhaber_basis_bracket(A, p, B, q, i, j).items():
            out[pos[C] * n + r] = v
        return out

    bracket = Bracket(G_WINDOW, dims, rule)
    return Dgla(G_WINDOW, dims, {}, bracket)


def multiplication_vector(A: AssocAlgebra) -> tuple:
    """The multiplication as degree-1 coordinates of the tensor-maps DGLA."""
    return A.multiplication_map().coeffs


@lru_cache(maxsize=None)
def hochschild_dgla(A: AssocAlgebra) -> Dgla:
    """The tensor-maps DGLA twisted by the multiplication of A."""
    return twisted_dgla(gerstenhaber_dgla(A.dim), multiplication_vector(A))


# -- Hochschild complexes --------------------------------------------------------

def hochschild_complex(A: AssocAlgebra, top_degree: int = 3) -> CochainComplex:
    """(Hom(V^{(x) *}, V), d) with bimodule coefficients V, assembled from the
    classical formula

    (df)(x_0..x_k) = x_0 f(x_1..x_k) + sum_{i>=1} (-1)^i f(.., x_{i-1} x_i, ..)
                   + (-1)^{k+1} f(x_0..x_{k-1}) x_k

    on basis cochains; d^2 = 0 is verified exactly.  The same matrices arise
    as the twist of the tensor-maps DGLA by the multiplication, which the
    test suite checks entry-wise.
    """
    n = A.dim
    dims = tuple(n ** k * n for k in range(top_degree + 1))
    diffs = []
    for k in range(top_degree):
        src = tensor_index_tuples(n, k)
        tgt = tensor_index_tuples(n, k + 1)
        rows, cols = dims[k + 1], dims[k]
        data = [[_ZERO] * cols for _ in range(rows)]
        src_pos = {t: i for i, t in enumerate(src)}
        for si, S in enumerate(tgt):
            ti = src_pos[S[1:]]
            for w in range(n):
                # x_0 . f(x_1..x_k)
                col = ti * n + w
                row_m = A.m[S[0]][w]
                for t in range(n):
                    if row_m[t] != 0:
                        data[si * n + t][col] += row_m[t]
            for i in range(1, k + 1):
                head, tail = S[:i - 1], S[i + 1:]
                prod = A.m[S[i - 1]][S[i]]
                sgn = (-1) ** i
                for t in range(n):
                    if prod[t] != 0:
                        ti = src_pos[head + (t,) + tail]
                        for w in range(n):
                            data[si * n + w][ti * n + w] += sgn * prod[t]
            ti = src_pos[S[:-1]]
            sgn = (-1) ** (k + 1)
            for w in range(n):
                # (-1)^{k+1} f(x_0..x_{k-1}) . x_k
                col = ti * n + w
                row_m = A.m[w][S[k]]
                for t in range(n):
                    if row_m[t] != 0:
                        data[si * n + t][col] += sgn * row_m[t]
        diffs.append(Mat(rows, cols, tuple(x for r in data for x in r)))
    return CochainComplex(dims=dims, diffs=tuple(diffs))


def hochschild_twist_agreement(A: AssocAlgebra) -> bool:
    """Whether [m,-] on the tensor-maps DGLA equals the Hochschild matrices."""
    from .dgla import twist_matrix
    g = gerstenhaber_dgla(A.dim)
    mvec = multiplication_vector(A)
    cx = hochschild_complex(A)
    for d in (-1, 0, 1):
        if twist_matrix(g, mvec, d) != cx.diffs[d + 1]:
            return False
    return True


def assoc_rigidity(A: AssocAlgebra) -> Verdict:
    """Rigidity criterion: vanishing of H^2 with bimodule coefficients V."""
    cx = hochschild_complex(A)
    dims = {k: cx.cohomology(k) for k in range(3)}
    return Verdict(criterion="assoc-rigidity",
                   cohomology_dims=dims,
                   tangent_dim=cx.cocycle_dim(1),
                   passes=(dims[2] == 0))


# -- unit-normalized subcomplex ---------------------------------------------------

def _unit_projection(A: AssocAlgebra) -> Mat:
    """The projection V -> V/(K unit) in complement coordinates."""
    if A.unit is None:
        raise MissingUnit("the algebra has no unit")
    span = Subspace.from_vectors(A.dim, [A.unit])
    _, proj = quotient_data(A.dim, span)
    return proj


@lru_cache(maxsize=None)
def normalized_subcomplex(A: AssocAlgebra) -> DglaSub:
    """The subalgebra of cochains killed by plugging the unit anywhere.

    Realized as the pullback of tensor maps along V -> V/(K unit) inside the
    multiplication-twisted DGLA; closure under the twisted differential and
    the bracket is validated exactly on basis tuples.
    """
    if A.unit is None:
        raise MissingUnit("the algebra has no unit")
    parent = hochschild_dgla(A)
    subspaces, membership = _normalized_subspace_data(A.dim, A.unit)
    return DglaSub(parent, dict(subspaces), membership=dict(membership))


def _killed_by_unit_test(n: int, unit: tuple, d: int):
    """Membership in the pullback image: plugging the unit into any slot
    gives zero (the two descriptions agree; adapt coordinates to u)."""
    tuples = tensor_index_tuples(n, d + 1)

    def test(entries: dict) -> bool:
        for j in range(d + 1):
            acc = {}
            for flat, c in entries.items():
                multi = tuples[flat // n]
                uv = unit[multi[j]]
                if uv != 0:
                    key = (multi[:j] + multi[j + 1:], flat % n)
                    acc[key] = acc.get(key, 0) + c * uv
            if any(v != 0 for v in acc.values()):
                return False
        return True
    return test


@lru_cache(maxsize=None)
def _normalized_subspace_data(n: int, unit: tuple):
    """Per (dimension, unit): the normalized subspaces and membership tests.

    These depend only on the unit direction, not on the multiplication, so
    they are shared across all algebras with the same underlying unit.
    """
    span = Subspace.from_vectors(n, [unit])
    _, proj = quotient_data(n, span)
    nq = n - 1
    lo, hi = G_WINDOW
    dims = gerstenhaber_dims(n)
    subspaces = {-1: Subspace.full(n)}
    membership = {d: _killed_by_unit_test(n, unit, d) for d in range(0, hi + 1)}
    for d in range(0, hi + 1):
        arity = d + 1
        cols = []
        pos = _index_position(TENSOR, n, arity)
        for B in tensor_index_tuples(nq, arity):
            # pullback of dy^B: the tensor product of the rows of proj
            partial = {(): Scalar(1)}
            for b in B:
                nxt = {}
                for key, c in partial.items():
                    base = b * n
                    for j in range(n):
                        pv = proj.data[base + j]
                        if pv != 0:
                            k2 = key + (j,)
                            nxt[k2] = nxt.get(k2, _ZERO) + c * pv
                partial = nxt
            for w in range(n):
                col = [_ZERO] * (len(pos) * n)
                for J, c in partial.items():
                    col[pos[J] * n + w] = c
                cols.append(col)
        subspaces[d] = Subspace(dims[d], Mat.from_cols(cols, rows=dims[d]))
    return subspaces, membership


def unitality_stability(A: AssocAlgebra) -> Verdict:
    """H^0 and H^1 of the quotient by the normalized subcomplex.

    Both vanish for every unital associative algebra, which makes unitality
    persist under deformation; the verdict reports the computed dimensions.
    """
    h = normalized_subcomplex(A)
    g = h.parent
    zero = g.zero_vector(1)
    v = stability_criterion(g, h, zero, criterion="unitality-stability")
    return v
