"""Lie algebras: structure constants, the vector-valued form bracket on
wedge powers, Chevalley-Eilenberg complexes, and the rigidity verdict.

The bracket on alternating maps V^k -> V realizes Lie structures on V as
Maurer-Cartan elements of a graded Lie algebra with zero differential; the
degree-k component is the space of alternating (k+1)-linear maps, so V
itself sits in degree -1 and bilinear brackets in degree 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .dgla import Bracket, Dgla, Verdict, twist_matrix
from .linalg import CochainComplex, Mat, Scalar, as_scalar
from .multilinear import (
    ALTERNATING, MultiMap, alt_index_tuples, merge_sign, mm_eval, parity_sign,
    _index_position,
)

_ZERO = Scalar(0)

NR_WINDOW = (-1, 3)


@dataclass(frozen=True)
class LieAlgebra:
    """A Lie algebra given by structure constants mu(e_i, e_j) = sum c[i][j][k] e_k."""

    dim: int
    c: tuple

    def __post_init__(self):
        n = self.dim
        if len(self.c) != n or any(len(r) != n for r in self.c) or \
           any(len(rr) != n for r in self.c for rr in r):
            raise ValueError("structure constant tensor has the wrong shape")
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise ValueError(f"structure constants not antisymmetric at ({i},{j},{k})")
        # Jacobi on increasing triples suffices by trilinearity and antisymmetry
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for t in range(n):
                        s = _ZERO
                        for r in range(n):
                            s += self.c[j][k][r] * self.c[i][r][t]
                            s += self.c[k][i][r] * self.c[j][r][t]
                            s += self.c[i][j][r] * self.c[k][r][t]
                        if s != 0:
                            raise ValueError(f"Jacobi identity fails on basis triple ({i},{j},{k})")

    @staticmethod
    def from_constants(dim: int, entries: dict) -> "LieAlgebra":
        """Build from {(i, j, k): value} for i < j; antisymmetry is filled in."""
        c = [[[_ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in entries.items():
            v = as_scalar(v)
            c[i][j][k] += v
            c[j][i][k] -= v
        return LieAlgebra(dim, tuple(tuple(tuple(r) for r in p) for p in c))

    def bracket_vec(self, u, v) -> tuple:
        n = self.dim
        out = [_ZERO] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                f = u[i] * v[j]
                row = self.c[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += f * row[k]
        return tuple(out)

    def ad(self, i: int) -> Mat:
        """Matrix of [e_i, -]."""
        n = self.dim
        return Mat.from_rows([[self.c[i][j][k] for j in range(n)] for k in range(n)])

    def structure_map(self) -> MultiMap:
        """The bracket as an alternating arity-2 map."""
        entries = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self.c[i][j][k] != 0:
                        entries[((i, j), k)] = self.c[i][j][k]
        return MultiMap.from_entries(ALTERNATING, 2, self.dim, self.dim, entries)


@dataclass(frozen=True)
class Representation:
    """An action rho: V -> End(W) given by one matrix per basis vector of V."""

    algebra: LieAlgebra
    dim: int
    mats: tuple

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.mats) != n:
            raise ValueError("need one action matrix per basis vector")
        for m in self.mats:
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise ValueError("action matrix has the wrong shape")
        for i in range(n):
            for j in range(i + 1, n):
                comm = self.mats[i].matmul(self.mats[j]) - self.mats[j].matmul(self.mats[i])
                rho_br = Mat.zero(self.dim, self.dim)
                for k in range(n):
                    ck = self.algebra.c[i][j][k]
                    if ck != 0:
                        rho_br = rho_br + self.mats[k].scale(ck)
                if comm != rho_br:
                    raise ValueError(f"not a representation: fails on basis pair ({i},{j})")

    def act(self, i: int) -> Mat:
        return self.mats[i]

    def act_vec(self, u, w) -> tuple:
        """rho(u)(w) for coordinate vectors u in V, w in W."""
        out = [_ZERO] * self.dim
        for i, ui in enumerate(u):
            if ui != 0:
                mw = self.mats[i].apply(w)
                for t in range(self.dim):
                    if mw[t] != 0:
                        out[t] += ui * mw[t]
        return tuple(out)


def adjoint_representation(L: LieAlgebra) -> Representation:
    return Representation(L, L.dim, tuple(L.ad(i) for i in range(L.dim)))


def trivial_representation(L: LieAlgebra, dim: int) -> Representation:
    return Representation(L, dim, tuple(Mat.zero(dim, dim) for _ in range(L.dim)))


# -- the graded bracket on alternating maps ------------------------------------

def nr_basis_bracket(A: tuple, p: int, B: tuple, q: int, k: int, l: int) -> dict:
    """Bracket of basis elements dx^A (x) e_p (degree k) and dx^B (x) e_q (degree l).

    Convention fixed so that the induced twist by a Lie structure equals the
    Chevalley-Eilenberg adjoint differential entry-wise in every degree:
    [a (x) v, b (x) w] = (-1)^{kl} (b ^ i_w a) (x) v - (a ^ i_v b) (x) w.
    """
    out = {}
    if q in A:
        pos = A.index(q)
        s, C = merge_sign(B, A[:pos] + A[pos + 1:])
        if s is not None:
            key = (C, p)
            out[key] = out.get(key, 0) + parity_sign(k * l) * parity_sign(pos) * s
    if p in B:
        pos = B.index(p)
        s, C = merge_sign(A, B[:pos] + B[pos + 1:])
        if s is not None:
            key = (C, q)
            out[key] = out.get(key, 0) - parity_sign(pos) * s
    return {key: v for key, v in out.items() if v != 0}


def nr_bracket(a: MultiMap, b: MultiMap) -> MultiMap:
    """Bilinear extension of the basis bracket to alternating maps V^* -> V."""
    if a.flavor != ALTERNATING or b.flavor != ALTERNATING:
        raise ValueError("the bracket needs alternating maps")
    if a.dim_in != b.dim_in or a.dim_out != a.dim_in or b.dim_out != b.dim_in:
        raise ValueError("both maps must be V^k -> V over the same V")
    n = a.dim_in
    k, l = a.arity - 1, b.arity - 1
    entries = {}
    for (A, p), ca in a.items():
        for (B, q), cb in b.items():
            for key, s in nr_basis_bracket(A, p, B, q, k, l).items():
                entries[key] = entries.get(key, _ZERO) + ca * cb * s
    return MultiMap.from_entries(ALTERNATING, a.arity + b.arity - 2, n, n, entries)


def is_lie(c: MultiMap) -> bool:
    """Whether an antisymmetric bilinear map satisfies the Jacobi identity.

    Both routes are computed: vanishing of [c,c] and the basis-triple
    Jacobi sums; they must agree.
    """
    if c.flavor != ALTERNATING or c.arity != 2 or c.dim_out != c.dim_in:
        raise ValueError("need an antisymmetric bilinear map V^2 -> V")
    n = c.dim_in
    via_bracket = nr_bracket(c, c).is_zero()

    def cv(u, v):
        return mm_eval(c, [u, v])

    def e(i):
        return tuple(Scalar(1) if t == i else _ZERO for t in range(n))

    via_triples = True
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                s = [_ZERO] * n
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    w = cv(e(y), e(z))
                    w2 = cv(e(x), w)
                    for t in range(n):
                        s[t] += w2[t]
                if any(v != 0 for v in s):
                    via_triples = False
    if via_bracket != via_triples:
        raise AssertionError("bracket route and Jacobi-triple route disagree")
    return via_triples


# -- the DGLA of a vector space -------------------------------------------------

def nr_dims(n: int) -> dict:
    lo, hi = NR_WINDOW
    return {d: comb(n, d + 1) * n for d in range(lo, hi + 1)}


@lru_cache(maxsize=None)
def nr_dgla(n: int) -> Dgla:
    """The graded Lie algebra of alternating maps on K^n, zero differential.

    Cached per dimension: the bracket does not depend on any Lie structure.
    """
    dims = nr_dims(n)

    def rule(i, j, a, b):
        A = alt_index_tuples(n, i + 1)[a // n]
        B = alt_index_tuples(n, j + 1)[b // n]
        p, q = a % n, b % n
        pos = _index_position(ALTERNATING, n, i + j + 1)
        out = {}
        for (C, r), v in nr_basis_bracket(A, p, B, q, i, j).items():
            out[pos[C] * n + r] = v
        return out

    bracket = Bracket(NR_WINDOW, dims, rule)
    return Dgla(NR_WINDOW, dims, {}, bracket)


def lie_structure_vector(L: LieAlgebra) -> tuple:
    """The structure map as degree-1 coordinates of the alternating-maps DGLA."""
    return L.structure_map().coeffs


# -- Chevalley-Eilenberg complexes ----------------------------------------------

def ce_complex(L: LieAlgebra, rep: Representation, top_degree: int = 3) -> CochainComplex:
    """The complex (Lambda^* V^* (x) W, d) up to cochain degree top_degree.

    d(alpha)(x_0..x_k) = sum_i (-1)^i rho(x_i) alpha(..no x_i..)
                       + sum_{i<j} (-1)^{i+j} alpha([x_i,x_j], ..no x_i, x_j..)
    assembled on basis cochains; d^2 = 0 is verified exactly on construction.
    """
    n, m = L.dim, rep.dim
    dims = tuple(comb(n, k) * m for k in range(top_degree + 1))
    diffs = []
    for k in range(top_degree):
        src = alt_index_tuples(n, k)
        tgt = alt_index_tuples(n, k + 1)
        src_pos = {t: i for i, t in enumerate(src)}
        rows = dims[k + 1]
        cols = dims[k]
        data = [[_ZERO] * cols for _ in range(rows)]
        for ti, T in enumerate(src):
            tset = set(T)
            for w in range(m):
                col = ti * m + w
                for si, S in enumerate(tgt):
                    # rho part: alpha survives when removing one argument leaves T
                    for i in range(k + 1):
                        R = S[:i] + S[i + 1:]
                        if R == T:
                            rw = rep.mats[S[i]].col(w)
                            sgn = (-1) ** i
                            for t in range(m):
                                if rw[t] != 0:
                                    data[si * m + t][col] += sgn * rw[t]
                    # bracket part: alpha([x_i,x_j], rest)
                    for i in range(k + 1):
                        for j in range(i + 1, k + 1):
                            R = tuple(S[t] for t in range(k + 1) if t != i and t != j)
                            rset = set(R)
                            if not rset <= tset:
                                continue
                            ddiff = tset - rset
                            if len(ddiff) != 1:
                                continue
                            t0 = ddiff.pop()
                            uval = L.c[S[i]][S[j]][t0]
                            if uval == 0:
                                continue
                            insert_sign = (-1) ** sum(1 for r in R if r < t0)
                            sgn = (-1) ** (i + j)
                            data[si * m + w][col] += sgn * insert_sign * uval
        diffs.append(Mat(rows, cols, tuple(x for r in data for x in r)))
    return CochainComplex(dims=dims, diffs=tuple(diffs))


def adjoint_twist_agreement(L: LieAlgebra) -> bool:
    """Whether [mu,-] on the alternating-maps DGLA equals the adjoint
    Chevalley-Eilenberg differential, matrix by matrix."""
    g = nr_dgla(L.dim)
    mu = lie_structure_vector(L)
    cx = ce_complex(L, adjoint_representation(L))
    for d in (-1, 0, 1):
        if twist_matrix(g, mu, d) != cx.diffs[d + 1]:
            return False
    return True


def lie_rigidity(L: LieAlgebra) -> Verdict:
    """Rigidity criterion: vanishing of H^2 with adjoint coefficients.

    The tangent data is the derivation algebra, the kernel of d on
    1-cochains.
    """
    cx = ce_complex(L, adjoint_representation(L))
    dims = {k: cx.cohomology(k) for k in range(3)}
    return Verdict(criterion="lie-rigidity",
                   cohomology_dims=dims,
                   tangent_dim=cx.cocycle_dim(1),
                   passes=(dims[2] == 0))
