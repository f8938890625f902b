"""Generic finite-dimensional differential graded Lie algebras.

A Dgla stores graded components over a degree window, differential matrices
and a sparse graded bracket.  The constructor verifies the axioms exactly
(d^2 = 0, graded skew-symmetry, graded Leibniz, graded Jacobi) on every
basis tuple whose degrees stay inside the window; degrees below the window
are zero spaces, degrees above it are not represented.

Everything obstruction-related is exact rational arithmetic.  The gauge
flows are the only floating-point operations (matrix exponentials have no
exact representation) and live at the bottom of this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np
from scipy.linalg import expm

from .linalg import ComplexError, Mat, Scalar, Subspace, cohomology_dim, quotient_data, rank
from .multilinear import parity_sign

_ZERO = Scalar(0)
_HALF = Fraction(1, 2)


class DglaError(ValueError):
    """Raised when supplied data violates the DGLA axioms."""


class NotMaurerCartan(ValueError):
    """Raised when an operation requires an exactly Maurer-Cartan element."""


class Bracket:
    """Sparse graded bracket: per degree pair, rows of structure constants.

    The row for basis elements (a, b) of degrees (i, j) is a mapping
    {output_index: coefficient} in degree i+j.  Rows are produced lazily by
    a rule function and cached; the axioms are checked once per Bracket
    object by the first Dgla constructed on it.
    """

    def __init__(self, window, dims: Mapping[int, int],
                 rule: Callable[[int, int, int, int], Mapping[int, object]]):
        self.window = window
        self.dims = dict(dims)
        self._rule = rule
        self._tables = {}
        self.axioms_checked = False

    @staticmethod
    def from_tables(window, dims, tables) -> "Bracket":
        def rule(i, j, a, b):
            return tables.get((i, j), {}).get((a, b), {})
        return Bracket(window, dims, rule)

    def stored_pairs(self):
        lo, hi = self.window
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                if lo <= i + j <= hi:
                    yield (i, j)

    def table(self, i: int, j: int) -> dict:
        key = (i, j)
        if key not in self._tables:
            lo, hi = self.window
            if not (lo <= i + j <= hi):
                raise KeyError(f"bracket pair {key} falls outside the window")
            tab = {}
            for a in range(self.dims.get(i, 0)):
                for b in range(self.dims.get(j, 0)):
                    row = {c: v for c, v in self._rule(i, j, a, b).items() if v != 0}
                    if row:
                        tab[(a, b)] = row
            self._tables[key] = tab
        return self._tables[key]

    def row(self, i: int, j: int, a: int, b: int) -> dict:
        lo, hi = self.window
        if i + j < lo:
            return {}
        return self.table(i, j).get((a, b), {})

    def apply(self, i: int, j: int, x, y):
        """[x, y] for coordinate vectors x in g^i, y in g^j; generic arithmetic."""
        lo, hi = self.window
        if i + j < lo:
            return ()
        if i + j > hi:
            raise ValueError(f"bracket of degrees {i},{j} leaves the window")
        out = [0] * self.dims.get(i + j, 0)
        tab = self.table(i, j)
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                row = tab.get((a, b))
                if row:
                    f = xa * yb
                    for c, co in row.items():
                        out[c] += f * co
        return tuple(out)


@dataclass(frozen=True)
class Verdict:
    """Result of a cohomological criterion check."""

    criterion: str
    cohomology_dims: dict
    tangent_dim: int
    passes: bool


class Dgla:
    """A validated differential graded Lie algebra over a degree window."""

    def __init__(self, window, dims: Mapping[int, int], diff: Mapping[int, Mat],
                 bracket: Bracket, _trusted_diff: bool = False):
        lo, hi = window
        if not (lo <= 0 and hi >= 2):
            raise DglaError("window must contain degrees 0, 1, 2")
        self.window = (lo, hi)
        self.dims = {i: int(dims.get(i, 0)) for i in range(lo, hi + 1)}
        self.diff = {}
        for i in range(lo, hi):
            d = diff.get(i)
            if d is None:
                d = Mat.zero(self.dims[i + 1], self.dims[i])
            if (d.rows, d.cols) != (self.dims[i + 1], self.dims[i]):
                raise DglaError(f"differential at degree {i} has the wrong shape")
            self.diff[i] = d
        self.bracket = bracket
        if bracket.window != self.window or any(
                bracket.dims.get(i, 0) != self.dims[i] for i in range(lo, hi + 1)):
            raise DglaError("bracket metadata does not match the algebra")
        if not _trusted_diff:
            self._check_d_squared()
        if not bracket.axioms_checked:
            self._check_skew()
            self._check_jacobi()
            bracket.axioms_checked = True
        if not _trusted_diff:
            self._check_leibniz()

    # -- basic accessors -------------------------------------------------------
    def dim(self, i: int) -> int:
        lo, hi = self.window
        if i < lo:
            return 0
        if i > hi:
            raise ValueError(f"degree {i} outside the window")
        return self.dims[i]

    def diff_matrix(self, i: int) -> Mat:
        lo, hi = self.window
        if i < lo:
            return Mat.zero(self.dim(i + 1) if i + 1 >= lo else 0, 0)
        if i >= hi:
            raise ValueError(f"no differential out of degree {i} in the window")
        return self.diff[i]

    def zero_vector(self, i: int) -> tuple:
        return (_ZERO,) * self.dim(i)

    def bracket_apply(self, i: int, j: int, x, y):
        return self.bracket.apply(i, j, x, y)

    def ad_matrix(self, x, deg_x: int, j: int) -> Mat:
        """Exact matrix of [x, -]: g^j -> g^{deg_x + j}."""
        lo, hi = self.window
        tgt = deg_x + j
        cols = self.dim(j)
        if tgt < lo:
            return Mat.zero(0, cols)
        if tgt > hi:
            raise ValueError("ad target degree leaves the window")
        rows = self.dim(tgt)
        data = [_ZERO] * (rows * cols)
        for (a, b), row in self.bracket.table(deg_x, j).items():
            xa = x[a]
            if xa != 0:
                for c, co in row.items():
                    data[c * cols + b] += xa * co
        return Mat(rows, cols, tuple(data))

    # -- validation -------------------------------------------------------------
    def _check_d_squared(self):
        lo, hi = self.window
        for i in range(lo, hi - 1):
            if not self.diff[i + 1].matmul(self.diff[i]).is_zero():
                raise DglaError(f"d^2 != 0 out of degree {i}")

    def _zero_diff(self) -> bool:
        return all(d.is_zero() for d in self.diff.values())

    def _check_skew(self):
        lo, hi = self.window
        for i in range(lo, hi + 1):
            for j in range(i, hi + 1):
                if not (lo <= i + j <= hi):
                    continue
                tab = self.bracket.table(i, j)
                opp = self.bracket.table(j, i)
                sign = -parity_sign(i * j)
                keys = set(tab) | {(b, a) for (a, b) in opp}
                for (a, b) in keys:
                    row = tab.get((a, b), {})
                    orow = opp.get((b, a), {})
                    cs = set(row) | set(orow)
                    for c in cs:
                        if row.get(c, 0) != sign * orow.get(c, 0):
                            raise DglaError(
                                f"bracket is not graded skew at degrees ({i},{j}), "
                                f"basis ({a},{b})")

    def _jacobi_index_iter(self, i, j, k):
        di, dj, dk = self.dim(i), self.dim(j), self.dim(k)
        if i == j == k:
            for a in range(di):
                for b in range(a, dj):
                    for c in range(b, dk):
                        yield a, b, c
        elif i == j:
            for a in range(di):
                for b in range(a, dj):
                    for c in range(dk):
                        yield a, b, c
        elif j == k:
            for a in range(di):
                for b in range(dj):
                    for c in range(b, dk):
                        yield a, b, c
        else:
            for a in range(di):
                for b in range(dj):
                    for c in range(dk):
                        yield a, b, c

    def _check_jacobi(self):
        """[[x,y],z] = [x,[y,z]] - (-1)^{|x||y|}[y,[x,z]] on basis tuples.

        Degree-sorted tuples suffice given skew-symmetry; within equal
        degrees index-sorted tuples suffice for the same reason.
        """
        lo, hi = self.window
        br = self.bracket

        def get(p, q, a, b):
            if p + q < lo:
                return None
            return br.table(p, q).get((a, b))

        degs = [d for d in range(lo, hi + 1) if self.dim(d)]
        for ii, i in enumerate(degs):
            for jj in range(ii, len(degs)):
                j = degs[jj]
                for kk in range(jj, len(degs)):
                    k = degs[kk]
                    sums = (i + j, j + k, i + k, i + j + k)
                    if any(s > hi for s in sums):
                        continue
                    sgn = parity_sign(i * j)
                    for a, b, c in self._jacobi_index_iter(i, j, k):
                        acc = {}
                        r = get(i, j, a, b)
                        if r:
                            for d, co in r.items():
                                r2 = get(i + j, k, d, c)
                                if r2:
                                    for e, co2 in r2.items():
                                        acc[e] = acc.get(e, 0) + co * co2
                        r = get(j, k, b, c)
                        if r:
                            for d, co in r.items():
                                r2 = get(i, j + k, a, d)
                                if r2:
                                    for e, co2 in r2.items():
                                        acc[e] = acc.get(e, 0) - co * co2
                        r = get(i, k, a, c)
                        if r:
                            for d, co in r.items():
                                r2 = get(j, i + k, b, d)
                                if r2:
                                    for e, co2 in r2.items():
                                        acc[e] = acc.get(e, 0) + sgn * co * co2
                        if any(v != 0 for v in acc.values()):
                            raise DglaError(
                                f"graded Jacobi fails at degrees ({i},{j},{k}), "
                                f"basis ({a},{b},{c})")

    def _check_leibniz(self):
        """d[x,y] = [dx,y] + (-1)^{|x|}[x,dy] on basis pairs."""
        if self._zero_diff():
            return
        lo, hi = self.window
        br = self.bracket
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                if not (lo <= i + j <= hi - 1):
                    continue
                if i + 1 > hi or j + 1 > hi:
                    continue
                if self.dim(i) == 0 or self.dim(j) == 0:
                    continue
                d_ij = self.diff[i + j]
                d_i, d_j = self.diff[i], self.diff[j]
                tab_up_i = br.table(i + 1, j)
                tab_up_j = br.table(i, j + 1)
                tab = br.table(i, j)
                sgn = parity_sign(i)
                for a in range(self.dim(i)):
                    da = d_i.col(a)
                    for b in range(self.dim(j)):
                        acc = {}
                        row = tab.get((a, b))
                        if row:
                            for c, co in row.items():
                                col = d_ij.col(c)
                                for e, v in enumerate(col):
                                    if v != 0:
                                        acc[e] = acc.get(e, 0) + co * v
                        for ap, v in enumerate(da):
                            if v != 0:
                                r = tab_up_i.get((ap, b))
                                if r:
                                    for e, co in r.items():
                                        acc[e] = acc.get(e, 0) - v * co
                        db = d_j.col(b)
                        for bp, v in enumerate(db):
                            if v != 0:
                                r = tab_up_j.get((a, bp))
                                if r:
                                    for e, co in r.items():
                                        acc[e] = acc.get(e, 0) - sgn * v * co
                        if any(x != 0 for x in acc.values()):
                            raise DglaError(
                                f"graded Leibniz fails at degrees ({i},{j}), "
                                f"basis ({a},{b})")


# -- Maurer-Cartan machinery (exact) ------------------------------------------

def mc_curvature(g: Dgla, q):
    """dQ + 1/2 [Q,Q] in degree 2; exact for exact input, float for float."""
    if len(q) != g.dim(1):
        raise ValueError("element does not have degree-1 dimension")
    d = g.diff_matrix(1).apply(q)
    bb = g.bracket_apply(1, 1, q, q)
    return tuple(a + _HALF * b for a, b in zip(d, bb))


def is_mc(g: Dgla, q) -> bool:
    return all(x == 0 for x in mc_curvature(g, q))


def twist_matrix(g: Dgla, q, i: int) -> Mat:
    """Matrix of d + [q,-] on degree i (into degree i+1)."""
    ad = g.ad_matrix(q, 1, i)
    d = g.diff_matrix(i)
    return ad if d.is_zero() else d + ad


def twist(g: Dgla, q) -> dict:
    """All in-window matrices of d + [q,-]; composites are checked to vanish."""
    if not is_mc(g, q):
        raise NotMaurerCartan("twisting requires an exact Maurer-Cartan element")
    lo, hi = g.window
    out = {i: twist_matrix(g, q, i) for i in range(lo, hi)}
    for i in range(lo, hi - 1):
        if not out[i + 1].matmul(out[i]).is_zero():
            raise ComplexError(f"twisted differential fails d^2 = 0 at degree {i}")
    return out


def twisted_dgla(g: Dgla, q) -> Dgla:
    """The DGLA with differential d + [q,-] and the same bracket.

    The axioms of the twisted structure follow from the validated ones once
    the curvature of q vanishes exactly: (d+[q,-])^2 = [curvature, -] and
    Leibniz for d+[q,-] is an instance of graded Jacobi.
    """
    if not is_mc(g, q):
        raise NotMaurerCartan("cannot twist by a non-Maurer-Cartan element")
    lo, hi = g.window
    diff = {i: twist_matrix(g, q, i) for i in range(lo, hi)}
    return Dgla(g.window, g.dims, diff, g.bracket, _trusted_diff=True)


class DglaSub:
    """A differential graded Lie subalgebra with deterministic splittings.

    Closure under the differential and the bracket is verified exactly on
    basis tuples at construction.  Splittings (complement plus projection)
    are computed per degree on demand from the row-reduced subspace basis.
    """

    def __init__(self, parent: Dgla, subspaces: Mapping[int, Subspace],
                 membership: Mapping[int, Callable] | None = None):
        lo, hi = parent.window
        self.parent = parent
        self.subspaces = {}
        for i in range(lo, hi + 1):
            s = subspaces.get(i)
            if s is None:
                s = Subspace.zero(parent.dim(i))
            if s.ambient_dim != parent.dim(i):
                raise DglaError(f"subspace at degree {i} has the wrong ambient dimension")
            self.subspaces[i] = s
        self._membership = dict(membership) if membership else {}
        self._splittings = {}
        self._reducers = {}
        self._check_closure()

    def dim(self, i: int) -> int:
        lo, hi = self.parent.window
        if i < lo:
            return 0
        return self.subspaces[i].dim

    def codim(self, i: int) -> int:
        return self.parent.dim(i) - self.dim(i)

    def contains(self, i: int, vec) -> bool:
        lo, hi = self.parent.window
        if i < lo:
            return True
        test = self._membership.get(i)
        if test is not None:
            return test({k: v for k, v in enumerate(vec) if v != 0})
        return self._reducer(i).reduces_to_zero(vec)

    def _contains_sparse(self, i: int, entries: dict) -> bool:
        lo, hi = self.parent.window
        if i < lo:
            return True
        test = self._membership.get(i)
        if test is not None:
            return test(entries)
        vec = [0] * self.parent.dim(i)
        for k, v in entries.items():
            vec[k] = v
        return self._reducer(i).reduces_to_zero(vec)

    def _reducer(self, i: int):
        if i not in self._reducers:
            from .linalg import _reducer
            self._reducers[i] = _reducer(self.subspaces[i].basis)
        return self._reducers[i]

    def splitting(self, i: int):
        """(complement, projection) for g^i = h^i + complement."""
        if i not in self._splittings:
            self._splittings[i] = quotient_data(self.parent.dim(i), self.subspaces[i])
        return self._splittings[i]

    def _sparse_cols(self, i: int):
        basis = self.subspaces[i].basis
        return [[(t, v) for t, v in enumerate(basis.col(c)) if v != 0]
                for c in range(basis.cols)]

    def _check_closure(self):
        g = self.parent
        lo, hi = g.window
        for i in range(lo, hi):
            d = g.diff[i]
            dcols = None
            for ucol in self._sparse_cols(i):
                if dcols is None:
                    dcols = [[] for _ in range(d.cols)]
                    for idx, v in enumerate(d.data):
                        if v != 0:
                            dcols[idx % d.cols].append((idx // d.cols, v))
                acc = {}
                for t, v in ucol:
                    for r, dv in dcols[t]:
                        acc[r] = acc.get(r, 0) + v * dv
                if not self._contains_sparse(i + 1, acc):
                    raise DglaError(f"subspace is not closed under d at degree {i}")
        for i in range(lo, hi + 1):
            for j in range(i, hi + 1):
                if not (lo <= i + j <= hi):
                    continue
                cols_i, cols_j = self._sparse_cols(i), self._sparse_cols(j)
                if not cols_i or not cols_j:
                    continue
                tab = g.bracket.table(i, j)
                for ucol in cols_i:
                    for wcol in cols_j:
                        acc = {}
                        for a, ua in ucol:
                            for b, wb in wcol:
                                row = tab.get((a, b))
                                if row:
                                    f = ua * wb
                                    for c, co in row.items():
                                        acc[c] = acc.get(c, 0) + f * co
                        if not self._contains_sparse(i + j, acc):
                            raise DglaError(
                                f"subspace is not closed under the bracket at "
                                f"degrees ({i},{j})")


def quotient_complex(g: Dgla, h: DglaSub, q) -> tuple:
    """Induced matrices of d + [q,-] on g/h in degrees 0 -> 1 -> 2.

    Requires q in h^1 and Maurer-Cartan, so that d + [q,-] descends.
    """
    if h.parent is not g:
        raise DglaError("subalgebra does not belong to this algebra")
    if not is_mc(g, q):
        raise NotMaurerCartan("quotient complex requires a Maurer-Cartan element")
    if not h.contains(1, q):
        raise DglaError("the base element must lie in the subalgebra")
    mats = []
    for i in (0, 1):
        comp, _ = h.splitting(i)
        _, proj_next = h.splitting(i + 1)
        t = twist_matrix(g, q, i)
        mats.append(proj_next.matmul(t.matmul(comp.basis)))
    d0, d1 = mats
    if not d1.matmul(d0).is_zero():
        raise ComplexError("quotient differential fails d^2 = 0")
    return d0, d1


def stability_criterion(g: Dgla, h: DglaSub, q, criterion: str = "mc-stability") -> Verdict:
    """H^0 and H^1 of the quotient complex; passes iff H^1 vanishes."""
    d0, d1 = quotient_complex(g, h, q)
    h0 = d0.cols - rank(d0)
    h1 = cohomology_dim(d0, d1)
    return Verdict(criterion=criterion,
                   cohomology_dims={0: h0, 1: h1},
                   tangent_dim=h0,
                   passes=(h1 == 0))


# -- floating-point gauge flows ------------------------------------------------

def to_float(vec) -> np.ndarray:
    return np.array([float(x) for x in vec], dtype=float)


def mat_float(m: Mat) -> np.ndarray:
    if m.rows == 0 or m.cols == 0:
        return np.zeros((m.rows, m.cols))
    return np.array([[float(m[i, j]) for j in range(m.cols)]
                     for i in range(m.rows)], dtype=float)


def ad_float(g: Dgla, x, deg_x: int, j: int) -> np.ndarray:
    """Float matrix of [x, -]: g^j -> g^{deg_x + j}."""
    lo, hi = g.window
    tgt = deg_x + j
    rows = g.dim(tgt) if tgt >= lo else 0
    out = np.zeros((rows, g.dim(j)))
    if rows == 0:
        return out
    tab = g.bracket.table(deg_x, j)
    for (a, b), row in tab.items():
        xa = float(x[a])
        if xa != 0.0:
            for c, co in row.items():
                out[c, b] += xa * float(co)
    return out


def gauge_flow(g: Dgla, q, x) -> np.ndarray:
    """Time-1 gauge action of x in g^0 on q in g^1, by the closed formula.

    Q^x = exp(-A) q + phi(-A) dx with A = [x,-] on g^1 and
    phi(z) = (e^z - 1)/z; phi(-A) is read off the top-right block of the
    exponential of the 2n x 2n matrix [[-A, I], [0, 0]].
    """
    qf = to_float(q)
    xf = to_float(x)
    n = g.dim(1)
    A = ad_float(g, xf, 0, 1)
    dx = mat_float(g.diff_matrix(0)) @ xf
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = -A
    block[:n, n:] = np.eye(n)
    eb = expm(block)
    result = eb[:n, :n] @ qf + eb[:n, n:] @ dx
    if not np.all(np.isfinite(result)):
        raise FloatingPointError("gauge flow produced non-finite values")
    return result


def gauge_flow_ode(g: Dgla, q, x, steps: int = 1000) -> np.ndarray:
    """Classical RK4 integration of dQ/dt = dx - [x, Q_t] from t=0 to t=1."""
    if steps < 1:
        raise ValueError("need at least one step")
    qf = to_float(q)
    xf = to_float(x)
    A = ad_float(g, xf, 0, 1)
    dx = mat_float(g.diff_matrix(0)) @ xf
    f = lambda v: dx - A @ v
    hstep = 1.0 / steps
    v = qf
    for _ in range(steps):
        k1 = f(v)
        k2 = f(v + 0.5 * hstep * k1)
        k3 = f(v + 0.5 * hstep * k2)
        k4 = f(v + hstep * k3)
        v = v + (hstep / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(v)):
            raise FloatingPointError("gauge ODE state became non-finite")
    return v


def mc_curvature_float(g: Dgla, q) -> np.ndarray:
    qf = to_float(q)
    d = mat_float(g.diff_matrix(1)) @ qf
    n2 = g.dim(2)
    bb = np.zeros(n2)
    tab = g.bracket.table(1, 1)
    for (a, b), row in tab.items():
        f = qf[a] * qf[b]
        if f != 0.0:
            for c, co in row.items():
                bb[c] += f * float(co)
    return d + 0.5 * bb
