import random

import pytest
from fractions import Fraction

from defstab.linalg import (
    CochainComplex, ComplexError, Mat, Subspace,
    cohomology_dim, kernel_basis, quotient_data, rank, rref,
)


def test_rref_identity():
    m = Mat.identity(2)
    R, piv = rref(m)
    assert R == m
    assert piv == (0, 1)


def test_rref_zero():
    m = Mat.zero(3, 3)
    R, piv = rref(m)
    assert R.is_zero()
    assert piv == ()


def test_rref_rank_one():
    # [[1,2],[2,4]] reduces by hand to [[1,2],[0,0]]
    m = Mat.from_rows([[1, 2], [2, 4]])
    R, piv = rref(m)
    assert piv == (0,)
    assert R == Mat.from_rows([[1, 2], [0, 0]])
    assert rank(m) == 1


def test_rank_basic():
    assert rank(Mat.identity(4)) == 4
    assert rank(Mat.zero(2, 5)) == 0


def test_kernel_identity_and_zero():
    assert kernel_basis(Mat.identity(3)).dim == 0
    k = kernel_basis(Mat.zero(2, 3))
    assert k.dim == 3


def test_kernel_rank_one():
    m = Mat.from_rows([[1, 2], [2, 4]])
    k = kernel_basis(m)
    assert k.dim == 1
    v = k.basis.col(0)
    # spans (-2, 1)
    assert v[0] * 1 == v[1] * (-2)
    assert m.apply(v) == (0, 0)


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(25):
        r = rng.randrange(1, 6)
        c = rng.randrange(1, 6)
        m = Mat.from_rows([[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)])
        k = kernel_basis(m)
        assert rank(m) + k.dim == c
        for j in range(k.dim):
            assert all(x == 0 for x in m.apply(k.basis.col(j)))


def test_quotient_data_full_and_zero():
    comp, proj = quotient_data(3, Subspace.full(3))
    assert comp.dim == 0
    assert proj.rows == 0 and proj.cols == 3
    comp, proj = quotient_data(3, Subspace.zero(3))
    assert comp.dim == 3
    assert proj == Mat.identity(3)


def test_quotient_data_diagonal_line():
    s = Subspace.from_vectors(2, [(1, 1)])
    comp, proj = quotient_data(2, s)
    assert comp.dim == 1
    assert proj.apply((1, 1)) == (Fraction(0),)
    assert proj.matmul(comp.basis) == Mat.identity(1)


def test_quotient_data_mismatch():
    with pytest.raises(ValueError):
        quotient_data(4, Subspace.full(3))


def test_quotient_projection_properties_random():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randrange(1, 7)
        d = rng.randrange(0, n + 1)
        vecs = []
        while len(vecs) < d:
            v = [rng.randint(-3, 3) for _ in range(n)]
            try:
                Subspace.from_vectors(n, vecs + [v])
            except ValueError:
                continue
            vecs.append(v)
        s = Subspace.from_vectors(n, vecs) if vecs else Subspace.zero(n)
        comp, proj = quotient_data(n, s)
        assert comp.dim == n - s.dim
        if s.dim:
            assert proj.matmul(s.basis).is_zero()
        if comp.dim:
            assert proj.matmul(comp.basis) == Mat.identity(comp.dim)


def test_cohomology_dim_trivial_cases():
    z3 = Mat.zero(1, 3)
    assert cohomology_dim(Mat.zero(3, 1), z3) == 3


def test_cohomology_dim_exact_middle():
    # 0 -> K -> K^2 -> K -> 0 with d_in = (1,0)^T, d_out = (0,1)
    d_in = Mat.from_rows([[1], [0]])
    d_out = Mat.from_rows([[0, 1]])
    assert cohomology_dim(d_in, d_out) == 0


def test_cohomology_dim_rejects_noncomplex():
    d_in = Mat.from_rows([[1], [0]])
    d_out = Mat.from_rows([[1, 0]])
    with pytest.raises(ComplexError):
        cohomology_dim(d_in, d_out)


def _random_invertible(rng, n):
    # product of unitriangular matrices is invertible by construction
    lower = [[1 if i == j else (rng.randint(-2, 2) if i > j else 0)
              for j in range(n)] for i in range(n)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if i < j else 0)
              for j in range(n)] for i in range(n)]
    return Mat.from_rows(lower).matmul(Mat.from_rows(upper))


def test_cohomology_invariant_under_conjugation():
    rng = random.Random(3)
    for _ in range(10):
        a, b, c = (rng.randrange(1, 8) for _ in range(3))
        d_in = Mat.from_rows([[rng.randint(-2, 2) for _ in range(a)] for _ in range(b)])
        # force a complex: d_out vanishes on the image of d_in
        img = d_in
        full = kernel_basis(img.transpose())  # rows annihilating the image
        d_out_rows = []
        for i in range(c):
            if full.dim:
                d_out_rows.append(full.basis.col(i % full.dim))
            else:
                d_out_rows.append(tuple(Fraction(0) for _ in range(b)))
        d_out = Mat.from_rows(d_out_rows)
        assert d_out.matmul(d_in).is_zero()
        h = cohomology_dim(d_in, d_out)
        P = _random_invertible(rng, a)
        Q = _random_invertible(rng, b)
        Rm = _random_invertible(rng, c)
        # conjugated complex: Q d_in P, R d_out Q^{-1} is awkward exactly;
        # instead change basis on the middle only, which is enough to move
        # every entry: ker/im dims are basis independent.
        Qi_rows, piv = rref(Mat.from_cols([Q.col(j) for j in range(b)] + [Mat.identity(b).col(j) for j in range(b)], rows=b))
        # extract Q^{-1} from [Q | I] -> [I | Q^{-1}]
        Qi = Mat.from_rows([[Qi_rows[i, b + j] for j in range(b)] for i in range(b)])
        d_in2 = Q.matmul(d_in)
        d_out2 = d_out.matmul(Qi)
        assert cohomology_dim(d_in2, d_out2) == h


def test_cochain_complex_validation_and_cohomology():
    d0 = Mat.from_rows([[1], [0]])
    d1 = Mat.from_rows([[0, 1]])
    cx = CochainComplex(dims=(1, 2, 1), diffs=(d0, d1))
    assert cx.cohomology(0) == 0
    assert cx.cohomology(1) == 0
    assert cx.cohomology(2) == 0
    zero = CochainComplex(dims=(2, 3), diffs=(Mat.zero(3, 2),))
    assert zero.cohomology(0) == 2
    assert zero.cohomology(1) == 3
    with pytest.raises(ComplexError):
        CochainComplex(dims=(1, 2, 1), diffs=(d0, Mat.from_rows([[1, 0]])))


def test_subspace_rejects_dependent_columns():
    with pytest.raises(ValueError):
        Subspace.from_vectors(2, [(1, 2), (2, 4)])


def test_subspace_contains():
    s = Subspace.from_vectors(3, [(1, 0, 1), (0, 1, 0)])
    assert s.contains((2, 3, 2))
    assert not s.contains((1, 0, 0))
