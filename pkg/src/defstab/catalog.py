"""Standard small algebras used by the test suite and the bundled corpus."""
from __future__ import annotations

from fractions import Fraction

from .assoc import AssocAlgebra
from .lie import LieAlgebra
from .linalg import Mat, Subspace


def so3() -> LieAlgebra:
    return LieAlgebra.from_constants(3, {
        (0, 1, 2): 1, (0, 2, 1): -1, (1, 2, 0): 1,
    })


def sl2() -> LieAlgebra:
    # basis h, e, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra.from_constants(3, {
        (0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1,
    })


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_constants(n, {})


def heisenberg3() -> LieAlgebra:
    # [x, y] = z central
    return LieAlgebra.from_constants(3, {(0, 1, 2): 1})


def gl(n: int) -> LieAlgebra:
    """gl_n with the commutator bracket on the E_ij basis (row-major)."""
    def idx(i, j):
        return i * n + j
    entries = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    a, b = idx(i, j), idx(k, l)
                    if a >= b:
                        continue
                    # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
                    if j == k:
                        entries[(a, b, idx(i, l))] = entries.get((a, b, idx(i, l)), 0) + 1
                    if l == i:
                        entries[(a, b, idx(k, j))] = entries.get((a, b, idx(k, j)), 0) - 1
    return LieAlgebra.from_constants(n * n, {k: v for k, v in entries.items() if v})


def sl2_borel_subspace() -> Subspace:
    """span{h, e} inside sl2."""
    return Subspace.from_vectors(3, [(1, 0, 0), (0, 1, 0)])


def field_algebra() -> AssocAlgebra:
    return AssocAlgebra.from_products(1, {(0, 0, 0): 1}, unit=(1,))


def dual_numbers() -> AssocAlgebra:
    # K[x]/(x^2) on basis 1, x
    return AssocAlgebra.from_products(2, {
        (0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
    }, unit=(1, 0))


def matrix_algebra(n: int) -> AssocAlgebra:
    """M_n(K) on the E_ij basis (row-major), with its unit."""
    def idx(i, j):
        return i * n + j
    prods = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        prods[(idx(i, j), idx(k, l), idx(i, l))] = 1
    unit = [Fraction(0)] * (n * n)
    for i in range(n):
        unit[idx(i, i)] = Fraction(1)
    return AssocAlgebra.from_products(n * n, prods, unit=tuple(unit))


def product_fields(n: int) -> AssocAlgebra:
    """K x ... x K with coordinate-wise multiplication."""
    prods = {(i, i, i): 1 for i in range(n)}
    return AssocAlgebra.from_products(n, prods, unit=tuple(Fraction(1) for _ in range(n)))


def truncated_polynomials(n: int) -> AssocAlgebra:
    """K[x]/(x^n) on the basis 1, x, .., x^{n-1}."""
    prods = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                prods[(i, j, i + j)] = 1
    unit = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(n))
    return AssocAlgebra.from_products(n, prods, unit=unit)
