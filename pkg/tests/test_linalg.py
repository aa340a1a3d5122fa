from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hexad.linalg import Matrix, Subspace, direct_sum_check, inverse, min_poly, nullspace, rank, solve, subspace_ops
from hexad.scalar import CycloScalar, Poly

ZERO, ONE = CycloScalar.zero(6), CycloScalar.one(6)
small = st.integers(-2, 2)
entry = st.tuples(small, small).map(lambda ab: CycloScalar(6, ab))


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entry, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    ).map(lambda e: Matrix(e, 6))


def square(k=st.integers(1, 4)):
    return k.flatmap(lambda n: matrices(st.just(n), st.just(n)))


def realify(M: Matrix) -> sympy.Matrix:
    # a + b z acts on Q^2 (basis 1, z) as [[a, -b], [b, a + b]] since z^2 = z - 1
    out = sympy.zeros(2 * M.rows, 2 * M.cols)
    for i, row in enumerate(M.entries):
        for j, x in enumerate(row):
            a, b = (sympy.Rational(c.numerator, c.denominator) for c in x.coeffs)
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = sympy.Matrix([[a, -b], [b, a + b]])
    return out


def test_from_strings_and_back():
    M = Matrix.from_strings([["1", "w"], ["0", "1+w"]])
    assert Matrix.from_strings(M.to_strings()) == M
    assert M.entries[1][1] == -CycloScalar.omega(6) ** 2


def test_inverse_example():
    M = Matrix.from_strings([["1", "w"], ["0", "1+w"]])
    assert M @ inverse(M) == Matrix.identity(2)
    assert inverse(Matrix.from_strings([["1", "1"], ["1", "1"]])) is None


def test_min_poly_example():
    D = Matrix.diag([ONE, ONE, CycloScalar.omega(6)])
    p = min_poly(D)
    assert p.degree == 2
    assert p(CycloScalar.omega(6)) == ZERO and p(ONE) == ZERO


def test_nullspace_example():
    M = Matrix.from_strings([["1", "w", "0"], ["0", "0", "1"]])
    N = nullspace(M)
    assert N.dim == 1
    v = N.basis[0]
    assert all(x == ZERO for x in M @ v)


def test_subspace_ops_example():
    A = Subspace.coordinate([0, 1], 3)
    B = Subspace.coordinate([1, 2], 3)
    assert subspace_ops(A, B, "sum").dim == 3
    assert subspace_ops(A, B, "intersect").dim == 1
    assert not subspace_ops(A, B, "is_direct")
    assert subspace_ops(A, (ONE, ZERO, ZERO), "member")
    assert direct_sum_check([Subspace.coordinate([0], 3), Subspace.coordinate([1], 3), Subspace.coordinate([2], 3)])
    with pytest.raises(ValueError):
        subspace_ops(A, B, "union")


@given(matrices())
def test_rank_matches_rational_oracle(M):
    assert 2 * rank(M) == realify(M).rank()


@given(matrices())
def test_nullspace_is_kernel(M):
    N = nullspace(M)
    assert N.dim + rank(M) == M.cols
    for v in N.basis:
        assert all(x == ZERO for x in M @ v)


@given(square())
def test_inverse_property(M):
    inv = inverse(M)
    singular = realify(M).det() == 0
    assert (inv is None) == singular
    if inv is not None:
        assert M @ inv == Matrix.identity(M.rows)
        assert inv @ M == Matrix.identity(M.rows)


@given(square())
def test_min_poly_annihilates_and_divides_charpoly(M):
    p = min_poly(M)
    acc = Matrix.zeros(M.rows, M.cols)
    for k, c in enumerate(p.coeffs):
        acc = acc + (M ** k) * c
    assert acc.is_zero()
    assert p.degree <= M.rows
    # realification is a faithful ring map, so the rational charpoly of it also annihilates M
    x = sympy.symbols("x")
    chi = sympy.Poly(realify(M).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    chi = Poly([Fraction(int(c.p), int(c.q)) for c in chi], 6)
    assert chi.divmod(p)[1].is_zero()


@given(matrices(), st.lists(entry, min_size=4, max_size=4))
def test_solve_consistent(M, b):
    b = tuple(b[:M.rows])
    x = solve(M, b)
    aug = Matrix([list(r) + [bi] for r, bi in zip(M.entries, b)], 6)
    assert (x is not None) == (rank(aug) == rank(M))
    if x is not None:
        assert M @ x == b


@given(st.lists(st.lists(entry, min_size=4, max_size=4), max_size=3),
       st.lists(st.lists(entry, min_size=4, max_size=4), max_size=3))
def test_dimension_formula(us, vs):
    A, B = Subspace.span(us, 4, 6), Subspace.span(vs, 4, 6)
    S, I = A + B, A.intersect(B)
    assert S.dim + I.dim == A.dim + B.dim
    assert S.contains_subspace(A) and S.contains_subspace(B)
    assert A.contains_subspace(I) and B.contains_subspace(I)
    assert A.is_direct(B) == (I.dim == 0)


@given(matrices())
def test_flatten_roundtrip(M):
    assert len(M.flatten()) == M.rows * M.cols
    if M.rows == M.cols:
        assert Matrix.unflatten(M.flatten(), M.rows) == M
