import pytest
from hypothesis import given, strategies as st

from hexad import catalog
from hexad.freenil import free_nilpotent
from hexad.lie import JacobiError, LieAlgebra, NotAnIdealError, abelian, direct_sum, heisenberg, quotient, series
from hexad.linalg import Subspace
from hexad.scalar import CycloScalar

coef = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(lambda ab: CycloScalar(6, ab))
F32 = free_nilpotent(3, 2)


def vectors(g):
    return st.lists(coef, min_size=g.dim, max_size=g.dim).map(tuple)


def test_heisenberg_series():
    rep = series(heisenberg(2))
    assert rep.dims == [5, 1, 0]
    assert rep.nilpotency_class == 2
    assert rep.center.dim == 1
    assert rep.generator_count == 4


def test_free_nilpotent_series():
    rep = series(F32)
    assert rep.dims == [5, 3, 2, 0]
    assert rep.nilpotency_class == 3
    assert rep.solvable_length == 2


def test_non_nilpotent_reported():
    sl2 = catalog.get("sl2_adnilpotent_demo").algebra
    rep = series(sl2)
    assert not rep.is_nilpotent
    assert rep.to_json()["nilpotency_class"] == "not nilpotent"


def test_jacobi_violation_rejected():
    # [x1,x2]=x3, [x1,x3]=x1 breaks Jacobi on (x1,x2,x3)? use a known bad table
    with pytest.raises(JacobiError):
        LieAlgebra("bad", 4, 6, {(0, 1): {2: 1}, (2, 3): {0: 1}, (0, 3): {1: 1}})


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        LieAlgebra("x", 2, 6, {(0, 0): {1: 1}})
    with pytest.raises(IndexError):
        LieAlgebra("x", 2, 6, {(0, 1): {5: 1}})
    with pytest.raises(ValueError):
        LieAlgebra("x", 2, 6, {(0, 1): {1: 1}, (1, 0): {1: 1}})


def test_quotient_by_center_of_heisenberg_is_abelian():
    h = heisenberg(1)
    Q, P = quotient(h, h.center())
    assert Q.dim == 2 and Q.is_abelian()
    assert P.rows == 2 and P.cols == 3


def test_quotient_requires_ideal():
    h = heisenberg(1)
    with pytest.raises(NotAnIdealError):
        quotient(h, Subspace.coordinate([0], 3))


def test_json_roundtrip():
    for name in ["heisenberg_2", "N24_mod_I5", "decomposable_C2_zeta12"]:
        g = catalog.get(name).algebra
        h = LieAlgebra.from_json(g.to_json())
        assert h.brackets == g.brackets and h.dim == g.dim and h.field_order == g.field_order


def test_direct_sum_field_mismatch():
    with pytest.raises(ValueError):
        direct_sum(abelian(1, 6), abelian(1, 12))


@given(vectors(F32), vectors(F32), vectors(F32), coef)
def test_bracket_axioms(u, v, w, c):
    b = F32.bracket
    neg = tuple(-x for x in b(v, u))
    assert b(u, v) == neg
    assert b(u, u) == F32.zero()
    jac = [x + y + z for x, y, z in zip(b(u, b(v, w)), b(v, b(w, u)), b(w, b(u, v)))]
    assert all(not x for x in jac)
    lin = b(tuple(c * x + y for x, y in zip(u, w)), v)
    assert lin == tuple(c * x + y for x, y in zip(b(u, v), b(w, v)))


@given(st.integers(1, 3), st.integers(0, 3))
def test_direct_sum_series_adds(m, k):
    g = direct_sum(heisenberg(m), abelian(k))
    rep = series(g)
    assert g.dim == 2 * m + 1 + k
    assert rep.dims == [g.dim, 1, 0]
    assert rep.center.dim == 1 + k


@given(vectors(F32))
def test_ad_matrix_matches_bracket(u):
    A = F32.ad(u)
    for j in range(F32.dim):
        assert A.column(j) == F32.bracket(u, F32.basis_vector(j))
