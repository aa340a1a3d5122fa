from math import lcm

import pytest
from hypothesis import given, strategies as st

from hexad import catalog
from hexad.deriv import (LinearMap, derivation_space, extend_order, inverse_derivation_check, is_member,
                         periodicity, periodic_order, prederivation_space, space_matrices)
from hexad.freenil import free_nilpotent
from hexad.lie import abelian, heisenberg
from hexad.linalg import Matrix, inverse
from hexad.scalar import CycloScalar

from oracles import der_dimension, pder_dimension

RATIONAL = ["heisenberg_1", "heisenberg_2", "N22", "N23", "N24", "N32", "filiform_g1", "filiform_L7",
            "N24_mod_I5"]


@pytest.mark.parametrize("name", RATIONAL)
def test_derivation_dimension_matches_oracle(name):
    g = catalog.get(name).algebra
    assert derivation_space(g).dim == der_dimension(g)


@pytest.mark.parametrize("name", ["heisenberg_1", "N23", "N32", "filiform_g1"])
def test_prederivation_dimension_matches_oracle(name):
    g = catalog.get(name).algebra
    assert prederivation_space(g).dim == pder_dimension(g)


def test_known_dimensions():
    assert derivation_space(heisenberg(1)).dim == 6
    assert derivation_space(abelian(3)).dim == 9
    assert derivation_space(free_nilpotent(3, 2)).dim == 10


def test_heisenberg_witness_is_order_6_derivation():
    e = catalog.get("heisenberg_1")
    D = e.witnesses["periodic_derivation"]
    assert is_member(e.algebra, D)
    cert = periodic_order(D)
    assert cert.order == 6 and cert.replay(D.matrix)


def test_membership_violation_reported():
    g = heisenberg(1)
    D = LinearMap.diagonal(g, [1, 1, 1])
    mem = is_member(g, D)
    assert not mem and mem.violation is not None
    assert is_member(g, D, "prederivation")  # class 2: every map is a prederivation
    assert is_member(g, LinearMap.diagonal(g, [1, 1, 2]))


def test_non_semisimple_not_periodic():
    M = Matrix.from_strings([["1", "1"], ["0", "1"]])
    res = periodicity(M)
    assert res.order is None and res.reason == "non-semisimple"


def test_bound_exhausted():
    M = Matrix.diag([CycloScalar.zeta(12, 1)], 12)
    assert periodicity(M, bound=6).reason == "bound-exhausted"
    assert periodic_order(M).order == 12


def test_inverse_check_on_order_6_witness():
    e = catalog.get("N23")
    D = e.witnesses["periodic_derivation"]
    chk = inverse_derivation_check(e.algebra, D)
    # sixth-root eigenvalues: inverting conjugates each relation a + b = c, so D^-1 stays a derivation
    assert chk and chk.inverse @ D.matrix == Matrix.identity(e.algebra.dim, D.n)
    g = heisenberg(1)
    bad = inverse_derivation_check(g, LinearMap.diagonal(g, [1, 1, 2]))
    assert not bad and bad.membership is not None and not bad.membership
    assert not inverse_derivation_check(g, Matrix.zeros(3, 3))


def test_extend_order():
    e = catalog.get("heisenberg_1")
    D = LinearMap.diagonal(e.algebra, ["1", "w", "1+w"])
    for k in (1, 2, 5):
        E = extend_order(D, k)
        assert is_member(E.algebra if E.n == e.algebra.field_order else _lift(e.algebra, E.n), E)
        assert periodic_order(E).order == 6 * k
    with pytest.raises(ValueError):
        extend_order(D, 0)


def _lift(g, n):
    from hexad.deriv import lift_algebra
    return lift_algebra(g, n)


ints = st.integers(-2, 2)


@given(st.lists(ints, min_size=10, max_size=10), st.lists(ints, min_size=10, max_size=10))
def test_derivations_form_a_lie_subalgebra_inside_pder(a, b):
    g = free_nilpotent(3, 2)
    basis = space_matrices(derivation_space(g), g.dim)
    P = prederivation_space(g)
    D1 = sum((M * c for M, c in zip(basis, a)), Matrix.zeros(g.dim, g.dim))
    D2 = sum((M * c for M, c in zip(basis, b)), Matrix.zeros(g.dim, g.dim))
    for D in (D1, D2, D1 @ D2 - D2 @ D1):
        assert is_member(g, D)
        assert P.contains(D.flatten())


@given(st.lists(st.integers(0, 11), min_size=1, max_size=4))
def test_periodic_order_of_diagonal_roots(ks):
    vals = [CycloScalar.zeta(12, k) for k in ks]
    expected = lcm(*(v.unit_order() for v in vals))
    D = Matrix.diag(vals, 12)
    cert = periodic_order(D)
    assert cert.order == expected and cert.replay(D)


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2), st.integers(-2, 2), st.integers(-2, 2))
def test_periodic_order_conjugation_invariant(ks, a, b):
    vals = [CycloScalar.zeta(6, k) for k in ks]
    D = Matrix.diag(vals, 6)
    P = Matrix([[1, a], [b, 1 + a * b + 1]], 6)
    Pi = inverse(P)
    if Pi is None:
        return
    assert periodic_order(P @ D @ Pi).order == periodic_order(D).order
