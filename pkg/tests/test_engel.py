import pytest
from hypothesis import given, strategies as st

from hexad import catalog
from hexad.engel import (PropertyFWitness, ad_power, ad_power_zero, candidate_pool, em_span_bound,
                         engel_identity, first_coordinate_certificate, pairs_to_choice, pre_engel_witness,
                         property_f_falsify, valid_pair_choice)
from hexad.freenil import free_nilpotent
from hexad.lie import heisenberg
from hexad.linalg import Matrix
from hexad.scalar import CycloScalar

F42 = free_nilpotent(4, 2)
coef = st.integers(-3, 3)


def test_engel_identity_on_free_algebras():
    assert engel_identity(heisenberg(2), 2)
    assert engel_identity(free_nilpotent(3, 2), 3)
    res = engel_identity(free_nilpotent(3, 2), 2)
    assert not res and res.violator is not None
    assert not ad_power_zero(free_nilpotent(3, 2), res.violator, 2)


def test_engel_degree_range():
    with pytest.raises(ValueError):
        engel_identity(heisenberg(1), 0)
    with pytest.raises(ValueError):
        ad_power_zero(heisenberg(1), [1, 0, 0], 0)


def test_pre_engel_needs_invertible_basis():
    h = heisenberg(1)
    with pytest.raises(ValueError):
        pre_engel_witness(h, Matrix.zeros(3, 3), 2)
    assert pre_engel_witness(h, Matrix.identity(3), 2)


def test_sl2_pre_engel_but_not_engel():
    e = catalog.get("sl2_adnilpotent_demo")
    g, B = e.algebra, e.witnesses["pre_engel_basis"]
    assert B == Matrix.from_columns([[1, 0, 0], [0, 1, 0], [1, -1, 1]])
    assert pre_engel_witness(g, B, 3)
    assert not pre_engel_witness(g, B, 2)
    # H is semisimple, so no power of ad(H) vanishes
    assert not ad_power_zero(g, [0, 0, 1], 10)


def test_em_span_bound_filiform():
    g = catalog.get("filiform_L7").algebra
    rep = em_span_bound(g, 4, decide_identity=False)
    assert rep.em_span_lower_bound == g.dim - 1
    assert rep.witness_violator is not None
    cert = first_coordinate_certificate(g, 4)
    assert cert is not None and cert.coefficient != 0


def test_pairs_to_choice_first_match():
    choice = pairs_to_choice(4, [(1, 2), (3, 4), (1, 3)])
    assert choice[(0, 1, 2)] == (0, 1)
    assert choice[(0, 2, 3)] == (2, 3)
    assert (1, 2, 3) in choice and choice[(1, 2, 3)] == (2, 3)


def test_property_f_falsify_examples():
    h = heisenberg(1)
    w = PropertyFWitness(Matrix.identity(3), {(0, 1, 2): (0, 1)})
    assert property_f_falsify(h, w)
    F = free_nilpotent(3, 2)
    bad = PropertyFWitness(Matrix.identity(5), pairs_to_choice(5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3),
                                                                   (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]))
    res = property_f_falsify(F, bad)
    assert not res and res.failing_pair == (0, 1) and any(res.nonzero_bracket)
    with pytest.raises(ValueError):
        property_f_falsify(F, PropertyFWitness(Matrix.identity(5), {}))


@given(st.lists(coef, min_size=F42.dim, max_size=F42.dim), st.integers(1, 5))
def test_ad_power_zero_matches_matrix_power(xs, m):
    assert ad_power_zero(F42, xs, m) == ad_power(F42, xs, m).is_zero()


@given(st.lists(coef, min_size=F42.dim, max_size=F42.dim))
def test_class_bounds_engel_degree(xs):
    assert ad_power_zero(F42, xs, 4)


@given(st.sampled_from(["heisenberg_2", "N32", "N23"]), st.integers(2, 3), st.data())
def test_engel_identity_consistent_with_samples(name, m, data):
    g = catalog.get(name).algebra
    res = engel_identity(g, m)
    xs = data.draw(st.lists(coef, min_size=g.dim, max_size=g.dim))
    if res:
        assert ad_power_zero(g, xs, m)
    else:
        assert not ad_power_zero(g, res.violator, m)


@given(st.sampled_from(["heisenberg_1", "N22", "N32", "filiform_L7"]))
def test_valid_pair_choice_certifies(name):
    g = catalog.get(name).algebra
    w = valid_pair_choice(g, Matrix.identity(g.dim, g.field_order))
    if w is not None:
        assert property_f_falsify(g, w)
    pool = candidate_pool(g)
    assert len(pool) == g.dim + g.dim * (g.dim - 1)
