import pytest
from hypothesis import given, strategies as st

from hexad import catalog
from hexad.deriv import LinearMap, is_member
from hexad.grading import (HexGrading, TriGrading, bracket_target, derivation_to_grading, grading_to_derivation,
                           triangular_to_hexagonal, verify_hexagonal, verify_triangular)
from hexad.lie import abelian, direct_sum, heisenberg
from hexad.linalg import Matrix, Subspace
from hexad.scalar import CycloScalar

GRADED = ["heisenberg_1", "heisenberg_3", "N22", "N23", "N23_mod_x2x3", "N24_mod_x1x2_x3x4", "N25_mod_x1x2_x3x4"]


def test_bracket_target_rule():
    assert bracket_target(0, 2) == 1
    assert bracket_target(2, 4) == 3
    assert bracket_target(4, 0) == 5
    assert bracket_target(0, 1) is None
    assert bracket_target(0, 0) is None


def test_heisenberg_labels():
    h = heisenberg(1)
    assert verify_hexagonal(HexGrading.from_labels(h, [0, 2, 1]))
    bad = verify_hexagonal(HexGrading.from_labels(h, [0, 2, 3]))
    assert not bad and bad.violations
    # closure alone is not enough: odd parts must be central
    odd = verify_hexagonal(HexGrading.from_labels(h, [5, 1, 0]))
    assert not odd and odd.violations[0]["condition"] == "centrality"


def test_parts_must_be_direct():
    h = heisenberg(1)
    overlapping = HexGrading(h, {0: Subspace.coordinate([0, 1], 3), 2: Subspace.coordinate([1], 3),
                                 1: Subspace.coordinate([2], 3)})
    assert not verify_hexagonal(overlapping)


@pytest.mark.parametrize("name", GRADED)
def test_catalog_grading_roundtrip(name):
    e = catalog.get(name)
    h = e.witnesses["hex_grading"]
    gd = grading_to_derivation(h)
    assert gd.order == 6 and not gd.degenerate
    back, _ = derivation_to_grading(e.algebra, gd.map)
    assert back == h


def test_degenerate_abelian_grading_reports_true_order():
    g = abelian(2)
    gd = grading_to_derivation(HexGrading.from_labels(g, [0, 0]))
    assert gd.order == 1 and gd.degenerate
    assert grading_to_derivation(HexGrading.from_labels(g, [3, 0])).order == 2


def test_json_roundtrip():
    e = catalog.get("N23")
    h = e.witnesses["hex_grading"]
    assert HexGrading.from_json(e.algebra, h.to_json()) == h
    with pytest.raises(ValueError):
        HexGrading.from_json(e.algebra, {"parts": {"q^1": []}})


def test_triangular_example():
    h = heisenberg(1)
    w = CycloScalar.omega(6)
    one = CycloScalar.one(6)
    t = TriGrading(h, [(one, Subspace.coordinate([0], 3)), (w, Subspace.coordinate([1], 3)),
                       (one + w, Subspace.coordinate([2], 3))])
    assert verify_triangular(t)
    hx, trace = triangular_to_hexagonal(t)
    assert verify_hexagonal(hx)
    assert sorted(d for d in hx.dims().values() if d) == [1, 1, 1]
    assert trace.to_json()["block_dims"]
    # ratio 2 is not a primitive cube root of unity
    bad = TriGrading(h, [(one, Subspace.coordinate([0], 3)), (2 * one, Subspace.coordinate([1], 3)),
                         (3 * one, Subspace.coordinate([2], 3))])
    rep = verify_triangular(bad)
    assert not rep and rep.violations[0]["condition"] == "ratio"


def heisenberg_labels(m):
    """Random valid labels on h_m: centre at odd c, each pair at c-s, c+s."""
    return st.tuples(st.sampled_from([1, 3, 5]), st.lists(st.sampled_from([1, -1]), min_size=m, max_size=m)).map(
        lambda cs: [(cs[0] - s) % 6 for s in cs[1]] + [(cs[0] + s) % 6 for s in cs[1]] + [cs[0]])


@given(st.integers(1, 3).flatmap(lambda m: st.tuples(st.just(m), heisenberg_labels(m))))
def test_grading_derivation_grading_roundtrip(data):
    m, labels = data
    g = heisenberg(m)
    h = HexGrading.from_labels(g, labels)
    assert verify_hexagonal(h)
    gd = grading_to_derivation(h)
    assert is_member(g, gd.map) and gd.order == 6
    back, _ = derivation_to_grading(g, gd.map)
    assert back == h


@given(st.just(1).flatmap(lambda m: st.tuples(st.just(m), heisenberg_labels(m))),
       st.lists(st.integers(0, 5), min_size=1, max_size=2))
def test_direct_sum_with_abelian_grading(data, extra):
    m, labels = data
    g = direct_sum(heisenberg(m), abelian(len(extra)))
    h = HexGrading.from_labels(g, labels + extra)
    assert verify_hexagonal(h)
    back, _ = derivation_to_grading(g, grading_to_derivation(h).map)
    assert back == h


@given(st.integers(0, 5), st.sampled_from([1, 2]), st.integers(1, 3))
def test_triangular_scaled_labels_convert(k, power, scale):
    h = heisenberg(1)
    c = CycloScalar.zeta(6, k) * scale
    w = CycloScalar.omega(6) ** power
    t = TriGrading(h, [(c, Subspace.coordinate([0], 3)), (c * w, Subspace.coordinate([1], 3)),
                       (c * (1 + w), Subspace.coordinate([2], 3))])
    assert verify_triangular(t)
    hx, _ = triangular_to_hexagonal(t)
    assert verify_hexagonal(hx)
    D = grading_to_derivation(hx)
    assert D.order == 6
