from math import lcm

import pytest
from hypothesis import given, strategies as st

from hexad import catalog
from hexad.lie import heisenberg
from hexad.scalar import CycloScalar, unit_order
from hexad.units import (SAT, UNKNOWN, UNSAT, UnitSystem, eigenform_family_check, equilateral_lemma_holds,
                         oracle_enumerate, parse_form, replay, solve_units, triangle_bound)

NAMES = ("a", "b", "g")


def evaluate(form, values):
    acc = values[0] * 0
    for c, v in zip(form, values):
        acc = acc + v * c
    return acc


def test_parse_form():
    assert parse_form("2b-a", NAMES) == (-1, 2, 0)
    assert parse_form("a + 2*g - b", NAMES) == (1, -1, 2)
    assert parse_form("x10-x1", ["x1", "x10"]) == (-1, 1)
    with pytest.raises(ValueError):
        parse_form("a+q", NAMES)
    with pytest.raises(ValueError):
        parse_form("", NAMES)


def test_system_normalization():
    s = UnitSystem(["a", "b"], [[1, 1], [1, 1], [1, 0]])
    assert s.forms == ((1, 1), (0, 1), (1, 0))
    assert UnitSystem.from_json(s.to_json()) == s
    assert s.form_str((2, -1)) == "2a-b"
    with pytest.raises(ValueError):
        UnitSystem(["a", "b"], [[1]])


def test_heisenberg_system_sat():
    v = solve_units(UnitSystem.from_strings(["a", "b"], ["a+b"]))
    assert v.status == SAT and replay(v)
    vals = v.witness_values()
    assert all(unit_order(evaluate(f, vals)) for f in v.system.forms)


def test_four_scalar_obstruction():
    forms = [[1 if t in (i, j) else 0 for t in range(4)] for i in range(4) for j in range(i + 1, 4)]
    s = UnitSystem(["a1", "a2", "a3", "a4"], forms)
    v = solve_units(s)
    assert v.status == UNSAT and replay(v)
    assert all(oracle_enumerate(s, m).status == UNSAT for m in (6, 12))


def test_triangle_rule():
    assert triangle_bound((3, 1, 0)) == 2
    assert triangle_bound((2, 1, 0)) is None
    assert triangle_bound((0, 0, 0)) == 0
    v = solve_units(UnitSystem.from_strings(NAMES, ["a+b", "3a+b"]))
    assert v.status == UNSAT and v.certificate[0]["rule"] == "TRIANGLE"


def test_disconnected_system_unknown():
    assert solve_units(UnitSystem.from_strings(NAMES, ["a+b+g"])).status == SAT
    # no two-variable form links the variables and no mu_6 point works, so the solver abstains
    v = solve_units(UnitSystem.from_strings(NAMES, ["2a+2b+2g"]))
    assert v.status == UNKNOWN and not replay(v)
    assert all(oracle_enumerate(v.system, m).status == UNSAT for m in (6, 12))


def test_catalog_obstructions_replay():
    for name in ["N24", "N25", "N24_mod_I5", "filiform_g2"]:
        ob = catalog.get(name).witnesses["obstruction"]
        v = solve_units(ob.system)
        assert v.status == UNSAT and replay(v)
        assert oracle_enumerate(ob.system, 12).status == UNSAT


def test_tampered_certificate_rejected():
    v = solve_units(UnitSystem.from_strings(NAMES, ["a+b", "3a+b"]))
    assert replay(v)
    v.certificate[0]["lower_bound"] = 5
    assert not replay(v)


def test_equilateral_lemma():
    assert all(equilateral_lemma_holds(m) for m in range(1, 31))


def test_family_check():
    h = heisenberg(1)
    ok = eigenform_family_check(h, [(1, 0), (0, 1), (1, 1)])
    assert ok and ok.samples == 50
    assert not eigenform_family_check(h, [(1, 0), (0, 1), (1, -1)])
    assert eigenform_family_check(h, [(1, 1), (1, 0), (0, 1)], positions=[1, 2, 0])
    with pytest.raises(ValueError):
        eigenform_family_check(h, [(1, 0), (0, 1), (1, 1)], positions=[0, 0, 1])


def test_oracle_guard():
    with pytest.raises(ValueError):
        oracle_enumerate(UnitSystem(["a"], [[1]]), 0)


coeff = st.sampled_from([-2, -1, -1, 0, 1, 1, 2])
systems = st.integers(1, 3).flatmap(
    lambda k: st.lists(st.lists(coeff, min_size=k, max_size=k).filter(any), min_size=1, max_size=4).map(
        lambda fs: UnitSystem(NAMES[:k], fs)))


@given(systems)
def test_solver_agrees_with_enumeration(s):
    v = solve_units(s)
    assert replay(v) == (v.status != UNKNOWN)
    if v.status == SAT:
        vals = v.witness_values()
        assert all(unit_order(evaluate(f, vals)) is not None for f in s.forms)
        assert oracle_enumerate(s, 6).status == SAT
    elif v.status == UNSAT:
        for m in range(1, 13):
            assert oracle_enumerate(s, m).status == UNSAT
    else:
        assert v.status == UNKNOWN


@given(systems, st.integers(1, 8))
def test_normalized_oracle_matches_full_scan(s, m):
    assert oracle_enumerate(s, m).status == oracle_enumerate(s, m, normalize=False).status


@given(systems, st.integers(1, 12))
def test_oracle_witness_is_a_solution(s, m):
    res = oracle_enumerate(s, m)
    if res.status == SAT:
        L = lcm(m, 6)
        vals = [CycloScalar.zeta(L, (L // m) * res.witness[n]) for n in s.var_names]
        for f in s.forms:
            u = unit_order(evaluate(f, vals))
            assert u is not None and m % u == 0
