import copy

import pytest

from hexad import catalog
from hexad.catalog import CatalogError, UnknownEntryError, load_witness


def test_index_and_metadata():
    names = catalog.names()
    assert len(names) == len(set(names)) == 28
    meta = {m["name"]: m for m in catalog.list_entries()}
    assert set(meta) == set(names)
    assert meta["N24_mod_I5"]["dim"] == 7


def test_unknown_entry():
    with pytest.raises(UnknownEntryError):
        catalog.get("N99")
    with pytest.raises(KeyError):
        catalog.get("")


@pytest.mark.parametrize("name", catalog.names())
def test_expected_values(name):
    e = catalog.get(name)
    bad = [c.to_json() for c in e.check_expected() if not c.ok]
    assert not bad


def test_witness_orders():
    assert catalog.get("N23").witness_order("periodic_derivation") == 6
    assert catalog.get("decomposable_C2_zeta12").witness_order("periodic_derivation") == 12
    assert catalog.get("N32").witness_order("periodic_prederivation") == 6


def _tampered(name, key, mutate):
    e = catalog.get(name)
    raw = copy.deepcopy(e.raw_witnesses[key])
    mutate(raw)
    return e.algebra, raw


def test_tampered_map_rejected():
    g, raw = _tampered("N23", "periodic_derivation", lambda w: w.update(order=3))
    with pytest.raises(CatalogError):
        load_witness(g, "periodic_derivation", raw)


def test_tampered_grading_rejected():
    def swap(w):
        parts = w["parts"]
        keys = sorted(parts)
        parts[keys[0]], parts[keys[1]] = parts[keys[1]], parts[keys[0]]
    g, raw = _tampered("heisenberg_1", "hex_grading", swap)
    with pytest.raises(CatalogError):
        load_witness(g, "hex_grading", raw)


def test_tampered_obstruction_rejected():
    g, raw = _tampered("N24_mod_I5", "obstruction", lambda w: w.update(status="SAT"))
    with pytest.raises(CatalogError):
        load_witness(g, "obstruction", raw)
    g, raw = _tampered("N24_mod_I5", "obstruction", lambda w: w.update(positions=list(range(7))))
    with pytest.raises(CatalogError):
        load_witness(g, "obstruction", raw)


def test_untouched_witness_loads():
    e = catalog.get("N24_mod_I5")
    ob = load_witness(e.algebra, "obstruction", copy.deepcopy(e.raw_witnesses["obstruction"]))
    assert ob.status == "UNSAT"
    with pytest.raises(CatalogError):
        load_witness(e.algebra, "mystery", {})


def test_entry_json():
    data = catalog.get("heisenberg_1").to_json()
    assert data["name"] == "heisenberg_1"
    assert "periodic_derivation" in data["witnesses"]
