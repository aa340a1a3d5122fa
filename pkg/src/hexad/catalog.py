"""Named algebras with stored witnesses that are re-verified on load."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import lcm
from typing import Any

from .deriv import LinearMap, is_member, periodicity, prederivation_space, space_matrices
from .engel import (PropertyFWitness, em_span_bound, engel_identity, first_coordinate_certificate,
                    pairs_to_choice, pre_engel_witness, property_f_falsify, valid_pair_choice)
from .freenil import (FreePresentation, free_nilpotent, generator_count_of, pair_vector, partition_search,
                      presentation_to_grading)
from .grading import HexGrading, verify_hexagonal
from .lie import LieAlgebra, nilpotency_class, series
from .linalg import Matrix, Subspace
from .scalar import CycloScalar
from .units import UnitSystem, eigenform_family_check, parse_form, replay, solve_units

MAP_WITNESSES = ("periodic_derivation", "periodic_derivation_integral", "periodic_prederivation")
INPUT_KEYS = ("listed_property_f_pairs", "listed_forms")


class CatalogError(ValueError):
    pass


class UnknownEntryError(KeyError):
    pass


@dataclass
class ObstructionWitness:
    system: UnitSystem
    kind: str
    status: str
    positions: list[int] | None
    forms_text: list[str] | None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "status": self.status, **self.system.to_json()}
        if self.positions is not None:
            out["positions"] = self.positions
        return out


@dataclass
class IdealWitness:
    free: LieAlgebra
    ideal: Subspace
    pairs: list[tuple[int, int]]


@dataclass
class ExpectedCheck:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass
class CatalogEntry:
    name: str
    description: str
    algebra: LieAlgebra
    witnesses: dict[str, Any]
    expected: dict[str, Any]
    raw_witnesses: dict[str, dict] = field(default_factory=dict)

    def metadata(self) -> dict:
        return {"name": self.name, "dim": self.algebra.dim, "field_order": self.algebra.field_order,
                "description": self.description, "witnesses": sorted(self.witnesses)}

    def witness_order(self, key: str) -> int | None:
        w = self.witnesses.get(key)
        if w is None:
            return None
        return periodicity(w).order

    def check_expected(self) -> list[ExpectedCheck]:
        return [ExpectedCheck(k, v, _evaluate(self, k, v)) for k, v in self.expected.items()
                if k not in INPUT_KEYS]

    def to_json(self) -> dict:
        return {**self.metadata(), "algebra": self.algebra.to_json(), "expected": self.expected,
                "witness_files": self.raw_witnesses}


def _root():
    return resources.files("hexad") / "data" / "catalog"


def entry_dir(name: str):
    """Directory holding an entry's algebra, expected values and witness files."""
    return _root() / name


def names() -> list[str]:
    return json.loads((_root() / "index.json").read_text())


def list_entries() -> list[dict]:
    """Metadata of every entry in catalog order; each entry is validated."""
    return [get(n).metadata() for n in names()]


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name not in names():
        raise UnknownEntryError(f"unknown catalog entry {name!r}")
    base = _root() / name
    data = json.loads((base / "algebra.json").read_text())
    g = LieAlgebra.from_json(data)
    expected = json.loads((base / "expected.json").read_text())
    raw = {}
    wdir = base / "witnesses"
    if wdir.is_dir():
        for f in sorted(wdir.iterdir(), key=lambda p: p.name):
            if f.name.endswith(".json"):
                raw[f.name[:-5]] = json.loads(f.read_text())
    witnesses = {k: load_witness(g, k, w) for k, w in raw.items()}
    return CatalogEntry(name, data.get("description", ""), g, witnesses, expected, raw)


# -- witness loading and verification --------------------------------------

def load_witness(g: LieAlgebra, key: str, w: dict):
    """Parse a witness by its file key and re-verify every claim it makes; raises CatalogError."""
    try:
        if key in MAP_WITNESSES:
            return _load_map(g, key, w)
        if key == "hex_grading":
            h = HexGrading.from_json(g, w)
            rep = verify_hexagonal(h)
            if not rep:
                raise CatalogError(f"grading fails: {rep.violations[0]}")
            return h
        if key == "presentation":
            p = FreePresentation.from_json(w)
            Q, h, _ = presentation_to_grading(p)
            if Q.dim != g.dim or not verify_hexagonal(h):
                raise CatalogError("presentation quotient does not match the algebra")
            return p
        if key.startswith("obstruction"):
            return _load_obstruction(g, w)
        if key == "prederivation_family":
            s = UnitSystem(w["vars"], w["forms"], add_variables=False)
            if not eigenform_family_check(g, w["forms"], w["kind"]):
                raise CatalogError("eigenvalue family is not a family of maps of the stated kind")
            return s
        if key == "pre_engel_basis":
            B = Matrix.from_strings(w["basis"], g.field_order)
            if bool(pre_engel_witness(g, B, int(w["m"]))) != bool(w["holds"]):
                raise CatalogError("pre-Engel claim does not re-verify")
            return B
        if key == "property_f_witness":
            B = Matrix.from_strings(w["basis"], g.field_order)
            choice = {tuple(a - 1 for a in p["triple"]): tuple(a - 1 for a in p["pair"]) for p in w["pairs"]}
            pf = PropertyFWitness(B, choice)
            if not property_f_falsify(g, pf):
                raise CatalogError("property F falsification witness fails")
            return pf
        if key == "ideal":
            return _load_ideal(w)
    except CatalogError as e:
        raise CatalogError(f"{g.name}/{key}: {e}") from None
    raise CatalogError(f"{g.name}: unknown witness type {key!r}")


def _load_map(g: LieAlgebra, key: str, w: dict) -> LinearMap:
    M = LinearMap.from_json(g, w)
    kind = w.get("kind", "prederivation" if "prederivation" in key else "derivation")
    mem = is_member(g, M, kind)
    if not mem:
        raise CatalogError(f"map is not a {kind}: {mem.to_json()}")
    per = periodicity(M)
    if per.order is None or ("order" in w and per.order != int(w["order"])):
        raise CatalogError(f"stated order {w.get('order')} but found {per.to_json()}")
    if not per.certificate.replay(M.matrix):
        raise CatalogError("periodicity certificate does not replay")
    if kind == "derivation" and not g.is_abelian() and per.order % 6:
        raise CatalogError(f"periodic derivation of a nonabelian algebra has order {per.order}")
    if kind == "prederivation" and M.matrix.is_diagonal():
        if not pre_engel_witness(g, Matrix.identity(g.dim, g.field_order), 4):
            raise CatalogError("eigenbasis of a periodic prederivation is not ad-nilpotent of degree 4")
    return M


def _load_obstruction(g: LieAlgebra, w: dict) -> ObstructionWitness:
    s = UnitSystem(w["vars"], w["forms"])
    v = solve_units(s)
    if v.status != w["status"] or not replay(v):
        raise CatalogError(f"solver gives {v.status}, stated {w['status']}")
    positions = w.get("positions")
    if positions is not None:
        fam = eigenform_family_check(g, w["forms"], w["kind"], positions=positions)
        if not fam:
            raise CatalogError(f"eigenvalue family fails at sample {fam.failing_sample}")
    return ObstructionWitness(s, w["kind"], w["status"], positions, w.get("forms_text"))


def _load_ideal(w: dict) -> IdealWitness:
    gens = int(w["generators"])
    F = free_nilpotent(int(w.get("class", 2)), gens)
    pairs = [tuple(p) for p in w.get("pairs", [])]
    vecs = [pair_vector(gens, i - 1, j - 1) for i, j in pairs]
    for terms in w.get("sums", []):
        acc = [CycloScalar.zero(6)] * F.dim
        for i, j in terms:
            acc = [a + b for a, b in zip(acc, pair_vector(gens, i - 1, j - 1))]
        vecs.append(tuple(acc))
    I = F.span(vecs) if vecs else Subspace.zero(F.dim, F.field_order)
    if not F.is_ideal(I):
        raise CatalogError("stored ideal is not an ideal")
    return IdealWitness(F, I, pairs)


# -- expected assertions ---------------------------------------------------

_FREE_NAME = re.compile(r"^N(\d)(\d)$")


def _property_f_theorem(name: str) -> bool:
    """Free nilpotent N(c,g) with c >= 3, g >= 3 or c >= 4, g = 2."""
    m = _FREE_NAME.match(name)
    if not m:
        return False
    c, g = int(m.group(1)), int(m.group(2))
    return (c >= 3 and g >= 3) or (c >= 4 and g == 2)


def _sampled_prederivations_aperiodic(e: CatalogEntry, samples: int = 5, seed: int = 0) -> bool:
    g = e.algebra
    mats = space_matrices(prederivation_space(g), g.dim)
    rng = random.Random(seed)
    for _ in range(samples):
        M = Matrix.zeros(g.dim, g.dim, g.field_order)
        for B in mats:
            M = M + B * Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if periodicity(M).order is not None:
            return False
    return True


def _no_periodic(e: CatalogEntry, kind: str) -> str:
    """'none' when a non-existence argument is available and consistent, else 'unsupported'."""
    g = e.algebra
    obstructions = [w for k, w in e.witnesses.items() if k.startswith("obstruction")
                    and w.status == "UNSAT" and (w.kind == kind or w.kind == "derivation")]
    backed = bool(obstructions)
    if kind == "derivation" and not backed and nilpotency_class(g) not in (None, 1, 2):
        backed = True  # periodic derivations force class at most two
    if kind == "prederivation" and not backed:
        if _property_f_theorem(e.name):
            backed = True
        elif not pre_engel_witness(g, Matrix.identity(g.dim, g.field_order), 4):
            m = _FREE_NAME.match(e.name)
            if m and int(m.group(1)) >= 5:
                backed = True  # free nilpotent of class >= 5 is not pre-Engel-4
            elif first_coordinate_certificate(g, 4) is not None:
                backed = True
    if not backed:
        return "unsupported"
    if kind == "prederivation" and not _sampled_prederivations_aperiodic(e):
        return "contradicted"
    return "none"


def scalar_multiples_of_order(M: LinearMap, order: int) -> int:
    n = lcm(M.n, 12)
    base = M.matrix.lift(n)
    count = 0
    for k in range(n):
        if periodicity(base * CycloScalar.zeta(n, k)).order == order:
            count += 1
    return count


def filiform_g1_orders(g: LieAlgebra, orders=(2, 4, 6)) -> dict[str, int | None]:
    out = {}
    for m in orders:
        n = lcm(g.field_order, m)
        a = CycloScalar.zeta(n, n // m)
        P = LinearMap.diagonal(g, [a, -a, -a, a, a])
        out[str(m)] = periodicity(P).order if is_member(g, P, "prederivation") else None
    return out


def _evaluate(e: CatalogEntry, key: str, expected):
    g = e.algebra
    I = Matrix.identity(g.dim, g.field_order)
    if key == "dim":
        return g.dim
    if key == "class":
        return nilpotency_class(g)
    if key == "generator_count":
        return series(g).generator_count
    if key == "periodic_derivation_order":
        return e.witness_order("periodic_derivation")
    if key == "periodic_prederivation_order":
        return e.witness_order("periodic_prederivation")
    if key == "periodic_derivation":
        return _no_periodic(e, "derivation")
    if key == "periodic_prederivation":
        return _no_periodic(e, "prederivation")
    if key == "prederivation_space_dim":
        return prederivation_space(g).dim
    if key == "table_row":
        w = e.witnesses["ideal"]
        return {"r": w.ideal.dim, "g": generator_count_of(w.free), "dim": g.dim}
    if key == "partition_search":
        w = e.witnesses["ideal"]
        return "found" if partition_search(w.free, w.ideal).found else "absent"
    if key == "obstruction":
        return e.witnesses["obstruction"].status
    if key == "engel_4":
        return engel_identity(g, 4).holds
    if key == "engel_4_violator":
        v = engel_identity(g, 4).violator
        return None if v is None else [int(x.rational_value()) for x in v]
    if key in ("pre_engel_4", "pre_engel_4_standard_basis"):
        return pre_engel_witness(g, I, 4).holds
    if key in ("pre_engel_2", "pre_engel_3"):
        return pre_engel_witness(g, e.witnesses["pre_engel_basis"], int(key[-1])).holds
    if key == "e4_span_bound":
        return em_span_bound(g, 4, decide_identity=False).em_span_lower_bound
    if key == "first_coordinate_vanishes":
        return first_coordinate_certificate(g, 4) is not None
    if key == "property_f":
        return "theorem" if _property_f_theorem(e.name) else "unknown"
    if key == "standard_basis_pair_choice":
        return "none" if valid_pair_choice(g, I) is None else "exists"
    if key == "scalar_multiples_of_order_6":
        return scalar_multiples_of_order(e.witnesses["periodic_derivation"], 6)
    if key == "prederivation_orders":
        return filiform_g1_orders(g)
    if key == "listed_forms_family":
        forms = [parse_form(f, ["a", "b"]) for f in e.expected["listed_forms"]]
        return bool(eigenform_family_check(g, forms, "prederivation"))
    if key == "listed_pairs_falsify":
        choice = pairs_to_choice(g.dim, e.expected["listed_property_f_pairs"])
        try:
            return property_f_falsify(g, PropertyFWitness(I, choice)).holds
        except ValueError:
            return False
    raise CatalogError(f"unknown expected key {key!r}")

