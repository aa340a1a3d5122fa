"""The ten release criteria as executable checks.

Each criterion returns a :class:`CriterionResult` made of named sub-checks.
A criterion passes only when every sub-check passes; nothing is skipped.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import lcm

from . import catalog
from .deriv import LinearMap, extend_order, inverse_derivation_check, is_member, periodicity, prederivation_space
from .engel import (PropertyFWitness, ad_power_zero, engel_identity, pairs_to_choice, pre_engel_witness,
                    property_f_falsify)
from .freenil import (check_estimates, degree, free_nilpotent, hall_words, ideal_from_pairs, partition_search,
                      witt_dimension)
from .grading import derivation_to_grading, grading_to_derivation
from .lie import nilpotency_class, quotient
from .linalg import Matrix
from .scalar import CycloScalar, parse_scalar
from .units import (SAT, UNSAT, UnitSystem, eigenform_family_check, equilateral_lemma_holds, oracle_enumerate,
                    parse_form, replay, solve_units)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def add(self, name: str, ok, detail="") -> bool:
        self.checks.append(Check(name, bool(ok), str(detail)))
        return bool(ok)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] criterion {self.number}: {self.title}"
        failed = [c for c in self.checks if not c.ok]
        if failed:
            out += " -- failing: " + "; ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in failed)
        return out

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "checks": [c.to_json() for c in self.checks]}


def _diag(g, texts, n=6) -> LinearMap:
    return LinearMap.diagonal(g, [parse_scalar(t, n) for t in texts])


def criterion_1(seed: int = 0) -> CriterionResult:
    r = CriterionResult(1, "N(2,3) periodic derivation of order 6 with derivation inverse")
    g = catalog.get("N23").algebra
    D = _diag(g, ["1", "w", "w^2", "1+w", "1+w^2", "w+w^2"])
    r.add("is derivation", is_member(g, D, "derivation"))
    r.add("order exactly 6", periodicity(D).order == 6, periodicity(D).order)
    inv = inverse_derivation_check(g, D)
    stated = _diag(g, ["1", "w^2", "w", "1+w^2", "1+w", "w+w^2"]).matrix
    r.add("inverse is a derivation", inv.holds)
    r.add("inverse equals the stated diagonal", inv.inverse == stated)
    r.add("catalog witness agrees", catalog.get("N23").witnesses["periodic_derivation"].matrix == D.matrix)
    return r


def criterion_2(seed: int = 0) -> CriterionResult:
    r = CriterionResult(2, "Heisenberg order-6 derivations and the integral SL2(Z) variant")
    for m in (1, 2, 3):
        g = catalog.get(f"heisenberg_{m}").algebra
        D = _diag(g, ["1"] * m + ["w"] * m + ["1+w"])
        r.add(f"h_{m} diagonal is a derivation", is_member(g, D, "derivation"))
        r.add(f"h_{m} diagonal has order 6", periodicity(D).order == 6, periodicity(D).order)
    g = catalog.get("heisenberg_1").algebra
    A = Matrix([[1, -1, 0], [1, 0, 0], [0, 0, 1]], 6)
    M = LinearMap(g, A)
    r.add("integral matrix is a derivation of h_1", is_member(g, M, "derivation"))
    r.add("integral matrix has order exactly 6", periodicity(M).order == 6, periodicity(M).order)
    r.add("integral matrix has determinant-one block", A.entries[0][0] * A.entries[1][1] - A.entries[0][1] * A.entries[1][0] == 1)
    return r


I5_FORMS = ["a", "b", "g", "b-a", "a+g", "b-g", "a+b-g"]


def criterion_3(seed: int = 0) -> CriterionResult:
    r = CriterionResult(3, "N(2,4)/I5 has no periodic derivation")
    e = catalog.get("N24_mod_I5")
    g = e.algebra
    ob = e.witnesses["obstruction"]
    s = UnitSystem.from_strings(["a", "b", "g"], I5_FORMS)
    listed = [parse_form(f, ["a", "b", "g"]) for f in I5_FORMS]
    fam = eigenform_family_check(g, listed, "derivation", seed=seed, positions=ob.positions)
    r.add("eigenvalue family is a derivation family (50 samples)", fam, fam.failing_sample or "")
    v = solve_units(s)
    r.add("solver returns UNSAT", v.status == UNSAT, v.status)
    r.add("UNSAT certificate replays", replay(v))
    I = e.witnesses["ideal"]
    Q, _ = quotient(I.free, I.ideal)
    r.add("quotient by the stored ideal has dimension 7", Q.dim == 7, Q.dim)
    res = partition_search(I.free, I.ideal)
    r.add("partition search over the given generators is absent", not res.found, res.note)
    return r


TABLE = [
    ("N22", 2, [], 0, 3), ("N23", 3, [], 0, 6),
    ("N23_mod_x2x3", 3, [(2, 3)], 1, 5), ("N24_mod_x1x2", 4, [(1, 2)], 1, 9),
    ("N23_mod_x1x2_x1x3", 3, [(1, 2), (1, 3)], 2, 4), ("N24_mod_x1x2_x3x4", 4, [(1, 2), (3, 4)], 2, 8),
    ("N24_mod_x2x4_x3x4", 4, [(2, 4), (3, 4)], 2, 8), ("N25_mod_x1x2_x3x4", 5, [(1, 2), (3, 4)], 2, 13),
]


def criterion_4(seed: int = 0) -> CriterionResult:
    r = CriterionResult(4, "table rows rebuild, admit partitions, satisfy the estimates")
    for name, gens, pairs, rel, dim in TABLE:
        F = free_nilpotent(2, gens)
        I = ideal_from_pairs(F, pairs)
        Q, _ = quotient(F, I)
        r.add(f"{name} has dimension {dim}", Q.dim == dim, Q.dim)
        r.add(f"{name} relation count {rel}", I.dim == rel, I.dim)
        res = partition_search(F, I)
        ok = res.found
        if ok:
            gd = grading_to_derivation(res.grading)
            ok = gd.order == 6 and is_member(res.quotient, gd.map, "derivation")
            r.add(f"{name} partition gives an order-6 derivation", ok, gd.order)
        else:
            r.add(f"{name} partition search succeeds", False, res.note)
        est = check_estimates(dim, gens, rel)
        r.add(f"{name} estimates hold", est.holds, est.to_json())
        r.add(f"{name} catalog entry matches", catalog.get(name).algebra.dim == dim)
    return r


def _four_scalar_system() -> UnitSystem:
    forms = [[1 if t in (i, j) else 0 for t in range(4)] for i in range(4) for j in range(i + 1, 4)]
    return UnitSystem(["a1", "a2", "a3", "a4"], forms)


def criterion_5(seed: int = 0) -> CriterionResult:
    r = CriterionResult(5, "N(2,g) has a periodic derivation exactly for g <= 3")
    for gens in (1, 2, 3):
        F = free_nilpotent(2, gens)
        res = partition_search(F, ideal_from_pairs(F, []))
        if not res.found:
            r.add(f"N(2,{gens}) grading found", False, res.note)
            continue
        gd = grading_to_derivation(res.grading)
        expected = 6 if gens > 1 else gd.order
        r.add(f"N(2,{gens}) periodic derivation", is_member(F, gd.map, "derivation") and gd.order == expected,
              gd.order)
    s = _four_scalar_system()
    v = solve_units(s)
    for gens in (4, 5):
        e = catalog.get(f"N2{gens}")
        ob = e.witnesses["obstruction"]
        r.add(f"N(2,{gens}) four-generator system UNSAT", v.status == UNSAT and replay(v), v.status)
        r.add(f"N(2,{gens}) catalog obstruction is the same system", ob.system == s)
    return r


def criterion_6(seed: int = 0) -> CriterionResult:
    r = CriterionResult(6, "order arithmetic: 6k extensions and the zeta_12 example")
    g = catalog.get("N23").algebra
    D = _diag(g, ["1", "w", "w^2", "1+w", "1+w^2", "w+w^2"])
    for k in range(1, 6):
        E = extend_order(D, k)
        o = periodicity(E).order
        r.add(f"k={k} gives order {6 * k}", o == 6 * k and is_member(g, E, "derivation"), o)
    e = catalog.get("decomposable_C2_zeta12")
    W = e.witnesses["periodic_derivation"]
    r.add("diag(z, z^2) has order 12", periodicity(W).order == 12, periodicity(W).order)
    n = lcm(W.n, 12)
    orders = []
    for k in range(12):
        lam = CycloScalar.zeta(12, k).lift(n)
        orders.append(periodicity(W.matrix.lift(n) * lam).order)
    r.add("all 12 scalar multiples have order other than 6", len(orders) == 12 and 6 not in orders, orders)
    return r


def criterion_7(seed: int = 0) -> CriterionResult:
    r = CriterionResult(7, "root-of-unity lemmas by exhaustive enumeration")
    bad = [m for m in range(1, 37) if not equilateral_lemma_holds(m)]
    r.add("equilateral lemma for m <= 36", not bad, bad)
    three = UnitSystem.from_strings(["a", "b", "g"], ["a+g", "b+g", "a+b+g"])
    four = _four_scalar_system()
    bad3 = [m for m in range(1, 25) if oracle_enumerate(three, m).status != UNSAT]
    bad4 = [m for m in range(1, 25) if oracle_enumerate(four, m).status != UNSAT]
    r.add("three scalars UNSAT for m <= 24", not bad3, bad3)
    r.add("four scalars UNSAT for m <= 24", not bad4, bad4)
    l54 = UnitSystem.from_strings(["a", "b", "g"], ["a+b+g"])
    even = [m for m in range(2, 21, 2) if oracle_enumerate(l54, m).status != SAT]
    odd = [m for m in range(1, 22, 2) if oracle_enumerate(l54, m).status != UNSAT]
    r.add("three roots summing to a root: SAT for even m <= 20", not even, even)
    r.add("three roots summing to a root: UNSAT for odd m <= 21", not odd, odd)
    return r


def criterion_8(seed: int = 0) -> CriterionResult:
    r = CriterionResult(8, "prederivations: two-step fullness, g1 orders, g2 obstruction, N(3,2)")
    for name in catalog.names():
        g = catalog.get(name).algebra
        c = nilpotency_class(g)
        if c is not None and c <= 2:
            d = prederivation_space(g).dim
            r.add(f"{name} prederivation space is full", d == g.dim ** 2, d)
    g1 = catalog.get("filiform_g1").algebra
    for m in (2, 4, 6):
        n = lcm(6, m)
        a = CycloScalar.zeta(n, n // m)
        P = LinearMap.diagonal(g1, [a, -a, -a, a, a])
        o = periodicity(P).order
        r.add(f"g1 witness with primitive {m}-th root has order {m}",
              is_member(g1, P, "prederivation") and o == m, o)
    s = UnitSystem.from_strings(["a", "b"], ["a", "b", "2b-a", "2a-b", "a+2b"])
    v = solve_units(s)
    r.add("g2 obstruction UNSAT", v.status == UNSAT and replay(v), v.status)
    N32 = catalog.get("N32").algebra
    z = CycloScalar.zeta(6, 1)
    P = LinearMap.diagonal(N32, [z, -z, 1, z, -z])
    r.add("N(3,2) witness is a prederivation", is_member(N32, P, "prederivation"))
    r.add("N(3,2) witness is periodic", periodicity(P).order == 6, periodicity(P).order)
    return r


CLASS5_FORMS = ["a", "b", "g", "2a+b", "a+2b", "a+b+g", "2b+g", "2a+3b"]
CLASS5_LISTED_PAIRS = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)]


def criterion_9(seed: int = 0) -> CriterionResult:
    r = CriterionResult(9, "the class-5 example with periodic prederivations")
    g = catalog.get("example_513").algebra
    forms = [parse_form(f, ["a", "b", "g"]) for f in CLASS5_FORMS]
    fam = eigenform_family_check(g, forms, "prederivation", samples=50, seed=seed)
    r.add("three-parameter family is a prederivation (50 samples)", fam, fam.failing_sample or "")
    a = -1
    P = LinearMap.diagonal(g, [a, -a, a, a, -a, a, -a, -a])
    o = periodicity(P).order
    r.add("specialization with a = -1 has order 2", is_member(g, P, "prederivation") and o == 2, o)
    r.add("nilpotency class 5", nilpotency_class(g) == 5, nilpotency_class(g))
    I = Matrix.identity(g.dim, g.field_order)
    r.add("pre-Engel-4 on the standard basis", pre_engel_witness(g, I, 4))
    eng = engel_identity(g, 4, seed=seed)
    x12 = tuple(CycloScalar.rational(1 if i < 2 else 0, 6) for i in range(8))
    r.add("Engel-4 fails", not eng.holds)
    r.add("x1 + x2 violates Engel-4", not ad_power_zero(g, x12, 4) and eng.violator == x12,
          eng.to_json().get("violator"))
    res = property_f_falsify(g, PropertyFWitness(I, pairs_to_choice(g.dim, CLASS5_LISTED_PAIRS)))
    r.add("property F falsified by the listed 12 pairs", res.holds, res.to_json())
    return r


def _random_system(rng: random.Random) -> UnitSystem:
    k = rng.randint(1, 4)
    names = ["a", "b", "c", "d"][:k]
    forms = []
    for _ in range(rng.randint(1, 4)):
        f = [rng.choice([-2, -1, -1, 0, 0, 1, 1, 2]) for _ in range(k)]
        if any(f):
            forms.append(f)
    return UnitSystem(names, forms)


def _solver_agrees(s: UnitSystem, max_m: int = 12) -> tuple[bool, str]:
    v = solve_units(s)
    if v.status == SAT:
        return oracle_enumerate(s, 6).status == SAT and replay(v), "SAT"
    if v.status == UNSAT:
        bad = [m for m in range(1, max_m + 1) if oracle_enumerate(s, m).status != UNSAT]
        return (not bad) and replay(v), f"UNSAT, oracle SAT at {bad}" if bad else "UNSAT"
    return True, "UNKNOWN"


def criterion_10(seed: int = 0, systems: int = 200) -> CriterionResult:
    r = CriterionResult(10, "structural cross-checks over the catalog and random grids")
    for name in catalog.names():
        e = catalog.get(name)
        g = e.algebra
        for key in ("periodic_derivation", "periodic_derivation_integral"):
            D = e.witnesses.get(key)
            if D is None:
                continue
            o = periodicity(D).order
            c = nilpotency_class(g)
            r.add(f"{name}/{key} class <= 2", c is not None and c <= 2, c)
            if not g.is_abelian():
                r.add(f"{name}/{key} order divisible by 6", o % 6 == 0, o)
            r.add(f"{name}/{key} inverse is a derivation", inverse_derivation_check(g, D))
        h = e.witnesses.get("hex_grading")
        if h is not None:
            gd = grading_to_derivation(h)
            back, _ = derivation_to_grading(g, gd.map)
            r.add(f"{name} grading roundtrip", back == h)
    for c in range(1, 6):
        for gens in range(1, 6):
            counts = [0] * c
            for w in hall_words(c, gens):
                counts[degree(w) - 1] += 1
            witt = [witt_dimension(d, gens) for d in range(1, c + 1)]
            r.add(f"Hall basis of N({c},{gens}) matches the Witt formula", counts == witt, (counts, witt))
    rng = random.Random(seed)
    agree, tally = 0, {}
    failures = []
    for i in range(systems):
        s = _random_system(rng)
        ok, tag = _solver_agrees(s)
        tally[tag.split(",")[0]] = tally.get(tag.split(",")[0], 0) + 1
        if ok:
            agree += 1
        else:
            failures.append((s.to_json(), tag))
    r.add(f"solver agrees with the oracle on {systems} random systems", agree == systems,
          failures[:3] if failures else tally)
    return r


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    t = time.perf_counter()
    fn = CRITERIA[number - 1]
    try:
        res = fn(seed=seed)
    except Exception as exc:  # a crash is a failed criterion, reported with its message
        res = CriterionResult(number, fn.__name__)
        res.add("runs without error", False, f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t
    return res


def run_all(seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(i, seed) for i in range(1, len(CRITERIA) + 1)]
