"""Root-of-unity constraint systems: solver with replayable certificates, and a brute-force oracle.

A system asks for roots of unity v_1..v_k such that every listed integer form
sum c_i v_i is again a root of unity.  Scaling every variable by one root of unity
preserves the system, so v_1 = 1 is a harmless normalization.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Mapping, Sequence

from .lie import LieAlgebra
from .linalg import Matrix
from .scalar import CycloScalar, _root_vector, totient

MAX_VARS = 8
MAX_FORMS = 40
ORACLE_GUARD = 10 ** 8

SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"

# allowed exponents of zeta_6 for v/u given the real part of v/u
_RATIOS_BY_COS = {
    Fraction(1): (0,),
    Fraction(-1): (3,),
    Fraction(1, 2): (1, 5),
    Fraction(-1, 2): (2, 4),
}


@dataclass(frozen=True)
class UnitSystem:
    var_names: tuple[str, ...]
    forms: tuple[tuple[int, ...], ...]

    def __init__(self, var_names: Sequence[str], forms: Sequence[Sequence[int]], add_variables: bool = True):
        k = len(var_names)
        if k < 1:
            raise ValueError("a unit system needs at least one variable")
        fs = []
        for f in forms:
            f = tuple(int(c) for c in f)
            if len(f) != k:
                raise ValueError(f"form {list(f)} does not have {k} coefficients")
            if f not in fs:
                fs.append(f)
        if add_variables:
            for i in range(k):
                e = tuple(1 if j == i else 0 for j in range(k))
                if e not in fs:
                    fs.insert(i, e)
        object.__setattr__(self, "var_names", tuple(var_names))
        object.__setattr__(self, "forms", tuple(fs))

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def form_str(self, f: Sequence[int]) -> str:
        parts = []
        for c, name in zip(f, self.var_names):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{name}")
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> dict:
        return {"vars": list(self.var_names), "forms": [list(f) for f in self.forms]}

    @classmethod
    def from_json(cls, data: Mapping) -> UnitSystem:
        return cls(data["vars"], data["forms"])

    @classmethod
    def from_strings(cls, var_names: Sequence[str], forms: Sequence[str]) -> UnitSystem:
        """Parse forms such as '2b-a' over single-token variable names."""
        return cls(var_names, [parse_form(f, var_names) for f in forms])


def parse_form(text: str, var_names: Sequence[str]) -> tuple[int, ...]:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty form")
    coeffs = [0] * len(var_names)
    names = sorted(var_names, key=len, reverse=True)
    i = 0
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        j = i
        while j < len(s) and s[j].isdigit():
            j += 1
        mag = int(s[i:j]) if j > i else 1
        if j < len(s) and s[j] == "*":
            j += 1
        name = next((nm for nm in names if s.startswith(nm, j)), None)
        if name is None:
            raise ValueError(f"cannot parse form {text!r} at position {j}")
        coeffs[list(var_names).index(name)] += sign * mag
        i = j + len(name)
    return tuple(coeffs)


# -- rules -----------------------------------------------------------------

def triangle_bound(f: Sequence[int]) -> int | None:
    """Exact lower bound |c_1| - sum_{i>=2} |c_i| on |f| when it exceeds 1; 0 for the zero form."""
    mags = sorted((abs(c) for c in f if c), reverse=True)
    if not mags:
        return 0
    lower = mags[0] - sum(mags[1:])
    return lower if lower > 1 else None


def two_variable_ratio(f: Sequence[int]):
    """For a*v_i + b*v_j (i < j) return (i, j, a, b, cos, allowed exponents of v_j/v_i)."""
    nz = [(i, c) for i, c in enumerate(f) if c]
    if len(nz) != 2:
        return None
    (i, a), (j, b) = nz
    cos = Fraction(1 - a * a - b * b, 2 * a * b)
    return i, j, a, b, cos, _RATIOS_BY_COS.get(cos, ())


def _unit_vectors_6():
    return [CycloScalar.sixth_root(k, 6) for k in range(6)]


def _evaluate(f: Sequence[int], values: Sequence[CycloScalar]) -> CycloScalar:
    acc = CycloScalar.zero(values[0].n)
    for c, v in zip(f, values):
        if c:
            acc = acc + v * c
    return acc


def _is_unit(x: CycloScalar) -> bool:
    return bool(x) and x.unit_order() is not None


# -- verdicts --------------------------------------------------------------

@dataclass
class UnitVerdict:
    status: str
    system: UnitSystem
    witness: dict[str, int] | None = None  # exponent k of zeta_m per variable
    witness_order: int = 6
    certificate: list[dict] = field(default_factory=list)
    search_bound_used: int = 6
    complete: bool = True
    notes: list[str] = field(default_factory=list)

    def witness_values(self) -> list[CycloScalar]:
        m = self.witness_order
        return [CycloScalar.zeta(lcm(m, 6), (lcm(m, 6) // m) * self.witness[v]) for v in self.system.var_names]

    def to_json(self) -> dict:
        out = {"status": self.status, "system": self.system.to_json(),
               "search_bound_used": self.search_bound_used, "complete": self.complete,
               "certificate": self.certificate, "notes": self.notes}
        if self.witness is not None:
            out["witness"] = {k: f"z{self.witness_order}^{v}" for k, v in self.witness.items()}
        return out


def _connect_order(k: int, edges: dict[int, set[int]]) -> tuple[list[int], bool]:
    order, seen = [0], {0}
    queue = [0]
    while queue:
        u = queue.pop(0)
        for v in sorted(edges.get(u, ())):
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
    complete = len(order) == k
    order.extend(i for i in range(k) if i not in seen)
    return order, complete


def _candidates(var: int, assigned: Mapping[int, int], ratio: Mapping[tuple[int, int], tuple[int, ...]]) -> list[int]:
    cand = set(range(6))
    for (i, j), allowed in ratio.items():
        if j == var and i in assigned:
            cand &= {(assigned[i] + r) % 6 for r in allowed}
        elif i == var and j in assigned:
            cand &= {(assigned[j] - r) % 6 for r in allowed}
    return sorted(cand)


def _ratio_table(s: UnitSystem):
    steps, ratio = [], {}
    for idx, f in enumerate(s.forms):
        info = two_variable_ratio(f)
        if info is None:
            continue
        i, j, a, b, cos, allowed = info
        steps.append({"rule": "EQUILATERAL", "form": idx, "form_text": s.form_str(f),
                      "vars": [i, j], "coeffs": [a, b], "cos": str(cos), "allowed": list(allowed)})
        prev = ratio.get((i, j))
        ratio[(i, j)] = tuple(sorted(set(allowed) & set(prev))) if prev is not None else tuple(allowed)
    return steps, ratio


def solve_units(s: UnitSystem, refine: Sequence[int] = ()) -> UnitVerdict:
    """TRIANGLE pruning, EQUILATERAL ratio constraints, then a normalized search over mu_6."""
    k = s.nvars
    if k > MAX_VARS or len(s.forms) > MAX_FORMS:
        raise ValueError(f"unit systems are limited to {MAX_VARS} variables and {MAX_FORMS} forms")
    for idx, f in enumerate(s.forms):
        lb = triangle_bound(f)
        if lb is not None:
            step = {"rule": "TRIANGLE", "form": idx, "form_text": s.form_str(f), "lower_bound": lb}
            return UnitVerdict(UNSAT, s, certificate=[step])
    eq_steps, ratio = _ratio_table(s)
    for st in eq_steps:
        if not st["allowed"]:
            return UnitVerdict(UNSAT, s, certificate=[st])
    edges: dict[int, set[int]] = {}
    for (i, j) in ratio:
        edges.setdefault(i, set()).add(j)
        edges.setdefault(j, set()).add(i)
    order, complete = _connect_order(k, edges)

    roots = _unit_vectors_6()
    forms_by_last = {}
    pos = {v: p for p, v in enumerate(order)}
    for idx, f in enumerate(s.forms):
        vs = [i for i, c in enumerate(f) if c]
        last = max(vs, key=lambda v: pos[v])
        forms_by_last.setdefault(last, []).append(idx)

    witness = None

    def dfs(p: int, assigned: dict[int, int]):
        nonlocal witness
        var = order[p]
        cand = [0] if p == 0 else _candidates(var, assigned, ratio)
        node = {"var": var, "branches": []}
        for val in cand:
            assigned[var] = val
            bad = None
            for idx in forms_by_last.get(var, []):
                vals = [roots[assigned.get(i, 0)] for i in range(k)]
                if not _is_unit(_evaluate(s.forms[idx], vals)):
                    bad = idx
                    break
            if bad is not None:
                node["branches"].append({"value": val, "fail": bad})
            elif p + 1 == k:
                witness = dict(assigned)
                node["branches"].append({"value": val, "sat": True})
                del assigned[var]
                return node
            else:
                child = dfs(p + 1, assigned)
                node["branches"].append({"value": val, "node": child})
                if witness is not None:
                    del assigned[var]
                    return node
            del assigned[var]
        return node

    tree = dfs(0, {})
    if witness is not None:
        w = {s.var_names[i]: witness[i] for i in range(k)}
        return UnitVerdict(SAT, s, witness=w, complete=complete)
    if complete:
        cert = eq_steps + [{"rule": "EXHAUST", "normalized": 0, "order": order, "tree": tree}]
        return UnitVerdict(UNSAT, s, certificate=cert)
    v = UnitVerdict(UNKNOWN, s, complete=False,
                    notes=["some variable is not linked to the normalized one by two-variable forms; "
                           "the mu_6 search is not exhaustive"])
    for m in refine:
        res = oracle_enumerate(s, m)
        v.notes.append(f"oracle over mu_{m}: {res.status}")
        if res.status == SAT:
            return UnitVerdict(SAT, s, witness=res.witness, witness_order=m, complete=False,
                               search_bound_used=m, notes=v.notes)
    return v


# -- replay ------------------------------------------------------------------

def replay(verdict: UnitVerdict) -> bool:
    """Independently re-check a verdict: witnesses by evaluation, certificates step by step."""
    s = verdict.system
    if verdict.status == SAT:
        vals = verdict.witness_values()
        return all(_is_unit(_evaluate(f, vals)) for f in s.forms)
    if verdict.status != UNSAT:
        return False
    ratio = {}
    for st in verdict.certificate:
        rule = st["rule"]
        f = s.forms[st["form"]] if "form" in st else None
        if rule == "TRIANGLE":
            mags = sorted((abs(c) for c in f if c), reverse=True)
            if mags and not (mags[0] - sum(mags[1:]) > 1):
                return False
            if st["lower_bound"] != (mags[0] - sum(mags[1:]) if mags else 0):
                return False
            return True
        if rule == "EQUILATERAL":
            info = two_variable_ratio(f)
            if info is None:
                return False
            i, j, a, b, cos, allowed = info
            if [i, j] != st["vars"] or list(allowed) != st["allowed"] or str(cos) != st["cos"]:
                return False
            if not allowed:
                return True
            prev = ratio.get((i, j))
            ratio[(i, j)] = tuple(sorted(set(allowed) & set(prev))) if prev is not None else tuple(allowed)
        elif rule == "EXHAUST":
            return _replay_tree(s, st["order"], st["tree"], ratio)
        else:
            return False
    return False


def _replay_tree(s: UnitSystem, order: list[int], tree: dict, ratio) -> bool:
    k = s.nvars
    if sorted(order) != list(range(k)) or order[0] != 0:
        return False
    edges = {}
    for (i, j) in ratio:
        edges.setdefault(i, set()).add(j)
        edges.setdefault(j, set()).add(i)
    bfs, complete = _connect_order(k, edges)
    if not complete:
        return False
    roots = _unit_vectors_6()
    pos = {v: p for p, v in enumerate(order)}

    def check(node, p, assigned):
        var = order[p]
        if node["var"] != var:
            return False
        # every non-root variable must be pinned by some earlier variable
        if p > 0 and not any((i == var and j in assigned) or (j == var and i in assigned) for (i, j) in ratio):
            return False
        want = [0] if p == 0 else _candidates(var, assigned, ratio)
        if [b["value"] for b in node["branches"]] != want:
            return False
        for b in node["branches"]:
            assigned[var] = b["value"]
            if "fail" in b:
                f = s.forms[b["fail"]]
                if any(c and pos[i] > p for i, c in enumerate(f)):
                    return False
                vals = [roots[assigned.get(i, 0)] for i in range(k)]
                if _is_unit(_evaluate(f, vals)):
                    return False
            elif "node" in b:
                if p + 1 >= k or not check(b["node"], p + 1, assigned):
                    return False
            else:
                return False
            del assigned[var]
        return True

    return check(tree, 0, {})


# -- oracle --------------------------------------------------------------------

@dataclass
class OracleResult:
    status: str
    m: int
    witness: dict[str, int] | None = None  # exponents of zeta_m
    checked: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "m": self.m, "assignments_checked": self.checked}
        if self.witness is not None:
            out["witness"] = {k: f"z{self.m}^{v}" for k, v in self.witness.items()}
        return out


def oracle_enumerate(s: UnitSystem, m: int, normalize: bool = True) -> OracleResult:
    """Exhaustive scan of mu_m assignments; every form must land in mu_m.

    Works on integer coefficient vectors in Q(zeta_L), L = lcm(m, 6).  With normalize,
    the first variable is fixed to 1, which loses nothing since mu_m acts on solutions.
    """
    k = s.nvars
    if m < 1:
        raise ValueError("m must be positive")
    count = m ** (k - 1 if normalize else k)
    if count > ORACLE_GUARD:
        raise ValueError(f"oracle would scan {count} assignments, above the guard")
    L = lcm(m, 6)
    step = L // m
    phi = totient(L)
    vecs = [tuple(_root_vector(L, step * j)) for j in range(m)]
    targets = set(vecs)
    firsts = [0] if normalize else range(m)
    checked = 0
    active = [(f, [i for i, c in enumerate(f) if c]) for f in s.forms]
    for first in firsts:
        for rest in product(range(m), repeat=k - 1):
            ex = (first,) + rest
            checked += 1
            ok = True
            for f, nz in active:
                acc = [0] * phi
                for i in nz:
                    c = f[i]
                    for t, x in enumerate(vecs[ex[i]]):
                        if x:
                            acc[t] += c * x
                if tuple(acc) not in targets:
                    ok = False
                    break
            if ok:
                return OracleResult(SAT, m, {s.var_names[i]: ex[i] for i in range(k)}, checked)
    return OracleResult(UNSAT, m, None, checked)


def equilateral_lemma_holds(m: int) -> bool:
    """Every (a, b) in mu_m^2 with a + b in mu_m has b/a a primitive third root of unity."""
    L = lcm(m, 3)
    step = L // m
    vecs = [tuple(_root_vector(L, step * j)) for j in range(m)]
    lookup = {v: j for j, v in enumerate(vecs)}
    for a in range(m):
        for b in range(m):
            s = tuple(x + y for x, y in zip(vecs[a], vecs[b]))
            if s in lookup:
                # b/a = zeta_m^(b - a) must have order exactly 3
                d = (b - a) % m
                if d == 0 or (3 * d) % m:
                    return False
    return True


# -- eigenvalue families -------------------------------------------------------

@dataclass
class FamilyCheck:
    holds: bool
    samples: int
    failing_sample: list[str] | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "samples": self.samples, "failing_sample": self.failing_sample}


def eigenform_family_check(g: LieAlgebra, forms: Sequence[Sequence[int]], kind: str = "derivation",
                           samples: int = 50, seed: int = 0,
                           positions: Sequence[int] | None = None) -> FamilyCheck:
    """diag(form values) is a (pre)derivation for random rational variable samples.

    ``positions[i]`` is the index into ``forms`` used for basis vector i;
    the default is the listed order.
    """
    from .deriv import LinearMap, is_member

    if positions is None:
        positions = range(len(forms))
    positions = list(positions)
    if len(positions) != g.dim or sorted(positions) != list(range(len(forms))):
        raise ValueError("positions must assign each form to exactly one basis vector")
    k = len(forms[0])
    if k > 3 or any(len(f) != k for f in forms):
        raise ValueError("forms must share at most three variables")
    placed = [forms[p] for p in positions]
    rng = random.Random(seed)
    for _ in range(samples):
        vals = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(k)]
        diag = [sum(c * v for c, v in zip(f, vals)) for f in placed]
        if not is_member(g, LinearMap.diagonal(g, diag), kind):
            return FamilyCheck(False, samples, [str(v) for v in vals])
    return FamilyCheck(True, samples)


def load_system(path) -> UnitSystem:
    with open(path) as fh:
        return UnitSystem.from_json(json.load(fh))
