"""Hexagonal and triangular gradings, and conversions to and from derivations.

Hexagonal parts are keyed by the exponent k of zeta_6.  The fixed identification is
alpha, beta, gamma -> 0, 2, 4 (generator parts: 1, w, w^2) and
alpha+beta, beta+gamma, alpha+gamma -> 1, 3, 5 (central parts: 1+w, w+w^2, 1+w^2).
Since zeta^a + zeta^b is a sixth root only when b = a +- 2, additive closure reads
[g_k, g_{k+2}] in g_{k+1}, and every other pair of parts brackets to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Mapping, Sequence

from .deriv import LinearMap, lift_algebra, is_member, periodicity, working_algebra
from .lie import LieAlgebra, lower_central_series
from .linalg import Matrix, Subspace, direct_sum_check, inverse, min_poly, nullspace
from .scalar import CycloScalar, as_scalar, format_scalar, parse_scalar

GENERATOR_EXPONENTS = (0, 2, 4)
CENTRAL_EXPONENTS = (1, 3, 5)
EXPONENT_NAMES = {0: "alpha", 2: "beta", 4: "gamma", 1: "alpha+beta", 3: "beta+gamma", 5: "alpha+gamma"}


def sixth_root(k: int, n: int = 6) -> CycloScalar:
    return CycloScalar.sixth_root(k % 6, n)


def bracket_target(a: int, b: int) -> int | None:
    """Exponent receiving [g_a, g_b] under additive closure, or None if it must vanish."""
    if a in CENTRAL_EXPONENTS or b in CENTRAL_EXPONENTS:
        return None
    if b == (a + 2) % 6:
        return (a + 1) % 6
    if a == (b + 2) % 6:
        return (b + 1) % 6
    return None


def _unit_index(v) -> int | None:
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return nz[0]
    return None


def _vec_strings(v) -> list[str]:
    return [format_scalar(x) for x in v]


@dataclass
class GradingReport:
    valid: bool
    violations: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": self.violations}


class HexGrading:
    def __init__(self, algebra: LieAlgebra, parts: Mapping[int, Subspace]):
        self.algebra = algebra
        n = algebra.field_order
        self.parts: dict[int, Subspace] = {}
        for k in range(6):
            S = parts.get(k)
            if S is None:
                S = Subspace.zero(algebra.dim, n)
            if S.ambient_dim != algebra.dim:
                raise ValueError(f"part z6^{k} lives in dimension {S.ambient_dim}, algebra has {algebra.dim}")
            self.parts[k] = S
        for k in parts:
            if k not in range(6):
                raise ValueError(f"hexagonal part index {k} is not in 0..5")

    @classmethod
    def from_labels(cls, g: LieAlgebra, exponents: Sequence[int]) -> HexGrading:
        """Grading that puts basis vector x_i into part z6^exponents[i]."""
        if len(exponents) != g.dim:
            raise ValueError("one exponent per basis vector is required")
        idx: dict[int, list[int]] = {}
        for i, k in enumerate(exponents):
            idx.setdefault(k % 6, []).append(i)
        return cls(g, {k: Subspace.coordinate(v, g.dim, g.field_order) for k, v in idx.items()})

    def dims(self) -> dict[int, int]:
        return {k: S.dim for k, S in self.parts.items()}

    def __eq__(self, other):
        return (isinstance(other, HexGrading) and self.algebra.dim == other.algebra.dim
                and all(self.parts[k] == other.parts[k] for k in range(6)))

    def __repr__(self):
        return f"HexGrading({self.algebra.name}, dims={[self.parts[k].dim for k in range(6)]})"

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name,
                "parts": {f"z6^{k}": [_vec_strings(v) for v in self.parts[k].basis] for k in range(6)
                          if self.parts[k].dim}}

    @classmethod
    def from_json(cls, g: LieAlgebra, data: Mapping) -> HexGrading:
        parts = {}
        for key, vecs in data["parts"].items():
            if not key.startswith("z6^"):
                raise ValueError(f"part key {key!r} must look like 'z6^k'")
            k = int(key[3:])
            rows = [[parse_scalar(str(x), g.field_order) for x in v] for v in vecs]
            parts[k] = Subspace.span(rows, g.dim, g.field_order)
        return cls(g, parts)


def verify_hexagonal(h: HexGrading) -> GradingReport:
    g = h.algebra
    violations = []
    parts = h.parts
    if not direct_sum_check(list(parts.values())):
        violations.append({"condition": "direct", "detail": "parts do not form a direct sum"})
    total = sum(S.dim for S in parts.values())
    if total != g.dim:
        violations.append({"condition": "direct",
                           "detail": f"part dimensions sum to {total}, algebra has dimension {g.dim}"})
    for a in range(6):
        for b in range(a, 6):
            target = bracket_target(a, b)
            for u in parts[a].basis:
                for v in parts[b].basis:
                    w = g.bracket(u, v)
                    if not any(w):
                        continue
                    if target is not None and parts[target].contains(w):
                        continue
                    cond = "centrality" if (a in CENTRAL_EXPONENTS or b in CENTRAL_EXPONENTS) else "closure"
                    pu, pv = _unit_index(u), _unit_index(v)
                    violations.append({
                        "condition": cond,
                        "labels": [f"z6^{a}", f"z6^{b}"],
                        "pair": [pu + 1, pv + 1] if pu is not None and pv is not None else None,
                        "u": _vec_strings(u), "v": _vec_strings(v), "bracket": _vec_strings(w),
                        "expected_part": None if target is None else f"z6^{target}",
                    })
    terms = lower_central_series(g)
    if len(terms) > 2 and terms[2].dim:
        violations.append({"condition": "two-step", "detail": "[g,[g,g]] is nonzero"})
    return GradingReport(not violations, violations)


@dataclass
class GradingDerivation:
    map: LinearMap
    order: int
    degenerate: bool  # true when the block-scalar map has order below six

    def to_json(self) -> dict:
        return {"map": self.map.to_json(), "order": self.order, "degenerate": self.degenerate}


def grading_to_derivation(h: HexGrading) -> GradingDerivation:
    """D acts as zeta_6^k on part k; reports the true periodic order."""
    rep = verify_hexagonal(h)
    if not rep:
        raise ValueError(f"invalid hexagonal grading: {rep.violations[0]}")
    g = h.algebra
    n = lcm(g.field_order, 6)
    cols, vals = [], []
    for k in range(6):
        for v in h.parts[k].basis:
            cols.append([x.lift(n) for x in v])
            vals.append(sixth_root(k, n))
    if not cols:
        raise ValueError("grading of the zero algebra has no derivation")
    B = Matrix.from_columns(cols, n)
    Binv = inverse(B)
    M = B @ Matrix.diag(vals, n) @ Binv
    D = LinearMap(g, M)
    if not is_member(g, D, "derivation"):
        raise AssertionError("block-scalar map of a valid grading is not a derivation")
    per = periodicity(D)
    if per.certificate is None:
        raise AssertionError("block-scalar map of a grading is not periodic")
    order = per.certificate.order
    if not g.is_abelian() and order != 6:
        raise AssertionError("nonabelian hexagonal grading produced a map of order other than six")
    return GradingDerivation(D, order, order != 6)


# -- triangular gradings ---------------------------------------------------

class TriGrading:
    def __init__(self, algebra: LieAlgebra, parts: Sequence[tuple[CycloScalar, Subspace]]):
        self.algebra = algebra
        labels = []
        for lab, S in parts:
            if not lab:
                raise ValueError("triangular grading labels must be nonzero")
            if S.ambient_dim != algebra.dim:
                raise ValueError("part lives in the wrong ambient dimension")
            if any(lab == other for other in labels):
                raise ValueError(f"label {lab} used twice")
            labels.append(lab)
        self.parts = [(lab, S) for lab, S in parts]

    @property
    def field_order(self) -> int:
        n = self.algebra.field_order
        for lab, _ in self.parts:
            n = lcm(n, lab.n)
        return n

    def part(self, label) -> Subspace | None:
        for lab, S in self.parts:
            if lab == label:
                return S
        return None

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name,
                "parts": [{"label": format_scalar(lab), "basis": [_vec_strings(v) for v in S.basis]}
                          for lab, S in self.parts]}

    @classmethod
    def from_json(cls, g: LieAlgebra, data: Mapping, field_order: int | None = None) -> TriGrading:
        n = int(data.get("field_order", field_order or g.field_order))
        h = g if n == g.field_order else lift_algebra(g, lcm(n, g.field_order))
        n = h.field_order
        parts = []
        for item in data["parts"]:
            rows = [[parse_scalar(str(x), n) for x in v] for v in item["basis"]]
            parts.append((parse_scalar(str(item["label"]), n), Subspace.span(rows, h.dim, n)))
        return cls(h, parts)


def _third_roots(n: int) -> list[CycloScalar]:
    return [CycloScalar.omega(n), CycloScalar.omega(n) ** 2] if n % 3 == 0 else []


def verify_triangular(t: TriGrading) -> GradingReport:
    g = t.algebra
    N = lcm(t.field_order, 6)
    labels = [lab.lift(N) for lab, _ in t.parts]
    spaces = [S for _, S in t.parts]
    violations = []
    if not direct_sum_check(spaces) or sum(S.dim for S in spaces) != g.dim:
        violations.append({"condition": "direct", "detail": "parts are not a direct decomposition"})
    w, w2 = _third_roots(N)
    for a in range(len(spaces)):
        for b in range(a, len(spaces)):
            s = labels[a] + labels[b]
            target = next((spaces[c] for c in range(len(spaces)) if labels[c] == s), None)
            for u in spaces[a].basis:
                for v in spaces[b].basis:
                    x = g.bracket(u, v)
                    if not any(x):
                        continue
                    ratio = labels[b] / labels[a]
                    if ratio != w and ratio != w2:
                        violations.append({"condition": "ratio",
                                           "labels": [format_scalar(labels[a]), format_scalar(labels[b])],
                                           "bracket": _vec_strings(x)})
                    elif target is None or not target.contains(x):
                        violations.append({"condition": "closure",
                                           "labels": [format_scalar(labels[a]), format_scalar(labels[b])],
                                           "bracket": _vec_strings(x)})
    return GradingReport(not violations, violations)


@dataclass
class ConversionTrace:
    commutator_parts: list[tuple[CycloScalar, Subspace]]
    complements: list[tuple[CycloScalar, Subspace]]
    class_representatives: list[CycloScalar]
    rotations: list[int]
    blocks: list[Subspace]

    def to_json(self) -> dict:
        return {
            "W": {format_scalar(l): S.dim for l, S in self.commutator_parts},
            "V": {format_scalar(l): S.dim for l, S in self.complements},
            "class_representatives": [format_scalar(l) for l in self.class_representatives],
            "rotations": self.rotations,
            "block_dims": [B.dim for B in self.blocks],
        }


def _greedy_complement(whole: Subspace, sub: Subspace) -> Subspace:
    acc = sub
    chosen = []
    for v in whole.basis:
        if not acc.contains(v):
            chosen.append(v)
            acc = acc + Subspace.span([v], whole.ambient_dim, whole.n)
    return Subspace.span(chosen, whole.ambient_dim, whole.n)


def triangular_to_hexagonal(t: TriGrading) -> tuple[HexGrading, ConversionTrace]:
    rep = verify_triangular(t)
    if not rep:
        raise ValueError(f"invalid triangular grading: {rep.violations[0]}")
    g = t.algebra
    n = g.field_order
    N = lcm(t.field_order, 6)
    comm = g.commutator()
    W, V = [], []
    for lab, S in t.parts:
        Wa = S.intersect(comm)
        W.append((lab, Wa))
        V.append((lab, _greedy_complement(S, Wa)))
    lifted = [lab.lift(N) for lab, _ in t.parts]
    w = CycloScalar.omega(N)
    ratio_exp = {0: CycloScalar.one(N), 2: w, 4: w * w}

    classes: list[tuple[int, dict[int, int]]] = []  # (rep index, {hex offset: part index})
    for i, (lab, Vi) in enumerate(V):
        if not Vi.dim:
            continue
        for rep_i, members in classes:
            r = lifted[i] / lifted[rep_i]
            hit = next((e for e, z in ratio_exp.items() if z == r), None)
            if hit is not None:
                members[hit] = i
                break
        else:
            classes.append((i, {0: i}))

    zero = Subspace.zero(g.dim, n)
    hex_parts = {k: zero for k in range(6)}
    blocks, rotations, reps = [], [], []
    for rep_i, members in classes:
        Vs = {e: V[members[e]][1] if e in members else zero for e in (0, 2, 4)}
        brs = {1: g.bracket_span(Vs[0], Vs[2]), 3: g.bracket_span(Vs[2], Vs[4]), 5: g.bracket_span(Vs[4], Vs[0])}
        abelian_block = all(not B.dim for B in brs.values())
        s = 0
        u = lifted[rep_i].unit_order()
        if u is not None and 6 % u == 0:
            tk = next(k for k in range(6) if sixth_root(k, N) == lifted[rep_i])
            if tk % 2 == 0 or abelian_block:
                s = tk
        block = zero
        for e, S in list(Vs.items()) + list(brs.items()):
            hex_parts[(e + s) % 6] = hex_parts[(e + s) % 6] + S
            block = block + S
        blocks.append(block)
        rotations.append(s)
        reps.append(t.parts[rep_i][0])

    for B in blocks:
        if not g.is_ideal(B):
            raise AssertionError("block of the conversion is not an ideal")
    if not direct_sum_check(blocks) or sum(B.dim for B in blocks) != g.dim:
        raise AssertionError("blocks of the conversion do not form a direct sum")
    h = HexGrading(g, hex_parts)
    check = verify_hexagonal(h)
    if not check:
        raise AssertionError(f"assembled hexagonal grading is invalid: {check.violations[0]}")
    return h, ConversionTrace(W, V, reps, rotations, blocks)


# -- derivation to grading -------------------------------------------------

def eigenvalues_in_field(M: Matrix) -> list[CycloScalar]:
    """Distinct roots of the min poly among the roots of unity of the field; errors if it does not split."""
    p = min_poly(M)
    n = M.n
    L = lcm(2, n)
    roots = []
    for j in range(L):
        z = CycloScalar.zeta(n, j) if L == n else _root_of_unity(L, j, n)
        if not p(z):
            roots.append(z)
    if len(roots) != p.degree:
        raise ValueError(f"eigenvalues are not all roots of unity in Q(zeta_{n}); raise the field order")
    return roots


def _root_of_unity(L: int, j: int, n: int) -> CycloScalar:
    # L = 2n with n odd: zeta_L = -zeta_n^((n+1)/2)
    base = -CycloScalar.zeta(n, (n + 1) // 2)
    return base ** j


def derivation_to_grading(g: LieAlgebra, D: LinearMap) -> tuple[HexGrading, ConversionTrace]:
    if not is_member(g, D, "derivation"):
        raise ValueError("map is not a derivation")
    per = periodicity(D)
    if per.certificate is None:
        raise ValueError(f"derivation is not periodic ({per.reason})")
    h = working_algebra(D)
    M = D.matrix.lift(h.field_order)
    parts = []
    for lam in eigenvalues_in_field(M):
        E = nullspace(M - Matrix.identity(M.rows, M.n) * lam)
        parts.append((lam, E))
    t = TriGrading(h, parts)
    return triangular_to_hexagonal(t)
