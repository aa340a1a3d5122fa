"""Derivations and prederivations: spaces, membership, periodicity, order changes."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Mapping, Sequence

from .lie import LieAlgebra
from .linalg import Matrix, Subspace, inverse, min_poly, nullspace_sparse
from .scalar import CycloScalar, Poly, as_scalar, cyclic_remainders, poly_divides_cyclic, poly_squarefree

DEFAULT_BOUND = 720
KINDS = ("derivation", "prederivation")


@dataclass(frozen=True)
class LinearMap:
    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        d = self.algebra.dim
        if self.matrix.rows != d or self.matrix.cols != d:
            raise ValueError(f"map must be {d}x{d} for algebra {self.algebra.name}")

    @classmethod
    def diagonal(cls, g: LieAlgebra, values: Sequence) -> LinearMap:
        n = g.field_order
        for v in values:
            if isinstance(v, CycloScalar):
                n = lcm(n, v.n)
        return cls(g, Matrix.diag([as_scalar(v, n) for v in values], n))

    @property
    def n(self) -> int:
        return self.matrix.n

    def image(self, l: int):
        return self.matrix.column(l)

    def to_json(self) -> dict:
        return {"algebra": self.algebra.name, "matrix": self.matrix.to_strings()}

    @classmethod
    def from_json(cls, g: LieAlgebra, data: Mapping, field_order: int | None = None) -> LinearMap:
        n = int(data.get("field_order", field_order or g.field_order))
        return cls(g, Matrix.from_strings(data["matrix"], n))


def lift_algebra(g: LieAlgebra, n: int) -> LieAlgebra:
    if n == g.field_order:
        return g
    br = {ij: {k: c.lift(n) for k, c in out.items()} for ij, out in g.brackets.items()}
    return LieAlgebra(g.name, g.dim, n, br, validate=False)


def working_algebra(M: LinearMap) -> LieAlgebra:
    """The map's algebra over the common field of the map and the structure constants."""
    return lift_algebra(M.algebra, lcm(M.algebra.field_order, M.n))


# -- linear systems ------------------------------------------------------

def _triple_table(g: LieAlgebra) -> dict[tuple[int, int, int], dict[int, CycloScalar]]:
    """Nonzero [e_a, [e_b, e_c]] for all a and b < c."""
    one = CycloScalar.one(g.field_order)
    out = {}
    for (b, c), w in g.brackets.items():
        for a in range(g.dim):
            t = g.sparse_bracket({a: one}, w)
            if t:
                out[(a, b, c)] = t
                out[(a, c, b)] = {k: -v for k, v in t.items()}
    return out


def derivation_equations(g: LieAlgebra) -> list[dict[int, CycloScalar]]:
    """Sparse rows in the unknowns D[k][l] (index k*dim + l) for the derivation identity."""
    d = g.dim
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            eqs: dict[int, dict[int, CycloScalar]] = {}

            def add(r, var, c):
                row = eqs.setdefault(r, {})
                s = row.get(var, 0) + c
                if s:
                    row[var] = s
                else:
                    row.pop(var, None)

            for s, c in g.structure(i, j).items():
                for r in range(d):
                    add(r, r * d + s, c)
            for k in range(d):
                for r, c in g.structure(k, j).items():
                    add(r, k * d + i, -c)
                for r, c in g.structure(i, k).items():
                    add(r, k * d + j, -c)
            rows.extend(row for row in eqs.values() if row)
    return rows


def prederivation_equations(g: LieAlgebra) -> list[dict[int, CycloScalar]]:
    d = g.dim
    T = _triple_table(g)
    if not T:
        return []
    rows = []
    for i in range(d):
        for j in range(d):
            for k in range(j + 1, d):
                eqs: dict[int, dict[int, CycloScalar]] = {}

                def add(r, var, c):
                    row = eqs.setdefault(r, {})
                    s = row.get(var, 0) + c
                    if s:
                        row[var] = s
                    else:
                        row.pop(var, None)

                for s, c in T.get((i, j, k), {}).items():
                    for r in range(d):
                        add(r, r * d + s, c)
                for a in range(d):
                    for r, c in T.get((a, j, k), {}).items():
                        add(r, a * d + i, -c)
                    for r, c in T.get((i, a, k), {}).items():
                        add(r, a * d + j, -c)
                    for r, c in T.get((i, j, a), {}).items():
                        add(r, a * d + k, -c)
                rows.extend(row for row in eqs.values() if row)
    return rows


def derivation_space(g: LieAlgebra) -> Subspace:
    """Der(g) as a subspace of row-major flattened dim x dim matrices."""
    return nullspace_sparse(derivation_equations(g), g.dim * g.dim, g.field_order)


def prederivation_space(g: LieAlgebra) -> Subspace:
    return nullspace_sparse(prederivation_equations(g), g.dim * g.dim, g.field_order)


def space_matrices(S: Subspace, dim: int) -> list[Matrix]:
    return [Matrix.unflatten(v, dim, S.n) for v in S.basis]


# -- direct membership ---------------------------------------------------

@dataclass(frozen=True)
class Membership:
    kind: str
    holds: bool
    violation: tuple[int, ...] | None = None
    residue: tuple | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"kind": self.kind, "holds": self.holds}
        if self.violation is not None:
            out["violation"] = [i + 1 for i in self.violation]
            out["residue"] = [str(x) for x in self.residue]
        return out


def _derivation_violation(g: LieAlgebra, M: Matrix):
    cols = [g.sparse(M.column(l)) for l in range(g.dim)]
    one = CycloScalar.one(g.field_order)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            acc = {}
            for s, c in g.structure(i, j).items():
                for r, x in cols[s].items():
                    acc[r] = acc.get(r, 0) + c * x
            for r, x in g.sparse_bracket(cols[i], {j: one}).items():
                acc[r] = acc.get(r, 0) - x
            for r, x in g.sparse_bracket({i: one}, cols[j]).items():
                acc[r] = acc.get(r, 0) - x
            acc = {r: x for r, x in acc.items() if x}
            if acc:
                return (i, j), g.dense({r: as_scalar(x, g.field_order) for r, x in acc.items()})
    return None


def _prederivation_violation(g: LieAlgebra, M: Matrix):
    d = g.dim
    cols = [g.sparse(M.column(l)) for l in range(d)]
    one = CycloScalar.one(g.field_order)
    e = [{a: one} for a in range(d)]
    br = g.sparse_bracket
    for i in range(d):
        for j in range(d):
            for k in range(j + 1, d):
                inner = br(e[j], e[k])
                acc = {}

                def add(v, sign=1):
                    for r, x in v.items():
                        acc[r] = acc.get(r, 0) + (x if sign > 0 else -x)

                lhs = {}
                for s, c in br(e[i], inner).items():
                    for r, x in cols[s].items():
                        lhs[r] = lhs.get(r, 0) + c * x
                add(lhs)
                add(br(cols[i], inner), -1)
                add(br(e[i], br(cols[j], e[k])), -1)
                add(br(e[i], br(e[j], cols[k])), -1)
                acc = {r: x for r, x in acc.items() if x}
                if acc:
                    return (i, j, k), g.dense({r: as_scalar(x, g.field_order) for r, x in acc.items()})
    return None


def is_member(g: LieAlgebra, M: LinearMap | Matrix, kind: str = "derivation") -> Membership:
    """Check the (pre)derivation identity directly on basis pairs or triples."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    mat = M.matrix if isinstance(M, LinearMap) else M
    n = lcm(g.field_order, mat.n)
    h = lift_algebra(g, n)
    mat = mat.lift(n)
    found = _derivation_violation(h, mat) if kind == "derivation" else _prederivation_violation(h, mat)
    if found is None:
        return Membership(kind, True)
    return Membership(kind, False, found[0], found[1])


# -- periodicity ---------------------------------------------------------

@dataclass(frozen=True)
class PeriodicityCertificate:
    order: int
    min_poly: Poly
    semisimple: bool
    divisibility_witness: Poly

    def replay(self, M: Matrix) -> bool:
        """Re-derive every claim, including a direct matrix-power check."""
        p = min_poly(M)
        if p != self.min_poly or not poly_squarefree(p) or not self.semisimple:
            return False
        if not poly_divides_cyclic(p, self.order) or self.divisibility_witness != Poly([1], p.n):
            return False
        if any(poly_divides_cyclic(p, d) for d in range(1, self.order) if self.order % d == 0):
            return False
        return M ** self.order == Matrix.identity(M.rows, M.n)

    def to_json(self) -> dict:
        return {"order": self.order, "min_poly": self.min_poly.to_strings(),
                "semisimple": self.semisimple,
                "divisibility_witness": self.divisibility_witness.to_strings()}


@dataclass(frozen=True)
class PeriodicityResult:
    certificate: PeriodicityCertificate | None
    reason: str | None  # "non-semisimple" or "bound-exhausted" when absent
    min_poly: Poly

    @property
    def order(self) -> int | None:
        return self.certificate.order if self.certificate else None

    def __bool__(self):
        return self.certificate is not None

    def to_json(self) -> dict:
        if self.certificate is not None:
            return {"periodic": True, **self.certificate.to_json()}
        return {"periodic": False, "reason": self.reason, "min_poly": self.min_poly.to_strings()}


def periodicity(M: LinearMap | Matrix, bound: int = DEFAULT_BOUND) -> PeriodicityResult:
    mat = M.matrix if isinstance(M, LinearMap) else M
    p = min_poly(mat)
    if not poly_squarefree(p):
        return PeriodicityResult(None, "non-semisimple", p)
    one = Poly([1], p.n)
    for m, r in cyclic_remainders(p):
        if m > bound:
            break
        if r == one:
            return PeriodicityResult(PeriodicityCertificate(m, p, True, r), None, p)
    return PeriodicityResult(None, "bound-exhausted", p)


def periodic_order(M: LinearMap | Matrix, bound: int = DEFAULT_BOUND) -> PeriodicityCertificate | None:
    return periodicity(M, bound).certificate


@dataclass(frozen=True)
class InverseCheck:
    holds: bool
    inverse: Matrix | None
    membership: Membership | None

    def __bool__(self):
        return self.holds


def inverse_derivation_check(g: LieAlgebra, M: LinearMap | Matrix, kind: str = "derivation") -> InverseCheck:
    mat = M.matrix if isinstance(M, LinearMap) else M
    inv = inverse(mat)
    if inv is None:
        return InverseCheck(False, None, None)
    mem = is_member(g, inv, kind)
    return InverseCheck(bool(mem), inv, mem)


def extend_order(D: LinearMap, k: int) -> LinearMap:
    """Rescale a diagonal order-6 derivation so one entry is 1, then multiply by a primitive 6k-th root."""
    if k < 1:
        raise ValueError("k must be positive")
    M = D.matrix
    if not M.is_diagonal():
        raise ValueError("extend_order needs a diagonal map")
    diag = M.diagonal()
    for x in diag:
        u = x.unit_order()
        if u is None or 6 % u:
            raise ValueError(f"diagonal entry {x} is not a sixth root of unity")
    if not is_member(D.algebra, D, "derivation"):
        raise ValueError("extend_order needs a derivation")
    n = lcm(M.n, 6 * k)
    lead = diag[0].lift(n)
    root = CycloScalar.zeta(6 * k, 1).lift(n)
    scale = root / lead
    return LinearMap(D.algebra, Matrix.diag([x.lift(n) * scale for x in diag], n))
