"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Mapping, Sequence

from .linalg import Matrix, Subspace, Vector, nullspace, unit_vector, zero_vector
from .scalar import CycloScalar, as_scalar, format_scalar, parse_scalar


class JacobiError(ValueError):
    def __init__(self, triple, residue):
        self.triple = triple
        self.residue = residue
        i, j, k = (t + 1 for t in triple)
        super().__init__(f"Jacobi identity fails on basis triple (x{i}, x{j}, x{k})")


class NotAnIdealError(ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"not an ideal: [x{pair[0] + 1}, ideal basis vector {pair[1] + 1}] leaves the subspace")


def _sp_add(acc: dict, v: Mapping[int, CycloScalar], c=None):
    for k, x in v.items():
        y = acc.get(k)
        t = x if c is None else x * c
        s = t if y is None else y + t
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class LieAlgebra:
    """A Lie algebra on the basis x1..x_dim, brackets stored for i < j (0-based internally)."""

    def __init__(self, name: str, dim: int, field_order: int,
                 brackets: Mapping[tuple[int, int], Sequence | Mapping[int, object]],
                 validate: bool = True):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        n = field_order
        self.name = name
        self.dim = dim
        self.field_order = n
        table: dict[tuple[int, int], dict[int, CycloScalar]] = {}
        for (i, j), out in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i + 1}, {j + 1}) out of range for dimension {dim}")
            if i == j:
                raise ValueError(f"[x{i + 1}, x{i + 1}] must be zero and cannot be given")
            if isinstance(out, Mapping):
                sparse = {}
                for k, c in out.items():
                    if not 0 <= k < dim:
                        raise IndexError(f"bracket output index {k + 1} out of range")
                    c = as_scalar(c, n)
                    if c:
                        sparse[k] = c
            else:
                if len(out) != dim:
                    raise ValueError(f"bracket coefficient vector must have length {dim}")
                sparse = {k: as_scalar(c, n) for k, c in enumerate(out) if as_scalar(c, n)}
            if i > j:
                i, j = j, i
                sparse = {k: -c for k, c in sparse.items()}
            if (i, j) in table:
                raise ValueError(f"bracket [x{i + 1}, x{j + 1}] given twice")
            if sparse:
                table[(i, j)] = sparse
        self._upper = table
        self._table = dict(table)
        for (i, j), out in table.items():
            self._table[(j, i)] = {k: -c for k, c in out.items()}
        if validate:
            bad = self.jacobi_violation()
            if bad is not None:
                raise JacobiError(*bad)

    # -- elementary operations ------------------------------------------

    @property
    def brackets(self) -> dict[tuple[int, int], dict[int, CycloScalar]]:
        return {k: dict(v) for k, v in self._upper.items()}

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(i, self.dim, self.field_order)

    def zero(self) -> Vector:
        return zero_vector(self.dim, self.field_order)

    def structure(self, i: int, j: int) -> dict[int, CycloScalar]:
        return self._table.get((i, j), {})

    def sparse_bracket(self, u: Mapping[int, CycloScalar], v: Mapping[int, CycloScalar]) -> dict:
        acc: dict[int, CycloScalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                out = self._table.get((i, j))
                if out:
                    _sp_add(acc, out, a * b)
        return acc

    def bracket(self, u: Sequence[CycloScalar], v: Sequence[CycloScalar]) -> Vector:
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError(f"bracket arguments must have length {self.dim}")
        su = {i: x for i, x in enumerate(u) if x}
        sv = {i: x for i, x in enumerate(v) if x}
        return self.dense(self.sparse_bracket(su, sv))

    def dense(self, sparse: Mapping[int, CycloScalar]) -> Vector:
        z = CycloScalar.zero(self.field_order)
        out = [z] * self.dim
        for k, c in sparse.items():
            out[k] = c
        return tuple(out)

    @staticmethod
    def sparse(v: Sequence[CycloScalar]) -> dict[int, CycloScalar]:
        return {i: x for i, x in enumerate(v) if x}

    def jacobi_violation(self):
        """First basis triple i < j < k with nonzero Jacobi sum, or None."""
        for i, j, k in combinations(range(self.dim), 3):
            acc: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self._table.get((b, c))
                if inner:
                    _sp_add(acc, self.sparse_bracket({a: CycloScalar.one(self.field_order)}, inner))
            if acc:
                return (i, j, k), self.dense(acc)
        return None

    def ad(self, x: Sequence[CycloScalar]) -> Matrix:
        """Matrix of ad(x); column j is [x, x_j]."""
        sx = self.sparse(x)
        cols = [self.dense(self.sparse_bracket(sx, {j: CycloScalar.one(self.field_order)}))
                for j in range(self.dim)]
        return Matrix.from_columns(cols, self.field_order) if self.dim else Matrix([[]], self.field_order)

    def is_abelian(self) -> bool:
        return not self._upper

    def is_rational(self) -> bool:
        return all(c.is_rational() for out in self._upper.values() for c in out.values())

    # -- subspaces ------------------------------------------------------

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.dim, self.field_order)

    def bracket_span(self, A: Subspace, B: Subspace) -> Subspace:
        vecs = [self.bracket(a, b) for a in A.basis for b in B.basis]
        return self.span(vecs)

    def full(self) -> Subspace:
        return Subspace.full(self.dim, self.field_order)

    def ideal_violation(self, I: Subspace):
        for bi, b in enumerate(I.basis):
            sb = self.sparse(b)
            for i in range(self.dim):
                v = self.dense(self.sparse_bracket({i: CycloScalar.one(self.field_order)}, sb))
                if not I.contains(v):
                    return (i, bi)
        return None

    def is_ideal(self, I: Subspace) -> bool:
        return self.ideal_violation(I) is None

    def commutator(self) -> Subspace:
        return self.span([self.dense(out) for out in self._upper.values()])

    def center(self) -> Subspace:
        # rows indexed by (j, k): coefficient of x_k in [v, x_j]
        rows = []
        zero = CycloScalar.zero(self.field_order)
        for j in range(self.dim):
            block = [[zero] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for k, c in self.structure(i, j).items():
                    block[k][i] = c
            rows.extend(block)
        if not rows:
            return Subspace.zero(0, self.field_order)
        return nullspace(Matrix(rows, self.field_order))

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        items = []
        for (i, j) in sorted(self._upper):
            out = self._upper[(i, j)]
            items.append({"i": i + 1, "j": j + 1,
                          "out": {str(k + 1): format_scalar(c) for k, c in sorted(out.items())}})
        return {"name": self.name, "field_order": self.field_order, "dim": self.dim, "brackets": items}

    @classmethod
    def from_json(cls, data: Mapping) -> LieAlgebra:
        n = int(data.get("field_order", 6))
        dim = int(data["dim"])
        brackets = {}
        for item in data.get("brackets", []):
            i, j = int(item["i"]) - 1, int(item["j"]) - 1
            if not i < j:
                raise ValueError(f"bracket entries need i < j, got ({i + 1}, {j + 1})")
            brackets[(i, j)] = {int(k) - 1: parse_scalar(str(v), n) for k, v in item["out"].items()}
        return cls(str(data.get("name", "g")), dim, n, brackets)

    @classmethod
    def load(cls, path: str | Path) -> LieAlgebra:
        return cls.from_json(json.loads(Path(path).read_text()))

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, field_order={self.field_order})"

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.dim == other.dim
                and self._upper == other._upper)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self._upper))))


def make_algebra(name: str, dim: int, field_order: int, brackets) -> LieAlgebra:
    return LieAlgebra(name, dim, field_order, brackets)


def bracket(g: LieAlgebra, u, v) -> Vector:
    return g.bracket(u, v)


@dataclass
class SeriesReport:
    terms: list[Subspace]
    nilpotency_class: int | None  # None means not nilpotent
    center: Subspace
    generator_count: int
    relation_count: int | None = None
    derived: list[Subspace] = field(default_factory=list)

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    @property
    def solvable_length(self) -> int | None:
        if self.derived and self.derived[-1].dim:
            return None
        return len(self.derived) - 1 if self.derived else 0

    def to_json(self) -> dict:
        return {
            "lower_central_dims": self.dims,
            "nilpotency_class": self.nilpotency_class if self.is_nilpotent else "not nilpotent",
            "center_dim": self.center.dim,
            "generator_count": self.generator_count,
            "relation_count": self.relation_count,
            "derived_dims": [t.dim for t in self.derived],
        }


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    terms = [g.full()]
    while terms[-1].dim:
        nxt = g.span([g.bracket(g.basis_vector(i), b) for i in range(g.dim) for b in terms[-1].basis])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def derived_series(g: LieAlgebra) -> list[Subspace]:
    terms = [g.full()]
    while terms[-1].dim:
        nxt = g.bracket_span(terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def nilpotency_class(g: LieAlgebra) -> int | None:
    terms = lower_central_series(g)
    if terms[-1].dim:
        return None
    return len(terms) - 1


def series(g: LieAlgebra, relation_count: int | None = None) -> SeriesReport:
    terms = lower_central_series(g)
    cls = None if terms[-1].dim else len(terms) - 1
    gens = g.dim - (terms[1].dim if len(terms) > 1 else 0)
    return SeriesReport(terms, cls, g.center(), gens, relation_count, derived_series(g))


def quotient(g: LieAlgebra, I: Subspace, name: str | None = None) -> tuple[LieAlgebra, Matrix]:
    """g/I on the non-pivot coordinates of I, with the projection matrix."""
    if I.ambient_dim != g.dim:
        raise ValueError("ideal lives in the wrong ambient space")
    bad = g.ideal_violation(I)
    if bad is not None:
        raise NotAnIdealError(bad)
    comp = I.complement_coordinates()
    q = len(comp)
    n = g.field_order

    def project(v):
        r = I.reduce(v)
        return [r[c] for c in comp]

    cols = [project(g.basis_vector(j)) for j in range(g.dim)]
    if q:
        P = Matrix.from_columns(cols, n)
    else:
        P = Matrix([[CycloScalar.zero(n)] * g.dim], n)  # placeholder row for the zero algebra
    brackets = {}
    for a, b in combinations(range(q), 2):
        out = project(g.bracket(g.basis_vector(comp[a]), g.basis_vector(comp[b])))
        if any(out):
            brackets[(a, b)] = out
    Q = LieAlgebra(name or f"{g.name}/I", q, n, brackets)
    return Q, P


def direct_sum(g: LieAlgebra, h: LieAlgebra, name: str | None = None) -> LieAlgebra:
    if g.field_order != h.field_order:
        raise ValueError(f"field order mismatch: {g.field_order} vs {h.field_order}")
    brackets = {}
    for (i, j), out in g.brackets.items():
        brackets[(i, j)] = out
    for (i, j), out in h.brackets.items():
        brackets[(i + g.dim, j + g.dim)] = {k + g.dim: c for k, c in out.items()}
    return LieAlgebra(name or f"{g.name}+{h.name}", g.dim + h.dim, g.field_order, brackets)


def abelian(dim: int, field_order: int = 6, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(name or f"C{dim}", dim, field_order, {})


def heisenberg(m: int, field_order: int = 6) -> LieAlgebra:
    """h_m on x_1..x_m, y_1..y_m, z with [x_i, y_i] = z."""
    z = 2 * m
    return LieAlgebra(f"heisenberg_{m}", 2 * m + 1, field_order, {(i, m + i): {z: 1} for i in range(m)})
