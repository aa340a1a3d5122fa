"""Engel identities, ad-nilpotent bases, E_m lower bounds and property-F falsification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

import numpy as np
import sympy

from .lie import LieAlgebra
from .linalg import Matrix, Subspace, rank
from .scalar import CycloScalar, format_scalar

MAX_ENGEL_DEGREE = 5


def _vec(g: LieAlgebra, x) -> tuple:
    if len(x) != g.dim:
        raise ValueError(f"vector must have length {g.dim}")
    n = g.field_order
    return tuple(v if isinstance(v, CycloScalar) else CycloScalar.rational(Fraction(v), n) for v in x)


def ad_power(g: LieAlgebra, x, m: int) -> Matrix:
    return g.ad(_vec(g, x)) ** m


def ad_power_zero(g: LieAlgebra, x, m: int) -> bool:
    """Exact test of ad(x)^m = 0, applied vector by vector."""
    if m < 1:
        raise ValueError("m must be positive")
    x = g.sparse(_vec(g, x))
    one = CycloScalar.one(g.field_order)
    for j in range(g.dim):
        v = {j: one}
        for _ in range(m):
            v = g.sparse_bracket(x, v)
            if not v:
                break
        if v:
            return False
    return True


@dataclass
class PreEngelResult:
    holds: bool
    m: int
    failing_column: int | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"pre_engel": self.holds, "m": self.m}
        if self.failing_column is not None:
            out["failing_column"] = self.failing_column + 1
        return out


def pre_engel_witness(g: LieAlgebra, basis: Matrix, m: int) -> PreEngelResult:
    """Every column of an invertible basis matrix is ad-nilpotent of degree m."""
    if basis.rows != g.dim or basis.cols != g.dim or rank(basis) != g.dim:
        raise ValueError("basis matrix must be square and invertible")
    for j in range(g.dim):
        if not ad_power_zero(g, basis.column(j), m):
            return PreEngelResult(False, m, j)
    return PreEngelResult(True, m)


# -- polarized Engel identity ----------------------------------------------

def _ad_arrays(g: LieAlgebra):
    entries = [c for out in g.brackets.values() for c in out.values()]
    integral = all(c.is_rational() and c.rational_value().denominator == 1 for c in entries)
    d = g.dim
    if integral:
        mats = np.zeros((d, d, d), dtype=object)
        mats[:] = 0
    else:
        mats = np.empty((d, d, d), dtype=object)
        mats[:] = CycloScalar.zero(g.field_order)
    for i in range(d):
        for j in range(d):
            for k, c in g.structure(i, j).items():
                mats[i, k, j] = int(c.rational_value()) if integral else c
    bound = max((abs(int(c.rational_value())) for c in entries), default=0) if integral else None
    return mats, integral, bound


def _polarized_table(g: LieAlgebra, m: int):
    """Map each multiset (sorted index tuple) of size m to its symmetrized operator.

    Over characteristic zero, ad(x)^m vanishes identically iff every symmetrized
    product sum_{distinct orderings} ad(e_i1)...ad(e_im) vanishes.
    """
    mats, integral, bound = _ad_arrays(g)
    d = g.dim
    use_int64 = integral and (factorial(m) * (d * max(bound, 1)) ** m < 2 ** 62)
    if use_int64:
        mats = mats.astype(np.int64)
    ident = np.identity(d, dtype=np.int64 if use_int64 else object)
    if not use_int64 and not integral:
        z, o = CycloScalar.zero(g.field_order), CycloScalar.one(g.field_order)
        ident = np.array([[o if i == j else z for j in range(d)] for i in range(d)], dtype=object)
    level = {(): ident}
    for size in range(1, m + 1):
        nxt = {}
        for ms in _multisets(d, size):
            acc = None
            for i in sorted(set(ms)):
                rest = list(ms)
                rest.remove(i)
                term = mats[i] @ level[tuple(rest)]
                acc = term if acc is None else acc + term
            nxt[ms] = acc
        level = nxt
    return level


def _multisets(d: int, size: int):
    if size == 0:
        yield ()
        return
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, d):
            for tail in rec(i, left - 1):
                yield (i,) + tail
    yield from rec(0, size)


def _is_zero_array(a) -> bool:
    if a.dtype == object:
        return not any(bool(x) for x in a.flat)
    return not a.any()


@dataclass
class EngelIdentityResult:
    holds: bool
    m: int
    failing_multiset: tuple[int, ...] | None = None
    violator: tuple | None = None
    violator_source: str | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"engel": self.holds, "m": self.m}
        if not self.holds:
            out["failing_multiset"] = [i + 1 for i in self.failing_multiset]
            out["violator"] = [format_scalar(x) for x in self.violator] if self.violator else None
            out["violator_source"] = self.violator_source
        return out


def candidate_pool(g: LieAlgebra) -> list[tuple]:
    """Basis vectors, then e_i + e_j and e_i - e_j for i < j."""
    n = g.field_order
    pool = [g.basis_vector(i) for i in range(g.dim)]
    one = CycloScalar.one(n)
    for i, j in combinations(range(g.dim), 2):
        for s in (one, -one):
            v = list(g.zero())
            v[i], v[j] = one, s
            pool.append(tuple(v))
    return pool


def find_violator(g: LieAlgebra, m: int, seed: int = 0, samples: int = 200):
    for v in candidate_pool(g):
        if not ad_power_zero(g, v, m):
            return v, "pool"
    rng = random.Random(seed)
    for _ in range(samples):
        v = tuple(CycloScalar.rational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), g.field_order)
                  for _ in range(g.dim))
        if not ad_power_zero(g, v, m):
            return v, "random"
    return None, None


def engel_identity(g: LieAlgebra, m: int, seed: int = 0) -> EngelIdentityResult:
    """Decide ad(x)^m = 0 for every x via full polarization."""
    if m < 1 or m > MAX_ENGEL_DEGREE:
        raise ValueError(f"Engel degree must be in 1..{MAX_ENGEL_DEGREE}")
    table = _polarized_table(g, m)
    for ms in sorted(table):
        if not _is_zero_array(table[ms]):
            v, src = find_violator(g, m, seed)
            if v is None:
                raise AssertionError("polarized identity fails but no violating element was found")
            return EngelIdentityResult(False, m, ms, v, src)
    return EngelIdentityResult(True, m)


@dataclass
class EngelReport:
    m: int
    identity_holds: bool | None
    witness_violator: tuple | None
    em_span_lower_bound: int
    witnesses: list[tuple] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "identity_holds": self.identity_holds,
            "witness_violator": [format_scalar(x) for x in self.witness_violator] if self.witness_violator else None,
            "em_span_lower_bound": self.em_span_lower_bound,
            "witnesses": [[format_scalar(x) for x in v] for v in self.witnesses],
        }


def em_span_bound(g: LieAlgebra, m: int, candidates: Sequence | None = None,
                  decide_identity: bool = True) -> EngelReport:
    """Verified lower bound on dim E_m(g) from the ad-nilpotent members of a candidate pool."""
    pool = [_vec(g, v) for v in candidates] if candidates is not None else candidate_pool(g)
    good, violator = [], None
    for v in pool:
        if ad_power_zero(g, v, m):
            good.append(v)
        elif violator is None:
            violator = v
    span = Subspace.span(good, g.dim, g.field_order)
    holds = None
    if decide_identity and m <= MAX_ENGEL_DEGREE:
        holds = engel_identity(g, m).holds
    return EngelReport(m, holds, violator, span.dim, good)


# -- property F ------------------------------------------------------------

@dataclass
class PropertyFWitness:
    basis: Matrix
    pair_choice: dict[tuple[int, int, int], tuple[int, int]]

    def to_json(self) -> dict:
        return {"basis": self.basis.to_strings(),
                "pairs": [{"triple": [a + 1 for a in t], "pair": [a + 1 for a in p]}
                          for t, p in sorted(self.pair_choice.items())]}


@dataclass
class PropertyFResult:
    holds: bool
    failing_triple: tuple[int, int, int] | None = None
    failing_pair: tuple[int, int] | None = None
    nonzero_bracket: tuple | None = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"not_property_f": self.holds}
        if not self.holds:
            out["failing_triple"] = [a + 1 for a in self.failing_triple]
            out["failing_pair"] = [a + 1 for a in self.failing_pair] if self.failing_pair else None
            if self.nonzero_bracket is not None:
                out["nonzero_bracket"] = [format_scalar(x) for x in self.nonzero_bracket]
        return out


def pairs_to_choice(dim: int, pairs: Sequence[tuple[int, int]]) -> dict:
    """For each triple, the first listed (1-based) pair it contains; triples without one are left out."""
    zero_based = [tuple(sorted((a - 1, b - 1))) for a, b in pairs]
    choice = {}
    for t in combinations(range(dim), 3):
        for p in zero_based:
            if p[0] in t and p[1] in t:
                choice[t] = p
                break
    return choice


def _double_bracket_zero(g: LieAlgebra, a, b):
    w = g.bracket(a, g.bracket(a, b))
    return (not any(w)), w


def pair_is_good(g: LieAlgebra, a, b) -> tuple[bool, tuple | None]:
    ok1, w1 = _double_bracket_zero(g, a, b)
    if not ok1:
        return False, w1
    ok2, w2 = _double_bracket_zero(g, b, a)
    return ok2, None if ok2 else w2


def property_f_falsify(g: LieAlgebra, w: PropertyFWitness) -> PropertyFResult:
    """True certifies that g does not have property F."""
    d = g.dim
    if w.basis.rows != d or w.basis.cols != d or rank(w.basis) != d:
        raise ValueError("property-F witness needs an invertible basis")
    triples = list(combinations(range(d), 3))
    missing = [t for t in triples if t not in w.pair_choice]
    if missing:
        raise ValueError(f"pair choice misses {len(missing)} triples, e.g. {[a + 1 for a in missing[0]]}")
    cols = w.basis.columns()
    for t in triples:
        p = w.pair_choice[t]
        if not (p[0] in t and p[1] in t and p[0] != p[1]):
            raise ValueError(f"pair {p} is not inside triple {t}")
        ok, bad = pair_is_good(g, cols[p[0]], cols[p[1]])
        if not ok:
            return PropertyFResult(False, t, p, bad)
    return PropertyFResult(True)


def valid_pair_choice(g: LieAlgebra, basis: Matrix) -> PropertyFWitness | None:
    """First valid pair per triple on the given basis, or None if some triple has none."""
    cols = basis.columns()
    d = g.dim
    good = {p for p in combinations(range(d), 2) if pair_is_good(g, cols[p[0]], cols[p[1]])[0]}
    choice = {}
    for t in combinations(range(d), 3):
        p = next((q for q in combinations(t, 2) if q in good), None)
        if p is None:
            return None
        choice[t] = p
    return PropertyFWitness(basis, choice)


# -- filiform certificate --------------------------------------------------

@dataclass
class LambdaCertificate:
    """An entry of ad(x)^m equal to c * lambda_1^m for generic x = sum lambda_i e_i."""
    row: int
    col: int
    coefficient: int
    power: int

    def to_json(self) -> dict:
        return {"row": self.row + 1, "col": self.col + 1, "coefficient": self.coefficient, "power": self.power}


def first_coordinate_certificate(g: LieAlgebra, m: int = 4) -> LambdaCertificate | None:
    """Find an entry of ad(x)^m that is a nonzero multiple of lambda_1^m; it forces lambda_1 = 0."""
    if not g.is_rational():
        raise ValueError("symbolic certificate needs rational structure constants")
    lam = sympy.symbols(f"l1:{g.dim + 1}")
    d = g.dim
    A = sympy.zeros(d, d)
    for (i, j), out in g.brackets.items():
        for k, c in out.items():
            q = c.rational_value()
            cq = sympy.Rational(q.numerator, q.denominator)
            A[k, j] += lam[i] * cq
            A[k, i] -= lam[j] * cq
    P = (A ** m).applyfunc(sympy.expand)
    for r in range(d):
        for c in range(d):
            e = P[r, c]
            if e == 0:
                continue
            poly = sympy.Poly(e, *lam)
            if len(poly.terms()) == 1:
                mon, coeff = poly.terms()[0]
                if mon[0] == m and sum(mon) == m:
                    return LambdaCertificate(r, c, int(coeff), m)
    return None
