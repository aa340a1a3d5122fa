"""Free-nilpotent Lie algebras on a Hall basis, and homogeneous partitions of N(2, g)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Mapping, Sequence

from sympy import divisors, mobius

from .grading import HexGrading, verify_hexagonal
from .lie import LieAlgebra, quotient
from .linalg import Matrix, Subspace, nullspace, rref_sparse
from .scalar import CycloScalar, format_scalar, parse_scalar

MAX_DIM = 64
BLOCKS = ("X", "Y", "Z")
# hexagonal exponent for each generator block and each cross block
BLOCK_EXPONENT = {"X": 0, "Y": 2, "Z": 4, "XY": 1, "YZ": 3, "XZ": 5}


# -- Hall words ----------------------------------------------------------

# a word is either an int (generator) or a pair (u, v)

def degree(w) -> int:
    return 1 if isinstance(w, int) else degree(w[0]) + degree(w[1])


def _key(w):
    if isinstance(w, int):
        return (1, w)
    return (degree(w), _key(w[0]), _key(w[1]))


def word_str(w, names: Sequence[str] | None = None) -> str:
    if isinstance(w, int):
        return names[w] if names else f"x{w + 1}"
    return f"[{word_str(w[0], names)},{word_str(w[1], names)}]"


@lru_cache(maxsize=None)
def hall_words(c: int, g: int) -> tuple:
    """Hall words of degree <= c on g generators, sorted by degree then by the recursive order key.

    [u, v] is basic when u < v and either v is a generator or v = [v1, v2] with v1 <= u.
    """
    by_deg: dict[int, list] = {1: list(range(g))}
    for d in range(2, c + 1):
        found = []
        for du in range(1, d):
            dv = d - du
            for u in by_deg[du]:
                for v in by_deg[dv]:
                    if not _key(u) < _key(v):
                        continue
                    if isinstance(v, int) or _key(v[0]) <= _key(u):
                        found.append((u, v))
        by_deg[d] = sorted(found, key=_key)
    out = []
    for d in range(1, c + 1):
        out.extend(by_deg[d])
    return tuple(out)


def witt_dimension(d: int, g: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra on g generators."""
    total = sum(int(mobius(e)) * g ** (d // e) for e in divisors(d))
    return total // d


def free_dimension(c: int, g: int) -> int:
    return sum(witt_dimension(d, g) for d in range(1, c + 1))


def _expand(w) -> dict[tuple, int]:
    """Image of a bracket word in the tensor algebra."""
    if isinstance(w, int):
        return {(w,): 1}
    a, b = _expand(w[0]), _expand(w[1])
    out: dict[tuple, int] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            out[x + y] = out.get(x + y, 0) + cx * cy
            out[y + x] = out.get(y + x, 0) - cx * cy
    return {k: v for k, v in out.items() if v}


def free_nilpotent(c: int, g: int, name: str | None = None) -> LieAlgebra:
    """N(c, g): class c, g generators, structure constants on the Hall basis."""
    if c < 1 or g < 1:
        raise ValueError("class and generator count must be positive")
    dim = free_dimension(c, g)
    if dim > MAX_DIM:
        raise ValueError(f"N({c},{g}) has dimension {dim}, above the guard {MAX_DIM}")
    words = hall_words(c, g)
    index = {w: i for i, w in enumerate(words)}
    expansions = [_expand(w) for w in words]

    # per degree: tracked elimination so tensor vectors decompose into Hall words
    solvers = {}
    for d in range(2, c + 1):
        ids = [i for i, w in enumerate(words) if degree(w) == d]
        tensor_cols: dict[tuple, int] = {}
        rows = []
        for i in ids:
            row = {}
            for t, v in expansions[i].items():
                col = tensor_cols.setdefault(t, len(tensor_cols))
                row[col] = Fraction(v)
            rows.append(row)
        big = 10 ** 9
        for r, i in zip(rows, ids):
            r[big + i] = Fraction(1)
        solvers[d] = (tensor_cols, rref_sparse(rows), big)

    def decompose(vec: dict[tuple, int], d: int) -> dict[int, Fraction]:
        tensor_cols, red, big = solvers[d]
        r = {}
        for t, v in vec.items():
            if t not in tensor_cols:
                raise AssertionError("bracket left the span of Hall words")
            r[tensor_cols[t]] = Fraction(v)
        for p, row in red:
            if p >= big:
                break
            cf = r.get(p)
            if not cf:
                continue
            for k, v in row.items():
                nv = r.get(k, 0) - cf * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if any(k < big for k in r):
            raise AssertionError("bracket left the span of Hall words")
        return {k - big: -v for k, v in r.items()}

    brackets = {}
    for i, j in combinations(range(len(words)), 2):
        d = degree(words[i]) + degree(words[j])
        if d > c:
            continue
        pair = (words[i], words[j])
        if pair in index:
            brackets[(i, j)] = {index[pair]: 1}
            continue
        prod_ = _bracket_tensor(expansions[i], expansions[j])
        if prod_:
            brackets[(i, j)] = decompose(prod_, d)
    return LieAlgebra(name or f"N{c}{g}", dim, 6, brackets, validate=dim <= 40)


def _bracket_tensor(a: Mapping[tuple, int], b: Mapping[tuple, int]) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            out[x + y] = out.get(x + y, 0) + cx * cy
            out[y + x] = out.get(y + x, 0) - cx * cy
    return {k: v for k, v in out.items() if v}


# -- N(2, g) coordinates -----------------------------------------------------

def pair_index(g: int, i: int, j: int) -> int:
    """Coordinate of [x_i, x_j] (i < j, 0-based) in N(2, g)."""
    if not 0 <= i < j < g:
        raise ValueError(f"need 0 <= i < j < {g}")
    return g + sum(g - 1 - a for a in range(i)) + (j - i - 1)


def pair_of_index(g: int, k: int) -> tuple[int, int]:
    for i, j in combinations(range(g), 2):
        if pair_index(g, i, j) == k:
            return i, j
    raise ValueError(f"coordinate {k} is not a degree-2 coordinate of N(2,{g})")


def generator_count_of(F: LieAlgebra) -> int:
    for g in range(1, F.dim + 1):
        if g + comb(g, 2) == F.dim:
            return g
    raise ValueError(f"{F.name} is not N(2,g)")


def pair_vector(g: int, i: int, j: int, n: int = 6) -> tuple:
    """[x_i, x_j] in N(2, g) coordinates, with sign for i > j."""
    dim = g + comb(g, 2)
    v = [CycloScalar.zero(n)] * dim
    if i == j:
        return tuple(v)
    if i < j:
        v[pair_index(g, i, j)] = CycloScalar.one(n)
    else:
        v[pair_index(g, j, i)] = -CycloScalar.one(n)
    return tuple(v)


def _block_of(labels: Sequence[str], i: int, j: int) -> str:
    a, b = sorted((labels[i], labels[j]))
    return a if a == b else a + b


def block_span(g: int, labels: Sequence[str], block: str, n: int = 6) -> Subspace:
    dim = g + comb(g, 2)
    idx = [pair_index(g, i, j) for i, j in combinations(range(g), 2) if _block_of(labels, i, j) == block]
    return Subspace.coordinate(idx, dim, n)


@dataclass
class FreePresentation:
    free: LieAlgebra
    generators: int
    partition: dict[str, list[int]]  # block -> generator indices, 0-based
    ideal: Subspace
    cross_parts: dict[str, Subspace]

    @property
    def labels(self) -> list[str]:
        lab = [""] * self.generators
        for b, idx in self.partition.items():
            for i in idx:
                lab[i] = b
        return lab

    @property
    def relation_count(self) -> int:
        return self.ideal.dim

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "partition": {b: [i + 1 for i in self.partition[b]] for b in BLOCKS},
            "cross_parts": {k: [[format_scalar(x) for x in v] for v in S.basis]
                            for k, S in self.cross_parts.items()},
            "ideal_dim": self.ideal.dim,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> FreePresentation:
        g = int(data["generators"])
        F = free_nilpotent(2, g)
        part = {b: [int(i) - 1 for i in data["partition"].get(b, [])] for b in BLOCKS}
        cross = {k: [[parse_scalar(str(x), F.field_order) for x in v] for v in vecs]
                 for k, vecs in data.get("cross_parts", {}).items()}
        return build_partition_ideal(F, part, cross)


def build_partition_ideal(F: LieAlgebra, partition: Mapping[str, Sequence[int]],
                          cross_generators: Mapping[str, Sequence[Sequence]] | None = None) -> FreePresentation:
    g = generator_count_of(F)
    part = {b: sorted(partition.get(b, [])) for b in BLOCKS}
    seen = [i for b in BLOCKS for i in part[b]]
    if sorted(seen) != list(range(g)):
        raise ValueError(f"partition must cover generators 1..{g} exactly once")
    labels = [""] * g
    for b in BLOCKS:
        for i in part[b]:
            labels[i] = b
    n = F.field_order
    ideal = Subspace.zero(F.dim, n)
    for b in BLOCKS:
        ideal = ideal + block_span(g, labels, b, n)
    cross = {}
    for key in ("XY", "XZ", "YZ"):
        vecs = list((cross_generators or {}).get(key, []))
        span = block_span(g, labels, key, n)
        for v in vecs:
            if not span.contains(v):
                raise ValueError(f"cross vector {[format_scalar(x) for x in v]} is not inside the {key} bracket span")
        S = Subspace.span(vecs, F.dim, n)
        cross[key] = S
        ideal = ideal + S
    for key in (cross_generators or {}):
        if key not in cross:
            raise ValueError(f"unknown cross block {key!r}")
    return FreePresentation(F, g, part, ideal, cross)


def presentation_to_grading(p: FreePresentation, name: str | None = None) -> tuple[LieAlgebra, HexGrading, Matrix]:
    """Quotient F/J with the grading <X>, <Y>, <Z>, <[X,Y]>, <[X,Z]>, <[Y,Z]> mod J."""
    F = p.free
    Q, P = quotient(F, p.ideal, name)
    labels = p.labels
    n = F.field_order
    parts = {}
    blocks = list(BLOCKS) + ["XY", "XZ", "YZ"]
    for b in blocks:
        if len(b) == 1:
            src = [F.basis_vector(i) for i in p.partition[b]]
        else:
            src = [F.basis_vector(k) for k in block_span(p.generators, labels, b, n).pivots]
        img = [P.apply(v) for v in src] if Q.dim else []
        parts[BLOCK_EXPONENT[b]] = Subspace.span(img, Q.dim, n)
    h = HexGrading(Q, parts)
    rep = verify_hexagonal(h)
    if not rep:
        raise AssertionError(f"quotient grading is invalid: {rep.violations[0]}")
    return Q, h, P


def grading_to_presentation(g: LieAlgebra, h: HexGrading) -> FreePresentation:
    """Kernel of N(2, r+s+t) -> g sending generators to bases of the generator parts."""
    rep = verify_hexagonal(h)
    if not rep:
        raise ValueError(f"invalid hexagonal grading: {rep.violations[0]}")
    gens, labels = [], []
    for b, k in (("X", 0), ("Y", 2), ("Z", 4)):
        for v in h.parts[k].basis:
            gens.append(v)
            labels.append(b)
    q = len(gens)
    if q == 0:
        raise ValueError("generator parts are empty")
    F = free_nilpotent(2, q)
    cols = list(gens)
    for i, j in combinations(range(q), 2):
        cols.append(g.bracket(gens[i], gens[j]))
    pi = Matrix.from_columns(cols, g.field_order)
    image = Subspace.span(cols, g.dim, g.field_order)
    if image.dim != g.dim:
        raise ValueError("generator parts do not generate the algebra")
    J = nullspace(pi)
    n = F.field_order
    part = {b: [i for i in range(q) if labels[i] == b] for b in BLOCKS}
    cross = {}
    for key in ("XY", "XZ", "YZ"):
        cross[key] = J.intersect(block_span(q, labels, key, n))
    pres = build_partition_ideal(F, part, {k: S.basis for k, S in cross.items()})
    if pres.ideal != J:
        raise AssertionError("kernel does not partition homogeneously")
    return pres


def heisenberg_presentation(m: int) -> FreePresentation:
    """h_m as N(2, 2m) modulo J_X + J_Y + J_{X,Y}, generators x_1..x_m, y_1..y_m.

    J_{X,Y} holds [x_i, y_j] for i != j as well as [x_i, y_i] - [x_j, y_j]; without the
    off-diagonal brackets the quotient would be larger than h_m.
    """
    g = 2 * m
    F = free_nilpotent(2, g)
    vecs = []
    for i in range(m):
        for j in range(m):
            if i != j:
                vecs.append(pair_vector(g, i, m + j))
    for i in range(1, m):
        a, b = pair_vector(g, 0, m), pair_vector(g, i, m + i)
        vecs.append(tuple(x - y for x, y in zip(a, b)))
    return build_partition_ideal(F, {"X": range(m), "Y": range(m, g)}, {"XY": vecs})


def ideal_from_pairs(F: LieAlgebra, pairs: Sequence[tuple[int, int]]) -> Subspace:
    """Span of [x_i, x_j] for 1-based index pairs."""
    g = generator_count_of(F)
    return F.span([pair_vector(g, i - 1, j - 1, F.field_order) for i, j in pairs])


# -- estimates ---------------------------------------------------------------

@dataclass
class EstimateReport:
    n: int
    g: int
    r: int
    holds: bool
    checks: dict[str, bool]
    margins: dict[str, str]

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"n": self.n, "g": self.g, "r": self.r, "holds": self.holds,
                "checks": self.checks, "margins": self.margins}


def check_estimates(n: int, g: int, r: int) -> EstimateReport:
    """g <= n <= g^2/3 + g and g(g-3)/6 <= r <= g(g-1)/2, with exact rationals."""
    n_hi = Fraction(g * g, 3) + g
    r_lo = Fraction(g * (g - 3), 6)
    r_hi = Fraction(g * (g - 1), 2)
    checks = {
        "n_lower": g <= n,
        "n_upper": n <= n_hi,
        "r_lower": r_lo <= r,
        "r_upper": r <= r_hi,
        "consistent": n == g + comb(g, 2) - r,
    }
    margins = {"n_lower": str(n - g), "n_upper": str(n_hi - n),
               "r_lower": str(r - r_lo), "r_upper": str(r_hi - r)}
    return EstimateReport(n, g, r, all(checks.values()), checks, margins)


# -- partition search --------------------------------------------------------

@dataclass
class SearchResult:
    found: bool
    presentation: FreePresentation | None = None
    quotient: LieAlgebra | None = None
    grading: HexGrading | None = None
    tried: int = 0
    note: str = ""

    def __bool__(self):
        return self.found

    def to_json(self) -> dict:
        out = {"found": self.found, "partitions_tried": self.tried, "note": self.note}
        if self.presentation is not None:
            out["presentation"] = self.presentation.to_json()
            out["grading_dims"] = {f"z6^{k}": d for k, d in self.grading.dims().items()}
        return out


ABSENT_NOTE = ("no partition of the given generators works; other generating sets were not searched, "
               "so this is not a proof of non-existence")


def _partition_fits(F: LieAlgebra, g: int, labels: Sequence[str], I: Subspace) -> bool:
    n = F.field_order
    for b in BLOCKS:
        if not I.contains_subspace(block_span(g, labels, b, n)):
            return False
    block_of_coord = {}
    for i, j in combinations(range(g), 2):
        block_of_coord[pair_index(g, i, j)] = _block_of(labels, i, j)
    zero = CycloScalar.zero(n)
    for v in I.basis:
        pieces: dict[str, list] = {}
        for k, x in enumerate(v):
            if x:
                pieces.setdefault(block_of_coord[k], [zero] * F.dim)[k] = x
        for piece in pieces.values():
            if not I.contains(piece):
                return False
    return True


def partition_search(F: LieAlgebra, I: Subspace) -> SearchResult:
    """First (lexicographic) partition with x1 in X under which I partitions F homogeneously."""
    g = generator_count_of(F)
    if g > 6:
        raise ValueError("partition search is limited to g <= 6")
    comm = Subspace.coordinate(range(g, F.dim), F.dim, F.field_order)
    if not comm.contains_subspace(I):
        raise ValueError("ideal must lie inside [F, F]")
    tried = 0
    for rest in product(BLOCKS, repeat=g - 1):
        labels = ("X",) + rest
        tried += 1
        if not _partition_fits(F, g, labels, I):
            continue
        part = {b: [i for i in range(g) if labels[i] == b] for b in BLOCKS}
        cross = {}
        for key in ("XY", "XZ", "YZ"):
            cross[key] = I.intersect(block_span(g, labels, key, F.field_order)).basis
        pres = build_partition_ideal(F, part, cross)
        if pres.ideal != I:
            raise AssertionError("block decomposition of the ideal is inconsistent")
        Q, h, _ = presentation_to_grading(pres)
        return SearchResult(True, pres, Q, h, tried, "found")
    return SearchResult(False, tried=tried, note=ABSENT_NOTE)
