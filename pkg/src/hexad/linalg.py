"""Exact matrices and subspaces over cyclotomic fields.

Elimination runs on sparse rows; when every input entry is rational the work
is done on plain Fractions and lifted back afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import CycloScalar, Poly, as_scalar

Vector = tuple  # tuple[CycloScalar, ...]


def _common_order(values: Iterable[CycloScalar], default: int) -> int:
    n = None
    for v in values:
        if n is None or v.n == n:
            n = v.n
        elif v.n % n == 0:
            n = v.n
        elif n % v.n:
            raise ValueError(f"incompatible field orders {n} and {v.n}")
    return n if n is not None else default


def _to_fast(rows: Sequence[Sequence[CycloScalar]], n: int):
    """Convert dense rows to sparse dicts, using Fractions when possible."""
    rational = all(x.is_rational() for r in rows for x in r if x)
    out = []
    for r in rows:
        if rational:
            out.append({j: x.coeffs[0] for j, x in enumerate(r) if x})
        else:
            out.append({j: (x if x.n == n else x.lift(n)) for j, x in enumerate(r) if x})
    return out, rational


def _from_fast(value, n: int) -> CycloScalar:
    if isinstance(value, CycloScalar):
        return value
    return CycloScalar(n, [value])


def rref_sparse(rows: list[dict]) -> list[tuple[int, dict]]:
    """Reduced row echelon form of sparse rows; returns (pivot, row) sorted by pivot.

    Pivot entries are 1 and every pivot column is zero in all other rows.
    """
    pivots: dict[int, dict] = {}
    for src in rows:
        r = {k: v for k, v in src.items() if v}
        for p in sorted(set(r) & set(pivots)):
            c = r.get(p)
            if not c:
                continue
            for k, v in pivots[p].items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for q, row in pivots.items():
            c = row.get(p)
            if c:
                for k, v in r.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        pivots[p] = r
    return sorted(pivots.items())


class Matrix:
    """Dense matrix over Q(zeta_n)."""

    __slots__ = ("rows", "cols", "n", "entries")

    def __init__(self, entries: Sequence[Sequence], n: int | None = None):
        raw = [list(r) for r in entries]
        if not raw:
            raise ValueError("matrix needs at least one row")
        cols = len(raw[0])
        if any(len(r) != cols for r in raw):
            raise ValueError("matrix rows have different lengths")
        if n is None:
            n = _common_order((x for r in raw for x in r if isinstance(x, CycloScalar)), 6)
        self.rows = len(raw)
        self.cols = cols
        self.n = n
        self.entries = tuple(tuple(as_scalar(x, n) for x in r) for r in raw)

    @classmethod
    def identity(cls, k: int, n: int = 6) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int, n: int = 6) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], n)

    @classmethod
    def diag(cls, values: Sequence, n: int | None = None) -> Matrix:
        k = len(values)
        if n is None:
            n = _common_order((v for v in values if isinstance(v, CycloScalar)), 6)
        return cls([[values[i] if i == j else 0 for j in range(k)] for i in range(k)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], n: int | None = None) -> Matrix:
        return cls([list(r) for r in zip(*columns)], n)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], n: int = 6) -> Matrix:
        return cls([[as_scalar(x, n) for x in r] for r in rows], n)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def lift(self, m: int) -> Matrix:
        if m == self.n:
            return self
        return Matrix([[x.lift(m) for x in r] for r in self.entries], m)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self.entries)], self.n)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def is_diagonal(self) -> bool:
        return all(not x for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[CycloScalar]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def _order_with(self, other) -> int:
        return _common_order([CycloScalar.zero(self.n), CycloScalar.zero(other.n)], self.n)

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                      self._order_with(other))

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.entries], self.n)

    def __mul__(self, c) -> Matrix:
        c = as_scalar(c, self.n) if not isinstance(c, CycloScalar) else c
        m = _common_order([c, CycloScalar.zero(self.n)], self.n)
        return Matrix([[a * c for a in r] for r in self.entries], m)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("matrix shape mismatch")
            m = self._order_with(other)
            zero = CycloScalar.zero(m)
            cols = other.columns()
            out = []
            for r in self.entries:
                nz = [(k, a) for k, a in enumerate(r) if a]
                row = []
                for c in cols:
                    acc = zero
                    for k, a in nz:
                        b = c[k]
                        if b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out, m)
        return self.apply(other)

    def apply(self, v: Sequence[CycloScalar]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        zero = CycloScalar.zero(self.n)
        out = []
        for r in self.entries:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            inv = inverse(self)
            if inv is None:
                raise ZeroDivisionError("singular matrix")
            return inv ** (-k)
        acc = Matrix.identity(self.rows, self.n)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Matrix(" + repr(self.to_strings()) + ")"

    def flatten(self) -> Vector:
        """Row-major coordinate vector."""
        return tuple(x for r in self.entries for x in r)

    @classmethod
    def unflatten(cls, v: Sequence[CycloScalar], k: int, n: int | None = None) -> Matrix:
        return cls([list(v[i * k:(i + 1) * k]) for i in range(k)], n)


def zero_vector(k: int, n: int = 6) -> Vector:
    z = CycloScalar.zero(n)
    return (z,) * k


def unit_vector(i: int, k: int, n: int = 6) -> Vector:
    z, o = CycloScalar.zero(n), CycloScalar.one(n)
    return tuple(o if j == i else z for j in range(k))


def rank(M: Matrix) -> int:
    rows, _ = _to_fast(M.entries, M.n)
    return len(rref_sparse(rows))


class Subspace:
    """A subspace of Q(zeta_n)^d held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "n", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Sequence[Vector], pivots: Sequence[int], n: int):
        self.ambient_dim = ambient_dim
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[CycloScalar]], ambient_dim: int, n: int | None = None) -> Subspace:
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if n is None:
            n = _common_order((x for v in vecs for x in v if isinstance(x, CycloScalar)), 6)
        vecs = [tuple(as_scalar(x, n) for x in v) for v in vecs]
        rows, _ = _to_fast(vecs, n)
        red = rref_sparse(rows)
        zero = CycloScalar.zero(n)
        basis = []
        for _, r in red:
            dense = [zero] * ambient_dim
            for k, v in r.items():
                dense[k] = _from_fast(v, n)
            basis.append(tuple(dense))
        return cls(ambient_dim, basis, [p for p, _ in red], n)

    @classmethod
    def zero(cls, ambient_dim: int, n: int = 6) -> Subspace:
        return cls(ambient_dim, (), (), n)

    @classmethod
    def full(cls, ambient_dim: int, n: int = 6) -> Subspace:
        return cls.span([unit_vector(i, ambient_dim, n) for i in range(ambient_dim)], ambient_dim, n)

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int, n: int = 6) -> Subspace:
        return cls.span([unit_vector(i, ambient_dim, n) for i in sorted(set(indices))], ambient_dim, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v: Sequence[CycloScalar]) -> Vector:
        """Residual of v after clearing the pivot coordinates; zero iff v is in the subspace."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        out = list(v)
        for p, row in zip(self.pivots, self.basis):
            c = out[p]
            if c:
                out = [a - c * b if b else a for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[CycloScalar]) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[CycloScalar]) -> list[CycloScalar]:
        """Coefficients of v in the echelon basis (v must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim, _common_order(
            [CycloScalar.zero(self.n), CycloScalar.zero(other.n)], self.n))

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        n = _common_order([CycloScalar.zero(self.n), CycloScalar.zero(other.n)], self.n)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim, n)
        # solve sum a_i A_i - sum b_j B_j = 0
        cols = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        M = Matrix.from_columns(cols, n)
        ker = nullspace(M)
        vecs = []
        for k in ker.basis:
            acc = zero_vector(self.ambient_dim, n)
            for c, b in zip(k[:self.dim], self.basis):
                if c:
                    acc = tuple(x + c * y for x, y in zip(acc, b))
            vecs.append(acc)
        return Subspace.span(vecs, self.ambient_dim, n)

    def is_direct(self, other: Subspace) -> bool:
        return self.dim + other.dim == (self + other).dim

    def complement_coordinates(self) -> list[int]:
        return [i for i in range(self.ambient_dim) if i not in set(self.pivots)]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in b] for b in self.basis]


def direct_sum_check(parts: Sequence[Subspace]) -> bool:
    """True iff the dimensions of the parts add up to the dimension of their sum."""
    if not parts:
        return True
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total.dim == sum(p.dim for p in parts)


def nullspace_sparse(rows: Sequence[dict], ncols: int, n: int = 6) -> Subspace:
    """Null space of a system given as sparse rows {column: CycloScalar}."""
    rational = all(x.is_rational() for r in rows for x in r.values())
    if rational:
        fast = [{j: x.coeffs[0] for j, x in r.items() if x} for r in rows]
    else:
        fast = [{j: (x if x.n == n else x.lift(n)) for j, x in r.items() if x} for r in rows]
    red = rref_sparse(fast)
    piv = {p for p, _ in red}
    zero = CycloScalar.zero(n)
    one = 1 if rational else CycloScalar.one(n)
    dense = []
    for f in range(ncols):
        if f in piv:
            continue
        d = [zero] * ncols
        d[f] = _from_fast(one, n)
        for p, r in red:
            c = r.get(f)
            if c:
                d[p] = _from_fast(-c, n)
        dense.append(tuple(d))
    return Subspace.span(dense, ncols, n)


def nullspace(M: Matrix) -> Subspace:
    rows = [{j: x for j, x in enumerate(r) if x} for r in M.entries]
    return nullspace_sparse(rows, M.cols, M.n)


def solve(M: Matrix, b: Sequence[CycloScalar]) -> Vector | None:
    """A solution of Mx = b with free variables set to zero, or None."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    n = _common_order([CycloScalar.zero(M.n)] + [x for x in b], M.n)
    aug = [list(r) + [bi] for r, bi in zip(M.entries, b)]
    rows, _ = _to_fast(aug, n)
    red = rref_sparse(rows)
    zero = CycloScalar.zero(n)
    x = [zero] * M.cols
    for p, r in red:
        if p == M.cols:
            return None
        c = r.get(M.cols)
        if c:
            x[p] = _from_fast(c, n)
    return tuple(x)


def inverse(M: Matrix) -> Matrix | None:
    if not M.is_square:
        raise ValueError("inverse of a non-square matrix")
    k = M.rows
    aug = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(M.entries)]
    aug = [[as_scalar(x, M.n) for x in r] for r in aug]
    rows, _ = _to_fast(aug, M.n)
    red = rref_sparse(rows)
    if [p for p, _ in red] != list(range(k)):
        return None
    zero = CycloScalar.zero(M.n)
    out = []
    for _, r in red:
        out.append([_from_fast(r[k + j], M.n) if r.get(k + j) else zero for j in range(k)])
    return Matrix(out, M.n)


def min_poly(M: Matrix) -> Poly:
    """Monic minimal polynomial: first linear dependence among I, M, M^2, ... (row-major)."""
    if not M.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    powers = [Matrix.identity(M.rows, M.n)]
    while True:
        nxt = powers[-1] @ M
        A = Matrix.from_columns([P.flatten() for P in powers], M.n)
        c = solve(A, nxt.flatten())
        if c is not None:
            # M^d = sum c_i M^i  =>  x^d - sum c_i x^i
            return Poly([-ci for ci in c] + [1], M.n)
        powers.append(nxt)


def subspace_ops(A: Subspace, B, op: str):
    if op == "member":
        return A.contains(B)
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if op == "sum":
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "is_direct":
        return A.is_direct(B)
    raise ValueError(f"unknown subspace operation {op!r}")
