"""Exact arithmetic in cyclotomic fields Q(zeta_n) and polynomials over them.

Elements are stored as coefficient vectors in the power basis
1, z, ..., z^(phi(n)-1), reduced modulo the n-th cyclotomic polynomial, so
equality is coefficient-wise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _int_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact integer polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("inexact integer polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _int_divexact(p, list(cyclotomic(d)))
    return tuple(p)


def totient(n: int) -> int:
    return len(cyclotomic(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int, upto: int) -> tuple[tuple[int, ...], ...]:
    # x^k mod Phi_n for 0 <= k < upto, as integer vectors of length phi(n)
    phi_poly = cyclotomic(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg > 0 else []
    for _ in range(upto):
        rows.append(tuple(cur))
        shifted = [0] + cur
        top = shifted[deg] if deg < len(shifted) else 0
        shifted = shifted[:deg]
        if top:
            for i in range(deg):
                shifted[i] -= top * phi_poly[i]
        cur = shifted
    return tuple(rows)


def _root_vector(n: int, k: int) -> tuple[int, ...]:
    return _power_table(n, n)[k % n]


@lru_cache(maxsize=None)
def _root_fracs(n: int):
    return tuple(
        (tuple(Fraction(t) for t in v), tuple(Fraction(-t) for t in v)) for v in _power_table(n, n)
    )


def _mobius(k: int) -> int:
    res, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            res = -res
        p += 1
    return -res if k > 1 else res


@lru_cache(maxsize=None)
def _trace_table(n: int) -> tuple[int, ...]:
    # Tr(zeta_n^k) is the Ramanujan sum mu(n/d) * phi(n) / phi(n/d), d = gcd(n, k)
    out = []
    for k in range(totient(n)):
        e = n // gcd(n, k)
        out.append(_mobius(e) * totient(n) // totient(e))
    return tuple(out)


def _rpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead
        k = len(a) - len(b)
        q[k] = c
        for i, d in enumerate(b):
            a[k + i] -= c * d
        a.pop()
        _trim(a)
    return _trim(q), a


def _rpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _rpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


# ---------------------------------------------------------------------------


class CycloScalar:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: Iterable[Rational] = ()):
        phi = totient(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            # reduce an arbitrary-degree polynomial in z
            table = _power_table(n, max(len(cs), n))
            red = [Fraction(0)] * phi
            for k, c in enumerate(cs):
                if c:
                    for i, t in enumerate(table[k]):
                        if t:
                            red[i] += c * t
            cs = red
        else:
            cs += [Fraction(0)] * (phi - len(cs))
        self.n = n
        self.coeffs = tuple(cs)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q: Rational, n: int = 6) -> CycloScalar:
        return cls(n, [q])

    @classmethod
    def zero(cls, n: int = 6) -> CycloScalar:
        return cls(n)

    @classmethod
    def one(cls, n: int = 6) -> CycloScalar:
        return cls(n, [1])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycloScalar:
        """zeta_n^k."""
        return cls(n, _root_vector(n, k))

    @classmethod
    def omega(cls, n: int = 6) -> CycloScalar:
        """The primitive third root zeta_n^(n/3); needs 3 | n."""
        if n % 3:
            raise ValueError(f"w needs a field order divisible by 3, got {n}")
        return cls.zeta(n, n // 3)

    @classmethod
    def sixth_root(cls, k: int, n: int = 6) -> CycloScalar:
        """zeta_6^k embedded in Q(zeta_n); needs 6 | lcm(2, n)."""
        if n % 3:
            raise ValueError(f"sixth roots need a field order divisible by 3, got {n}")
        if n % 2:
            # zeta_6 = -w^2
            return cls.omega(n) ** (2 * k) * (-1) ** (k % 2)
        return cls.zeta(n, k * n // 6)

    # -- coercion ---------------------------------------------------------

    def lift(self, m: int) -> CycloScalar:
        """Canonical image in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) into Q(zeta_{m})")
        step = m // self.n
        out = [Fraction(0)] * totient(m)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(_root_vector(m, k * step)):
                    if t:
                        out[i] += c * t
        return CycloScalar(m, out)

    def _coerce(self, other) -> tuple[CycloScalar, CycloScalar]:
        if isinstance(other, CycloScalar):
            if other.n == self.n:
                return self, other
            if other.n % self.n == 0:
                return self.lift(other.n), other
            if self.n % other.n == 0:
                return self, other.lift(self.n)
            raise ValueError(f"incompatible field orders {self.n} and {other.n}")
        if isinstance(other, (int, Fraction)):
            return self, CycloScalar(self.n, [other])
        return NotImplemented, NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloScalar(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloScalar(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloScalar(self.n, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloScalar(self.n, [x * other for x in self.coeffs])
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        phi = len(a.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1) if phi else []
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        if len(conv) <= phi:
            return CycloScalar(a.n, conv)
        table = _power_table(a.n, max(len(conv), a.n))
        out = conv[:phi]
        for k in range(phi, len(conv)):
            c = conv[k]
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += c * t
        return CycloScalar(a.n, out)

    __rmul__ = __mul__

    def inverse(self) -> CycloScalar:
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid: s * a + t * Phi = 1
        a = _trim(list(self.coeffs))
        m = [Fraction(c) for c in cyclotomic(self.n)]
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _rpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _rpoly_sub(s0, _rpoly_mul(q, s1))
        # r0 is a nonzero constant since Phi_n is irreducible
        c = r0[0]
        return CycloScalar(self.n, [x / c for x in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloScalar(self.n, [x / other for x in self.coeffs])
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = CycloScalar.one(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, CycloScalar):
            return NotImplemented
        if other.n != self.n:
            try:
                a, b = self._coerce(other)
            except ValueError:
                return False
            return a.coeffs == b.coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        # the degree-normalized trace is invariant under field embeddings
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_value())
            else:
                tr = _trace_table(self.n)
                self._hash = hash(sum(c * t for c, t in zip(self.coeffs, tr)) / len(self.coeffs))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    # -- field maps -------------------------------------------------------

    def conjugate(self) -> CycloScalar:
        """Image under zeta_n -> zeta_n^(n-1), i.e. complex conjugation."""
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(_root_vector(self.n, -k)):
                    if t:
                        out[i] += c * t
        return CycloScalar(self.n, out)

    def modulus_squared(self) -> Fraction:
        """|a|^2 as an exact rational.

        Raises ArithmeticError when |a|^2 is an irrational element of the real
        subfield, which cannot happen for n in {1, 2, 3, 4, 6}.
        """
        prod = self * self.conjugate()
        if not prod.is_rational():
            raise ArithmeticError(f"|{self}|^2 = {prod} is not rational")
        return prod.rational_value()

    def unit_order(self) -> int | None:
        """Multiplicative order if this is a root of unity, else None."""
        if not self:
            return None
        n = self.n
        for j, (pos, neg) in enumerate(_root_fracs(n)):
            if self.coeffs == pos:
                return n // gcd(n, j)
            if self.coeffs == neg:
                k = n // gcd(n, j)
                # order of -x for x of order k
                return 2 * k if k % 2 else (k if k % 4 == 0 else k // 2)
        return None

    # -- display ----------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"CycloScalar({self.n}, {format_scalar(self)!r})"


def as_scalar(x, n: int = 6) -> CycloScalar:
    if isinstance(x, CycloScalar):
        return x if x.n == n else x.lift(n)
    if isinstance(x, str):
        return parse_scalar(x, n)
    return CycloScalar(n, [x])


# ---------------------------------------------------------------------------
# text format: expr := term (('+'|'-') term)*; term := rat ('*' pow)? | pow;
# pow := ('z'|'w') ('^' uint)?; rat := int ('/' uint)?

_TOKEN = re.compile(r"\s*(?:(\d+)|([zw])|([\^*/+-]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"syntax error in scalar {text!r} at position {pos}")
        out.append(m.group(m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_scalar(text: str, n: int = 6) -> CycloScalar:
    """Parse a scalar expression in Q(zeta_n); "z" is zeta_n and "w" is zeta_n^(n/3)."""
    if n < 1:
        raise ValueError("field order must be positive")
    toks = _tokenize(text)
    if not toks:
        raise ValueError("empty scalar expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ValueError(f"syntax error in scalar {text!r}: expected {expected or 'token'}, got {t!r}")
        pos += 1
        return t

    def uint():
        t = take()
        if not t.isdigit():
            raise ValueError(f"syntax error in scalar {text!r}: expected integer, got {t!r}")
        return int(t)

    def power():
        sym = take()
        k = 1
        if peek() == "^":
            take("^")
            k = uint()
        if sym == "z":
            return CycloScalar.zeta(n, k)
        return CycloScalar.omega(n) ** k

    def term():
        t = peek()
        if t in ("z", "w"):
            return power()
        num = uint()
        q = Fraction(num)
        if peek() == "/":
            take("/")
            den = uint()
            if den == 0:
                raise ValueError(f"zero denominator in scalar {text!r}")
            q = Fraction(num, den)
        if peek() == "*":
            take("*")
            if peek() not in ("z", "w"):
                raise ValueError(f"syntax error in scalar {text!r}: expected z or w after '*'")
            return power() * q
        return CycloScalar(n, [q])

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    total = term() * sign
    while pos < len(toks):
        op = take()
        if op not in ("+", "-"):
            raise ValueError(f"syntax error in scalar {text!r}: unexpected {op!r}")
        t = term()
        total = total + t if op == "+" else total - t
    return total


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: CycloScalar) -> str:
    """Inverse of parse_scalar (same field order). Uses the basis 1, w when phi(n) = 2 and 3 | n."""
    if a.n in (3, 6):
        # zeta_6 = 1 + w, so c0 + c1*zeta_6 = (c0 + c1) + c1*w
        c0, c1 = a.coeffs
        terms = [(c0 + c1, "") if a.n == 6 else (c0, ""), (c1, "w")]
    else:
        terms = [(c, "" if k == 0 else ("z" if k == 1 else f"z^{k}")) for k, c in enumerate(a.coeffs)]
    parts = []
    for c, sym in terms:
        if c == 0:
            continue
        neg = c < 0
        c = abs(c)
        if sym and c == 1:
            body = sym
        elif sym:
            body = f"{_fmt_rat(c)}*{sym}"
        else:
            body = _fmt_rat(c)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial over Q(zeta_n), constant term first."""

    __slots__ = ("n", "coeffs")

    def __init__(self, coeffs: Sequence, n: int = 6):
        cs = [as_scalar(c, n) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, n: int = 6) -> Poly:
        return cls([0, 1], n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> CycloScalar:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def monic(self) -> Poly:
        if self.is_zero():
            raise ValueError("zero polynomial has no monic associate")
        inv = self.lead.inverse()
        return Poly([c * inv for c in self.coeffs], self.n)

    def __add__(self, other: Poly) -> Poly:
        m = max(len(self.coeffs), len(other.coeffs))
        z = CycloScalar.zero(self.n)
        a = self.coeffs + (z,) * (m - len(self.coeffs))
        b = other.coeffs + (z,) * (m - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.n)

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs], self.n)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.n)
        if self.is_zero() or other.is_zero():
            return Poly([], self.n)
        out = [CycloScalar.zero(self.n)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(out, self.n)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [CycloScalar.zero(self.n)] * max(len(r) - len(other.coeffs) + 1, 0)
        inv = other.lead.inverse()
        while len(r) >= len(other.coeffs) and r:
            c = r[-1] * inv
            k = len(r) - len(other.coeffs)
            q[k] = c
            for i, d in enumerate(other.coeffs):
                r[k + i] = r[k + i] - c * d
            r.pop()
            while r and not r[-1]:
                r.pop()
        return Poly(q, self.n), Poly(r, self.n)

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def derivative(self) -> Poly:
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:], self.n)

    def __call__(self, t):
        acc = CycloScalar.zero(self.n)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})" + ("" if k == 0 else ("*x" if k == 1 else f"*x^{k}")))
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    def to_strings(self) -> list[str]:
        return [format_scalar(c) for c in self.coeffs]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_squarefree(p: Poly) -> bool:
    """True iff gcd(p, p') is constant."""
    if p.is_zero():
        raise ValueError("squarefree test on the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


def cyclic_remainders(p: Poly):
    """Yield (m, x^m mod p) for m = 1, 2, ... by iterated multiply-by-x reduction."""
    if not p.is_monic():
        raise ValueError("cyclic remainders need a monic polynomial")
    d = p.degree
    n = p.n
    zero = CycloScalar.zero(n)
    if d == 0:
        m = 0
        while True:
            m += 1
            yield m, Poly([], n)
    # remainder as a length-d coefficient list
    r = [CycloScalar.one(n)] + [zero] * (d - 1)
    low = p.coeffs[:d]
    m = 0
    while True:
        m += 1
        top = r[-1]
        r = [zero] + r[:-1]
        if top:
            r = [ri - top * ci for ri, ci in zip(r, low)]
        yield m, Poly(r, n)


def poly_divides_cyclic(p: Poly, m: int) -> bool:
    """True iff p divides x^m - 1 (p monic)."""
    if m < 1:
        raise ValueError("m must be positive")
    if not p.is_monic():
        raise ValueError("poly_divides_cyclic needs a monic polynomial")
    if p.degree == 0:
        return True
    for k, r in cyclic_remainders(p):
        if k == m:
            return r == Poly([1], p.n)
    raise AssertionError("unreachable")


def field_arith(a: CycloScalar, b: CycloScalar, op: str) -> CycloScalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def modulus_squared(a: CycloScalar) -> Fraction:
    return a.modulus_squared()


def unit_order(a: CycloScalar) -> int | None:
    return a.unit_order()
