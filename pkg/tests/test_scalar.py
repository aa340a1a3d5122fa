from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from hexad.scalar import (CycloScalar, Poly, cyclotomic, field_arith, format_scalar, modulus_squared, parse_scalar,
                          poly_divides_cyclic, poly_squarefree, unit_order)

w = CycloScalar.omega(6)
one = CycloScalar.one(6)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def scalars(n=6):
    k = len(cyclotomic(n)) - 1
    return st.lists(rats, min_size=k, max_size=k).map(lambda cs: CycloScalar(n, cs))


def test_parse_examples():
    a = parse_scalar("1+w", 6)
    assert a == -(w * w)
    assert modulus_squared(a) == 1
    assert parse_scalar("0", 6) == CycloScalar.zero(6)
    assert not parse_scalar(" 0 ", 6)


def test_parse_twelfth_root_matches_sympy_reduction():
    # oracle: reduce x^2/2 - 1 modulo Phi_12 = x^4 - x^2 + 1 with sympy
    x = sympy.symbols("x")
    rem = sympy.rem(x ** 2 / 2 - 1, sympy.cyclotomic_poly(12, x), x)
    coeffs = sympy.Poly(rem, x).all_coeffs()[::-1]
    expected = [Fraction(int(c.p), int(c.q)) for c in coeffs] + [Fraction(0)] * (4 - len(coeffs))
    assert parse_scalar("1/2*z^2 - 1", 12).coeffs == tuple(expected)


def test_parse_rejects_w_without_three():
    with pytest.raises(ValueError):
        parse_scalar("w", 4)
    with pytest.raises(ValueError):
        parse_scalar("1 + + 2", 6)


def test_field_arith_examples():
    assert field_arith(1 + w, 1 + w * w, "mul") == one
    assert field_arith(1 + w, 1 + w * w, "add") == one
    assert field_arith(one, 1 + w, "div") == 1 + w * w
    with pytest.raises(ZeroDivisionError):
        field_arith(one, CycloScalar.zero(6), "div")


def test_modulus_examples():
    assert modulus_squared(1 + w) == 1
    assert modulus_squared(CycloScalar.rational(2)) == 4
    assert modulus_squared(4 + w) == 13  # (4+w)(4+w^2) = 16 - 4 + 1
    with pytest.raises(ArithmeticError):
        modulus_squared(1 + CycloScalar.zeta(12, 1))


def test_unit_order_examples():
    assert unit_order(1 + w) == 6
    assert unit_order(CycloScalar.rational(2)) is None
    assert unit_order(w + w * w) == 2
    assert unit_order(CycloScalar.zeta(12, 5)) == 12


def test_units_of_q_omega_by_scan():
    found = set()
    for a, b in product(range(-2, 3), repeat=2):
        x = CycloScalar(6, [a, b])
        if unit_order(x) is not None:
            found.add(x)
    expected = {s * p for s in (one, -one) for p in (one, w, w * w)}
    assert found == expected


def test_poly_examples():
    assert poly_squarefree(Poly([1, -1, 1]))
    assert not poly_squarefree(Poly([1, -2, 1]))
    assert poly_squarefree(Poly([-1, 0, 0, 0, 0, 0, 1]))
    assert poly_divides_cyclic(Poly([1, -1, 1]), 6)
    assert not poly_divides_cyclic(Poly([1, -1, 1]), 3)
    assert poly_divides_cyclic(Poly([-1, 1]), 1)
    assert not any(poly_divides_cyclic(Poly([-2, 1]), m) for m in range(1, 61))


def test_format_roundtrip_examples():
    for text in ["1", "-z", "1/2*z^2 - 1", "z^3 + 2*z", "0"]:
        x = parse_scalar(text, 12)
        assert parse_scalar(format_scalar(x), 12) == x


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == one


@given(st.sampled_from([4, 6]).flatmap(lambda n: st.tuples(scalars(n), scalars(n))))
def test_modulus_is_multiplicative(pair):
    # imaginary quadratic fields: |x|^2 is always rational there
    a, b = pair
    assert modulus_squared(a * b) == modulus_squared(a) * modulus_squared(b)


@given(st.integers(1, 24), st.integers(0, 23))
def test_unit_order_of_roots(n, k):
    x = CycloScalar.zeta(n, k % n)
    order = unit_order(x)
    assert order is not None
    assert x ** order == CycloScalar.one(n)
    assert all(x ** j != CycloScalar.one(n) for j in range(1, order))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.integers(1, 36))
def test_cyclic_division_matches_sympy(cs, m):
    cs = cs + [1]  # monic
    p = Poly(cs)
    x = sympy.symbols("x")
    sp = sympy.Poly(list(reversed(cs)), x, domain="QQ")
    expected = sympy.rem(sympy.Poly(x ** m - 1, x, domain="QQ"), sp).is_zero
    assert poly_divides_cyclic(p, m) == expected


@given(scalars(6))
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a), 6) == a
