import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxcong.intpoly import (
    DiffTable,
    IntValuedPoly,
    eval_iv,
    finite_difference,
    format_poly,
    newton_coeffs,
    parse_poly,
    parse_weight,
    to_binomial_basis,
)


def test_finite_difference_squares():
    t = DiffTable((1, 4, 9))
    assert finite_difference(t).values == (3, 5)


def test_finite_difference_constant():
    t = DiffTable((7, 7, 7))
    assert finite_difference(t).values == (0, 0)


def test_finite_difference_periodic_wraparound():
    t = DiffTable((1, 0), period=2)
    d = finite_difference(t)
    assert d.values == (-1, 1)
    assert d.period == 2


def test_finite_difference_too_short():
    with pytest.raises(ValueError):
        finite_difference(DiffTable((1,)))


def test_difftable_period_validation():
    with pytest.raises(ValueError):
        DiffTable((1, 0, 0), period=2)  # third value breaks periodicity
    DiffTable((1, 0, 1, 0), period=2)  # consistent extension is fine


def test_newton_coeffs_square():
    p = newton_coeffs(DiffTable((0, 1, 4)))
    assert p.coeffs == (0, 1, 2)
    for x in range(0, 4):
        assert eval_iv(p, x) == x * x


def test_newton_coeffs_constant_and_basis():
    assert newton_coeffs(DiffTable((5, 5, 5, 5))).coeffs == (5,)
    assert newton_coeffs(DiffTable((0, 0, 0, 1))).coeffs == (0, 0, 0, 1)


def test_newton_coeffs_empty():
    with pytest.raises(ValueError):
        newton_coeffs(DiffTable(()))


def test_eval_iv():
    p = IntValuedPoly((0, 1, 2))  # x^2
    assert eval_iv(p, 4) == 16
    assert eval_iv(p, -1) == 1
    assert eval_iv(IntValuedPoly((1,)), -123456) == 1


def test_to_binomial_basis_examples():
    assert to_binomial_basis([0, 0, 1]).coeffs == (0, 1, 2)  # x^2
    half = Fraction(1, 2)
    assert to_binomial_basis([0, half, half]).coeffs == (0, 1, 1)  # (x^2+x)/2
    with pytest.raises(ValueError, match="x=1"):
        to_binomial_basis([0, half])  # x/2 takes value 1/2 at x=1


def test_to_binomial_basis_identity_on_basis():
    for n in range(0, 8):
        b = IntValuedPoly.binomial(n)
        assert to_binomial_basis(b.monomial_coeffs()).coeffs == b.coeffs


def test_round_trip_integer_monomials():
    rng = random.Random(7)
    for _ in range(40):
        deg = rng.randint(0, 10)
        mono = [rng.randint(-20, 20) for _ in range(deg + 1)]
        p = to_binomial_basis(mono)
        for x in range(-15, 16):
            direct = sum(c * x**i for i, c in enumerate(mono))
            assert eval_iv(p, x) == direct


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-(10**6), max_value=10**6), min_size=1, max_size=20))
def test_newton_reproduces_table(values):
    p = newton_coeffs(DiffTable(tuple(values)))
    for x, v in enumerate(values):
        assert eval_iv(p, x) == v


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=2, max_size=12),
    st.lists(st.integers(-50, 50), min_size=2, max_size=12),
)
def test_finite_difference_linearity(a, b):
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    summed = finite_difference(DiffTable(tuple(x + y for x, y in zip(a, b))))
    parts = [
        x + y
        for x, y in zip(
            finite_difference(DiffTable(tuple(a))).values,
            finite_difference(DiffTable(tuple(b))).values,
        )
    ]
    assert list(summed.values) == parts


def test_parse_poly():
    assert parse_poly("1/2*x^2 + 1/2*x") == [0, Fraction(1, 2), Fraction(1, 2)]
    assert parse_poly("x^3 - 2") == [-2, 0, 0, 1]
    assert parse_poly("-x") == [0, -1]
    assert parse_poly("7") == [7]
    with pytest.raises(ValueError):
        parse_poly("2**x")
    with pytest.raises(ValueError):
        parse_poly("x +")


def test_format_parse_round_trip():
    rng = random.Random(11)
    for _ in range(60):
        deg = rng.randint(0, 6)
        mono = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(deg + 1)
        ]
        if all(c == 0 for c in mono):
            mono[0] = Fraction(1)
        text = format_poly(mono)
        back = parse_poly(text)
        trimmed = list(mono)
        while len(trimmed) > 1 and trimmed[-1] == 0:
            trimmed.pop()
        assert back == trimmed, text


def test_parse_weight():
    w = parse_weight("x")
    assert w.coeffs == (0, 1)
    w2 = parse_weight("1/2*x^2 + 1/2*x")
    assert w2.coeffs == (0, 1, 1)
    with pytest.raises(ValueError):
        parse_weight("1/2*x")
