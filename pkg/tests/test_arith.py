import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noncomm.arith import (
    ArithError,
    CycloNum,
    cyclo_inverse,
    cyclotomic_polynomial,
    euler_phi,
    format_rational,
    from_json_scalar,
    parse_rational,
    to_json_scalar,
)

ORDERS = (1, 2, 3, 4, 5, 8, 12)


def random_cyclo(rng, m):
    return CycloNum(m, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(euler_phi(m))])


@pytest.mark.parametrize(
    "m, want",
    [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1)), (15, (1, -1, 0, 1, -1, 1, 0, -1, 1))],
)
def test_cyclotomic_polynomials(m, want):
    assert cyclotomic_polynomial(m) == want


def test_cyclotomic_degree_is_euler_phi():
    for m in range(1, 40):
        assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_cyclotomic_order_out_of_range():
    with pytest.raises(ArithError):
        cyclotomic_polynomial(0)
    with pytest.raises(ArithError):
        cyclotomic_polynomial(65)


@pytest.mark.parametrize("m", range(1, 25))
def test_zeta_has_order_m(m):
    z = CycloNum.zeta(m)
    assert z**m == 1
    # primitive: sum of all powers vanishes for m > 1
    total = sum((z**k for k in range(m)), CycloNum(m))
    assert total == (1 if m == 1 else 0)


def test_zeta4_squared_is_minus_one():
    i = CycloNum.zeta(4)
    assert i * i == -1
    assert cyclo_inverse(i) == -i


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        cyclo_inverse(CycloNum(5))


def test_field_axioms_random_pairs():
    rng = random.Random(1)
    for _ in range(500):
        m = rng.choice(ORDERS)
        a, b, c = (random_cyclo(rng, m) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if b:
            assert (a / b) * b == a
            assert b * b.inverse() == 1


def test_rational_cyclo_hashes_like_fraction():
    assert hash(CycloNum(7, [Fraction(3, 2)])) == hash(Fraction(3, 2))
    assert CycloNum(7, [Fraction(3, 2)]) == Fraction(3, 2)


@given(st.fractions())
def test_rational_text_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"


def test_scalar_json_roundtrip():
    rng = random.Random(3)
    for m in ORDERS:
        a = random_cyclo(rng, m)
        assert CycloNum.from_json(a.to_json()) == a
    assert from_json_scalar(to_json_scalar(Fraction(-5, 7))) == Fraction(-5, 7)
