"""Ring arithmetic, evaluation, and parsing for polynomials in r."""

import random
from fractions import Fraction

import pytest

from jordan_voa.scalar import (
    R,
    ZERO,
    Scalar,
    evaluate_at,
    parse_scalar,
    poly_exact_div,
    poly_gcd,
)


def test_basic_ring_identities():
    assert (R + 1) * (R - 1) == R * R - 1
    assert ZERO + parse_scalar("3*r - 2") == parse_scalar("3*r - 2")
    assert (2 * R) * Fraction(1, 2) == R


def test_canonical_form():
    assert Scalar((0, 0, 0)) == ZERO
    assert len(Scalar((1, 2, 0, 0))) == 2
    assert Scalar((0, Fraction(0), 1)).coeffs == {2: 1}
    assert not ZERO
    assert ZERO.degree() == -1


def test_evaluate_examples():
    nu = 1
    assert evaluate_at(R + (2 * nu - 2), 0) == 0
    assert evaluate_at(R, Fraction(1, 2)) == Fraction(1, 2)
    # the coefficient m*n*(1 + delta_{m,n}) at m=1, n=2 is 2, so 2*r at r=3
    assert evaluate_at(2 * R, 3) == 6


def _random_poly(rng):
    degree = rng.randint(0, 4)
    return Scalar(
        tuple(
            Fraction(rng.randint(-100, 100), rng.randint(1, 100))
            for _ in range(degree + 1)
        )
    )


def test_ring_axioms_on_random_polynomials():
    rng = random.Random(12345)
    for _ in range(300):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c


def test_evaluation_is_a_ring_homomorphism():
    rng = random.Random(99)
    for _ in range(100):
        a, b = _random_poly(rng), _random_poly(rng)
        r0 = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        assert (a * b).evaluate(r0) == a.evaluate(r0) * b.evaluate(r0)
        assert (a + b).evaluate(r0) == a.evaluate(r0) + b.evaluate(r0)


@pytest.mark.parametrize(
    "text",
    ["3/2*r^2 - 1", "2*r", "0", "-r", "r + 2", "r^3 - 1/2*r + 7", "-5/3"],
)
def test_parse_format_round_trip(text):
    poly = parse_scalar(text)
    assert parse_scalar(str(poly)) == poly


def test_parse_specific_values():
    assert parse_scalar("3/2*r^2 - 1") == Scalar((-1, 0, Fraction(3, 2)))
    assert parse_scalar("2*r") == 2 * R
    with pytest.raises(ValueError):
        parse_scalar("2*q")
    with pytest.raises(ValueError):
        parse_scalar("")


def test_formatting():
    assert str(ZERO) == "0"
    assert str(2 * R) == "2*r"
    assert str(R * R - 1) == "r^2 - 1"
    assert str(-R) == "-r"
    assert str(Scalar((Fraction(3, 2),))) == "3/2"


def test_division_helpers():
    product = (R + 2) * (R - 3)
    assert poly_exact_div(product, R + 2) == R - 3
    with pytest.raises(ValueError):
        poly_exact_div(R + 1, R - 1)
    assert poly_gcd((R + 1) * (R - 1), (R + 1) * (R + 2)) == R + 1
    assert poly_gcd(ZERO, 2 * R + 2) == R + 1  # monic normalisation


def test_truediv_by_rationals():
    assert (2 * R) / 2 == R
    with pytest.raises(ZeroDivisionError):
        (2 * R) / 0
