from fractions import Fraction

import pytest

from src.services.scalars import (
    ONE,
    ZERO,
    Scalar,
    embed,
    galois,
    imag_unit,
    omega,
    root_of_unity,
    sqrt2,
    sqrt3,
    zeta_power,
)


def test_omega_is_a_primitive_cube_root():
    w = omega()
    assert w * w * w == 1
    assert w != 1
    assert 1 + w + w**2 == ZERO


@pytest.mark.parametrize(
    "value, square",
    [
        (sqrt2(), 2),
        (sqrt3(), 3),
        (imag_unit(), -1),
    ],
)
def test_square_roots(value, square):
    assert value * value == square


def test_zero_is_additive_identity():
    a = sqrt2() + Scalar.rational(Fraction(3, 7)) * omega()
    assert ZERO + a == a
    assert a + 0 == a


def test_inverse():
    assert ONE.inverse() == ONE
    assert sqrt2().inverse() == sqrt2() / 2
    assert omega().inverse() == omega() ** 2
    a = 3 + sqrt3() - imag_unit()
    assert a * a.inverse() == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_minimal_polynomial_reduction():
    assert zeta_power(8) == zeta_power(4) - 1
    assert zeta_power(12) == -1
    assert zeta_power(24) == ONE
    assert zeta_power(-1) * zeta_power(1) == ONE


def test_rational_embedding():
    assert Scalar.rational(Fraction(5, 3)).to_fraction() == Fraction(5, 3)
    assert Scalar.rational(2) == 2
    with pytest.raises(ValueError):
        sqrt2().to_fraction()


@pytest.mark.parametrize("r, expected", [(1, ONE), (2, -ONE), (3, omega())])
def test_root_of_unity(r, expected):
    assert root_of_unity(r) == expected


def test_root_of_unity_rejects_other_orders():
    with pytest.raises(ValueError):
        root_of_unity(5)


def test_galois_conjugates():
    assert galois(sqrt2(), 5) == -sqrt2()
    assert galois(sqrt2(), 7) == sqrt2()
    assert galois(sqrt3(), 7) == -sqrt3()
    assert galois(imag_unit(), 23) == -imag_unit()
    with pytest.raises(ValueError):
        galois(sqrt2(), 2)


def test_complex_embedding():
    assert embed(sqrt2()) == pytest.approx(2**0.5, abs=1e-12)
    assert embed(sqrt3()) == pytest.approx(3**0.5, abs=1e-12)
    assert embed(imag_unit()) == pytest.approx(1j, abs=1e-12)
    a = 2 - sqrt2() * omega()
    b = Scalar.rational(Fraction(1, 3)) + imag_unit()
    assert abs(embed(a * b) - embed(a) * embed(b)) < 1e-9


def test_json_form():
    a = Fraction(1, 2) * sqrt2() - 3
    payload = a.to_json()
    assert len(payload) == 8
    assert Scalar.from_json(payload) == a
