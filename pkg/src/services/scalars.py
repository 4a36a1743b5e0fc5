# # Scalars Overview

# Exact arithmetic in the cyclotomic field Q(ζ), ζ a primitive 24th root of unity.
# Every number that appears in the root realizations and generator fields
# (ω, √2, √3, i and the rationals) lives here.

# ## Representation

# - **`coeffs`**: 8 `Fraction`s, the coordinates in the basis ζ⁰..ζ⁷.
# - Reduction uses the minimal polynomial x⁸ − x⁴ + 1, i.e. ζ⁸ = ζ⁴ − 1.

# ## Functions

# - **`zeta_power(k)`**, **`omega()`**, **`sqrt2()`**, **`sqrt3()`**, **`imag_unit()`**,
#   **`root_of_unity(r)`**: named constants.
# - **`embed(a)`**: complex value at ζ = e^{iπ/12}.
# - **`galois(a, k)`**: the automorphism ζ ↦ ζ^k.


from fractions import Fraction
from functools import cache
from typing import Iterable, List, Sequence, Union

import numpy as np

DEGREE = 8
CONDUCTOR = 24
UNITS = (1, 5, 7, 11, 13, 17, 19, 23)

ScalarLike = Union["Scalar", int, Fraction]

_ZERO = Fraction(0)


def _reduce(coeffs: List[Fraction]) -> tuple:
    # x^d = x^(d-4) - x^(d-8) for d >= 8
    for d in range(len(coeffs) - 1, DEGREE - 1, -1):
        c = coeffs[d]
        if c:
            coeffs[d - 4] += c
            coeffs[d - 8] -= c
    return tuple(coeffs[:DEGREE])


class Scalar:
    """
    Element of Q(ζ₂₄) with a canonical coordinate vector.

    Scalars are immutable; the arithmetic operators accept ints and
    Fractions on either side.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        values = [Fraction(c) for c in coeffs]
        if len(values) > DEGREE:
            normalized = _reduce(values)
        else:
            normalized = tuple(values + [_ZERO] * (DEGREE - len(values)))
        object.__setattr__(self, "_coeffs", normalized)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __getstate__(self):
        return self._coeffs

    def __setstate__(self, state):
        object.__setattr__(self, "_coeffs", tuple(state))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> "Scalar":
        return cls((value,))

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls((value,))
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs[0] == other and self.is_rational()
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            value = hash(self._coeffs[0]) if self.is_rational() else hash(self._coeffs)
            object.__setattr__(self, "_hash", value)
        return self._hash

    def __add__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            coeffs = list(self._coeffs)
            coeffs[0] += other
            return Scalar(coeffs)
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar([a + b for a, b in zip(self._coeffs, other._coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar([-a for a in self._coeffs])

    def __sub__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Scalar([a * other for a in self._coeffs])
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.is_rational():
            return self * other._coeffs[0]
        if self.is_rational():
            return other * self._coeffs[0]
        product = [_ZERO] * (2 * DEGREE - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    product[i + j] += a * b
        return Scalar(product)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """
        Multiplicative inverse via the field norm.

        Raises:
            ZeroDivisionError: If the scalar is zero.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero Scalar")
        if self.is_rational():
            return Scalar.rational(1 / self._coeffs[0])
        cofactor = ONE
        for k in UNITS[1:]:
            cofactor = cofactor * galois(self, k)
        norm = (self * cofactor).to_fraction()
        return cofactor * (1 / norm)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a Scalar by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_json(self) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self._coeffs]

    @classmethod
    def from_json(cls, values: Sequence[str]) -> "Scalar":
        if len(values) != DEGREE:
            raise ValueError(f"expected {DEGREE} coordinates, got {len(values)}")
        return cls(Fraction(v) for v in values)

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Scalar({self._coeffs[0]})"
        terms = [f"{c}*z^{k}" for k, c in enumerate(self._coeffs) if c]
        return f"Scalar({' + '.join(terms)})"


ZERO = Scalar()
ONE = Scalar((1,))


@cache
def zeta_power(k: int) -> Scalar:
    k %= CONDUCTOR
    coeffs = [_ZERO] * (k + 1)
    coeffs[k] = Fraction(1)
    return Scalar(coeffs)


def omega() -> Scalar:
    return zeta_power(8)


def sqrt2() -> Scalar:
    return zeta_power(3) + zeta_power(21)


def sqrt3() -> Scalar:
    return zeta_power(2) + zeta_power(22)


def imag_unit() -> Scalar:
    return zeta_power(6)


def root_of_unity(r: int) -> Scalar:
    """e^{2πi/r} for r dividing 24."""
    if r <= 0 or CONDUCTOR % r:
        raise ValueError(f"root of unity of order {r} is not in Q(zeta_24)")
    return zeta_power(CONDUCTOR // r)


def galois(a: Scalar, k: int) -> Scalar:
    """Apply the field automorphism ζ ↦ ζ^k, k a unit mod 24."""
    if k % CONDUCTOR not in UNITS:
        raise ValueError(f"{k} is not a unit modulo {CONDUCTOR}")
    result = ZERO
    for j, c in enumerate(a.coeffs):
        if c:
            result = result + zeta_power(j * k) * c
    return result


_ZETA = np.exp(1j * np.pi / 12)
_POWERS = _ZETA ** np.arange(DEGREE)


def embed(a: ScalarLike) -> complex:
    coeffs = np.array([float(c) for c in Scalar.coerce(a).coeffs])
    return complex(np.dot(coeffs, _POWERS))
