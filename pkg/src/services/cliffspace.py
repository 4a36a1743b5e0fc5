# # Cliffspace Overview

# The polarized quadratic space behind the fermionic fields: atomic field
# letters, the symmetric pairing per algebra kind, and the root vectors
# α_i, β, θ₀ written in the ε-basis.

# ## Letters

# - **`Eps(i)`**, **`EpsBar(i)`**, **`C`**: basis letters, optionally starred.
# - **`Ghost(E)`**, **`Ghost(EBar)`**: extra neutral letters for kinds D and AEven.
# - Short strings: "e1", "e1*", "b2", "b2*", "c", "c*", "gE", "gEbar".

# ## Functions

# - **`pairing(kind, a, b)`**: the value ⟨a, b⟩.
# - **`simple_root(kind, i)`**, **`beta(kind)`**, **`theta0(kind)`**: root vectors.
# - **`d_vector(kind)`**: symmetrizing factors with (α_i|α_j) = d_i a_ij.


import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cache, total_ordering
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

from ..utils.model_pydantic import AlgebraKind, Family
from .scalars import ONE, ZERO, Scalar, ScalarLike, embed, sqrt2, sqrt3


class Species(IntEnum):
    EPS = 0
    EPS_BAR = 1
    GHOST_E = 2
    GHOST_EBAR = 3
    C = 4


GHOST_SPECIES = (Species.GHOST_E, Species.GHOST_EBAR)


@total_ordering
@dataclass(frozen=True)
class Letter:
    """
    Atomic fermionic field symbol.

    The total order is Eps(1..n) < EpsBar(1..n) < Ghost(E) < Ghost(EBar) < C
    < Eps(1..n)* < EpsBar(1..n)* < C*.
    """

    species: Species
    index: int = 0
    starred: bool = False

    def __post_init__(self):
        if self.species in GHOST_SPECIES and self.starred:
            raise ValueError("ghost letters are never starred")
        if self.species in (Species.EPS, Species.EPS_BAR) and self.index < 1:
            raise ValueError(f"letter index must be >= 1, got {self.index}")

    @property
    def sort_key(self) -> Tuple[bool, int, int]:
        return (self.starred, int(self.species), self.index)

    def __lt__(self, other: "Letter") -> bool:
        return self.sort_key < other.sort_key

    @property
    def is_ghost(self) -> bool:
        return self.species in GHOST_SPECIES

    @property
    def is_c(self) -> bool:
        return self.species == Species.C

    def star(self) -> "Letter":
        if self.is_ghost:
            raise ValueError("ghost letters are never starred")
        return Letter(self.species, self.index, not self.starred)

    def __str__(self) -> str:
        if self.species == Species.GHOST_E:
            return "gE"
        if self.species == Species.GHOST_EBAR:
            return "gEbar"
        star = "*" if self.starred else ""
        if self.species == Species.C:
            return f"c{star}"
        prefix = "e" if self.species == Species.EPS else "b"
        return f"{prefix}{self.index}{star}"


_LETTER_PATTERN = re.compile(r"^(?:(?P<species>[eb])(?P<index>\d+)|(?P<c>c))(?P<star>\*?)$")


def parse_letter(text: str) -> Letter:
    if text == "gE":
        return Letter(Species.GHOST_E)
    if text == "gEbar":
        return Letter(Species.GHOST_EBAR)
    match = _LETTER_PATTERN.match(text)
    if match is None:
        raise ValueError(f"not a letter: {text!r}")
    starred = bool(match["star"])
    if match["c"]:
        return Letter(Species.C, 0, starred)
    species = Species.EPS if match["species"] == "e" else Species.EPS_BAR
    return Letter(species, int(match["index"]), starred)


def eps(i: int, starred: bool = False) -> Letter:
    return Letter(Species.EPS, i, starred)


def eps_bar(i: int, starred: bool = False) -> Letter:
    return Letter(Species.EPS_BAR, i, starred)


C_LETTER = Letter(Species.C)
C_STAR = Letter(Species.C, 0, True)
GHOST_E = Letter(Species.GHOST_E)
GHOST_EBAR = Letter(Species.GHOST_EBAR)

Combo = Dict[Letter, Scalar]
ComboLike = Union[Letter, Mapping[Letter, ScalarLike]]


def as_combo(value: ComboLike) -> Combo:
    if isinstance(value, Letter):
        return {value: ONE}
    return {letter: Scalar.coerce(coeff) for letter, coeff in value.items() if coeff}


def star_combo(value: ComboLike) -> Combo:
    # coefficients stay as they are: every coefficient used here is real
    return {letter.star(): coeff for letter, coeff in as_combo(value).items()}


def validate_letter(kind: AlgebraKind, letter: Letter) -> None:
    if letter.is_ghost and not kind.has_ghosts:
        raise ValueError(f"ghost letter {letter} is not available for {kind.label}")
    if letter.species in (Species.EPS, Species.EPS_BAR) and letter.index > kind.n:
        raise ValueError(f"letter {letter} is out of range for {kind.label}")


def letters(kind: AlgebraKind, include_c: bool = False) -> List[Letter]:
    """All letters valid for `kind`, in the fixed total order."""
    result = [eps(i) for i in range(1, kind.n + 1)]
    result += [eps_bar(i) for i in range(1, kind.n + 1)]
    if kind.has_ghosts:
        result += [GHOST_E, GHOST_EBAR]
    if include_c:
        result.append(C_LETTER)
    result += [eps(i, True) for i in range(1, kind.n + 1)]
    result += [eps_bar(i, True) for i in range(1, kind.n + 1)]
    if include_c:
        result.append(C_STAR)
    return result


@cache
def pairing(kind: AlgebraKind, a: Letter, b: Letter) -> Scalar:
    """
    The symmetric pairing ⟨a, b⟩.

    Raises:
        ValueError: If a letter is not valid for `kind`.
    """
    validate_letter(kind, a)
    validate_letter(kind, b)
    if a.is_ghost or b.is_ghost:
        if not (a.is_ghost and b.is_ghost):
            return ZERO
        same = a.species == b.species
        if kind.family == Family.D:
            return ONE if same else ZERO
        return ZERO if same else ONE
    if a.starred == b.starred:
        return ZERO
    if a.is_c or b.is_c:
        return ZERO
    if a.species == b.species and a.index == b.index:
        return ONE
    return ZERO


Direction = Tuple[str, int]
C_DIRECTION: Direction = ("c", 0)
D_DIRECTION: Direction = ("d", 0)


def eps_direction(i: int) -> Direction:
    return ("e", i)


def eps_bar_direction(i: int) -> Direction:
    return ("b", i)


def d_direction() -> Direction:
    """The isotropic partner of c; d pairs to 1 with c and is a lattice vector only."""
    return D_DIRECTION


class Vector:
    """Scalar-combination of the lattice directions c, d, ε_i, ε_ī."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Direction, ScalarLike] | None = None):
        cleaned: Dict[Direction, Scalar] = {}
        for direction, coeff in (terms or {}).items():
            value = Scalar.coerce(coeff)
            if value:
                cleaned[direction] = value
        self._terms = cleaned

    @classmethod
    def basis(cls, direction: Direction) -> "Vector":
        return cls({direction: ONE})

    def coefficient(self, direction: Direction) -> Scalar:
        return self._terms.get(direction, ZERO)

    def items(self) -> Iterable[Tuple[Direction, Scalar]]:
        return self._terms.items()

    def __add__(self, other: "Vector") -> "Vector":
        terms = dict(self._terms)
        for direction, coeff in other._terms.items():
            terms[direction] = terms.get(direction, ZERO) + coeff
        return Vector(terms)

    def __neg__(self) -> "Vector":
        return Vector({d: -c for d, c in self._terms.items()})

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __rmul__(self, scale: ScalarLike) -> "Vector":
        factor = Scalar.coerce(scale)
        return Vector({d: factor * c for d, c in self._terms.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"Vector({self._terms})"


def _direction_product(x: Direction, y: Direction) -> int:
    if {x[0], y[0]} == {"c", "d"}:
        return 1
    if x[0] in ("c", "d") or y[0] in ("c", "d"):
        return 0
    return 1 if x == y else 0


def inner(u: Vector, v: Vector) -> Scalar:
    total = ZERO
    for x, a in u.items():
        for y, b in v.items():
            if _direction_product(x, y):
                total = total + a * b
    return total


def c_vector() -> Vector:
    return Vector.basis(C_DIRECTION)


def _eps(i: int) -> Vector:
    return Vector.basis(eps_direction(i))


def _check_index(kind: AlgebraKind, i: int) -> None:
    if not 0 <= i <= kind.n:
        raise ValueError(f"simple root index {i} out of range 0..{kind.n} for {kind.label}")


@cache
def beta(kind: AlgebraKind) -> Vector:
    return beta_c_coefficient(kind) * c_vector() + _eps(1)


@cache
def beta_c_coefficient(kind: AlgebraKind) -> Scalar:
    if kind.family == Family.A_ODD:
        return -sqrt2()
    if kind.family == Family.D:
        return -ONE
    if kind.family == Family.A_EVEN:
        return -(sqrt2() / 2)
    return -sqrt3()


@cache
def theta0(kind: AlgebraKind) -> Vector:
    if kind.family == Family.A_ODD:
        return (sqrt2() / 2) * (_eps(1) + _eps(2))
    if kind.family == Family.D:
        return _eps(1)
    if kind.family == Family.A_EVEN:
        return sqrt2() * _eps(1)
    return (sqrt3() / 3) * (_eps(1) - _eps(3))


@cache
def simple_root(kind: AlgebraKind, i: int) -> Vector:
    """
    The simple root α_i in the ε-basis, with α₀ = c − θ₀.

    Raises:
        ValueError: If i is outside 0..n.
    """
    _check_index(kind, i)
    if i == 0:
        return c_vector() - theta0(kind)
    n = kind.n
    if kind.family == Family.D4_TRIALITY:
        if i == 1:
            return (sqrt3() / 3) * (_eps(1) - _eps(2))
        return (sqrt3() / 3) * (2 * _eps(2) - _eps(1) - _eps(3))
    if i < n:
        difference = _eps(i) - _eps(i + 1)
        if kind.family == Family.D:
            return difference
        return (sqrt2() / 2) * difference
    if kind.family == Family.A_ODD:
        return sqrt2() * _eps(n)
    if kind.family == Family.D:
        return _eps(n)
    return (sqrt2() / 2) * _eps(n)


@cache
def d_vector(kind: AlgebraKind) -> Tuple[Fraction, ...]:
    n = kind.n
    half = Fraction(1, 2)
    if kind.family == Family.A_ODD:
        return tuple([half] * n + [Fraction(1)])
    if kind.family == Family.D:
        return tuple([half] + [Fraction(1)] * (n - 1) + [half])
    if kind.family == Family.A_EVEN:
        return tuple([Fraction(1)] + [half] * (n - 1) + [Fraction(1, 4)])
    return (Fraction(1, 3), Fraction(1, 3), Fraction(1))


def gram(kind: AlgebraKind) -> np.ndarray:
    size = kind.n + 1
    matrix = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            matrix[i, j] = embed(inner(simple_root(kind, i), simple_root(kind, j)))
    return matrix
