# # Fieldcalc Overview

# Normal-ordered quadratic fields :a(z)b(z): and their brackets.

# ## Types

# - **`QuadField`**: canonical Scalar-combination of letter pairs (a, b) with a < b.
# - **`LocalBracket`**: [A(z), B(w)] = delta_part(w)·δ(z−w) + ddelta·∂_wδ(z−w)·c̸.
# - **`AdChainResult`**: iterated brackets indexed by derivative-flag tuples.

# ## Functions

# - **`normal_pair(a, b)`**: bilinear expansion of :a b: into canonical pairs.
# - **`bracket(A, B, kind)`**: the Wick bracket of two quadratic fields.
# - **`ad_chain(operators, target, kind)`**: ad A_k ... ad A_2 (T) with δ bookkeeping.
# - **`eliminate_c(F)`**: drop every pair containing C or C*.
# - **`is_zero(x)`**: canonical zero test.


from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..utils.model_pydantic import AlgebraKind
from .cliffspace import ComboLike, Letter, as_combo, pairing, parse_letter
from .scalars import ZERO, Scalar, ScalarLike

Pair = Tuple[Letter, Letter]
Flags = Tuple[int, ...]

MAX_CHAIN = 4


def _pair_key(item: Tuple[Pair, Scalar]) -> tuple:
    (a, b), _coeff = item
    return (a.sort_key, b.sort_key)


class QuadField:
    """
    Canonical normal-ordered quadratic field.

    Pairs are stored with a < b in the letter order; :ba: is folded into
    −:ab: and :aa: vanishes.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Pair, Scalar] | None = None):
        self._terms: Dict[Pair, Scalar] = {}
        self._hash: Optional[int] = None
        for (a, b), coeff in (terms or {}).items():
            self._accumulate(a, b, Scalar.coerce(coeff))

    def _accumulate(self, a: Letter, b: Letter, coeff: Scalar) -> None:
        if a == b or not coeff:
            return
        self._hash = None
        if b < a:
            a, b, coeff = b, a, -coeff
        value = self._terms.get((a, b), ZERO) + coeff
        if value:
            self._terms[(a, b)] = value
        else:
            self._terms.pop((a, b), None)

    @classmethod
    def zero(cls) -> "QuadField":
        return cls()

    def items(self) -> Iterable[Tuple[Pair, Scalar]]:
        return self._terms.items()

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, a: Letter, b: Letter) -> Scalar:
        if b < a:
            return -self._terms.get((b, a), ZERO)
        return self._terms.get((a, b), ZERO)

    def letters(self) -> List[Letter]:
        return sorted({letter for pair in self._terms for letter in pair})

    def __add__(self, other: "QuadField") -> "QuadField":
        result = QuadField(self._terms)
        for (a, b), coeff in other._terms.items():
            result._accumulate(a, b, coeff)
        return result

    def __neg__(self) -> "QuadField":
        return QuadField({pair: -coeff for pair, coeff in self._terms.items()})

    def __sub__(self, other: "QuadField") -> "QuadField":
        return self + (-other)

    def __rmul__(self, scale: ScalarLike) -> "QuadField":
        factor = Scalar.coerce(scale)
        return QuadField({pair: factor * coeff for pair, coeff in self._terms.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadField):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_json(self) -> List[dict]:
        return [
            {"pair": [str(a), str(b)], "coeff": coeff.to_json()}
            for (a, b), coeff in sorted(self._terms.items(), key=_pair_key)
        ]

    @classmethod
    def from_json(cls, payload: Sequence[dict]) -> "QuadField":
        terms: Dict[Pair, Scalar] = {}
        result = cls(terms)
        for entry in payload:
            a, b = (parse_letter(text) for text in entry["pair"])
            result._accumulate(a, b, Scalar.from_json(entry["coeff"]))
        return result

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff!r}):{a}{b}:" for (a, b), coeff in self._terms.items())
        return f"QuadField({body or '0'})"


def normal_pair(a: ComboLike, b: ComboLike) -> QuadField:
    """Bilinear expansion of :a(z) b(z): for letter combinations a and b."""
    result = QuadField()
    for x, s in as_combo(a).items():
        for y, t in as_combo(b).items():
            result._accumulate(x, y, s * t)
    return result


def eliminate_c(field: QuadField) -> QuadField:
    return QuadField({(a, b): coeff for (a, b), coeff in field.items() if not (a.is_c or b.is_c)})


class LocalBracket:
    """Result of [A(z), B(w)]: a δ(z−w) field coefficient and a ∂_wδ(z−w) scalar."""

    __slots__ = ("delta_part", "ddelta_scalar")

    def __init__(self, delta_part: QuadField | None = None, ddelta_scalar: ScalarLike = ZERO):
        self.delta_part = delta_part if delta_part is not None else QuadField()
        self.ddelta_scalar = Scalar.coerce(ddelta_scalar)

    def is_zero(self) -> bool:
        return self.delta_part.is_zero() and not self.ddelta_scalar

    def swap(self) -> "LocalBracket":
        """The bracket with its arguments exchanged."""
        return LocalBracket(-self.delta_part, self.ddelta_scalar)

    def __add__(self, other: "LocalBracket") -> "LocalBracket":
        return LocalBracket(self.delta_part + other.delta_part, self.ddelta_scalar + other.ddelta_scalar)

    def __sub__(self, other: "LocalBracket") -> "LocalBracket":
        return LocalBracket(self.delta_part - other.delta_part, self.ddelta_scalar - other.ddelta_scalar)

    def __rmul__(self, scale: ScalarLike) -> "LocalBracket":
        factor = Scalar.coerce(scale)
        return LocalBracket(factor * self.delta_part, factor * self.ddelta_scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalBracket):
            return NotImplemented
        return self.delta_part == other.delta_part and self.ddelta_scalar == other.ddelta_scalar

    def to_json(self) -> dict:
        return {"delta_part": self.delta_part.to_json(), "ddelta": self.ddelta_scalar.to_json()}

    def __repr__(self) -> str:
        return f"LocalBracket({self.delta_part!r}, ddelta={self.ddelta_scalar!r})"


def bracket(A: QuadField, B: QuadField, kind: AlgebraKind) -> LocalBracket:
    """
    Wick bracket [:a₁b₁:(z), :a₂b₂:(w)] summed bilinearly over all pairs.

    Each pair contributes
    ⟨a₁,b₂⟩:b₁a₂: − ⟨a₁,a₂⟩:b₁b₂: + ⟨b₁,a₂⟩:a₁b₂: − ⟨b₁,b₂⟩:a₁a₂: at w times δ(z−w),
    plus (⟨a₁,b₂⟩⟨b₁,a₂⟩ − ⟨a₁,a₂⟩⟨b₁,b₂⟩) ∂_wδ(z−w).

    Args:
        A (QuadField): Field at z.
        B (QuadField): Field at w.
        kind (AlgebraKind): Selects the pairing table.

    Returns:
        LocalBracket: Canonical bracket.
    """
    delta = QuadField()
    ddelta = ZERO
    for (a1, b1), s in A.items():
        for (a2, b2), t in B.items():
            a1b2 = pairing(kind, a1, b2)
            a1a2 = pairing(kind, a1, a2)
            b1a2 = pairing(kind, b1, a2)
            b1b2 = pairing(kind, b1, b2)
            if not (a1b2 or a1a2 or b1a2 or b1b2):
                continue
            st = s * t
            if a1b2:
                delta._accumulate(b1, a2, st * a1b2)
            if a1a2:
                delta._accumulate(b1, b2, -(st * a1a2))
            if b1a2:
                delta._accumulate(a1, b2, st * b1a2)
            if b1b2:
                delta._accumulate(a1, a2, -(st * b1b2))
            central = a1b2 * b1a2 - a1a2 * b1b2
            if central:
                ddelta = ddelta + st * central
    return LocalBracket(delta, ddelta)


class AdChainResult:
    """
    Iterated bracket ad A_k ... ad A_2 (T) with all fields relocated to z₁.

    Keys are derivative-flag tuples (d₂, ..., d_k); a value pairs a field at
    z₁ with a central scalar and multiplies Π δ^{(d_i)}(z_i − z₁).
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Dict[Flags, Tuple[QuadField, Scalar]] | None = None):
        self._entries: Dict[Flags, Tuple[QuadField, Scalar]] = {}
        for flags, (field, central) in (entries or {}).items():
            if any(flag not in (0, 1) for flag in flags):
                raise ValueError(f"derivative flags must be 0 or 1, got {flags}")
            if not field.is_zero() or central:
                self._entries[flags] = (field, Scalar.coerce(central))

    def items(self) -> Iterable[Tuple[Flags, Tuple[QuadField, Scalar]]]:
        return self._entries.items()

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, flags: Flags) -> Tuple[QuadField, Scalar]:
        return self._entries[flags]

    def is_zero(self) -> bool:
        return not self._entries

    def to_json(self) -> List[dict]:
        return [
            {"flags": list(flags), "field": field.to_json(), "central": central.to_json()}
            for flags, (field, central) in sorted(self._entries.items())
        ]


def ad_chain(operators: Sequence[QuadField], target: QuadField, kind: AlgebraKind) -> AdChainResult:
    """
    Apply ad A_k(z_k) ... ad A_2(z_2) to T(z_1).

    Args:
        operators (Sequence[QuadField]): A_k, ..., A_2, outermost first.
        target (QuadField): T at z₁.
        kind (AlgebraKind): Selects the pairing table.

    Returns:
        AdChainResult: Pruned map from derivative flags to (field, central).

    Raises:
        ValueError: If the chain is empty or longer than four.
    """
    if not 1 <= len(operators) <= MAX_CHAIN:
        raise ValueError(f"ad chain length must be 1..{MAX_CHAIN}, got {len(operators)}")
    current: Dict[Flags, Tuple[QuadField, Scalar]] = {(): (target, ZERO)}
    for operator in reversed(operators):
        following: Dict[Flags, Tuple[QuadField, Scalar]] = {}
        for flags, (field, _central) in current.items():
            # the central slot commutes with everything
            if field.is_zero():
                continue
            result = bracket(operator, field, kind)
            if not result.delta_part.is_zero():
                following[flags + (0,)] = (result.delta_part, ZERO)
            if result.ddelta_scalar:
                following[flags + (1,)] = (QuadField(), result.ddelta_scalar)
        current = following
    return AdChainResult(current)


def is_zero(x: Union[QuadField, LocalBracket, AdChainResult, Scalar, int]) -> bool:
    if isinstance(x, (QuadField, LocalBracket, AdChainResult)):
        return x.is_zero()
    return not x
