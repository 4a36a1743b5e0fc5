# # Fockrep Overview

# The fermionic Fock space V spanned by the letters of a kind (C and C* are
# left out), with ghost sectors for kinds D and AEven. Operators act exactly:
# a normal-ordered quadratic mode component touches only finitely many modes
# of any state, so nothing is truncated.

# ## Types

# - **`Mode`**: half-integer stored as the odd integer `twice`.
# - **`FockState`**: canonical sorted tuple of (Letter, Mode) creation entries.
# - **`StateVector`**: Scalar-combination of FockStates.
# - **`ModeComponent`**: Σ_m :a(m) b(k−m): of a QuadField.

# ## Methods

# - **`apply_letter(letter, mode, v, kind)`**, **`apply_mode_component(op, v, kind)`**
# - **`commutator_check(...)`**, **`serre_check_fock(...)`**
# - **`enumerate_states(kind, max_energy, limit)`**


import bisect
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..utils.model_pydantic import AlgebraKind
from .cliffspace import Letter, letters, pairing, validate_letter
from .fieldcalc import LocalBracket, QuadField, bracket
from .mrycheck import CENTRAL, FieldMap, GeneratorSymbol, X, expected_bracket, generator_fields, relation_table
from .scalars import ONE, ZERO, Scalar, ScalarLike


@dataclass(frozen=True, order=True)
class Mode:
    twice: int

    def __post_init__(self):
        if self.twice % 2 == 0:
            raise ValueError(f"modes are half-integers, got {Fraction(self.twice, 2)}")

    @classmethod
    def of(cls, value: Union[Fraction, str, float]) -> "Mode":
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"modes are half-integers, got {value}")
        return cls(int(twice))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_creation(self) -> bool:
        return self.twice < 0

    def __neg__(self) -> "Mode":
        return Mode(-self.twice)

    def __str__(self) -> str:
        return str(self.value)


Entry = Tuple[Letter, Mode]


def _entry_key(entry: Entry) -> tuple:
    letter, mode = entry
    return (-mode.twice, letter.sort_key)


class FockState:
    """
    Basis state ε_1(m_1) ... ε_N(m_N)|0⟩ with entries sorted by mode descending, then letter.
    """

    __slots__ = ("entries", "_keys", "_hash")

    def __init__(self, entries: Iterable[Entry] = ()):
        ordered = tuple(sorted(entries, key=_entry_key))
        for letter, mode in ordered:
            if not mode.is_creation:
                raise ValueError(f"state entries must be creation modes, got {letter}({mode})")
        keys = tuple(_entry_key(entry) for entry in ordered)
        if len(set(keys)) != len(keys):
            raise ValueError("a fermionic state cannot hold the same (letter, mode) twice")
        self.entries: Tuple[Entry, ...] = ordered
        self._keys = keys
        self._hash = hash(ordered)

    @classmethod
    def _canonical(cls, entries: Tuple[Entry, ...], keys: Tuple[tuple, ...]) -> "FockState":
        state = cls.__new__(cls)
        state.entries = entries
        state._keys = keys
        state._hash = hash(entries)
        return state

    def __getstate__(self):
        return self.entries

    def __setstate__(self, entries):
        self.entries = entries
        self._keys = tuple(_entry_key(entry) for entry in entries)
        self._hash = hash(entries)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.entries == other.entries

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def sort_key(self) -> tuple:
        return (energy(self), self._keys)

    def to_json(self) -> List[List[str]]:
        return [[str(letter), str(mode)] for letter, mode in self.entries]

    def __repr__(self) -> str:
        body = " ".join(f"{letter}({mode})" for letter, mode in self.entries)
        return f"|{body}>"


VACUUM = FockState()


def vacuum() -> FockState:
    return VACUUM


def energy(state: FockState) -> Fraction:
    return Fraction(sum(-mode.twice for _, mode in state.entries), 2)


class StateVector:
    """Scalar-combination of FockStates; zero coefficients are pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[FockState, Scalar]] = None):
        self._terms: Dict[FockState, Scalar] = {}
        for state, coeff in (terms or {}).items():
            self._accumulate(state, Scalar.coerce(coeff))

    @classmethod
    def of(cls, state: FockState, coeff: ScalarLike = ONE) -> "StateVector":
        return cls({state: Scalar.coerce(coeff)})

    def _accumulate(self, state: FockState, coeff: Scalar) -> None:
        if not coeff:
            return
        value = self._terms.get(state, ZERO) + coeff
        if value:
            self._terms[state] = value
        else:
            self._terms.pop(state, None)

    def items(self) -> Iterable[Tuple[FockState, Scalar]]:
        return self._terms.items()

    def coefficient(self, state: FockState) -> Scalar:
        return self._terms.get(state, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "StateVector") -> "StateVector":
        result = StateVector(self._terms)
        for state, coeff in other._terms.items():
            result._accumulate(state, coeff)
        return result

    def __neg__(self) -> "StateVector":
        return StateVector({state: -coeff for state, coeff in self._terms.items()})

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + (-other)

    def __rmul__(self, scale: ScalarLike) -> "StateVector":
        factor = Scalar.coerce(scale)
        return StateVector({state: factor * coeff for state, coeff in self._terms.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self._terms == other._terms

    def to_json(self) -> List[dict]:
        ordered = sorted(self._terms.items(), key=lambda item: item[0].sort_key)
        return [{"state": state.to_json(), "coeff": coeff.to_json()} for state, coeff in ordered]

    def __repr__(self) -> str:
        return " + ".join(f"({coeff!r}){state!r}" for state, coeff in self._terms.items()) or "0"


@lru_cache(maxsize=1 << 17)
def _act(kind: AlgebraKind, letter: Letter, twice: int, state: FockState) -> Tuple[Tuple[FockState, Scalar], ...]:
    """letter(twice/2) applied to one basis state."""
    if twice < 0:
        entry = (letter, Mode(twice))
        key = _entry_key(entry)
        position = bisect.bisect_left(state._keys, key)
        if position < len(state._keys) and state._keys[position] == key:
            return ()
        entries = state.entries[:position] + (entry,) + state.entries[position:]
        keys = state._keys[:position] + (key,) + state._keys[position:]
        sign = ONE if position % 2 == 0 else -ONE
        return ((FockState._canonical(entries, keys), sign),)
    results = []
    for position, (other, mode) in enumerate(state.entries):
        if mode.twice != -twice:
            continue
        value = pairing(kind, letter, other)
        if not value:
            continue
        entries = state.entries[:position] + state.entries[position + 1 :]
        keys = state._keys[:position] + state._keys[position + 1 :]
        results.append((FockState._canonical(entries, keys), value if position % 2 == 0 else -value))
    return tuple(results)


def _act_on_vector(kind: AlgebraKind, letter: Letter, twice: int, v: StateVector) -> StateVector:
    result = StateVector()
    for state, coeff in v.items():
        for image, value in _act(kind, letter, twice, state):
            result._accumulate(image, coeff * value)
    return result


def apply_letter(letter: Letter, mode: Mode, v: Union[StateVector, FockState], kind: AlgebraKind) -> StateVector:
    """
    Apply the single mode letter(mode) to a vector.

    Creation inserts the entry with its crossing sign (zero when already
    present); annihilation removes every pairing partner at the opposite mode,
    with crossing sign times the pairing value.

    Raises:
        ValueError: If the letter is not valid for `kind`.
    """
    validate_letter(kind, letter)
    if isinstance(v, FockState):
        v = StateVector.of(v)
    return _act_on_vector(kind, letter, mode.twice, v)


@dataclass(frozen=True)
class ModeComponent:
    """The z^{-k-1} coefficient Σ_m :a(m) b(k−m): of a quadratic field."""

    source: QuadField
    k: int


def _mode_candidates(k: int, state: FockState) -> List[int]:
    twice_k = 2 * k
    present = {-mode.twice for _, mode in state.entries}
    candidates = set(range(twice_k + 1, 0, 2)) if k <= -1 else set()
    for p in present:
        candidates.add(p)
        if twice_k - p < 0:
            candidates.add(twice_k - p)
    return sorted(candidates)


@lru_cache(maxsize=1 << 15)
def _component_on_state(op: ModeComponent, state: FockState, kind: AlgebraKind) -> Tuple[Tuple[FockState, Scalar], ...]:
    twice_k = 2 * op.k
    image = StateVector()
    candidates = _mode_candidates(op.k, state)
    for (a, b), s in op.source.items():
        for m in candidates:
            n = twice_k - m
            if m < 0:
                for middle, x in _act(kind, b, n, state):
                    for target, y in _act(kind, a, m, middle):
                        image._accumulate(target, s * x * y)
            else:
                for middle, x in _act(kind, a, m, state):
                    for target, y in _act(kind, b, n, middle):
                        image._accumulate(target, -(s * x * y))
    return tuple(image.items())


def apply_mode_component(op: ModeComponent, v: Union[StateVector, FockState], kind: AlgebraKind) -> StateVector:
    """
    Exact action of a mode component on a vector.

    Only finitely many m contribute on a basis state: positive m present in
    the state, m = k − p for positive p present in the state, and the
    creation window m ∈ (k, 0) when k ≤ −1. Images of basis states are
    memoized per (component, state), so sweeps over modes and generator
    pairs reuse them.
    """
    if isinstance(v, FockState):
        v = StateVector.of(v)
    result = StateVector()
    for state, coeff in v.items():
        for image, value in _component_on_state(op, state, kind):
            result._accumulate(image, coeff * value)
    return result


Operator = Callable[[StateVector], StateVector]


def operator(op: ModeComponent, kind: AlgebraKind) -> Operator:
    return lambda v: apply_mode_component(op, v, kind)


def commutator(f: Operator, g: Operator) -> Operator:
    return lambda v: f(g(v)) - g(f(v))


def apply_nested(
    kind: AlgebraKind, operators: Sequence[ModeComponent], target: ModeComponent, v: StateVector
) -> StateVector:
    """Apply [A_1, [A_2, ... [A_m, T]]] to v, operators listed outermost first."""
    nested = reduce(
        lambda inner, op: commutator(operator(op, kind), inner), reversed(operators), operator(target, kind)
    )
    return nested(v)


def anticommutator(kind: AlgebraKind, a: Letter, ka: Mode, b: Letter, kb: Mode, v: StateVector) -> StateVector:
    return apply_letter(a, ka, apply_letter(b, kb, v, kind), kind) + apply_letter(
        b, kb, apply_letter(a, ka, v, kind), kind
    )


def _expected_operator(expected: LocalBracket, k: int, l: int, kind: AlgebraKind) -> Operator:
    central = expected.ddelta_scalar * k if k == -l else ZERO
    component = ModeComponent(expected.delta_part, k + l)

    def apply(v: StateVector) -> StateVector:
        result = apply_mode_component(component, v, kind)
        if central:
            result = result + central * v
        return result

    return apply


class ExpectedSource(str, Enum):
    RELATION_TABLE = "relation_table"
    SYMBOLIC = "symbolic"


def commutator_check(
    G: GeneratorSymbol,
    k: int,
    H: GeneratorSymbol,
    l: int,
    states: Sequence[FockState],
    kind: AlgebraKind,
    expected_source: ExpectedSource = ExpectedSource.RELATION_TABLE,
    fields: Optional[FieldMap] = None,
) -> List[StateVector]:
    """
    Residuals (G_k H_l − H_l G_k − expected) v for every test state v.

    Args:
        G (GeneratorSymbol): First generator.
        k (int): Its mode.
        H (GeneratorSymbol): Second generator.
        l (int): Its mode.
        states (Sequence[FockState]): Test states.
        kind (AlgebraKind): The algebra kind.
        expected_source (ExpectedSource): RELATION_TABLE takes the right-hand
            side of relations (1)-(8) and falls back to the symbolic bracket for
            pairs no relation governs; SYMBOLIC always translates the symbolic bracket.
        fields (FieldMap): Generator fields; the assigned ones by default.

    Returns:
        List[StateVector]: One residual per state, in the order of `states`.

    Raises:
        ValueError: If a symbol is the central element.
    """
    if CENTRAL in (G, H):
        raise ValueError("the central element acts as the identity; pass a field generator")
    fields = fields if fields is not None else generator_fields(kind)
    expected = None
    if expected_source == ExpectedSource.RELATION_TABLE:
        expected = expected_bracket(kind, G, H, fields)
    if expected is None:
        expected = bracket(fields[G], fields[H], kind)
    bracket_op = commutator(operator(ModeComponent(fields[G], k), kind), operator(ModeComponent(fields[H], l), kind))
    expected_op = _expected_operator(expected, k, l, kind)
    residuals = []
    for state in states:
        v = StateVector.of(state)
        residuals.append(bracket_op(v) - expected_op(v))
    return residuals


def serre_check_fock(
    kind: AlgebraKind,
    i: int,
    j: int,
    sign: int,
    modes: Sequence[int],
    states: Sequence[FockState],
    fields: Optional[FieldMap] = None,
) -> List[StateVector]:
    """
    Residuals of ad X(±α_i, k_m) ... ad X(±α_i, k_2) X(±α_j, k_1) on test states.

    Args:
        modes (Sequence[int]): (k_m, ..., k_2, k_1), outermost first, with
            m − 1 = 1 − a_ij.

    Raises:
        ValueError: If i == j or the mode tuple has the wrong length.
    """
    if i == j:
        raise ValueError("Serre relations need i != j")
    arity = relation_table(kind).serre_arity(i, j)
    if len(modes) != arity + 1:
        raise ValueError(f"expected {arity + 1} modes for a_ij = {1 - arity}, got {len(modes)}")
    fields = fields if fields is not None else generator_fields(kind)
    operators = [ModeComponent(fields[X(i, sign)], k) for k in modes[:-1]]
    target = ModeComponent(fields[X(j, sign)], modes[-1])
    return [apply_nested(kind, operators, target, StateVector.of(state)) for state in states]


def _slots(kind: AlgebraKind, twice_energy: int) -> List[Tuple[int, Entry]]:
    slots = []
    for twice in range(1, twice_energy + 1, 2):
        for letter in letters(kind):
            entry = (letter, Mode(-twice))
            slots.append((twice, entry))
    slots.sort(key=lambda slot: _entry_key(slot[1]))
    return slots


def _states_at(slots: List[Tuple[int, Entry]], remaining: int, start: int, chosen: List[Entry]) -> Iterator[FockState]:
    if remaining == 0:
        yield FockState(chosen)
        return
    for index in range(start, len(slots)):
        cost, entry = slots[index]
        if cost > remaining:
            break
        chosen.append(entry)
        yield from _states_at(slots, remaining - cost, index + 1, chosen)
        chosen.pop()


def enumerate_states(
    kind: AlgebraKind, max_energy: Union[Fraction, int, str], limit: Optional[int] = None
) -> List[FockState]:
    """
    All canonical states with energy ≤ max_energy, lowest energy first.

    Args:
        kind (AlgebraKind): Selects the letters (no C oscillators; ghosts for D and AEven).
        max_energy: Upper bound on the sum of |modes|.
        limit (Optional[int]): Keep only the first `limit` states.

    Raises:
        ValueError: If max_energy is negative.
    """
    bound = Fraction(max_energy)
    if bound < 0:
        raise ValueError(f"max_energy must be >= 0, got {bound}")
    twice_energy = int(bound * 2)
    slots = _slots(kind, twice_energy)
    states: List[FockState] = []
    for level in range(twice_energy + 1):
        for state in _states_at(slots, level, 0, []):
            states.append(state)
            if limit is not None and len(states) >= limit:
                return states
    return states
