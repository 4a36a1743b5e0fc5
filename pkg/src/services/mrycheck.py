# # MRYCheck Overview

# Presentation data of the twisted toroidal algebra t(g) (extended Cartan
# matrices, relation coefficients, grading), the fermionic generator fields of
# the level (1,0) representation, and the engine that checks relations
# (1)-(12) on those fields.

# ## Methods

# - **`extended_cartan(kind) -> np.ndarray`**: (n+1)x(n+1) matrix over 0..n.
# - **`RelationTable(kind)`**: hh_coeff, hx_sign, xx_ddelta, serre_arity, d_vector.
# - **`generator_field(kind, symbol)`**: the assigned QuadField, c-eliminated.
# - **`expected_bracket(kind, G, H, fields)`**: relation right-hand side in field form.
# - **`check_relation(kind, relation_id, indices)`**: one relation instance, as a record.
# - **`check_all(kind)`**: every relation instance, as a Report.
# - **`degree(kind, symbol, k)`**: the Z x Q-hat grading.

# ## Relation ids

# - 1-5: [α_i, α_j] central terms (i = j = 0; i = 0; generic; (n-1, n); (n, n)).
# - 6: [α_i, X(±α_j)];  7: [X(±α_i), X(±α_i)];  8: [X(α_i), X(−α_j)].
# - 9-12: Serre relations for a_ij = 0, -1, -2, -3.


import time
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np
from loguru import logger

from ..utils.model_pydantic import AlgebraKind, Family, RecordStatus, RelationRecord, Report
from .cliffspace import (
    C_LETTER,
    C_STAR,
    GHOST_E,
    GHOST_EBAR,
    Combo,
    beta_c_coefficient,
    d_vector,
    eps,
    eps_bar,
)
from .fieldcalc import AdChainResult, LocalBracket, QuadField, ad_chain, bracket, eliminate_c, normal_pair
from .scalars import ONE, ZERO, Scalar, omega, sqrt2


class Role(str, Enum):
    H = "H"
    X_PLUS = "X+"
    X_MINUS = "X-"
    CENTRAL = "c"


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    role: Role
    index: int = 0

    def __str__(self) -> str:
        if self.role == Role.CENTRAL:
            return "c"
        return f"{self.role.value}({self.index})"

    @property
    def sign(self) -> int:
        return -1 if self.role == Role.X_MINUS else 1


def H(i: int) -> GeneratorSymbol:
    return GeneratorSymbol(Role.H, i)


def XPlus(i: int) -> GeneratorSymbol:
    return GeneratorSymbol(Role.X_PLUS, i)


def XMinus(i: int) -> GeneratorSymbol:
    return GeneratorSymbol(Role.X_MINUS, i)


def X(i: int, sign: int) -> GeneratorSymbol:
    return XPlus(i) if sign > 0 else XMinus(i)


CENTRAL = GeneratorSymbol(Role.CENTRAL)

FieldMap = Mapping[GeneratorSymbol, QuadField]

SERRE_RELATION_BY_ENTRY = {0: 9, -1: 10, -2: 11, -3: 12}

# records that check a property rather than one of the relations (1)-(12)
PROPERTY_RECORD_ID = 0

RELATION_NAMES = {
    1: "[a0, a0]",
    2: "[a0, aj]",
    3: "[ai, aj]",
    4: "[a(n-1), an]",
    5: "[an, an]",
    6: "[ai, X(+-aj)]",
    7: "[X(+-ai), X(+-ai)]",
    8: "[X(ai), X(-aj)]",
    9: "serre a_ij=0",
    10: "serre a_ij=-1",
    11: "serre a_ij=-2",
    12: "serre a_ij=-3",
}


def symbols(kind: AlgebraKind) -> List[GeneratorSymbol]:
    """H(0..n), X+(0..n), X-(0..n) in this order."""
    indices = range(kind.n + 1)
    return [H(i) for i in indices] + [XPlus(i) for i in indices] + [XMinus(i) for i in indices]


def _check_symbol(kind: AlgebraKind, symbol: GeneratorSymbol) -> None:
    if symbol.role != Role.CENTRAL and not 0 <= symbol.index <= kind.n:
        raise ValueError(f"generator {symbol} out of range for {kind.label}")


@cache
def cartan_g0(kind: AlgebraKind) -> np.ndarray:
    """Cartan matrix of the fixed-point subalgebra: C_n, B_n, B_n or G_2, rows and columns 1..n."""
    n = kind.n
    matrix = 2 * np.eye(n, dtype=int)
    for i in range(n - 1):
        matrix[i, i + 1] = matrix[i + 1, i] = -1
    if kind.family == Family.A_ODD:
        matrix[n - 2, n - 1] = -2
    elif kind.family in (Family.D, Family.A_EVEN):
        matrix[n - 1, n - 2] = -2
    else:
        matrix[0, 1], matrix[1, 0] = -3, -1
    matrix.setflags(write=False)
    return matrix


@cache
def extended_cartan(kind: AlgebraKind) -> np.ndarray:
    n = kind.n
    matrix = np.zeros((n + 1, n + 1), dtype=int)
    matrix[0, 0] = 2
    matrix[1:, 1:] = cartan_g0(kind)
    if kind.family == Family.A_ODD:
        matrix[0, 2] = matrix[2, 0] = -1
    elif kind.family == Family.D:
        matrix[0, 1], matrix[1, 0] = -2, -1
    elif kind.family == Family.A_EVEN:
        matrix[0, 1], matrix[1, 0] = -1, -2
    else:
        matrix[0, 1] = matrix[1, 0] = -1
    matrix.setflags(write=False)
    return matrix


class RelationTable:
    """
    Coefficient tables of relations (1)-(12) for one algebra kind.

    Attributes:
        kind (AlgebraKind): The algebra kind.
        cartan (np.ndarray): Extended Cartan matrix over 0..n.
        d_vector (tuple): Symmetrizing factors d_0..d_n.
    """

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.cartan = extended_cartan(kind)
        self.d_vector = d_vector(kind)

    def a(self, i: int, j: int) -> int:
        return int(self.cartan[i, j])

    def hh_relation(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        n = self.kind.n
        if i == j == 0:
            return 1
        if i == 0:
            return 2
        if (i, j) == (n - 1, n):
            return 4
        if (i, j) == (n, n):
            return 5
        return 3

    def hh_coeff(self, i: int, j: int) -> Scalar:
        """C_ij in [α_i(k), α_j(l)] = C_ij k δ_{k,-l} c̸."""
        i, j = min(i, j), max(i, j)
        family, r = self.kind.family, self.kind.r
        relation = self.hh_relation(i, j)
        if relation == 1:
            return Scalar.rational(2 if family == Family.A_EVEN else 2 * r)
        if relation == 4:
            factor = {Family.A_ODD: 1, Family.D4_TRIALITY: 1, Family.A_EVEN: 4, Family.D: 2}[family]
            return Scalar.rational(factor * self.a(i, j))
        if relation == 5:
            return Scalar.rational({Family.A_ODD: 2, Family.D4_TRIALITY: 2, Family.A_EVEN: 8, Family.D: 4}[family])
        factor = 1 if family == Family.D else r
        return Scalar.rational(factor * self.a(i, j))

    def hx_sign(self, i: int, j: int) -> int:
        return self.a(i, j)

    def xx_ddelta(self, i: int) -> Scalar:
        """D_i in [X(α_i, k), X(−α_i, l)] = α_i(k+l) + D_i k δ_{k,-l} c̸."""
        n, r = self.kind.n, self.kind.r
        at_n = 1 if i == n else 0
        at_0 = 1 if i == 0 else 0
        if self.kind.family in (Family.A_ODD, Family.D4_TRIALITY):
            value = r - at_n * (r - 1)
        elif self.kind.family == Family.A_EVEN:
            value = r * (1 + at_n * (r - 1)) - at_0 * (r - 1)
        else:
            value = 1 + (at_0 + at_n) * (r - 1)
        return Scalar.rational(value)

    def serre_arity(self, i: int, j: int) -> int:
        return 1 - self.a(i, j)


@cache
def relation_table(kind: AlgebraKind) -> RelationTable:
    return RelationTable(kind)


def _beta(kind: AlgebraKind, starred: bool) -> Combo:
    kappa = beta_c_coefficient(kind)
    if starred:
        return {C_STAR: kappa, eps(1, True): ONE}
    return {C_LETTER: kappa, eps(1): ONE}


def _assigned_fields(kind: AlgebraKind) -> Dict[GeneratorSymbol, QuadField]:
    n, family = kind.n, kind.family
    e = eps
    b = eps_bar
    beta, beta_star = _beta(kind, False), _beta(kind, True)
    fields: Dict[GeneratorSymbol, QuadField] = {}
    pair = normal_pair

    if family == Family.A_ODD:
        fields[XPlus(0)] = pair(b(2), beta_star) + pair(e(2, True), b(1))
        fields[XMinus(0)] = pair(beta, b(2, True)) + pair(b(1, True), e(2))
        fields[H(0)] = pair(beta_star, beta) + pair(e(2, True), e(2)) + pair(b(1), b(1, True)) + pair(b(2), b(2, True))
        for i in range(1, n):
            fields[XPlus(i)] = pair(e(i), e(i + 1, True)) + pair(b(i, True), b(i + 1))
            fields[XMinus(i)] = pair(e(i + 1), e(i, True)) + pair(b(i + 1, True), b(i))
            fields[H(i)] = (
                pair(e(i), e(i, True))
                + pair(e(i + 1, True), e(i + 1))
                + pair(b(i, True), b(i))
                + pair(b(i + 1), b(i + 1, True))
            )
        fields[XPlus(n)] = pair(e(n), b(n, True))
        fields[XMinus(n)] = pair(b(n), e(n, True))
        fields[H(n)] = pair(e(n), e(n, True)) + pair(b(n, True), b(n))
    elif family == Family.D:
        root2 = sqrt2()
        fields[XPlus(0)] = root2 * pair(GHOST_EBAR, beta_star)
        fields[XMinus(0)] = root2 * pair(beta, GHOST_EBAR)
        fields[H(0)] = 2 * pair(beta_star, beta)
        for i in range(1, n):
            fields[XPlus(i)] = pair(e(i), e(i + 1, True))
            fields[XMinus(i)] = pair(e(i + 1), e(i, True))
            fields[H(i)] = pair(e(i), e(i, True)) + pair(e(i + 1, True), e(i + 1))
        fields[XPlus(n)] = root2 * pair(e(n), GHOST_E)
        fields[XMinus(n)] = root2 * pair(GHOST_E, e(n, True))
        fields[H(n)] = 2 * pair(e(n), e(n, True))
    elif family == Family.A_EVEN:
        root2 = sqrt2()
        fields[XPlus(0)] = pair(b(1), beta_star)
        fields[XMinus(0)] = pair(beta, b(1, True))
        fields[H(0)] = pair(b(1), b(1, True)) + pair(beta_star, beta)
        for i in range(1, n):
            fields[XPlus(i)] = pair(e(i), e(i + 1, True)) + pair(b(i, True), b(i + 1))
            fields[XMinus(i)] = pair(e(i + 1), e(i, True)) + pair(b(i + 1, True), b(i))
            fields[H(i)] = (
                pair(e(i), e(i, True))
                + pair(e(i + 1, True), e(i + 1))
                + pair(b(i + 1), b(i + 1, True))
                + pair(b(i, True), b(i))
            )
        fields[XPlus(n)] = root2 * (pair(e(n), GHOST_EBAR) + pair(b(n, True), GHOST_E))
        fields[XMinus(n)] = root2 * (pair(GHOST_E, e(n, True)) + pair(GHOST_EBAR, b(n)))
        fields[H(n)] = 2 * (pair(e(n), e(n, True)) + pair(b(n, True), b(n)))
    else:
        w = omega()
        w2 = w * w
        fields[XPlus(0)] = pair(b(1), beta_star) + w * pair(b(1, True), e(1, True)) + w2 * pair(b(2, True), e(2, True))
        fields[XMinus(0)] = pair(beta, b(1, True)) + w2 * pair(e(1), b(1)) + w * pair(e(2), b(2))
        fields[H(0)] = pair(e(1, True), e(1)) + pair(beta_star, beta) + pair(e(2, True), e(2)) + pair(b(2, True), b(2))
        fields[XPlus(1)] = pair(e(1), e(2, True)) + pair(b(2), b(1, True)) + pair(b(2), b(1))
        fields[XMinus(1)] = pair(e(2), e(1, True)) + pair(b(1), b(2, True)) + pair(b(1, True), b(2, True))
        fields[H(1)] = pair(e(1), e(1, True)) + pair(e(2, True), e(2)) + 2 * pair(b(2), b(2, True))
        fields[XPlus(2)] = pair(e(2), b(2, True))
        fields[XMinus(2)] = pair(b(2), e(2, True))
        fields[H(2)] = pair(e(2), e(2, True)) + pair(b(2, True), b(2))
    return fields


@cache
def _fields(kind: AlgebraKind, eliminate: bool) -> Dict[GeneratorSymbol, QuadField]:
    fields = _assigned_fields(kind)
    if eliminate:
        fields = {symbol: eliminate_c(field) for symbol, field in fields.items()}
    return fields


def generator_field(kind: AlgebraKind, symbol: GeneratorSymbol, eliminate: bool = True) -> QuadField:
    """
    The field assigned to a generator by the fermionic representation.

    Args:
        kind (AlgebraKind): The algebra kind.
        symbol (GeneratorSymbol): H(i), XPlus(i) or XMinus(i).
        eliminate (bool): Drop every pair containing C or C*.

    Raises:
        ValueError: If the symbol is central or its index is out of range.
    """
    _check_symbol(kind, symbol)
    if symbol.role == Role.CENTRAL:
        raise ValueError("the central element has no field; it acts as the identity")
    return _fields(kind, eliminate)[symbol]


def generator_fields(kind: AlgebraKind, eliminate: bool = True) -> Dict[GeneratorSymbol, QuadField]:
    return dict(_fields(kind, eliminate))


def perturbed(fields: FieldMap, symbol: GeneratorSymbol) -> Dict[GeneratorSymbol, QuadField]:
    """Copy of `fields` where the first coefficient of `symbol`'s field is raised by one."""
    result = dict(fields)
    field = fields[symbol]
    first = next(iter(field))
    result[symbol] = field + normal_pair(first[0], {first[1]: ONE})
    return result


def expected_bracket(
    kind: AlgebraKind, G: GeneratorSymbol, H_: GeneratorSymbol, fields: Optional[FieldMap] = None
) -> Optional[LocalBracket]:
    """
    Right-hand side of relations (1)-(8) for [G(z), H(w)] with c̸ set to 1.

    Returns:
        Optional[LocalBracket]: None when no relation governs the ordered pair.
    """
    fields = fields if fields is not None else _fields(kind, True)
    table = relation_table(kind)
    if G.role == Role.H and H_.role == Role.H:
        return LocalBracket(QuadField(), table.hh_coeff(G.index, H_.index))
    if G.role == Role.H and H_.role in (Role.X_PLUS, Role.X_MINUS):
        return LocalBracket(H_.sign * table.hx_sign(G.index, H_.index) * fields[H_], ZERO)
    if H_.role == Role.H and G.role in (Role.X_PLUS, Role.X_MINUS):
        swapped = expected_bracket(kind, H_, G, fields)
        return swapped.swap() if swapped is not None else None
    if G.role == H_.role and G.index == H_.index:
        return LocalBracket()
    if G.role == Role.X_PLUS and H_.role == Role.X_MINUS:
        if G.index != H_.index:
            return LocalBracket()
        return LocalBracket(fields[H(G.index)], table.xx_ddelta(G.index))
    if G.role == Role.X_MINUS and H_.role == Role.X_PLUS:
        swapped = expected_bracket(kind, H_, G, fields)
        return swapped.swap() if swapped is not None else None
    return None


def pair_relation(kind: AlgebraKind, G: GeneratorSymbol, H_: GeneratorSymbol) -> Optional[int]:
    """The relation among (1)-(8) governing [G, H], None when no relation does."""
    if CENTRAL in (G, H_):
        return None
    if G.role == Role.H and H_.role == Role.H:
        return relation_table(kind).hh_relation(G.index, H_.index)
    if Role.H in (G.role, H_.role):
        return 6
    if G.role == H_.role:
        return 7 if G.index == H_.index else None
    return 8


def relation_instances(kind: AlgebraKind) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Every relation instance as (relation id, indices), sorted by id then indices."""
    n = kind.n
    table = relation_table(kind)
    hh: Dict[int, List[Tuple[int, ...]]] = {1: [], 2: [], 3: [], 4: [], 5: []}
    for i in range(n + 1):
        for j in range(i, n + 1):
            hh[table.hh_relation(i, j)].append((i, j))
    for relation_id in (1, 2, 3, 4, 5):
        for indices in hh[relation_id]:
            yield relation_id, indices
    for i in range(n + 1):
        for j in range(n + 1):
            for sign in (1, -1):
                yield 6, (i, j, sign)
    for i in range(n + 1):
        for sign in (1, -1):
            yield 7, (i, sign)
    for i in range(n + 1):
        for j in range(n + 1):
            yield 8, (i, j)
    serre: Dict[int, List[Tuple[int, ...]]] = {9: [], 10: [], 11: [], 12: []}
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                for sign in (1, -1):
                    serre[SERRE_RELATION_BY_ENTRY[table.a(i, j)]].append((i, j, sign))
    for relation_id in (9, 10, 11, 12):
        for indices in serre[relation_id]:
            yield relation_id, indices


def _serre_chain(kind: AlgebraKind, i: int, j: int, sign: int, fields: FieldMap) -> AdChainResult:
    arity = relation_table(kind).serre_arity(i, j)
    return ad_chain([fields[X(i, sign)]] * arity, fields[X(j, sign)], kind)


def _compute(
    kind: AlgebraKind, relation_id: int, indices: Tuple[int, ...], fields: FieldMap
) -> Tuple[LocalBracket, LocalBracket]:
    if relation_id in (1, 2, 3, 4, 5):
        i, j = indices
        G, K = H(i), H(j)
    elif relation_id == 6:
        i, j, sign = indices
        G, K = H(i), X(j, sign)
    elif relation_id == 7:
        i, sign = indices
        G, K = X(i, sign), X(i, sign)
    elif relation_id == 8:
        i, j = indices
        G, K = XPlus(i), XMinus(j)
    else:
        raise ValueError(f"relation {relation_id} is not a two-field bracket")
    computed = bracket(fields[G], fields[K], kind)
    expected = expected_bracket(kind, G, K, fields)
    assert expected is not None
    return computed, expected


def _validate(kind: AlgebraKind, relation_id: int, indices: Tuple[int, ...]) -> None:
    n = kind.n
    table = relation_table(kind)
    arity = {1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 3, 7: 2, 8: 2, 9: 3, 10: 3, 11: 3, 12: 3}.get(relation_id)
    if arity is None:
        raise ValueError(f"unknown relation id {relation_id}")
    if len(indices) != arity:
        raise ValueError(f"relation {relation_id} takes {arity} indices, got {indices}")
    has_sign = relation_id in (6, 7, 9, 10, 11, 12)
    plain = indices[:-1] if has_sign else indices
    if any(not 0 <= index <= n for index in plain):
        raise ValueError(f"indices {indices} out of range for {kind.label}")
    if has_sign and indices[-1] not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {indices[-1]}")
    if relation_id <= 5 and table.hh_relation(*indices) != relation_id:
        raise ValueError(f"indices {indices} belong to relation {table.hh_relation(*indices)}")
    if relation_id >= 9:
        i, j, _ = indices
        if i == j or SERRE_RELATION_BY_ENTRY.get(table.a(i, j)) != relation_id:
            raise ValueError(f"indices {indices} do not belong to relation {relation_id}")


def check_relation(
    kind: AlgebraKind,
    relation_id: int,
    indices: Tuple[int, ...],
    fields: Optional[FieldMap] = None,
    eliminate: bool = True,
    record_timings: bool = True,
) -> RelationRecord:
    """
    Check one relation instance on the generator fields.

    Args:
        kind (AlgebraKind): The algebra kind.
        relation_id (int): 1..12.
        indices (tuple): (i, j) for 1-5 and 8, (i, j, sign) for 6 and 9-12, (i, sign) for 7.
        fields (FieldMap): Generator fields to use; the assigned ones by default.
        eliminate (bool): With False the fields keep their C/C* pairs and the
            residual is compared after c-elimination.
        record_timings (bool): Store the wall time in the record.

    Returns:
        RelationRecord: status pass iff the residual vanishes.

    Raises:
        ValueError: If the indices do not name an instance of the relation.
    """
    indices = tuple(indices)
    _validate(kind, relation_id, indices)
    if fields is None:
        fields = _fields(kind, eliminate)
    start = time.perf_counter()
    if relation_id >= 9:
        i, j, sign = indices
        chain = _serre_chain(kind, i, j, sign, fields)
        if not eliminate:
            chain = AdChainResult({flags: (eliminate_c(field), central) for flags, (field, central) in chain.items()})
        passed = chain.is_zero()
        residual = chain.to_json()
    else:
        computed, expected = _compute(kind, relation_id, indices, fields)
        difference = computed - expected
        if not eliminate:
            difference = LocalBracket(eliminate_c(difference.delta_part), difference.ddelta_scalar)
        passed = difference.is_zero()
        residual = difference.to_json()
    elapsed = (time.perf_counter() - start) * 1000 if record_timings else 0.0
    record = RelationRecord(
        id=relation_id,
        indices=list(indices),
        status=RecordStatus.PASS if passed else RecordStatus.FAIL,
        residual=None if passed else residual,
        ms=round(elapsed, 3),
        label=f"{kind.label} {RELATION_NAMES[relation_id]} {indices}",
    )
    if not passed:
        logger.warning(f"relation {relation_id} {indices} fails for {kind.label}")
    return record


def finish_record(
    relation_id: int, indices: List[int], failure: Optional[dict], start: float, record_timings: bool, label: str
) -> RelationRecord:
    """Record for a check started at `start` (a perf_counter value); `failure` None means pass."""
    elapsed = (time.perf_counter() - start) * 1000 if record_timings else 0.0
    if failure is not None:
        logger.warning(f"{label} fails")
    return RelationRecord(
        id=relation_id,
        indices=indices,
        status=RecordStatus.PASS if failure is None else RecordStatus.FAIL,
        residual=failure,
        ms=round(elapsed, 3),
        label=label,
    )


def check_all(kind: AlgebraKind, fields: Optional[FieldMap] = None, record_timings: bool = True) -> Report:
    """Check every instance of relations (1)-(12)."""
    records = [
        check_relation(kind, relation_id, indices, fields=fields, record_timings=record_timings)
        for relation_id, indices in relation_instances(kind)
    ]
    report = Report(kind=kind.family, n=kind.n, relations=records)
    logger.info(f"{kind.label}: {report.pass_count} relation instances pass, {report.fail_count} fail")
    return report


@dataclass(frozen=True)
class Degree:
    s_degree: int
    root_part: Tuple[int, ...]

    def __add__(self, other: "Degree") -> "Degree":
        return Degree(
            self.s_degree + other.s_degree, tuple(a + b for a, b in zip(self.root_part, other.root_part))
        )


def zero_degree(kind: AlgebraKind) -> Degree:
    return Degree(0, (0,) * (kind.n + 1))


def degree(kind: AlgebraKind, symbol: GeneratorSymbol, k: int = 0) -> Degree:
    _check_symbol(kind, symbol)
    if symbol.role == Role.CENTRAL:
        return zero_degree(kind)
    if symbol.role == Role.H:
        return Degree(k, (0,) * (kind.n + 1))
    root = [0] * (kind.n + 1)
    root[symbol.index] = symbol.sign
    return Degree(k, tuple(root))


def render_text(report: Report) -> str:
    lines = [f"{report.kind.value} n={report.n}: {report.pass_count} pass, {report.fail_count} fail"]
    for record in report.relations:
        name = RELATION_NAMES.get(record.id, record.label)
        lines.append(f"  [{record.status.value:4}] ({record.id:2}) {name:22} {record.indices}")
    return "\n".join(lines)
