import time
from fractions import Fraction
from functools import cache
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.services.cliffspace import Letter, letters, pairing
from src.services.fieldcalc import bracket, normal_pair
from src.services.fockrep import (
    ExpectedSource,
    FockState,
    Mode,
    ModeComponent,
    StateVector,
    anticommutator,
    apply_nested,
    commutator_check,
    enumerate_states,
    serre_check_fock,
)
from src.services.loopcore import (
    C0,
    C1,
    KahlerElement,
    PsiReading,
    build_algebra,
    check_eta_psi,
    check_pairing_table,
    check_psi_pair,
    check_psi_serre,
    form_violations,
    is_twisted,
    jacobi_violations,
    kahler_reduce,
    loop_bracket,
    psi_relation_tasks,
    sigma_violations,
    tensor,
    theta0_triple,
    twist_projection,
)
from src.services.mrycheck import (
    PROPERTY_RECORD_ID,
    RELATION_NAMES,
    GeneratorSymbol,
    check_relation,
    finish_record,
    generator_fields,
    pair_relation,
    relation_instances,
    relation_table,
    symbols,
)
from src.services.scalars import ONE, Scalar, embed
from src.services.suite_runner import SuiteRunner, Task
from src.utils.model_pydantic import AlgebraKind, Family, RelationRecord, RunConfig, SuiteName

EMBEDDING_TOLERANCE = 1e-9
CLIFFORD_MODES = (Mode(-3), Mode(-1), Mode(1), Mode(3))


@cache
def sample_states(kind: AlgebraKind, energy: str, state_cap: Optional[int]) -> Tuple[FockState, ...]:
    return tuple(enumerate_states(kind, energy, state_cap))


def _first_nonzero(states: Sequence[FockState], residuals: Sequence[StateVector], **context) -> Optional[dict]:
    for state, residual in zip(states, residuals):
        if not residual.is_zero():
            return {**context, "state": state.to_json(), "residual": residual.to_json()}
    return None


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def _random_fraction(rng: np.random.Generator, bound: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def _random_scalar(rng: np.random.Generator) -> Scalar:
    return Scalar(_random_fraction(rng) for _ in range(8))


def _pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]


# fock and serre suites


def check_serre_on_states(
    kind: AlgebraKind,
    relation_id: int,
    indices: Tuple[int, int, int],
    energy: str,
    state_cap: int,
    record_timings: bool,
) -> RelationRecord:
    i, j, sign = indices
    start = time.perf_counter()
    modes = [0] * relation_table(kind).serre_arity(i, j) + [-1]
    states = sample_states(kind, energy, state_cap)
    failure = _first_nonzero(states, serre_check_fock(kind, i, j, sign, modes, states), modes=modes)
    label = f"fock {RELATION_NAMES[relation_id]} {tuple(indices)}"
    return finish_record(relation_id, list(indices), failure, start, record_timings, label)


def check_pair_on_states(
    kind: AlgebraKind,
    G: GeneratorSymbol,
    K: GeneratorSymbol,
    mode_bound: int,
    energy: str,
    state_cap: int,
    record_timings: bool,
) -> RelationRecord:
    start = time.perf_counter()
    states = sample_states(kind, energy, state_cap)
    failure = None
    modes = range(-mode_bound, mode_bound + 1)
    for k, l in product(modes, modes):
        residuals = commutator_check(G, k, K, l, states, kind, ExpectedSource.SYMBOLIC)
        failure = _first_nonzero(states, residuals, k=k, l=l)
        if failure is not None:
            break
    relation_id = pair_relation(kind, G, K)
    return finish_record(
        PROPERTY_RECORD_ID if relation_id is None else relation_id,
        [G.index, K.index],
        failure,
        start,
        record_timings,
        f"fock [{G}, {K}]",
    )


# axioms suite


def check_scalar_field(seed: int, samples: int, record_timings: bool) -> List[RelationRecord]:
    rng = _rng(seed, 0)
    checks = {"associativity": None, "commutativity": None, "distributivity": None, "inverse": None, "embedding": None}
    start = time.perf_counter()
    for sample in range(samples):
        a, b, c = _random_scalar(rng), _random_scalar(rng), _random_scalar(rng)
        context = {"sample": sample, "a": a.to_json(), "b": b.to_json(), "c": c.to_json()}
        if checks["associativity"] is None and (a * b) * c != a * (b * c):
            checks["associativity"] = context
        if checks["commutativity"] is None and a * b != b * a:
            checks["commutativity"] = context
        if checks["distributivity"] is None and a * (b + c) != a * b + a * c:
            checks["distributivity"] = context
        if checks["inverse"] is None and a and a * a.inverse() != ONE:
            checks["inverse"] = context
        if checks["embedding"] is None and abs(embed(a * b) - embed(a) * embed(b)) >= EMBEDDING_TOLERANCE:
            checks["embedding"] = context
    return [
        finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, f"scalar {name}")
        for name, failure in checks.items()
    ]


def check_clifford(kind: AlgebraKind, record_timings: bool) -> RelationRecord:
    """{a(k), b(l)} = <a, b> δ_{k,−l} on the states of energy <= 1/2."""
    start = time.perf_counter()
    states = sample_states(kind, "1/2", None)
    failure = None
    for (a, b), (ka, kb) in product(product(letters(kind), repeat=2), product(CLIFFORD_MODES, repeat=2)):
        weight = pairing(kind, a, b) if ka.twice == -kb.twice else Scalar()
        residuals = [
            anticommutator(kind, a, ka, b, kb, StateVector.of(state)) - weight * StateVector.of(state)
            for state in states
        ]
        failure = _first_nonzero(states, residuals, a=str(a), k=str(ka), b=str(b), l=str(kb))
        if failure is not None:
            break
    return finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "clifford anticommutators")


def _random_combo(rng: np.random.Generator, alphabet: Sequence[Letter]) -> dict:
    return {_pick(rng, alphabet): _random_fraction(rng) or 1 for _ in range(2)}


def check_normal_ordering(kind: AlgebraKind, seed: int, samples: int, record_timings: bool) -> List[RelationRecord]:
    rng = _rng(seed, 1)
    alphabet = letters(kind)
    fields = generator_fields(kind)
    generators = symbols(kind)
    antisymmetry = swap = bilinearity = None
    start = time.perf_counter()
    for sample in range(samples):
        a, b = _random_combo(rng, alphabet), _random_combo(rng, alphabet)
        if antisymmetry is None and not (normal_pair(a, b) + normal_pair(b, a)).is_zero():
            antisymmetry = {"sample": sample, "a": {str(x): str(s) for x, s in a.items()}}
        A, B, C = (fields[_pick(rng, generators)] for _ in range(3))
        if swap is None and bracket(B, A, kind) != bracket(A, B, kind).swap():
            swap = {"sample": sample, "A": A.to_json(), "B": B.to_json()}
        s = _random_scalar(rng)
        combined = bracket(s * A + B, C, kind)
        if bilinearity is None and combined != s * bracket(A, C, kind) + bracket(B, C, kind):
            bilinearity = {"sample": sample, "s": s.to_json()}
    return [
        finish_record(PROPERTY_RECORD_ID, [], antisymmetry, start, record_timings, "normal ordering antisymmetry"),
        finish_record(PROPERTY_RECORD_ID, [], swap, start, record_timings, "bracket swap and ddelta symmetry"),
        finish_record(PROPERTY_RECORD_ID, [], bilinearity, start, record_timings, "bracket bilinearity"),
    ]


def check_fock_jacobi(kind: AlgebraKind, seed: int, samples: int, record_timings: bool) -> RelationRecord:
    """[A, [B, C]] + [B, [C, A]] + [C, [A, B]] = 0 on Fock states, for random generator modes."""
    rng = _rng(seed, 2)
    fields = generator_fields(kind)
    generators = symbols(kind)
    states = sample_states(kind, "1", None)
    failure = None
    start = time.perf_counter()
    for sample in range(samples):
        A, B, C = (ModeComponent(fields[_pick(rng, generators)], int(rng.integers(-1, 2))) for _ in range(3))
        v = StateVector.of(_pick(rng, states))
        total = apply_nested(kind, [A, B], C, v) + apply_nested(kind, [B, C], A, v) + apply_nested(kind, [C, A], B, v)
        if not total.is_zero():
            failure = {"sample": sample, "residual": total.to_json()}
            break
    return finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "fock jacobi")


def check_lie_algebra(kind: AlgebraKind, record_timings: bool) -> List[RelationRecord]:
    algebra = build_algebra(kind)
    records = []
    for name, find in (("jacobi", jacobi_violations), ("form invariance", form_violations), ("sigma", sigma_violations)):
        start = time.perf_counter()
        violations = find(algebra)
        failure = {"violations": [list(v) for v in violations[:20]], "count": len(violations)} if violations else None
        records.append(finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, f"g {name}"))
    start = time.perf_counter()
    e, f, h = theta0_triple(kind)
    triple_holds = algebra.bracket(h, e) == 2 * e and algebra.bracket(e, f) == h
    failure = None if triple_holds else {"theta_triple": "broken"}
    records.append(finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "theta0 sl2 triple"))
    return records


def check_kahler(kind: AlgebraKind, seed: int, samples: int, record_timings: bool) -> List[RelationRecord]:
    rng = _rng(seed, 3)
    r = kind.r
    start = time.perf_counter()
    examples = {
        "s^3 d(s^-3)": (kahler_reduce((3, 0), (-3, 0)), KahlerElement({C0: -3})),
        "s^2 t^-1 d(s^-2 t)": (kahler_reduce((2, -1), (-2, 1)), KahlerElement({C0: -2, C1: 1})),
    }
    mismatched = [name for name, (got, expected) in examples.items() if got != expected]
    records = [
        finish_record(
            PROPERTY_RECORD_ID,
            [],
            {"examples": mismatched} if mismatched else None,
            start,
            record_timings,
            "kahler reductions",
        )
    ]
    start = time.perf_counter()
    failure = None
    for sample in range(samples):
        ell, m = int(rng.integers(-3, 4)), int(rng.integers(-3, 4))
        k, p = int(rng.integers(-3, 4)), r * int(rng.integers(-2, 3)) - m
        total = kahler_reduce((ell, m), (k, p), r) + kahler_reduce((k, p), (ell, m), r)
        if not total.is_zero():
            failure = {"sample": sample, "b": [ell, m], "a": [k, p]}
            break
    records.append(finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "kahler skew rule"))
    start = time.perf_counter()
    algebra = build_algebra(kind)
    h = algebra.h(1)
    central = loop_bracket(tensor(h, 1, 0), tensor(h, -1, 0), algebra)
    failure = None if central.loop.is_zero() and central.central == KahlerElement({C0: 2}) else central.to_json()
    records.append(
        finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "[h1 (x) s, h1 (x) s^-1] = 2 c0")
    )
    return records


def check_twist_grading(kind: AlgebraKind, seed: int, samples: int, record_timings: bool) -> RelationRecord:
    """Brackets of twisted loop elements stay twisted."""
    rng = _rng(seed, 4)
    algebra = build_algebra(kind)
    failure = None
    start = time.perf_counter()
    for sample in range(samples):
        terms = []
        for _ in range(2):
            x = algebra.basis(int(rng.integers(algebra.dimension)))
            j, m = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
            terms.append(tensor(twist_projection(algebra, x, m), j, m))
        result = loop_bracket(terms[0], terms[1], algebra)
        if not all(is_twisted(algebra, term) for term in terms) or not is_twisted(algebra, result.loop):
            failure = {"sample": sample, "bracket": result.to_json()}
            break
    return finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "twist grading")


class VerificationSuiteRouter:
    """
    Base for the suite routers.

    A router plans the record tasks of one suite from the run configuration and
    registers that plan on the runner.
    """

    name: SuiteName

    def __init__(self, config: RunConfig):
        self._config = config
        self._kind = config.kind

    def plan(self) -> List[Task]:
        raise NotImplementedError

    def create_entry_points(self, runner: SuiteRunner):
        runner.register(self.name, self.plan)


class SymbolicMryRouter(VerificationSuiteRouter):
    name = SuiteName.SYMBOLIC_MRY

    def plan(self) -> List[Task]:
        timings = self._config.record_timings
        return [
            (check_relation, (self._kind, relation_id, indices, None, True, timings))
            for relation_id, indices in relation_instances(self._kind)
        ]


class SerreRouter(VerificationSuiteRouter):
    name = SuiteName.SERRE

    def plan(self) -> List[Task]:
        config = self._config
        instances = [(rid, indices) for rid, indices in relation_instances(self._kind) if rid >= 9]
        tasks: List[Task] = [
            (check_relation, (self._kind, rid, indices, None, True, config.record_timings)) for rid, indices in instances
        ]
        tasks += [
            (
                check_serre_on_states,
                (self._kind, rid, indices, config.fock_energy, config.state_cap, config.record_timings),
            )
            for rid, indices in instances
        ]
        return tasks


class FockRouter(VerificationSuiteRouter):
    name = SuiteName.FOCK

    def plan(self) -> List[Task]:
        config = self._config
        return [
            (
                check_pair_on_states,
                (
                    self._kind,
                    G,
                    K,
                    config.mode_bound,
                    config.fock_energy,
                    config.state_cap,
                    config.record_timings,
                ),
            )
            for G, K in product(symbols(self._kind), repeat=2)
        ]


class PsiRouter(VerificationSuiteRouter):
    name = SuiteName.PSI

    def plan(self) -> List[Task]:
        kind, bound, timings = self._kind, self._config.mode_bound, self._config.record_timings
        tasks: List[Task] = []
        for task, args in psi_relation_tasks(kind):
            if task == "pair":
                G, K = args
                tasks.append((check_psi_pair, (kind, G, K, bound, PsiReading.CORRECTED, timings)))
            else:
                relation_id, indices = args
                tasks.append((check_psi_serre, (kind, relation_id, indices, PsiReading.CORRECTED, timings)))
        if kind.family != Family.A_EVEN:
            tasks.append((check_pairing_table, (kind, timings)))
        tasks.append((check_eta_psi, (kind, bound, PsiReading.CORRECTED, timings)))
        return tasks


class AxiomsRouter(VerificationSuiteRouter):
    name = SuiteName.AXIOMS

    def plan(self) -> List[Task]:
        kind, config = self._kind, self._config
        seed, samples, timings = config.seed, config.random_samples, config.record_timings
        return [
            (check_scalar_field, (seed, samples, timings)),
            (check_clifford, (kind, timings)),
            (check_normal_ordering, (kind, seed, samples, timings)),
            (check_fock_jacobi, (kind, seed, samples, timings)),
            (check_lie_algebra, (kind, timings)),
            (check_kahler, (kind, seed, samples, timings)),
            (check_twist_grading, (kind, seed, samples, timings)),
        ]


SUITE_ROUTERS = {
    SuiteName.SYMBOLIC_MRY: SymbolicMryRouter,
    SuiteName.SERRE: SerreRouter,
    SuiteName.FOCK: FockRouter,
    SuiteName.PSI: PsiRouter,
    SuiteName.AXIOMS: AxiomsRouter,
}
