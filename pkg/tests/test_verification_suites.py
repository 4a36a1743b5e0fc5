from itertools import product

import pytest

from src.routers.verification_suites import (
    SUITE_ROUTERS,
    AxiomsRouter,
    FockRouter,
    PsiRouter,
    SerreRouter,
    SymbolicMryRouter,
    check_pair_on_states,
    check_serre_on_states,
    sample_states,
)
from src.services.mrycheck import H, XMinus, XPlus, relation_instances, symbols
from src.services.suite_runner import SuiteRunner
from src.utils.model_pydantic import AlgebraKind, Family, RecordStatus, RunConfig, SuiteName

A_ODD = AlgebraKind(family=Family.A_ODD, n=3)
D = AlgebraKind(family=Family.D, n=2)
A_EVEN = AlgebraKind(family=Family.A_EVEN, n=2)
D4 = AlgebraKind(family=Family.D4_TRIALITY, n=2)
KINDS = [A_ODD, D, A_EVEN, D4]


def make_config(family: str, n: int, **overrides) -> RunConfig:
    settings = dict(
        family=family,
        n=n,
        fock_energy="1/2",
        mode_bound=1,
        jobs=1,
        record_timings=False,
        random_samples=5,
    )
    settings.update(overrides)
    return RunConfig(**settings)


@pytest.fixture(scope="session")
def d4_config():
    """
    Small D4 triality configuration shared by the suite tests.
    """
    return make_config("d4-triality", 2, suites=[SuiteName.SERRE])


def test_every_suite_has_a_router():
    assert set(SUITE_ROUTERS) == set(SuiteName)
    for name, router in SUITE_ROUTERS.items():
        assert router.name == name


def test_create_entry_points_registers_plans(d4_config):
    runner = SuiteRunner(d4_config)
    for router in SUITE_ROUTERS.values():
        router(d4_config).create_entry_points(runner)
    assert runner.suites == list(SUITE_ROUTERS)


def test_symbolic_plan_covers_every_instance(d4_config):
    tasks = SymbolicMryRouter(d4_config).plan()
    assert len(tasks) == len(list(relation_instances(D4)))


def test_serre_plan_checks_symbols_and_states(d4_config):
    serre_instances = [item for item in relation_instances(D4) if item[0] >= 9]
    tasks = SerreRouter(d4_config).plan()
    assert len(tasks) == 2 * len(serre_instances)
    assert {func for func, _ in tasks[len(serre_instances):]} == {check_serre_on_states}


def test_serre_suite_passes_for_d4(d4_config):
    runner = SuiteRunner(d4_config)
    SerreRouter(d4_config).create_entry_points(runner)
    report = runner.run()
    suite = report.suites[0]
    assert report.passed
    assert suite.fail_count == 0
    assert any(record.id == 12 for record in suite.records)
    assert all(record.ms == 0 for record in suite.records)


def test_fock_plan_covers_every_pair():
    config = make_config("d", 2)
    kind = config.kind
    tasks = FockRouter(config).plan()
    assert len(tasks) == len(symbols(kind)) ** 2
    assert all(func is check_pair_on_states for func, _ in tasks)


@pytest.mark.parametrize("G, K", [(H(0), H(0)), (XPlus(1), XMinus(1)), (H(2), XPlus(0))])
def test_pair_on_states_passes(G, K):
    kind = D
    record = check_pair_on_states(kind, G, K, 1, "1/2", 50, False)
    assert record.status == RecordStatus.PASS
    assert record.ms == 0


def test_pair_without_relation_gets_property_id():
    kind = D
    record = check_pair_on_states(kind, XPlus(1), XPlus(2), 0, "0", 10, False)
    assert record.passed
    assert record.id == 0


def test_sample_states_respects_cap():
    kind = A_ODD
    assert len(sample_states(kind, "1", 7)) == 7
    assert sample_states(kind, "1", 7) is sample_states(kind, "1", 7)


def test_psi_plan_skips_pairing_table_for_a_even():
    a_even = make_config("a-even", 2)
    names = [func.__name__ for func, _ in PsiRouter(a_even).plan()]
    assert "check_pairing_table" not in names
    assert names[-1] == "check_eta_psi"

    d = make_config("d", 2)
    names = [func.__name__ for func, _ in PsiRouter(d).plan()]
    assert "check_pairing_table" in names


def test_psi_suite_passes_for_d():
    config = make_config("d", 2, suites=[SuiteName.PSI])
    runner = SuiteRunner(config)
    PsiRouter(config).create_entry_points(runner)
    assert runner.run().passed


def test_axioms_plan_has_seven_tasks():
    config = make_config("d", 2)
    names = [func.__name__ for func, _ in AxiomsRouter(config).plan()]
    assert names == [
        "check_scalar_field",
        "check_clifford",
        "check_normal_ordering",
        "check_fock_jacobi",
        "check_lie_algebra",
        "check_kahler",
        "check_twist_grading",
    ]


@pytest.mark.parametrize("family, n", [("d", 2), ("a-even", 2)])
def test_axioms_suite_passes(family, n):
    config = make_config(family, n, suites=[SuiteName.AXIOMS])
    runner = SuiteRunner(config)
    AxiomsRouter(config).create_entry_points(runner)
    suite = runner.run().suites[0]
    assert suite.fail_count == 0, [record.label for record in suite.records if not record.passed]
    assert all(record.id == 0 for record in suite.records)
    assert suite.pass_count == 5 + 1 + 3 + 1 + 4 + 3 + 1


def test_axioms_are_reproducible_for_a_seed():
    config = make_config("d", 2, suites=[SuiteName.AXIOMS], seed=7)
    first, second = SuiteRunner(config), SuiteRunner(config)
    AxiomsRouter(config).create_entry_points(first)
    AxiomsRouter(config).create_entry_points(second)
    assert first.run() == second.run()


@pytest.mark.parametrize("kind", KINDS, ids=lambda kind: kind.label)
def test_every_pair_matches_the_symbolic_bracket(kind):
    failures = [
        (str(G), str(K))
        for G, K in product(symbols(kind), repeat=2)
        if not check_pair_on_states(kind, G, K, 2, "1", 30, False).passed
    ]
    assert failures == []
