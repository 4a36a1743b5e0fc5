from unittest.mock import MagicMock

import pytest

from src.services.suite_runner import CRASH_RECORD_ID, ProcessStatus, SuiteRunner, run_task
from src.utils.model_pydantic import RecordStatus, RelationRecord, RunConfig, SuiteName


def passing_record(relation_id: int) -> RelationRecord:
    return RelationRecord(id=relation_id, status=RecordStatus.PASS, ms=1.5)


def failing_records(count: int):
    return [RelationRecord(id=8, indices=[0, k], status=RecordStatus.FAIL) for k in range(count)]


def broken_planner():
    raise RuntimeError("planner exploded")


@pytest.fixture
def run_config():
    """
    Two-suite configuration run inline without timings.
    """
    return RunConfig(
        family="d",
        n=2,
        suites=[SuiteName.SYMBOLIC_MRY, SuiteName.SERRE],
        jobs=1,
        record_timings=False,
    )


def test_run_task_normalizes_results():
    assert run_task((passing_record, (3,))) == [passing_record(3)]
    assert len(run_task((failing_records, (2,)))) == 2


def test_register_rejects_duplicates(run_config):
    runner = SuiteRunner(run_config)
    runner.register(SuiteName.SERRE, lambda: [])
    with pytest.raises(ValueError):
        runner.register(SuiteName.SERRE, lambda: [])
    assert runner.suites == [SuiteName.SERRE]


def test_run_suite_requires_registration(run_config):
    with pytest.raises(KeyError):
        SuiteRunner(run_config).run_suite(SuiteName.FOCK)


def test_run_collects_records_in_plan_order(run_config):
    runner = SuiteRunner(run_config)
    runner.register(SuiteName.SYMBOLIC_MRY, lambda: [(passing_record, (1,)), (passing_record, (2,))])
    runner.register(SuiteName.SERRE, lambda: [(failing_records, (2,)), (passing_record, (9,))])
    assert runner.status == ProcessStatus.IDLE

    report = runner.run()

    assert runner.status == ProcessStatus.DONE
    assert [suite.name for suite in report.suites] == [SuiteName.SYMBOLIC_MRY, SuiteName.SERRE]
    first, second = report.suites
    assert [record.id for record in first.records] == [1, 2]
    assert (first.pass_count, first.fail_count) == (2, 0)
    assert [record.id for record in second.records] == [8, 8, 9]
    assert (second.pass_count, second.fail_count) == (1, 2)
    assert not report.passed
    assert all(suite.ms == 0 for suite in report.suites)


def test_crashed_suite_becomes_a_failing_record(run_config):
    runner = SuiteRunner(run_config)
    runner.register(SuiteName.SYMBOLIC_MRY, broken_planner)
    runner.register(SuiteName.SERRE, lambda: [(passing_record, (9,))])

    report = runner.run()

    assert runner.status == ProcessStatus.CRASHED
    crashed = report.suites[0]
    assert crashed.fail_count == 1
    record = crashed.records[0]
    assert record.id == CRASH_RECORD_ID
    assert record.residual == {"error": "RuntimeError: planner exploded"}
    assert report.suites[1].pass_count == 1


def test_worker_pool_keeps_submission_order(mocker, run_config):
    config = run_config.model_copy(update={"jobs": 3})
    pool = MagicMock()
    pool.__enter__.return_value = pool
    pool.imap.side_effect = lambda func, tasks, chunksize: map(func, tasks)
    pool_class = mocker.patch("src.services.suite_runner.Pool", return_value=pool)

    runner = SuiteRunner(config)
    runner.register(SuiteName.SYMBOLIC_MRY, lambda: [(passing_record, (k,)) for k in range(1, 6)])
    runner.register(SuiteName.SERRE, lambda: [])
    report = runner.run()

    pool_class.assert_called_with(3)
    assert [record.id for record in report.suites[0].records] == [1, 2, 3, 4, 5]
    assert report.suites[1].records == []
    assert report.passed
