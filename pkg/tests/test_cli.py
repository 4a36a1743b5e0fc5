import json

import pytest

from src.cli import (
    EXIT_CONFIG_ERROR,
    EXIT_FAILED,
    EXIT_OK,
    build_config,
    main,
    parse_args,
    render_json,
    render_text,
)
from src.config import AppConfig
from src.services.reports_db_service import ReportDBService
from src.utils.model_pydantic import RecordStatus, RelationRecord, RunConfig, RunReport, SuiteName, SuiteReport

D4_SERRE = ["--family", "d4-triality", "--n", "2", "--suites", "serre", "--fock-energy", "1/2", "--no-timings"]


def failing_report(config: RunConfig) -> RunReport:
    record = RelationRecord(id=12, indices=[1, 2, 1], status=RecordStatus.FAIL, label="serre")
    return RunReport(
        config=config,
        suites=[SuiteReport(name=SuiteName.SERRE, records=[record], pass_count=0, fail_count=1)],
    )


def test_build_config_defaults():
    config = build_config(parse_args(["--family", "d", "--n", "2", "--jobs", "1"]), AppConfig())
    assert config.suites == list(SuiteName)
    assert config.fock_energy == "4"
    assert config.mode_bound == 2
    assert config.jobs == 1
    assert config.record_timings


def test_build_config_flags():
    args = parse_args(D4_SERRE + ["--jobs", "2", "--seed", "5", "--format", "text", "--suites", "serre,psi,serre"])
    config = build_config(args, AppConfig())
    assert config.suites == [SuiteName.SERRE, SuiteName.PSI]
    assert config.fock_energy == "1/2"
    assert config.seed == 5
    assert config.jobs == 2
    assert not config.record_timings


def test_zero_jobs_means_available_parallelism(mocker):
    mocker.patch("src.cli.os.cpu_count", return_value=6)
    config = build_config(parse_args(["--family", "d", "--n", "2", "--jobs", "0"]), AppConfig())
    assert config.jobs == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["--family", "a-odd", "--n", "2"],
        ["--family", "d4-triality", "--n", "3"],
        ["--family", "d", "--n", "2", "--fock-energy", "-1"],
        ["--family", "d", "--n", "2", "--suites", "bogus"],
    ],
)
def test_invalid_configuration_exits_with_two(argv):
    assert main(argv) == EXIT_CONFIG_ERROR


def test_passing_run_exits_with_zero(capsys, tmp_path):
    store = str(tmp_path / "reports.json")
    assert main(D4_SERRE + ["--jobs", "1", "--store", store]) == EXIT_OK
    output = json.loads(capsys.readouterr().out)
    assert "jobs" not in output["config"]
    assert output["suites"][0]["fail_count"] == 0
    assert ReportDBService(db_path=store).count_reports() == 1


def test_failing_run_exits_with_one(mocker, capsys):
    mocker.patch("src.cli.run", side_effect=lambda config, store: failing_report(config))
    assert main(D4_SERRE + ["--jobs", "1", "--format", "text"]) == EXIT_FAILED
    assert "FAIL" in capsys.readouterr().out


def test_render_json_ignores_job_count():
    args = parse_args(D4_SERRE + ["--jobs", "1"])
    one = failing_report(build_config(args, AppConfig()))
    four = failing_report(one.config.model_copy(update={"jobs": 4}))
    assert render_json(one) == render_json(four)
    assert one.config.run_id == four.config.run_id


def test_render_text():
    report = failing_report(build_config(parse_args(D4_SERRE + ["--jobs", "1"]), AppConfig()))
    lines = render_text(report).splitlines()
    assert lines[0] == f"d4-triality(n=2) run {report.config.run_id}: FAIL"
    assert lines[1] == "serre: 0 pass, 1 fail (0.0 ms)"
    assert lines[2] == "  [fail] (12) serre [1, 2, 1]"
