import argparse
import json
import os
import sys
from typing import List, Optional

from loguru import logger
from pydantic import ValidationError

from src.config import AppConfig
from src.routers.verification_suites import SUITE_ROUTERS
from src.services.reports_db_service import ReportDBService
from src.services.suite_runner import SuiteRunner
from src.utils.model_pydantic import Family, OutputFormat, RunConfig, RunReport, SuiteName

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG_ERROR = 2


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="python -m src.cli",
        description="Verify twisted toroidal Lie algebras, their loop model and their fermionic representation.",
    )
    parser.add_argument("--family", required=True, choices=[family.value for family in Family])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument(
        "--suites",
        default=",".join(suite.value for suite in SuiteName),
        help="comma separated subset of " + ", ".join(suite.value for suite in SuiteName),
    )
    parser.add_argument("--fock-energy", default=None, help="rational bound on the energy of Fock test states")
    parser.add_argument("--mode-bound", type=int, default=None)
    parser.add_argument("--format", dest="output_format", default=None, choices=[fmt.value for fmt in OutputFormat])
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=None, help="worker processes, 0 for available parallelism")
    parser.add_argument("--store", default=None, help="TinyDB file to archive the run report in")
    parser.add_argument("--state-cap", type=int, default=None)
    parser.add_argument("--no-timings", action="store_true", help="write 0 ms so reports are byte-identical")
    parser.add_argument("--log-level", default=None)
    return parser.parse_args(argv)


def build_config(args: argparse.Namespace, app_config: AppConfig) -> RunConfig:
    """
    Merge command-line flags over the AppConfig defaults.

    Raises:
        ValidationError: If the merged values do not form a valid RunConfig.
    """

    def pick(flag, default):
        return default if flag is None else flag

    jobs = pick(args.jobs, app_config.JOBS)
    return RunConfig(
        family=args.family,
        n=args.n,
        suites=[name.strip() for name in args.suites.split(",") if name.strip()],
        fock_energy=pick(args.fock_energy, app_config.FOCK_ENERGY),
        mode_bound=pick(args.mode_bound, app_config.MODE_BOUND),
        output_format=pick(args.output_format, app_config.OUTPUT_FORMAT),
        seed=pick(args.seed, app_config.SEED),
        jobs=jobs if jobs > 0 else (os.cpu_count() or 1),
        state_cap=pick(args.state_cap, app_config.STATE_CAP),
        record_timings=app_config.RECORD_TIMINGS and not args.no_timings,
        random_samples=app_config.RANDOM_SAMPLES,
    )


def render_json(report: RunReport) -> str:
    return json.dumps(report.model_dump(mode="json", exclude={"config": {"jobs"}}), indent=2, sort_keys=True)


def render_text(report: RunReport) -> str:
    config = report.config
    lines = [f"{config.kind.label} run {config.run_id}: {'PASS' if report.passed else 'FAIL'}"]
    for suite in report.suites:
        lines.append(f"{suite.name.value}: {suite.pass_count} pass, {suite.fail_count} fail ({suite.ms} ms)")
        for record in suite.records:
            indices = ", ".join(str(index) for index in record.indices)
            lines.append(f"  [{record.status.value:4}] ({record.id:2}) {record.label} [{indices}]")
    return "\n".join(lines)


def setup_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


def run(config: RunConfig, store: str = "") -> RunReport:
    """Run the configured suites and archive the report when `store` names a TinyDB file."""
    runner = SuiteRunner(config)
    for name in config.suites:
        SUITE_ROUTERS[name](config).create_entry_points(runner)
    report = runner.run()
    if store:
        db = ReportDBService(db_path=store)
        db.add_report(report, flush=True)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    app_config = AppConfig()
    setup_logging(args.log_level or app_config.LOG_LEVEL)
    try:
        config = build_config(args, app_config)
    except ValidationError as err:
        logger.error(f"Invalid configuration: {err}")
        return EXIT_CONFIG_ERROR
    logger.info(f"Running {', '.join(suite.value for suite in config.suites)} for {config.kind.label}")
    report = run(config, args.store or app_config.REPORT_DB)
    output = render_json(report) if config.output_format == OutputFormat.JSON else render_text(report)
    print(output)
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
