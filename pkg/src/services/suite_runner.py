# # SuiteRunner Overview

# Runs verification suites and collects their records into a RunReport.

# ## Methods

# - **`__init__(config: RunConfig)`**: Initialize with a validated run configuration.
# - **`register(name: SuiteName, planner: Callable[[], List[Task]])`**: Attach a suite.
# - **`run_suite(name: SuiteName) -> SuiteReport`**: Plan, execute and summarize one suite.
# - **`run() -> RunReport`**: Every configured suite, in the configured order.

# ## `Task` Structure

# - **`func`**: module-level callable returning a RelationRecord or a list of them.
# - **`args`**: positional arguments; both must pickle for `--jobs` > 1.


import time
from enum import Enum
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Tuple, Union

from loguru import logger
from tqdm import tqdm

from ..utils.model_pydantic import RecordStatus, RelationRecord, RunConfig, RunReport, SuiteName, SuiteReport

Task = Tuple[Callable[..., Union[RelationRecord, List[RelationRecord]]], Tuple[Any, ...]]

CRASH_RECORD_ID = -1


class ProcessStatus(str, Enum):
    IDLE = "IDLE"
    WORKING = "WORKING"
    CRASHED = "CRASHED"
    DONE = "DONE"


def run_task(task: Task) -> List[RelationRecord]:
    func, args = task
    result = func(*args)
    if isinstance(result, RelationRecord):
        return [result]
    return list(result)


class SuiteRunner:
    """
    SuiteRunner.

    Executes the record tasks of registered suites, inline or over a worker
    pool, and reports on the outcome.

    Key Features:
        1. Fan-out:
           - With jobs > 1 tasks run on a multiprocessing Pool; results are
             merged in submission order, so reports do not depend on jobs.

        2. Status Reporting:
           - IDLE before a run, WORKING while a suite runs, DONE when every
             suite finished and CRASHED once a suite raised.

        3. Crash Handling:
           - A suite that raises is logged and turned into one failing record
             carrying the exception text; the remaining suites still run.

    Attributes:
        config (RunConfig): The validated run configuration.
        status (ProcessStatus): Current state of the runner.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.status = ProcessStatus.IDLE
        self._planners: Dict[SuiteName, Callable[[], List[Task]]] = {}

    def register(self, name: SuiteName, planner: Callable[[], List[Task]]) -> None:
        if name in self._planners:
            raise ValueError(f"suite {name.value} is already registered")
        self._planners[name] = planner

    @property
    def suites(self) -> List[SuiteName]:
        return list(self._planners)

    def _execute(self, name: SuiteName, tasks: List[Task]) -> List[RelationRecord]:
        records: List[RelationRecord] = []
        progress = tqdm(total=len(tasks), desc=name.value, unit="task", leave=False)
        try:
            if self.config.jobs == 1:
                for task in tasks:
                    records.extend(run_task(task))
                    progress.update()
            else:
                chunksize = max(1, len(tasks) // (4 * self.config.jobs))
                with Pool(self.config.jobs) as pool:
                    for result in pool.imap(run_task, tasks, chunksize=chunksize):
                        records.extend(result)
                        progress.update()
        finally:
            progress.close()
        return records

    def run_suite(self, name: SuiteName) -> SuiteReport:
        """
        Plans and runs one suite.

        Args:
            name (SuiteName): A registered suite.

        Returns:
            SuiteReport: Records in plan order with pass and fail counts.

        Raises:
            KeyError: If the suite was never registered.
        """
        planner = self._planners[name]
        logger.info(f"Starting suite {name.value} for {self.config.kind.label}")
        self.status = ProcessStatus.WORKING
        start = time.perf_counter()
        try:
            records = self._execute(name, planner())
        except Exception as err:
            self.status = ProcessStatus.CRASHED
            logger.exception(err)
            logger.error(f"Suite {name.value} crashed: {err}")
            records = [
                RelationRecord(
                    id=CRASH_RECORD_ID,
                    status=RecordStatus.FAIL,
                    residual={"error": f"{type(err).__name__}: {err}"},
                    label=f"{name.value} crashed",
                )
            ]
        elapsed = (time.perf_counter() - start) * 1000 if self.config.record_timings else 0.0
        passed = sum(1 for record in records if record.passed)
        report = SuiteReport(
            name=name,
            records=records,
            pass_count=passed,
            fail_count=len(records) - passed,
            ms=round(elapsed, 3),
        )
        logger.info(f"Finished suite {name.value}: {report.pass_count} pass, {report.fail_count} fail")
        return report

    def run(self) -> RunReport:
        self.status = ProcessStatus.IDLE
        reports: List[SuiteReport] = []
        crashed = False
        for name in self.config.suites:
            reports.append(self.run_suite(name))
            crashed = crashed or self.status == ProcessStatus.CRASHED
        self.status = ProcessStatus.CRASHED if crashed else ProcessStatus.DONE
        return RunReport(config=self.config, suites=reports)
