# # ReportDBService Overview

# Archive run reports in a TinyDB instance.

# ## Methods

# - **`__init__(db_path: str = "reports_db.json", storage=None)`**: Initialize with a database path.
# - **`add_report(report: RunReport, flush: bool = False) -> int`**: Add or update a run.
# - **`get_reports(query: Optional[Dict[str, Any]] = None) -> List[RunReport]`**: Retrieve all or filtered runs.
# - **`get_report(run_id: str) -> RunReport`**: Fetch a run, raise `FileNotFoundError` if not found.
# - **`remove_report(run_id: str) -> bool`**: Delete a run.
# - **`count_reports() -> int`**: Count archived runs.

# ## Document Structure

# - **`run_id: str`**: Hash of the run configuration (output format and job count excluded).
# - **`family: str`**, **`n: int`**: The algebra kind, for querying.
# - **`passed: bool`**: Whether every suite passed.
# - **`report: dict`**: The full RunReport dump.


from typing import Any, Dict, List, Optional

from loguru import logger
from tinydb import Query, TinyDB
from tinydb.middlewares import CachingMiddleware
from tinydb.storages import JSONStorage

from ..utils.model_pydantic import RunReport


class ReportDBService:
    """
    ReportDBService.

    This class keeps an archive of verification runs so that repeated runs of
    the same configuration can be compared.

    Key Features:
        1. Document Storage:
           - Add, update, delete, and retrieve run documents keyed by run_id.

        2. Querying:
           - Query by top-level document fields such as family, n or passed.

        3. Persistence:
           - File-backed TinyDB with a write cache, flushed on save_db.

    Attributes:
        db_path (str): Path to the TinyDB file.
        db (TinyDB): TinyDB instance.
    """

    def __init__(self, db_path: str = "reports_db.json", storage=None):
        """
        Initializes the ReportDBService.

        Args:
            db_path (str): Path to the TinyDB file.
            storage: TinyDB storage class; defaults to a cached JSON file.
        """
        self.db_path = db_path
        if storage is None:
            self.db = TinyDB(self.db_path, storage=CachingMiddleware(JSONStorage))
        else:
            self.db = TinyDB(storage=storage)

    def add_report(self, report: RunReport, flush: bool = False) -> int:
        """
        Adds or updates the document of a run.

        Args:
            report (RunReport): The run to archive.
            flush (bool): Whether to flush the database storage after the operation.

        Returns:
            int: The ID of the inserted or updated document.
        """
        run_id = report.config.run_id
        document = {
            "run_id": run_id,
            "family": report.config.family.value,
            "n": report.config.n,
            "passed": report.passed,
            "report": report.model_dump(mode="json"),
        }
        response = self.db.upsert(document, Query().run_id == run_id)
        logger.debug(f"Archived run {run_id} in {self.db_path}")
        if flush:
            self.save_db()
        return response

    def get_reports(self, query: Optional[Dict[str, Any]] = None) -> List[RunReport]:
        """
        Retrieves run documents from the database.

        Args:
            query (dict, optional): Field values the documents must match.
                                    If None, retrieves all documents.

        Returns:
            list: RunReport objects matching the query.
        """
        if query:
            conditions = [Query()[key] == value for key, value in query.items()]
            results = self.db.search(conditions[0])
            for cond in conditions[1:]:
                results = [doc for doc in results if cond(doc)]
        else:
            results = self.db.all()
        return [RunReport(**doc["report"]) for doc in results]

    def get_report(self, run_id: str) -> RunReport:
        """
        Retrieves a single run by id.

        Raises:
            FileNotFoundError: If the run is not archived.
        """
        document = self.db.get(Query().run_id == run_id)
        if not document:
            logger.error(f"Run '{run_id}' not found.")
            raise FileNotFoundError(f"run {run_id} is not archived in {self.db_path}")
        return RunReport(**document["report"])

    def remove_report(self, run_id: str) -> bool:
        return bool(self.db.remove(Query().run_id == run_id))

    def count_reports(self) -> int:
        return len(self.db)

    def save_db(self):
        storage = self.db.storage
        if hasattr(storage, "flush"):
            storage.flush()

    def __del__(self):
        self.save_db()
