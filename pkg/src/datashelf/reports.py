"""Issue reports: durable append-only log plus optional webhook forwarding.

The log is line-delimited JSON, one event per line. A report's lifecycle is
recorded as a "created" event followed by "forward_update" events; prior
lines are never rewritten, which keeps the file auditable.
"""

from __future__ import annotations

import json
import logging
import queue
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

import requests

log = logging.getLogger("datashelf.reports")

MAX_MESSAGE_LEN = 4000


@dataclass
class IssueReport:
    id: str
    dataset_index: int
    message: str
    field: str | None = None
    reporter: str | None = None
    created_at: float = 0.0
    forward_status: str = "disabled"  # pending, forwarded, failed, disabled

    def payload(self) -> dict:
        return {
            "id": self.id,
            "dataset_index": self.dataset_index,
            "field": self.field,
            "message": self.message,
            "reporter": self.reporter,
            "created_at": self.created_at,
        }


class ReportStore:
    """Append-only report log; appends are serialized through one lock."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._status: dict[str, str] = {}

    def submit(
        self,
        dataset_index: int,
        message: str,
        field: str | None = None,
        reporter: str | None = None,
        forwarding_enabled: bool = False,
    ) -> IssueReport:
        if not message:
            raise ValueError("message must be non-empty")
        if len(message) > MAX_MESSAGE_LEN:
            raise ValueError(f"message exceeds {MAX_MESSAGE_LEN} characters")
        report = IssueReport(
            id=uuid.uuid4().hex,
            dataset_index=dataset_index,
            message=message,
            field=field,
            reporter=reporter,
            created_at=time.time(),
            forward_status="pending" if forwarding_enabled else "disabled",
        )
        self._append({"event": "created", "forward_status": report.forward_status, **report.payload()})
        self._status[report.id] = report.forward_status
        return report

    def update_forward_status(self, report_id: str, status: str) -> None:
        self._append(
            {"event": "forward_update", "id": report_id, "forward_status": status, "ts": time.time()}
        )
        self._status[report_id] = status

    def forward_status(self, report_id: str) -> str | None:
        return self._status.get(report_id)

    def _append(self, obj: dict) -> None:
        line = json.dumps(obj, ensure_ascii=False)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")


class WebhookForwarder:
    """Forwards reports to an issue-tracker webhook on a background thread.

    Delivery never blocks or fails the submitting request; after the retry
    budget is spent the report is marked "failed" and left in the log.
    """

    def __init__(
        self,
        url: str,
        store: ReportStore,
        retries: int = 3,
        backoff: float = 1.0,
        timeout: float = 10.0,
        session: requests.Session | None = None,
    ):
        self.url = url
        self.store = store
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self._session = session or requests.Session()
        self._queue: queue.Queue = queue.Queue()
        self._thread: threading.Thread | None = None

    def start(self) -> None:
        if self._thread is None:
            self._thread = threading.Thread(target=self._run, name="webhook-forwarder", daemon=True)
            self._thread.start()

    def stop(self) -> None:
        if self._thread is not None:
            self._queue.put(None)
            self._thread.join(timeout=10)
            self._thread = None

    def enqueue(self, report: IssueReport) -> None:
        self.start()
        self._queue.put(report)

    def drain(self, timeout: float = 10.0) -> None:
        """Block until every queued report has been attempted (used by tests)."""
        deadline = time.time() + timeout
        while not self._queue.empty() and time.time() < deadline:
            time.sleep(0.01)

    def _run(self) -> None:
        while True:
            item = self._queue.get()
            if item is None:
                return
            status = self._deliver(item)
            self.store.update_forward_status(item.id, status)
            self._queue.task_done()

    def _deliver(self, report: IssueReport) -> str:
        for attempt in range(self.retries):
            try:
                resp = self._session.post(self.url, json=report.payload(), timeout=self.timeout)
                if 200 <= resp.status_code < 300:
                    return "forwarded"
                log.warning("webhook returned HTTP %s for report %s", resp.status_code, report.id)
            except requests.RequestException as exc:
                log.warning("webhook delivery error for report %s: %s", report.id, exc)
            if attempt + 1 < self.retries:
                time.sleep(self.backoff * 2**attempt)
        return "failed"
