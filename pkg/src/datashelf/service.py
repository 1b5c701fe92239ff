"""HTTP read API over the cached snapshot, plus issue-report submission.

Every request reads the snapshot reference exactly once and computes its
whole response from that version; the X-Snapshot-Version header exposes
which one. Serving never triggers embedding or clustering work.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from . import catalog
from .catalog import CatalogSnapshot
from .config import ServiceConfig
from .embed import LocalHashEmbedder, RemoteEmbedder
from .errors import OutOfRange, QueryError, UnknownFeature
from .ingest import load_schema_config
from .query import filter_records
from .refresh import RefreshPipeline, RefreshScheduler, SnapshotCell, SourceConfig
from .reports import MAX_MESSAGE_LEN, ReportStore, WebhookForwarder
from .serialize import canonical_json, jsonable, projection_payload, record_payload

log = logging.getLogger("datashelf.service")


@dataclass
class ApiContext:
    cell: SnapshotCell
    stats_features: list[str]
    report_store: ReportStore | None = None
    forwarder: WebhookForwarder | None = None
    cors_origin: str | None = None
    static_dir: str | None = None


class CatalogHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, context: ApiContext):
        super().__init__(address, ApiHandler)
        self.context = context


def _split_features(params: dict) -> list[str]:
    raw = params.get("features", [""])[0]
    return [t.strip() for t in raw.split(",") if t.strip()]


def stats_payload(snapshot: CatalogSnapshot, features: list[str]) -> dict:
    out = {}
    for name in features:
        if name not in snapshot.schema:
            log.debug("stats feature %r not in schema; skipped", name)
            continue
        out[name] = [
            {"value": jsonable(value), "count": count}
            for value, count in catalog.feature_counts(snapshot, name)
        ]
    return out


def clusters_payload(snapshot: CatalogSnapshot) -> list[dict]:
    model = snapshot.clusters
    entries = []
    for rec in snapshot.records:
        entries.append(
            {
                "index": rec.index,
                "name": jsonable(rec.get("Name")),
                "x": float(model.coords2d[rec.index, 0]),
                "y": float(model.coords2d[rec.index, 1]),
                "cluster": int(model.assignments[rec.index]),
            }
        )
    return entries


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: CatalogHTTPServer

    # -- plumbing --------------------------------------------------------

    def log_message(self, format, *args):
        log.debug("%s - %s", self.address_string(), format % args)

    def _cors_headers(self):
        origin = self.server.context.cors_origin
        if origin:
            self.send_header("Access-Control-Allow-Origin", origin)

    def _send_body(self, status: int, body: bytes, content_type: str, version: int | None):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        if version is not None:
            self.send_header("X-Snapshot-Version", str(version))
        self._cors_headers()
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload, version: int | None = None):
        body = canonical_json(payload).encode("utf-8")
        self._send_body(status, body, "application/json; charset=utf-8", version)

    def _error(
        self,
        status: int,
        message: str,
        detail: str | None = None,
        offset: int | None = None,
        version: int | None = None,
    ):
        payload: dict = {"error": message}
        if detail is not None:
            payload["detail"] = detail
        if offset is not None:
            payload["offset"] = offset
        self._send_json(status, payload, version)

    # -- routing ----------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self._cors_headers()
        self.end_headers()

    def do_GET(self):
        try:
            self._route_get()
        except BrokenPipeError:
            pass
        except Exception:
            log.exception("unhandled error serving %s", self.path)
            self._error(500, "internal server error")

    def do_POST(self):
        try:
            if urlsplit(self.path).path == "/reports":
                self._handle_report()
            else:
                self._error(404, "not found")
        except BrokenPipeError:
            pass
        except Exception:
            log.exception("unhandled error serving %s", self.path)
            self._error(500, "internal server error")

    def _route_get(self):
        parts = urlsplit(self.path)
        path = parts.path.rstrip("/") or "/"
        params = parse_qs(parts.query)

        if path == "/datasets" or path.startswith("/datasets/"):
            snapshot = self.server.context.cell.get()
            if snapshot is None:
                self._error(503, "catalogue not ready", detail="no snapshot published yet")
                return
            self._handle_datasets(path, params, snapshot)
            return

        if self.server.context.static_dir:
            self._serve_static(path)
            return
        self._error(404, "not found")

    def _handle_datasets(self, path: str, params: dict, snapshot: CatalogSnapshot):
        version = snapshot.version
        try:
            if path == "/datasets":
                query = params.get("query", [None])[0]
                records = filter_records(snapshot, query)
                projected = catalog.project_features(
                    records, _split_features(params), snapshot.schema
                )
                self._send_json(200, projection_payload(projected), version)
            elif path == "/datasets/schema":
                self._send_json(200, catalog.schema_names(snapshot), version)
            elif path == "/datasets/tags":
                features = _split_features(params) or catalog.schema_names(snapshot)
                tags = catalog.unique_tags(snapshot, features)
                self._send_json(
                    200, {name: [jsonable(v) for v in values] for name, values in tags.items()}, version
                )
            elif path == "/datasets/stats":
                self._send_json(
                    200, stats_payload(snapshot, self.server.context.stats_features), version
                )
            elif path == "/datasets/clusters":
                if snapshot.clusters is None:
                    self._error(503, "cluster model not built", version=version)
                    return
                self._send_json(200, clusters_payload(snapshot), version)
            else:
                seg = path[len("/datasets/") :]
                try:
                    index = int(seg)
                except ValueError:
                    self._error(400, "index must be an integer", detail=seg, version=version)
                    return
                record = catalog.get_record(snapshot, index)
                self._send_json(200, record_payload(record, snapshot.schema), version)
        except QueryError as exc:
            self._error(400, "invalid query", detail=str(exc), offset=exc.offset, version=version)
        except UnknownFeature as exc:
            self._error(400, "unknown feature", detail=exc.name, offset=exc.offset, version=version)
        except OutOfRange as exc:
            self._error(404, "index out of range", detail=str(exc), version=version)

    def _handle_report(self):
        ctx = self.server.context
        snapshot = ctx.cell.get()
        if snapshot is None or ctx.report_store is None:
            self._error(503, "catalogue not ready", detail="no snapshot published yet")
            return
        length = int(self.headers.get("Content-Length") or 0)
        try:
            body = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            self._error(400, "request body must be a JSON object")
            return
        if not isinstance(body, dict):
            self._error(400, "request body must be a JSON object")
            return

        index = body.get("dataset_index")
        if isinstance(index, bool) or not isinstance(index, int):
            self._error(400, "dataset_index must be an integer")
            return
        if index < 0 or index >= len(snapshot.records):
            self._error(404, "index out of range", detail=str(index))
            return
        message = body.get("message")
        if not isinstance(message, str) or not message:
            self._error(400, "message must be a non-empty string")
            return
        if len(message) > MAX_MESSAGE_LEN:
            self._error(400, f"message exceeds {MAX_MESSAGE_LEN} characters")
            return
        field = body.get("field")
        reporter = body.get("reporter")
        if field is not None and not isinstance(field, str):
            self._error(400, "field must be a string")
            return
        if reporter is not None and not isinstance(reporter, str):
            self._error(400, "reporter must be a string")
            return

        report = ctx.report_store.submit(
            dataset_index=index,
            message=message,
            field=field,
            reporter=reporter,
            forwarding_enabled=ctx.forwarder is not None,
        )
        if ctx.forwarder is not None:
            ctx.forwarder.enqueue(report)
        self._send_json(201, {"id": report.id}, snapshot.version)

    def _serve_static(self, path: str):
        root = Path(self.server.context.static_dir).resolve()
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if target.is_dir():
            target = target / "index.html"
        if not target.is_relative_to(root) or not target.is_file():
            self._error(404, "not found")
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send_body(200, target.read_bytes(), content_type, None)


def make_provider(config: ServiceConfig):
    p = config.provider
    if p.type == "remote":
        provider = RemoteEmbedder(
            url=p.url,
            dim=p.dim,
            auth_token=p.auth_token,
            timeout=p.timeout_seconds,
            retries=p.retries,
            backoff=p.backoff_seconds,
        )
        return provider, "remote"
    return LocalHashEmbedder(dim=p.dim, seed=p.seed), "local"


class CatalogService:
    """Composition root: refresh pipeline, snapshot cell, and HTTP server."""

    def __init__(self, config: ServiceConfig, port: int | None = None):
        self.config = config
        self.schema = load_schema_config(config.schema_path)
        provider, provider_name = make_provider(config)
        self.cell = SnapshotCell()
        self.pipeline = RefreshPipeline(
            source=SourceConfig(
                location=config.source_location,
                format=config.source_format,
                refresh_interval_seconds=config.refresh_interval_seconds,
                checksum_skip=config.checksum_skip,
            ),
            schema=self.schema,
            cell=self.cell,
            provider=provider,
            k=config.k,
            seed=config.seed,
            fallback=config.provider.fallback,
            fallback_provider=LocalHashEmbedder(dim=config.provider.dim, seed=config.provider.seed),
            provider_name=provider_name,
        )
        self.scheduler = RefreshScheduler(self.pipeline, config.refresh_interval_seconds)
        self.report_store = ReportStore(config.report_log)
        self.forwarder = (
            WebhookForwarder(
                url=config.webhook_url,
                store=self.report_store,
                retries=config.webhook_retries,
                backoff=config.webhook_backoff_seconds,
                timeout=config.webhook_timeout_seconds,
            )
            if config.webhook_url
            else None
        )
        context = ApiContext(
            cell=self.cell,
            stats_features=config.stats_features,
            report_store=self.report_store,
            forwarder=self.forwarder,
            cors_origin=config.cors_origin,
            static_dir=config.static_dir,
        )
        self.httpd = CatalogHTTPServer((config.host, port if port is not None else config.port), context)
        self._server_thread: threading.Thread | None = None

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def start(self, initial_refresh: bool = True) -> None:
        """Refresh synchronously, then serve in the background (used by tests)."""
        if initial_refresh:
            self.pipeline.run_once()
        self.scheduler.start()
        self._server_thread = threading.Thread(
            target=self.httpd.serve_forever, name="catalog-http", daemon=True
        )
        self._server_thread.start()

    def serve_forever(self, initial_refresh: bool = True) -> None:
        """Blocking variant for the CLI."""
        if initial_refresh:
            self.pipeline.run_once()
        self.scheduler.start()
        log.info("serving on %s:%s", self.config.host, self.port)
        try:
            self.httpd.serve_forever()
        finally:
            self.stop()

    def stop(self) -> None:
        self.scheduler.stop()
        if self.forwarder is not None:
            self.forwarder.stop()
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._server_thread is not None:
            self._server_thread.join(timeout=10)
            self._server_thread = None
