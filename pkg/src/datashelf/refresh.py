"""Refresh pipeline: fetch the source, rebuild the snapshot, publish atomically.

No failure mode of fetch or rebuild ever removes the live snapshot; a tick
that fails simply leaves the previous version serving. Every tick writes one
structured JSON log line.
"""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from .catalog import CatalogSnapshot, Schema, make_snapshot
from .cluster import ClusterModel, build_cluster_model, kmeans, project_2d
from .embed import EmbeddingProvider, LocalHashEmbedder
from .errors import BuildFailure, FetchFailure, ProviderFailure, SourceUnreadable
from .ingest import ingest

log = logging.getLogger("datashelf.refresh")


@dataclass
class SourceConfig:
    location: str  # local path or http(s) URL
    format: str = "csv"
    refresh_interval_seconds: int = 600
    checksum_skip: bool = True

    def __post_init__(self):
        if self.refresh_interval_seconds < 1:
            raise ValueError("refresh_interval_seconds must be >= 1")


def fetch_source(cfg: SourceConfig, timeout: float = 30.0) -> tuple[bytes, str]:
    """Full source bytes plus a stable content checksum."""
    if cfg.location.startswith(("http://", "https://")):
        try:
            resp = requests.get(cfg.location, timeout=timeout)
        except requests.RequestException as exc:
            raise FetchFailure(f"cannot fetch {cfg.location}: {exc}") from exc
        if resp.status_code != 200:
            raise FetchFailure(
                f"source returned HTTP {resp.status_code}", status=resp.status_code
            )
        raw = resp.content
    else:
        try:
            raw = Path(cfg.location).read_bytes()
        except OSError as exc:
            raise FetchFailure(f"cannot read {cfg.location}: {exc}") from exc
    return raw, hashlib.sha256(raw).hexdigest()


def rebuild(
    raw: bytes,
    checksum: str,
    prev: CatalogSnapshot | None,
    schema: Schema,
    provider: EmbeddingProvider,
    k: int = 8,
    seed: int = 0,
    fmt: str = "csv",
    checksum_skip: bool = True,
    fallback: str = "local",
    fallback_provider: EmbeddingProvider | None = None,
    provider_name: str = "local",
) -> CatalogSnapshot:
    """Build the next snapshot, or return ``prev`` unchanged on identical bytes."""
    if checksum_skip and prev is not None and prev.source_checksum == checksum:
        return prev
    try:
        records, diagnostics = ingest(raw, schema, fmt)
    except SourceUnreadable as exc:
        raise BuildFailure(f"ingestion failed: {exc}") from exc
    for diag in diagnostics:
        log.warning("ingest diagnostic: %s", diag)

    clusters: ClusterModel | None = None
    embedding_source = None
    if records:
        try:
            clusters = build_cluster_model(records, provider, k=k, seed=seed)
            embedding_source = provider_name
        except ProviderFailure as exc:
            clusters, embedding_source = _fallback_clusters(
                exc, records, prev, k, seed, fallback, fallback_provider
            )

    return make_snapshot(
        schema=schema,
        records=records,
        version=(prev.version + 1) if prev is not None else 1,
        built_at=time.time(),
        clusters=clusters,
        source_checksum=checksum,
        embedding_source=embedding_source,
    )


def _fallback_clusters(
    exc: ProviderFailure,
    records,
    prev: CatalogSnapshot | None,
    k: int,
    seed: int,
    fallback: str,
    fallback_provider: EmbeddingProvider | None,
) -> tuple[ClusterModel, str]:
    if fallback == "local":
        provider = fallback_provider or LocalHashEmbedder()
        log.warning("embedding provider failed (%s); falling back to local provider", exc)
        return build_cluster_model(records, provider, k=k, seed=seed), "local"
    if fallback == "previous" and prev is not None and prev.clusters is not None:
        if prev.clusters.embeddings.shape[0] != len(records):
            raise BuildFailure(
                "provider failed and previous embeddings do not cover the new record count"
            ) from exc
        log.warning("embedding provider failed (%s); reusing previous embeddings", exc)
        embeddings = prev.clusters.embeddings
        k_eff = max(1, min(k, len(records)))
        result = kmeans(embeddings, k_eff, seed=seed)
        model = ClusterModel(
            dim=embeddings.shape[1],
            embeddings=embeddings,
            assignments=result.assignments,
            centroids=result.centroids,
            coords2d=project_2d(embeddings),
            k=k_eff,
            seed=seed,
            distortion=result.distortion,
        )
        return model, "previous"
    raise BuildFailure(f"embedding provider failed with no usable fallback: {exc}") from exc


class SnapshotCell:
    """Holds the live snapshot; swapped atomically by the refresh pipeline.

    Readers grab the reference once per request, so a concurrent swap can
    never mix versions within one response.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._snapshot: CatalogSnapshot | None = None

    def get(self) -> CatalogSnapshot | None:
        return self._snapshot

    def swap(self, snapshot: CatalogSnapshot) -> None:
        with self._lock:
            current = self._snapshot
            if current is not None and snapshot.version <= current.version:
                if snapshot is current:
                    return
                raise ValueError(
                    f"snapshot version must increase: {current.version} -> {snapshot.version}"
                )
            self._snapshot = snapshot


class RefreshPipeline:
    """fetch -> rebuild -> publish, with overlap protection and logging."""

    def __init__(
        self,
        source: SourceConfig,
        schema: Schema,
        cell: SnapshotCell,
        provider: EmbeddingProvider,
        k: int = 8,
        seed: int = 0,
        fallback: str = "local",
        fallback_provider: EmbeddingProvider | None = None,
        provider_name: str = "local",
    ):
        self.source = source
        self.schema = schema
        self.cell = cell
        self.provider = provider
        self.k = k
        self.seed = seed
        self.fallback = fallback
        self.fallback_provider = fallback_provider
        self.provider_name = provider_name
        self._running = threading.Lock()

    def run_once(self) -> dict:
        """One refresh tick. Returns the structured log entry for the tick."""
        if not self._running.acquire(blocking=False):
            entry = {"ts": time.time(), "outcome": "overlap-skipped"}
            log.info(json.dumps(entry))
            return entry
        started = time.monotonic()
        try:
            prev = self.cell.get()
            raw, checksum = fetch_source(self.source)
            snapshot = rebuild(
                raw,
                checksum,
                prev,
                self.schema,
                self.provider,
                k=self.k,
                seed=self.seed,
                fmt=self.source.format,
                checksum_skip=self.source.checksum_skip,
                fallback=self.fallback,
                fallback_provider=self.fallback_provider,
                provider_name=self.provider_name,
            )
            if snapshot is prev:
                entry = {"ts": time.time(), "outcome": "skipped", "version": prev.version}
            else:
                self.cell.swap(snapshot)
                entry = {"ts": time.time(), "outcome": "published", "version": snapshot.version}
        except (FetchFailure, BuildFailure) as exc:
            entry = {"ts": time.time(), "outcome": "failed", "error": str(exc)}
        finally:
            self._running.release()
        entry["duration_ms"] = round((time.monotonic() - started) * 1000.0, 3)
        log.info(json.dumps(entry))
        return entry


class RefreshScheduler:
    """Runs the pipeline once immediately, then once per interval until stopped.

    ``wait`` is injectable for tests: called with the interval in seconds, it
    returns True when the scheduler should stop.
    """

    def __init__(self, pipeline: RefreshPipeline, interval_seconds: float, wait=None):
        self.pipeline = pipeline
        self.interval = interval_seconds
        self._stop = threading.Event()
        self._wait = wait if wait is not None else self._stop.wait
        self._thread: threading.Thread | None = None

    def run_initial(self) -> dict:
        return self.pipeline.run_once()

    def start(self) -> None:
        if self._thread is not None:
            return
        self._thread = threading.Thread(target=self._loop, name="refresh-scheduler", daemon=True)
        self._thread.start()

    def _loop(self) -> None:
        while not self._wait(self.interval):
            self.pipeline.run_once()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=10)
            self._thread = None
