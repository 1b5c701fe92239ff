"""datashelf: a self-hosted dataset-metadata catalogue.

Typed ingestion, a filtration query language, K-Means cluster maps over text
embeddings, an atomically refreshed snapshot cache, and a small JSON read API.
"""

from .catalog import (
    MISSING,
    CatalogSnapshot,
    DatasetRecord,
    Feature,
    FeatureKind,
    Schema,
    feature_counts,
    get_record,
    make_snapshot,
    project_features,
    schema_names,
    unique_tags,
)
from .cluster import ClusterModel, KMeansResult, build_cluster_model, kmeans, project_2d, record_text
from .config import ServiceConfig, load_config
from .embed import InstrumentedProvider, LocalHashEmbedder, RemoteEmbedder, local_embed
from .ingest import Diagnostic, ingest, load_schema_config
from .query import compile_query, evaluate, filter_records, parse, render, tokenize
from .refresh import RefreshPipeline, RefreshScheduler, SnapshotCell, SourceConfig, fetch_source, rebuild
from .reports import IssueReport, ReportStore, WebhookForwarder
from .service import CatalogService

__version__ = "0.1.0"

__all__ = [
    "MISSING",
    "CatalogSnapshot",
    "CatalogService",
    "ClusterModel",
    "DatasetRecord",
    "Diagnostic",
    "Feature",
    "FeatureKind",
    "InstrumentedProvider",
    "IssueReport",
    "KMeansResult",
    "LocalHashEmbedder",
    "RefreshPipeline",
    "RefreshScheduler",
    "RemoteEmbedder",
    "ReportStore",
    "Schema",
    "ServiceConfig",
    "SnapshotCell",
    "SourceConfig",
    "WebhookForwarder",
    "build_cluster_model",
    "compile_query",
    "evaluate",
    "feature_counts",
    "fetch_source",
    "filter_records",
    "get_record",
    "ingest",
    "kmeans",
    "load_config",
    "load_schema_config",
    "local_embed",
    "make_snapshot",
    "parse",
    "project_2d",
    "project_features",
    "rebuild",
    "record_text",
    "render",
    "schema_names",
    "tokenize",
    "unique_tags",
]
