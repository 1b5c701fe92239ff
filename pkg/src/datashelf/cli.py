"""Operator CLI: run the service, or query/inspect/validate catalogues offline.

stdout carries only machine-readable JSON; diagnostics go to stderr.
Exit codes: 0 success, 1 data/query error, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from . import catalog
from .config import DEFAULT_STATS_FEATURES, load_config
from .errors import ConfigError, QueryError, SourceUnreadable, UnknownFeature
from .ingest import ingest, load_schema_config
from .query import filter_records
from .serialize import canonical_json, jsonable, projection_payload
from .service import CatalogService, stats_payload


def _add_source_args(sub: argparse.ArgumentParser):
    sub.add_argument("--source", required=True, help="catalogue source file (CSV or JSON)")
    sub.add_argument("--schema", required=True, help="schema configuration file")
    sub.add_argument("--format", choices=("csv", "json"), help="source format (default: by extension)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="datashelf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the catalogue service")
    serve.add_argument("--config", required=True, help="service configuration file")
    serve.add_argument("--port", type=int, help="override the configured port")

    query = sub.add_parser("query", help="filter and project a catalogue offline")
    _add_source_args(query)
    query.add_argument("--query", default=None, help="filtration query (default: all records)")
    query.add_argument("--features", default=None, help="comma-separated feature projection")

    tags = sub.add_parser("tags", help="print unique values per feature")
    _add_source_args(tags)
    tags.add_argument("--features", default=None)

    schema = sub.add_parser("schema", help="print feature names in schema order")
    schema.add_argument("--schema", required=True)

    stats = sub.add_parser("stats", help="print value counts per feature")
    _add_source_args(stats)
    stats.add_argument("--features", default=None)

    validate = sub.add_parser("validate", help="report ingestion diagnostics")
    _add_source_args(validate)
    return parser


def _split_features(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [t.strip() for t in raw.split(",") if t.strip()]


def _load_snapshot(args):
    schema = load_schema_config(args.schema)
    path = Path(args.source)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read source {path}: {exc}") from exc
    fmt = args.format or ("json" if path.suffix.lower() == ".json" else "csv")
    records, diagnostics = ingest(raw, schema, fmt)
    snapshot = catalog.make_snapshot(schema, records, version=1, built_at=0.0)
    return snapshot, diagnostics


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def cmd_query(args) -> int:
    snapshot, _ = _load_snapshot(args)
    try:
        records = filter_records(snapshot, args.query)
        projected = catalog.project_features(records, _split_features(args.features), snapshot.schema)
    except QueryError as exc:
        offset = "?" if exc.offset is None else exc.offset
        print(f"query error at offset {offset}: {exc}", file=sys.stderr)
        return 1
    except UnknownFeature as exc:
        print(f"unknown feature: {exc.name}", file=sys.stderr)
        return 1
    _emit(canonical_json(projection_payload(projected)))
    return 0


def cmd_tags(args) -> int:
    snapshot, _ = _load_snapshot(args)
    features = _split_features(args.features) or catalog.schema_names(snapshot)
    try:
        tags = catalog.unique_tags(snapshot, features)
    except UnknownFeature as exc:
        print(f"unknown feature: {exc.name}", file=sys.stderr)
        return 1
    _emit(canonical_json({name: [jsonable(v) for v in values] for name, values in tags.items()}))
    return 0


def cmd_schema(args) -> int:
    schema = load_schema_config(args.schema)
    _emit(canonical_json(schema.names))
    return 0


def cmd_stats(args) -> int:
    snapshot, _ = _load_snapshot(args)
    features = _split_features(args.features) or DEFAULT_STATS_FEATURES
    _emit(canonical_json(stats_payload(snapshot, features)))
    return 0


def cmd_validate(args) -> int:
    snapshot, diagnostics = _load_snapshot(args)
    del snapshot
    _emit(canonical_json([asdict(d) for d in diagnostics]))
    count = len(diagnostics)
    print(f"{count} issue{'s' if count != 1 else ''}", file=sys.stderr)
    for diag in diagnostics:
        print(f"  {diag}", file=sys.stderr)
    return 1 if diagnostics else 0


def cmd_serve(args) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    config = load_config(args.config)
    service = CatalogService(config, port=args.port)
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


_COMMANDS = {
    "serve": cmd_serve,
    "query": cmd_query,
    "tags": cmd_tags,
    "schema": cmd_schema,
    "stats": cmd_stats,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SourceUnreadable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
