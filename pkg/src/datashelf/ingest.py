"""Source ingestion: CSV/JSON tables to validated records, with diagnostics.

Uncoercible cells degrade to MISSING and are reported rather than rejecting
the row; community-sourced catalogues favour availability over strictness.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .catalog import MISSING, DatasetRecord, Feature, FeatureKind, Schema, Value
from .errors import ConfigError, SourceUnreadable

_KIND_NAMES = {k.value: k for k in FeatureKind}


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # "uncoercible" or "missing_header"
    feature: str
    row: int | None = None  # 0-based data row; None for header-level issues
    detail: str = ""

    def __str__(self) -> str:
        where = f"row {self.row}, " if self.row is not None else ""
        return f"{self.kind}: {where}feature {self.feature!r}: {self.detail}"


def load_schema_config(path: str | Path) -> Schema:
    """Read a schema configuration file: a JSON array of feature declarations.

    Each entry is {"name": ..., "kind": "text"|"integer"|"text_list"} with an
    optional "delimiter" for text_list features (default ",").
    """
    try:
        raw = Path(path).read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read schema config {path}: {exc}") from exc
    try:
        entries = json.loads(raw)
    except ValueError as exc:
        raise ConfigError(f"schema config {path} is not valid JSON: {exc}") from exc
    if not isinstance(entries, list) or not entries:
        raise ConfigError("schema config must be a non-empty JSON array")
    features = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
            raise ConfigError(f"schema entry {i} must be an object with name and kind")
        kind = _KIND_NAMES.get(str(entry["kind"]))
        if kind is None:
            raise ConfigError(f"schema entry {i}: unknown kind {entry['kind']!r}")
        features.append(
            Feature(
                name=str(entry["name"]),
                kind=kind,
                list_delimiter=str(entry.get("delimiter", ",")),
            )
        )
    try:
        return Schema(tuple(features))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _coerce_cell(text: str, feature: Feature) -> tuple[Value, str | None]:
    """Coerce one CSV cell. Returns (value, error detail or None)."""
    if text == "":
        return MISSING, None
    if feature.kind is FeatureKind.INTEGER:
        try:
            return int(text.strip()), None
        except ValueError:
            return MISSING, f"not an integer: {text!r}"
    if feature.kind is FeatureKind.TEXT_LIST:
        parts = [p.strip() for p in text.split(feature.list_delimiter)]
        return tuple(p for p in parts if p), None
    return text, None


def _coerce_json_value(value: object, feature: Feature) -> tuple[Value, str | None]:
    if value is None or value == "":
        return MISSING, None
    if feature.kind is FeatureKind.INTEGER:
        if isinstance(value, bool):
            return MISSING, f"not an integer: {value!r}"
        if isinstance(value, int):
            return value, None
        if isinstance(value, float) and value.is_integer():
            return int(value), None
        if isinstance(value, str):
            try:
                return int(value.strip()), None
            except ValueError:
                pass
        return MISSING, f"not an integer: {value!r}"
    if feature.kind is FeatureKind.TEXT_LIST:
        if isinstance(value, str):
            parts = [p.strip() for p in value.split(feature.list_delimiter)]
            return tuple(p for p in parts if p), None
        if isinstance(value, list):
            if all(isinstance(e, str) for e in value):
                return tuple(e.strip() for e in value if e.strip()), None
            return MISSING, "list contains non-string elements"
        return MISSING, f"not a text list: {value!r}"
    if isinstance(value, str):
        return value, None
    return MISSING, f"not text: {value!r}"


def _read_csv_table(raw: bytes) -> tuple[list[str], list[list[str]]]:
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise SourceUnreadable(f"source is not UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise SourceUnreadable(f"malformed CSV: {exc}") from exc
    if not rows:
        raise SourceUnreadable("CSV source has no header row")
    return rows[0], rows[1:]


def _read_json_table(raw: bytes) -> list[dict]:
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        raise SourceUnreadable(f"source is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or any(not isinstance(row, dict) for row in data):
        raise SourceUnreadable("JSON source must be an array of objects")
    return data


def ingest(raw: bytes, schema: Schema, fmt: str = "csv") -> tuple[list[DatasetRecord], list[Diagnostic]]:
    """Parse raw source bytes into one DatasetRecord per data row, in order.

    Schema features absent from the source header are filled with MISSING for
    every row and reported once. Rows with uncoercible cells are kept, the
    offending cell stored as MISSING.
    """
    if fmt == "csv":
        return _ingest_csv(raw, schema)
    if fmt == "json":
        return _ingest_json(raw, schema)
    raise SourceUnreadable(f"unknown source format {fmt!r}")


def _ingest_csv(raw: bytes, schema: Schema) -> tuple[list[DatasetRecord], list[Diagnostic]]:
    header, rows = _read_csv_table(raw)
    diagnostics: list[Diagnostic] = []
    # First occurrence wins for duplicated header columns.
    col_of: dict[str, int] = {}
    for i, name in enumerate(header):
        col_of.setdefault(name, i)
    for feat in schema.features:
        if feat.name not in col_of:
            diagnostics.append(
                Diagnostic("missing_header", feat.name, detail="column absent from source header")
            )

    records = []
    for row_idx, row in enumerate(rows):
        values: dict[str, Value] = {}
        for feat in schema.features:
            col = col_of.get(feat.name)
            cell = row[col] if col is not None and col < len(row) else ""
            value, problem = _coerce_cell(cell, feat)
            if problem is not None:
                diagnostics.append(Diagnostic("uncoercible", feat.name, row=row_idx, detail=problem))
            values[feat.name] = value
        records.append(DatasetRecord(index=row_idx, values=values))
    return records, diagnostics


def _ingest_json(raw: bytes, schema: Schema) -> tuple[list[DatasetRecord], list[Diagnostic]]:
    rows = _read_json_table(raw)
    diagnostics: list[Diagnostic] = []
    present_keys: set[str] = set()
    for row in rows:
        present_keys.update(row.keys())
    for feat in schema.features:
        if rows and feat.name not in present_keys:
            diagnostics.append(
                Diagnostic("missing_header", feat.name, detail="key absent from every source object")
            )

    records = []
    for row_idx, row in enumerate(rows):
        values: dict[str, Value] = {}
        for feat in schema.features:
            value, problem = _coerce_json_value(row.get(feat.name), feat)
            if problem is not None:
                diagnostics.append(Diagnostic("uncoercible", feat.name, row=row_idx, detail=problem))
            values[feat.name] = value
        records.append(DatasetRecord(index=row_idx, values=values))
    return records, diagnostics
