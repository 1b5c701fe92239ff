"""Canonical JSON rendering shared by the API and the CLI.

Both surfaces must emit byte-identical payloads for identical inputs, so all
serialization funnels through canonical_json: 2-space indent, keys in schema
order (insertion order of the dicts built here), UTF-8, trailing newline.
"""

from __future__ import annotations

from typing import Iterable

from .catalog import MISSING, DatasetRecord, Schema, Value

import json


def jsonable(value: Value):
    if value is MISSING:
        return None
    if isinstance(value, tuple):
        return list(value)
    return value


def record_payload(record: DatasetRecord, schema: Schema) -> dict:
    return {name: jsonable(record.get(name)) for name in schema.names}


def projection_payload(projected: Iterable[dict]) -> list[dict]:
    return [{k: jsonable(v) for k, v in row.items()} for row in projected]


def canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
