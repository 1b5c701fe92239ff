"""Typed metadata model: features, records, and immutable catalogue snapshots.

A snapshot is the unit served to every read request. It is built once by the
refresh pipeline, never mutated afterwards, and safely shared across reader
threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import OutOfRange, UnknownFeature

if TYPE_CHECKING:
    from .cluster import ClusterModel


class FeatureKind(enum.Enum):
    TEXT = "text"
    INTEGER = "integer"
    TEXT_LIST = "text_list"


class _Missing:
    """Sentinel for an absent value, distinct from the empty string."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MISSING"

    def __bool__(self) -> bool:
        return False


MISSING = _Missing()

# A present value is str, int, or tuple[str, ...] depending on the feature kind.
Value = object


@dataclass(frozen=True)
class Feature:
    name: str
    kind: FeatureKind
    list_delimiter: str = ","


@dataclass(frozen=True)
class Schema:
    """Ordered feature declarations; order is stable across refreshes."""

    features: tuple[Feature, ...]

    def __post_init__(self):
        seen = set()
        for f in self.features:
            if not f.name:
                raise ValueError("feature names must be non-empty")
            if f.name in seen:
                raise ValueError(f"duplicate feature name: {f.name!r}")
            seen.add(f.name)

    @cached_property
    def _by_name(self) -> dict[str, Feature]:
        return {f.name: f for f in self.features}

    @property
    def names(self) -> list[str]:
        return [f.name for f in self.features]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.features)

    def feature(self, name: str) -> Feature:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownFeature(name) from None

    def kind_of(self, name: str) -> FeatureKind:
        return self.feature(name).kind


@dataclass(frozen=True)
class DatasetRecord:
    """One dataset's metadata: 0-based source position plus typed values.

    ``values`` holds an entry for every schema feature, possibly MISSING.
    """

    index: int
    values: dict[str, Value]

    def get(self, name: str) -> Value:
        return self.values.get(name, MISSING)


@dataclass(frozen=True)
class CatalogSnapshot:
    version: int
    schema: Schema
    records: tuple[DatasetRecord, ...]
    tag_index: dict[str, tuple[Value, ...]]
    built_at: float
    clusters: "ClusterModel | None" = None
    source_checksum: str | None = None
    embedding_source: str | None = None

    def __post_init__(self):
        for i, rec in enumerate(self.records):
            if rec.index != i:
                raise ValueError(f"record at position {i} carries index {rec.index}")


def build_tag_index(schema: Schema, records: Sequence[DatasetRecord]) -> dict[str, tuple[Value, ...]]:
    """Sorted duplicate-free present values per feature.

    Integer features sort numerically, text features in code-point order
    (equal to byte order for UTF-8). TextList features contribute the union
    of their elements; MISSING contributes nothing.
    """
    index: dict[str, tuple[Value, ...]] = {}
    for feat in schema.features:
        seen = set()
        for rec in records:
            v = rec.get(feat.name)
            if v is MISSING:
                continue
            if feat.kind is FeatureKind.TEXT_LIST:
                seen.update(v)
            else:
                seen.add(v)
        index[feat.name] = tuple(sorted(seen))
    return index


def make_snapshot(
    schema: Schema,
    records: Sequence[DatasetRecord],
    version: int,
    built_at: float,
    clusters: "ClusterModel | None" = None,
    source_checksum: str | None = None,
    embedding_source: str | None = None,
) -> CatalogSnapshot:
    return CatalogSnapshot(
        version=version,
        schema=schema,
        records=tuple(records),
        tag_index=build_tag_index(schema, records),
        built_at=built_at,
        clusters=clusters,
        source_checksum=source_checksum,
        embedding_source=embedding_source,
    )


def schema_names(snapshot: CatalogSnapshot) -> list[str]:
    """Feature names in schema declaration order."""
    return snapshot.schema.names


def get_record(snapshot: CatalogSnapshot, index: int) -> DatasetRecord:
    if index < 0 or index >= len(snapshot.records):
        raise OutOfRange(index, len(snapshot.records))
    return snapshot.records[index]


def unique_tags(snapshot: CatalogSnapshot, features: Iterable[str]) -> dict[str, list[Value]]:
    """Per requested feature, the sorted duplicate-free set of present values."""
    out: dict[str, list[Value]] = {}
    for name in features:
        if name not in snapshot.schema:
            raise UnknownFeature(name)
        out[name] = list(snapshot.tag_index[name])
    return out


def project_features(
    records: Iterable[DatasetRecord],
    features: Sequence[str],
    schema: Schema,
) -> list[dict[str, Value]]:
    """Partial records holding exactly the requested features, in schema order.

    An empty feature list means all features.
    """
    if features:
        for name in features:
            if name not in schema:
                raise UnknownFeature(name)
        wanted = set(features)
        names = [n for n in schema.names if n in wanted]
    else:
        names = schema.names
    return [{n: rec.get(n) for n in names} for rec in records]


def feature_counts(snapshot: CatalogSnapshot, feature: str) -> list[tuple[Value, int]]:
    """(value, count) pairs sorted by count descending, ties by value ascending.

    TextList elements are counted individually; MISSING contributes nothing.
    """
    feat = snapshot.schema.feature(feature)
    counts: dict[Value, int] = {}
    for rec in snapshot.records:
        v = rec.get(feature)
        if v is MISSING:
            continue
        if feat.kind is FeatureKind.TEXT_LIST:
            for elem in v:
                counts[elem] = counts.get(elem, 0) + 1
        else:
            counts[v] = counts.get(v, 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
