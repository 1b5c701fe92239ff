from __future__ import annotations

import json
import random
from collections import Counter

import pytest

from datashelf.catalog import (
    MISSING,
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
from datashelf.errors import OutOfRange, SourceUnreadable, UnknownFeature
from datashelf.ingest import ingest, load_schema_config

from conftest import FIXTURES
import query_gen


def _mini_schema():
    return Schema(
        (
            Feature("Name", FeatureKind.TEXT),
            Feature("Year", FeatureKind.INTEGER),
            Feature("Tasks", FeatureKind.TEXT_LIST),
        )
    )


class TestIngest:
    def test_three_rows_in_source_order(self):
        raw = b"Name,Year,Tasks\na,2001,x\nb,2002,y\nc,2003,z\n"
        records, diags = ingest(raw, _mini_schema())
        assert [r.index for r in records] == [0, 1, 2]
        assert not diags

    def test_integer_coercion(self):
        raw = b"Name,Year,Tasks\na,2018,x\n"
        records, _ = ingest(raw, _mini_schema())
        assert records[0].get("Year") == 2018

    def test_text_list_split_and_trim(self):
        raw = b'Name,Year,Tasks\na,2018,"machine translation, summarization"\n'
        records, _ = ingest(raw, _mini_schema())
        assert records[0].get("Tasks") == ("machine translation", "summarization")

    def test_empty_cell_becomes_missing(self):
        raw = b"Name,Year,Tasks\na,,x\n"
        records, diags = ingest(raw, _mini_schema())
        assert records[0].get("Year") is MISSING
        assert not diags

    def test_uncoercible_cell_kept_as_missing_with_diagnostic(self):
        raw = b"Name,Year,Tasks\na,bogus,x\nb,2002,y\n"
        records, diags = ingest(raw, _mini_schema())
        assert len(records) == 2
        assert records[0].get("Year") is MISSING
        assert len(diags) == 1
        assert diags[0].kind == "uncoercible"
        assert diags[0].row == 0
        assert diags[0].feature == "Year"

    def test_missing_header_column_fills_missing(self):
        raw = b"Name,Tasks\na,x\nb,y\n"
        records, diags = ingest(raw, _mini_schema())
        assert all(r.get("Year") is MISSING for r in records)
        assert [d for d in diags if d.kind == "missing_header" and d.feature == "Year"]

    def test_unreadable_source(self):
        with pytest.raises(SourceUnreadable):
            ingest(b"", _mini_schema())
        with pytest.raises(SourceUnreadable):
            ingest(b"\xff\xfe\x00bad", _mini_schema())

    def test_json_source(self):
        raw = json.dumps(
            [
                {"Name": "a", "Year": 2018, "Tasks": ["x", "y"]},
                {"Name": "b", "Year": "2019", "Tasks": "p, q"},
                {"Name": "c", "Year": None},
            ]
        ).encode()
        records, diags = ingest(raw, _mini_schema(), "json")
        assert records[0].get("Year") == 2018
        assert records[0].get("Tasks") == ("x", "y")
        assert records[1].get("Year") == 2019
        assert records[1].get("Tasks") == ("p", "q")
        assert records[2].get("Year") is MISSING
        assert not [d for d in diags if d.kind == "uncoercible"]

    def test_json_source_must_be_object_array(self):
        with pytest.raises(SourceUnreadable):
            ingest(b"[1, 2]", _mini_schema(), "json")
        with pytest.raises(SourceUnreadable):
            ingest(b"{}", _mini_schema(), "json")

    def test_ingest_deterministic(self, small_csv_bytes, schema):
        first, _ = ingest(small_csv_bytes, schema)
        second, _ = ingest(small_csv_bytes, schema)
        assert first == second

    def test_short_rows_padded_with_missing(self):
        raw = b"Name,Year,Tasks\na\n"
        records, _ = ingest(raw, _mini_schema())
        assert records[0].get("Name") == "a"
        assert records[0].get("Year") is MISSING


class TestSchemaOps:
    def test_schema_names_masader_shape(self, small_snapshot):
        names = schema_names(small_snapshot)
        assert names[:3] == ["Name", "Year", "Unit"]

    def test_schema_names_independent_of_records(self):
        schema = _mini_schema()
        snap = make_snapshot(schema, [], version=1, built_at=0.0)
        assert schema_names(snap) == ["Name", "Year", "Tasks"]

    def test_schema_names_match_config_file(self, schema, small_snapshot):
        # Independent read of the schema config, bypassing the loader.
        declared = [e["name"] for e in json.loads((FIXTURES / "schema.json").read_text())]
        assert schema_names(small_snapshot) == declared


class TestGetRecord:
    def test_index_2_is_labr(self, small_snapshot):
        rec = get_record(small_snapshot, 2)
        assert rec.get("Name") == "LABR"
        assert rec.get("Year") == 2018
        assert rec.get("Dialect") == "mixed"

    def test_index_0_is_first_row(self, small_snapshot):
        assert get_record(small_snapshot, 0).get("Name") == "Shami"

    def test_index_at_count_out_of_range(self, small_snapshot):
        n = len(small_snapshot.records)
        with pytest.raises(OutOfRange):
            get_record(small_snapshot, n)
        with pytest.raises(OutOfRange):
            get_record(small_snapshot, -1)

    def test_positions_match_indices(self, catalog500):
        for i in range(len(catalog500.records)):
            assert get_record(catalog500, i).index == i


class TestUniqueTags:
    def test_dialect_and_year_sorted(self, small_snapshot):
        tags = unique_tags(small_snapshot, ["Dialect", "Year"])
        assert tags["Dialect"][:2] == ["Algeria", "Bahrain"]
        assert tags["Dialect"] == sorted(set(tags["Dialect"]))
        assert tags["Year"] == sorted(set(tags["Year"]))
        assert all(isinstance(y, int) for y in tags["Year"])

    def test_single_record_catalogue(self):
        schema = _mini_schema()
        rec = DatasetRecord(0, {"Name": "a", "Year": 2001, "Tasks": ("x",)})
        snap = make_snapshot(schema, [rec], version=1, built_at=0.0)
        tags = unique_tags(snap, ["Name", "Year", "Tasks"])
        assert all(len(v) <= 1 for v in tags.values())

    def test_text_list_union(self):
        schema = _mini_schema()
        recs = [
            DatasetRecord(0, {"Name": "a", "Year": 1, "Tasks": ("A", "B")}),
            DatasetRecord(1, {"Name": "b", "Year": 2, "Tasks": ("B", "C")}),
        ]
        snap = make_snapshot(schema, recs, version=1, built_at=0.0)
        # Brute-force union oracle over all rows.
        expected = sorted({t for r in recs for t in r.get("Tasks")})
        assert unique_tags(snap, ["Tasks"])["Tasks"] == expected == ["A", "B", "C"]

    def test_unknown_feature(self, small_snapshot):
        with pytest.raises(UnknownFeature):
            unique_tags(small_snapshot, ["Nope"])

    def test_matches_naive_scan_on_random_catalogues(self):
        rng = random.Random(1234)
        for _ in range(25):
            rows = query_gen.gen_rows(rng, rng.randint(1, 1000))
            snap = query_gen.rows_to_snapshot(rows)
            tags = unique_tags(snap, list(query_gen.GEN_FEATURES))
            for name, (kind, _) in query_gen.GEN_FEATURES.items():
                seen = set()
                for row in rows:
                    v = row[name]
                    if v is query_gen.naive_query.MISSING:
                        continue
                    if kind == "list":
                        seen.update(v)
                    else:
                        seen.add(v)
                assert tags[name] == sorted(seen)


class TestProjectFeatures:
    def test_name_year_unit_projection(self, small_snapshot):
        (row,) = project_features([small_snapshot.records[0]], ["Name", "Year", "Unit"], small_snapshot.schema)
        assert row == {"Name": "Shami", "Year": 2018, "Unit": "sentences"}
        assert list(row) == ["Name", "Year", "Unit"]  # schema order

    def test_empty_feature_list_is_identity(self, small_snapshot):
        rows = project_features(small_snapshot.records, [], small_snapshot.schema)
        assert rows == [r.values for r in small_snapshot.records]

    def test_projection_order_follows_schema_not_request(self, small_snapshot):
        (row,) = project_features([small_snapshot.records[0]], ["Unit", "Name"], small_snapshot.schema)
        assert list(row) == ["Name", "Unit"]

    def test_single_feature_on_500(self, catalog500):
        rows = project_features(catalog500.records, ["Name"], catalog500.schema)
        assert len(rows) == 500
        assert all(set(r) == {"Name"} for r in rows)

    def test_unknown_feature(self, small_snapshot):
        with pytest.raises(UnknownFeature):
            project_features(small_snapshot.records, ["Nope"], small_snapshot.schema)


class TestFeatureCounts:
    def test_text_list_counted_per_element(self):
        schema = _mini_schema()
        recs = [
            DatasetRecord(0, {"Name": "a", "Year": 1, "Tasks": ("A", "B")}),
            DatasetRecord(1, {"Name": "b", "Year": 2, "Tasks": ("A",)}),
        ]
        snap = make_snapshot(schema, recs, version=1, built_at=0.0)
        assert feature_counts(snap, "Tasks") == [("A", 2), ("B", 1)]

    def test_all_missing_is_empty(self):
        schema = _mini_schema()
        recs = [DatasetRecord(0, {"Name": "a", "Year": MISSING, "Tasks": MISSING})]
        snap = make_snapshot(schema, recs, version=1, built_at=0.0)
        assert feature_counts(snap, "Year") == []

    def test_ties_sorted_by_value(self):
        schema = _mini_schema()
        recs = [
            DatasetRecord(0, {"Name": "a", "Year": 2002, "Tasks": ()}),
            DatasetRecord(1, {"Name": "b", "Year": 2001, "Tasks": ()}),
        ]
        snap = make_snapshot(schema, recs, version=1, built_at=0.0)
        assert feature_counts(snap, "Year") == [(2001, 1), (2002, 1)]

    def test_year_histogram_matches_oracle(self, catalog500):
        # Independent one-pass counting oracle.
        counter = Counter()
        for rec in catalog500.records:
            v = rec.get("Year")
            if v is not MISSING:
                counter[v] += 1
        got = feature_counts(catalog500, "Year")
        assert dict(got) == dict(counter)
        assert all(got[i][1] >= got[i + 1][1] for i in range(len(got) - 1))
        assert sum(c for _, c in got) == sum(counter.values())

    def test_counts_sum_equals_contributions(self, catalog500):
        contributions = 0
        for rec in catalog500.records:
            v = rec.get("Tasks")
            if v is not MISSING:
                contributions += len(v)
        assert sum(c for _, c in feature_counts(catalog500, "Tasks")) == contributions


class TestSnapshotInvariants:
    def test_records_must_carry_positions(self):
        schema = _mini_schema()
        bad = [DatasetRecord(1, {"Name": "a", "Year": 1, "Tasks": ()})]
        with pytest.raises(ValueError):
            make_snapshot(schema, bad, version=1, built_at=0.0)

    def test_schema_rejects_duplicates_and_empty_names(self):
        with pytest.raises(ValueError):
            Schema((Feature("A", FeatureKind.TEXT), Feature("A", FeatureKind.TEXT)))
        with pytest.raises(ValueError):
            Schema((Feature("", FeatureKind.TEXT),))

    def test_load_schema_config_errors(self, tmp_path):
        from datashelf.errors import ConfigError

        bad = tmp_path / "schema.json"
        bad.write_text("[]")
        with pytest.raises(ConfigError):
            load_schema_config(bad)
        bad.write_text('[{"name": "A", "kind": "enum"}]')
        with pytest.raises(ConfigError):
            load_schema_config(bad)
        with pytest.raises(ConfigError):
            load_schema_config(tmp_path / "absent.json")
