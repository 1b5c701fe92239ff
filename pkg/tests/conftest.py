from __future__ import annotations

import json
from pathlib import Path

import pytest

from datashelf.catalog import make_snapshot
from datashelf.ingest import ingest, load_schema_config

import fixture_data

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def schema():
    return load_schema_config(FIXTURES / "schema.json")


@pytest.fixture(scope="session")
def small_csv_bytes():
    return (FIXTURES / "catalog.csv").read_bytes()


@pytest.fixture(scope="session")
def small_snapshot(schema, small_csv_bytes):
    records, diagnostics = ingest(small_csv_bytes, schema, "csv")
    assert not diagnostics
    return make_snapshot(schema, records, version=1, built_at=0.0)


@pytest.fixture(scope="session")
def catalog500_csv_bytes():
    return fixture_data.rows_to_csv_bytes(fixture_data.gen_rows(500))


@pytest.fixture(scope="session")
def catalog500(schema, catalog500_csv_bytes):
    records, _ = ingest(catalog500_csv_bytes, schema, "csv")
    return make_snapshot(schema, records, version=1, built_at=0.0)


@pytest.fixture
def service_factory(tmp_path):
    """Builds and starts a CatalogService over a temp config; stops on teardown."""
    from datashelf.config import load_config
    from datashelf.service import CatalogService

    started = []

    def _make(
        source_bytes: bytes = None,
        config_overrides: dict = None,
        initial_refresh: bool = True,
        source_name: str = "catalog.csv",
        schema_bytes: bytes = None,
    ):
        if source_bytes is None:
            source_bytes = (FIXTURES / "catalog.csv").read_bytes()
        source_path = tmp_path / source_name
        source_path.write_bytes(source_bytes)
        schema_path = tmp_path / "schema.json"
        schema_path.write_bytes(schema_bytes or (FIXTURES / "schema.json").read_bytes())
        config = {
            "source": {"location": str(source_path), "format": "csv", "refresh_interval_seconds": 600},
            "schema": str(schema_path),
            "port": 0,
            "clusters": {"k": 3, "seed": 7},
            "provider": {"type": "local", "dim": 64, "seed": 7},
            "report_log": str(tmp_path / "reports.jsonl"),
        }
        if config_overrides:
            _deep_update(config, config_overrides)
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config))
        service = CatalogService(load_config(config_path))
        service.start(initial_refresh=initial_refresh)
        started.append(service)
        return service, f"http://127.0.0.1:{service.port}"

    yield _make
    for service in started:
        service.stop()


def _deep_update(base: dict, overrides: dict) -> None:
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _deep_update(base[key], value)
        else:
            base[key] = value
