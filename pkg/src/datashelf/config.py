"""Service configuration: one JSON file describing source, providers, and serving."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

# Features charted on the stats dashboard unless the config overrides them.
DEFAULT_STATS_FEATURES = [
    "Host",
    "Year",
    "Access",
    "Tasks",
    "Domain",
    "License",
    "Dialect",
    "Form",
    "Venue",
    "Ethical Risks",
    "Script",
]


@dataclass
class ProviderConfig:
    type: str = "local"  # "local" or "remote"
    dim: int = 256
    seed: int = 0
    url: str | None = None
    auth_token: str | None = None
    timeout_seconds: float = 30.0
    retries: int = 3
    backoff_seconds: float = 1.0
    fallback: str = "local"  # "local", "previous", or "none"


@dataclass
class ServiceConfig:
    source_location: str
    schema_path: str
    source_format: str = "csv"
    refresh_interval_seconds: int = 600
    checksum_skip: bool = True
    port: int = 8080
    host: str = "127.0.0.1"
    k: int = 8
    seed: int = 0
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    stats_features: list[str] = field(default_factory=lambda: list(DEFAULT_STATS_FEATURES))
    report_log: str = "reports.jsonl"
    webhook_url: str | None = None
    webhook_retries: int = 3
    webhook_backoff_seconds: float = 1.0
    webhook_timeout_seconds: float = 10.0
    cors_origin: str | None = None
    static_dir: str | None = None


def _resolve(base: Path, value: str) -> str:
    path = Path(value)
    return str(path if path.is_absolute() else base / path)


def load_config(path: str | Path) -> ServiceConfig:
    """Parse the service config file; relative paths resolve against it."""
    path = Path(path)
    try:
        data = json.loads(path.read_text("utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")

    base = path.resolve().parent
    source = data.get("source")
    if not isinstance(source, dict) or "location" not in source:
        raise ConfigError("config requires source.location")
    if "schema" not in data:
        raise ConfigError("config requires a schema path")

    fmt = source.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unsupported source format {fmt!r}")
    interval = int(source.get("refresh_interval_seconds", 600))
    if interval < 1:
        raise ConfigError("refresh_interval_seconds must be >= 1")

    location = str(source["location"])
    if not location.startswith(("http://", "https://")):
        location = _resolve(base, location)

    clusters = data.get("clusters", {})
    provider_data = data.get("provider", {})
    provider = ProviderConfig(
        type=provider_data.get("type", "local"),
        dim=int(provider_data.get("dim", 256)),
        seed=int(provider_data.get("seed", 0)),
        url=provider_data.get("url"),
        auth_token=provider_data.get("auth_token"),
        timeout_seconds=float(provider_data.get("timeout_seconds", 30.0)),
        retries=int(provider_data.get("retries", 3)),
        backoff_seconds=float(provider_data.get("backoff_seconds", 1.0)),
        fallback=provider_data.get("fallback", "local"),
    )
    if provider.type not in ("local", "remote"):
        raise ConfigError(f"unsupported provider type {provider.type!r}")
    if provider.type == "remote" and not provider.url:
        raise ConfigError("remote provider requires a url")
    if provider.fallback not in ("local", "previous", "none"):
        raise ConfigError(f"unsupported provider fallback {provider.fallback!r}")

    webhook = data.get("webhook", {})
    static_dir = data.get("static_dir")
    return ServiceConfig(
        source_location=location,
        schema_path=_resolve(base, str(data["schema"])),
        source_format=fmt,
        refresh_interval_seconds=interval,
        checksum_skip=bool(source.get("checksum_skip", True)),
        port=int(data.get("port", 8080)),
        host=str(data.get("host", "127.0.0.1")),
        k=int(clusters.get("k", 8)),
        seed=int(clusters.get("seed", 0)),
        provider=provider,
        stats_features=list(data.get("stats_features", DEFAULT_STATS_FEATURES)),
        report_log=_resolve(base, str(data.get("report_log", "reports.jsonl"))),
        webhook_url=webhook.get("url"),
        webhook_retries=int(webhook.get("retries", 3)),
        webhook_backoff_seconds=float(webhook.get("backoff_seconds", 1.0)),
        webhook_timeout_seconds=float(webhook.get("timeout_seconds", 10.0)),
        cors_origin=data.get("cors_origin"),
        static_dir=_resolve(base, static_dir) if static_dir else None,
    )
