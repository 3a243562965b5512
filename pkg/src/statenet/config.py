"""Node configuration: YAML file plus CLI overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml


@dataclass
class NodeSettings:
    own_domain: str = "localhost"
    store_path: str = "statenet.db"
    host: str = "127.0.0.1"
    port: int = 8700
    operator_token: str = ""
    peers: list[str] = field(default_factory=list)
    seed_domains: list[str] = field(default_factory=list)
    fanout: int = 3
    batch_limit: int = 500
    max_batches_per_pull: int = 100
    gossip_interval_seconds: float = 60.0
    poll_interval_seconds: float = 600.0
    timeout_seconds: float = 30.0
    max_file_bytes: int = 5 * 1024 * 1024
    max_pdf_bytes: int = 32 * 1024 * 1024
    max_statement_bytes: int = 64 * 1024
    reputation_alpha: float = 0.2
    reputation_threshold: float = 0.2
    reputation_initial: float = 0.5
    ca_bundle: str | None = None
    https_port: int | None = None
    ui_dir: str | None = None


def settings_from_mapping(data: dict) -> NodeSettings:
    known = {f.name for f in fields(NodeSettings)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return NodeSettings(**data)


def load_settings(path: str | Path) -> NodeSettings:
    raw = Path(path).read_text(encoding="utf-8")
    data = yaml.safe_load(raw) or {}
    if not isinstance(data, dict):
        raise ValueError(f"config root must be a mapping, got {type(data).__name__}")
    return settings_from_mapping(data)
