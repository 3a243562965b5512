"""Canonical statement publishing toolkit.

Codec for the canonical statement text format, typed content payloads,
web-of-trust confidence aggregation, poll tallying, domain fetching with
DNS cross-checks, and a pull-gossip aggregator node with an HTTP API.
"""

from .format import (
    Statement,
    StatementFile,
    hash_bytes,
    hash_statement,
    join_statement_file,
    parse_statement,
    serialize_statement,
    split_statement_file,
)

__all__ = [
    "Statement",
    "StatementFile",
    "hash_bytes",
    "hash_statement",
    "join_statement_file",
    "parse_statement",
    "serialize_statement",
    "split_statement_file",
]

__version__ = "0.1.0"
