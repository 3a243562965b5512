"""Canonical statement text format: parsing, serialization, hashing, splitting.

A statement is a short UTF-8 text with a fixed envelope field sequence followed
by a content field. The serialization is canonical: there is exactly one byte
sequence for every valid statement, so SHA-256 over those bytes is a stable
cross-implementation reference key.

Interop note: the canonical statement text does NOT end with a trailing
newline; the content hash covers the text exactly as serialized here. A
publisher that hashes `text + "\\n"` will produce different hashes for
identical statements.
"""

from __future__ import annotations

import base64
import hashlib
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import (
    BlankLineInContent,
    BomPresent,
    InvalidHashReference,
    InvalidTimestamp,
    InvalidUtf8,
    InvariantViolation,
    MalformedEnvelope,
    NonCanonicalInput,
    StatementTooLarge,
    UnsupportedVersion,
)

FORMAT_VERSION = 4
MAX_STATEMENT_BYTES = 64 * 1024
HASH_LENGTH = 43

FIELD_PUBLISHING_DOMAIN = "Publishing domain"
FIELD_AUTHOR = "Author"
FIELD_REPRESENTATIVE = "Authorized signing representative"
FIELD_TIME = "Time"
FIELD_TAGS = "Tags"
FIELD_SUPERSEDED = "Superseded statement"
FIELD_FORMAT_VERSION = "Format version"
FIELD_CONTENT = "Statement content"

# (field name, required) in mandatory serialization order, content last.
_ENVELOPE_SEQUENCE: tuple[tuple[str, bool], ...] = (
    (FIELD_PUBLISHING_DOMAIN, True),
    (FIELD_AUTHOR, True),
    (FIELD_REPRESENTATIVE, False),
    (FIELD_TIME, True),
    (FIELD_TAGS, False),
    (FIELD_SUPERSEDED, False),
    (FIELD_FORMAT_VERSION, True),
)
_ENVELOPE_FIELD_NAMES = tuple(name for name, _ in _ENVELOPE_SEQUENCE) + (FIELD_CONTENT,)

_TIMESTAMP_RE = re.compile(r"^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})Z$")
_HASH_RE = re.compile(r"^[A-Za-z0-9_-]{43}$")
_DOMAIN_LABEL_RE = re.compile(r"^[a-z0-9](?:[a-z0-9-]{0,61}[a-z0-9])?$")
_VERSION_RE = re.compile(r"^(?:0|[1-9][0-9]*)$")
# One field value: no edge whitespace, no tab/CR/LF anywhere.
_VALUE_RE = re.compile(r"^[^\s](?:[^\t\r\n]*[^\s])?$")
_TAG_RE = re.compile(r"^[^\s,](?:[^,\t\r\n]*[^\s,])?$")
# Block content line: 1-3 leading tabs, payload with no edge whitespace.
_BLOCK_LINE_RE = re.compile(r"^\t{1,3}[^\s](?:.*[^\s])?$")
_INLINE_CONTENT_RE = re.compile(r"^[^\s](?:[^\t\r\n]*[^\s])?$")


@dataclass(frozen=True)
class Statement:
    """One parsed protocol statement.

    ``content`` holds the raw content text: a single line for inline content,
    or newline-joined lines each keeping its leading tab(s) for block content.
    """

    publishing_domain: str
    author: str
    time: datetime
    content: str
    representative: str | None = None
    tags: tuple[str, ...] = ()
    superseded_statement: str | None = None
    format_version: int = FORMAT_VERSION


@dataclass(frozen=True)
class StatementFile:
    """Ordered canonical statement texts from one statements.txt document."""

    statements: tuple[str, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.statements)

    def __len__(self) -> int:
        return len(self.statements)


def hash_bytes(data: bytes) -> str:
    """SHA-256 of ``data``, URL-safe base64, padding stripped (43 chars)."""
    digest = hashlib.sha256(data).digest()
    return base64.urlsafe_b64encode(digest).rstrip(b"=").decode("ascii")


def is_content_hash(value: str) -> bool:
    """True when ``value`` is a canonical 43-char URL-safe base64 hash."""
    if not _HASH_RE.match(value):
        return False
    raw = base64.urlsafe_b64decode(value + "=")
    # the final character must not smuggle nonzero discarded bits
    return base64.urlsafe_b64encode(raw).rstrip(b"=").decode("ascii") == value


def validate_content_hash(value: str) -> str:
    if not isinstance(value, str) or not is_content_hash(value):
        raise InvalidHashReference(f"not a canonical content hash: {value!r}")
    return value


def is_valid_domain(domain: str) -> bool:
    """Strict check: lowercase dotted hostname, no scheme, port, or final dot."""
    if not domain or len(domain) > 253:
        return False
    return all(_DOMAIN_LABEL_RE.match(label) for label in domain.split("."))


def normalize_domain(domain: str) -> str:
    """Lowercase and punycode-encode a hostname for use in statements."""
    candidate = domain.strip().rstrip(".").lower()
    if not candidate:
        raise MalformedEnvelope("empty publishing domain")
    try:
        candidate = candidate.encode("idna").decode("ascii")
    except UnicodeError as exc:
        raise MalformedEnvelope(f"cannot encode domain {domain!r}: {exc}") from exc
    if not is_valid_domain(candidate):
        raise MalformedEnvelope(f"invalid publishing domain: {domain!r}")
    return candidate


def parse_timestamp(value: str) -> datetime:
    """Parse the fixed UTC profile ``YYYY-MM-DDTHH:MM:SSZ``."""
    match = _TIMESTAMP_RE.match(value)
    if not match:
        raise InvalidTimestamp(f"timestamp must be YYYY-MM-DDTHH:MM:SSZ, got {value!r}")
    try:
        return datetime(*(int(g) for g in match.groups()), tzinfo=timezone.utc)
    except ValueError as exc:
        raise InvalidTimestamp(f"timestamp out of range: {value!r}") from exc


def format_timestamp(moment: datetime) -> str:
    if moment.tzinfo is None or moment.utcoffset() != timezone.utc.utcoffset(None):
        raise InvariantViolation("timestamps must be timezone-aware UTC")
    if moment.microsecond:
        raise InvariantViolation("timestamps carry second precision only")
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def _check_value(name: str, value: str, exc_type: type[Exception]) -> str:
    if not isinstance(value, str) or not value:
        raise exc_type(f"{name} must be non-empty text")
    if not _VALUE_RE.match(value):
        raise exc_type(
            f"{name} must not contain tabs, newlines, or edge whitespace: {value!r}"
        )
    return value


def _check_tags(tags: tuple[str, ...], exc_type: type[Exception]) -> tuple[str, ...]:
    if not tags:
        raise exc_type("tags list must be omitted when empty")
    for tag in tags:
        if not isinstance(tag, str) or not _TAG_RE.match(tag):
            raise exc_type(f"invalid tag: {tag!r}")
    return tags


def _check_content(content: str, exc_type: type[Exception]) -> str:
    if not isinstance(content, str) or not content:
        raise exc_type("statement content must be non-empty")
    if "\r" in content:
        raise exc_type("statement content must not contain carriage returns")
    if "\n\n" in content:
        raise BlankLineInContent("blank line inside statement content")
    if "\n" in content or content.startswith("\t"):
        for line in content.split("\n"):
            if not _BLOCK_LINE_RE.match(line):
                raise exc_type(
                    f"block content line must be tab-nested with no trailing whitespace: {line!r}"
                )
    else:
        if not _INLINE_CONTENT_RE.match(content):
            raise exc_type(f"invalid inline content: {content!r}")
    return content


def serialize_statement(statement: Statement) -> str:
    """Emit the unique canonical text for ``statement``.

    Raises InvariantViolation when any field breaks the model invariants.
    """
    if statement.format_version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format version must be {FORMAT_VERSION}")
    domain = statement.publishing_domain
    if not isinstance(domain, str) or not is_valid_domain(domain):
        raise InvariantViolation(f"invalid publishing domain: {domain!r}")
    lines = [f"{FIELD_PUBLISHING_DOMAIN}: {domain}"]
    lines.append(f"{FIELD_AUTHOR}: {_check_value('author', statement.author, InvariantViolation)}")
    if statement.representative is not None:
        value = _check_value("representative", statement.representative, InvariantViolation)
        lines.append(f"{FIELD_REPRESENTATIVE}: {value}")
    lines.append(f"{FIELD_TIME}: {format_timestamp(statement.time)}")
    if statement.tags:
        tags = _check_tags(tuple(statement.tags), InvariantViolation)
        lines.append(f"{FIELD_TAGS}: {', '.join(tags)}")
    if statement.superseded_statement is not None:
        lines.append(f"{FIELD_SUPERSEDED}: {validate_content_hash(statement.superseded_statement)}")
    lines.append(f"{FIELD_FORMAT_VERSION}: {FORMAT_VERSION}")
    content = _check_content(statement.content, InvariantViolation)
    if "\n" in content or content.startswith("\t"):
        lines.append(f"{FIELD_CONTENT}:")
        lines.extend(content.split("\n"))
    else:
        lines.append(f"{FIELD_CONTENT}: {content}")
    text = "\n".join(lines)
    if len(text.encode("utf-8")) > MAX_STATEMENT_BYTES:
        raise StatementTooLarge(f"statement exceeds {MAX_STATEMENT_BYTES} bytes")
    return text


def _classify_unexpected_line(line: str) -> str:
    for name in _ENVELOPE_FIELD_NAMES:
        if line == f"{name}:" or line.startswith(f"{name}: "):
            return f"envelope field {name!r} duplicated or out of order"
    return f"unknown envelope field: {line.split(':', 1)[0]!r}"


def parse_statement(text: str) -> Statement:
    """Parse canonical statement text; rejects every non-canonical variant."""
    if not isinstance(text, str) or not text:
        raise MalformedEnvelope("empty statement text")
    if len(text.encode("utf-8")) > MAX_STATEMENT_BYTES:
        raise StatementTooLarge(f"statement exceeds {MAX_STATEMENT_BYTES} bytes")
    if text.startswith("﻿"):
        raise BomPresent("statement text starts with a BOM")
    if "\r" in text:
        raise MalformedEnvelope("carriage returns are not permitted (LF-only line endings)")
    if "\n\n" in text:
        raise BlankLineInContent("blank line inside statement text")
    if text.startswith("\n") or text.endswith("\n"):
        raise MalformedEnvelope("statement text must not start or end with a newline")

    lines = text.split("\n")
    index = 0
    values: dict[str, str] = {}
    for name, required in _ENVELOPE_SEQUENCE:
        if index >= len(lines):
            raise MalformedEnvelope(f"missing required field {name!r}")
        line = lines[index]
        prefix = f"{name}: "
        if line.startswith(prefix):
            values[name] = _check_value(name, line[len(prefix):], MalformedEnvelope)
            index += 1
        elif line == f"{name}:":
            raise MalformedEnvelope(f"field {name!r} has an empty value")
        elif required:
            raise MalformedEnvelope(
                f"expected field {name!r}; {_classify_unexpected_line(line)}"
            )

    if index >= len(lines):
        raise MalformedEnvelope(f"missing required field {FIELD_CONTENT!r}")
    content_line = lines[index]
    trailing = lines[index + 1:]
    if content_line == f"{FIELD_CONTENT}:":
        if not trailing:
            raise MalformedEnvelope("block content requires at least one nested line")
        content = "\n".join(trailing)
        if not content.startswith("\t"):
            raise MalformedEnvelope("block content lines must start with a tab")
    elif content_line.startswith(f"{FIELD_CONTENT}: "):
        if trailing:
            raise MalformedEnvelope(
                "inline content must be a single line; nest multi-line content with tabs"
            )
        content = content_line[len(FIELD_CONTENT) + 2:]
    else:
        raise MalformedEnvelope(
            f"expected field {FIELD_CONTENT!r}; {_classify_unexpected_line(content_line)}"
        )
    content = _check_content(content, MalformedEnvelope)

    domain = values[FIELD_PUBLISHING_DOMAIN]
    if not is_valid_domain(domain):
        raise MalformedEnvelope(f"invalid publishing domain: {domain!r}")
    version_text = values[FIELD_FORMAT_VERSION]
    if not _VERSION_RE.match(version_text):
        raise MalformedEnvelope(f"format version must be a plain integer, got {version_text!r}")
    if int(version_text) != FORMAT_VERSION:
        raise UnsupportedVersion(f"unsupported format version {version_text}")

    tags: tuple[str, ...] = ()
    if FIELD_TAGS in values:
        tags = tuple(values[FIELD_TAGS].split(", "))
        _check_tags(tags, MalformedEnvelope)
    superseded = values.get(FIELD_SUPERSEDED)
    if superseded is not None:
        validate_content_hash(superseded)

    return Statement(
        publishing_domain=domain,
        author=values[FIELD_AUTHOR],
        time=parse_timestamp(values[FIELD_TIME]),
        content=content,
        representative=values.get(FIELD_REPRESENTATIVE),
        tags=tags,
        superseded_statement=superseded,
    )


def hash_statement(text: str, *, require_canonical: bool = True) -> str:
    """Content hash of statement text: SHA-256 over its exact UTF-8 bytes.

    With ``require_canonical`` (the default) the text must round-trip through
    the parser byte-identically; otherwise NonCanonicalInput is raised.
    """
    if require_canonical:
        try:
            canonical = serialize_statement(parse_statement(text))
        except NonCanonicalInput:
            raise
        except Exception as exc:
            raise NonCanonicalInput(f"not canonical statement text: {exc}") from exc
        if canonical != text:
            raise NonCanonicalInput("text does not match its canonical serialization")
    return hash_bytes(text.encode("utf-8"))


def split_statement_file(data: bytes) -> StatementFile:
    """Split raw statements.txt bytes into individual statement texts.

    Validates UTF-8 and BOM absence only; per-statement validation is the
    parser's job. A single trailing newline is tolerated and trimmed.
    """
    if not isinstance(data, bytes):
        raise TypeError("split_statement_file expects bytes")
    if data.startswith(b"\xef\xbb\xbf"):
        raise BomPresent("statement file starts with a BOM")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidUtf8(f"statement file is not valid UTF-8: {exc}") from exc
    if text.startswith("﻿"):
        raise BomPresent("statement file starts with a BOM")
    if not text:
        return StatementFile()
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        return StatementFile()
    return StatementFile(tuple(text.split("\n\n")))


def join_statement_file(texts) -> str:
    """Join canonical statement texts with the blank-line separator."""
    statements = tuple(texts)
    for text in statements:
        if "\n\n" in text or text.startswith("\n") or text.endswith("\n") or not text:
            raise InvariantViolation("statement texts must be canonical before joining")
    return "\n\n".join(statements)
