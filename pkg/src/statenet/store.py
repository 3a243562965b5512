"""Statement storage: gapless local IDs, hash dedup, peers, own publications.

Two implementations share one interface: an in-memory store for simulations
and tests, and a SQLite store for durable nodes. Local IDs are node-private
and strictly increasing with ingestion order; records are never deleted, so
the sequence stays gapless.
"""

from __future__ import annotations

import sqlite3
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from functools import cached_property
from typing import Iterable

from .format import Statement, parse_statement

STATUS_UNVERIFIED = "unverified"
STATUS_DOMAIN_CONFIRMED = "domain-confirmed"
STATUS_DNS_CONFIRMED = "dns-confirmed"
VERIFICATION_STATUSES = (STATUS_UNVERIFIED, STATUS_DOMAIN_CONFIRMED, STATUS_DNS_CONFIRMED)


@dataclass(frozen=True)
class NodeRecord:
    local_id: int
    hash: str
    text: str
    publishing_domain: str
    content_kind: str
    source: str
    first_seen: datetime
    verification_status: str

    @cached_property
    def parsed(self) -> Statement:
        return parse_statement(self.text)


@dataclass
class PeerState:
    peer_id: str
    cursor: int = 0
    reputation: float = 0.5
    last_pull: datetime | None = None
    delivered: int = 0
    duplicates: int = 0
    invalid: int = 0


class StatementStore(ABC):
    """Storage contract used by the node, the API, and the simulator."""

    @abstractmethod
    def insert_statement(
        self,
        *,
        text: str,
        statement_hash: str,
        publishing_domain: str,
        content_kind: str,
        source: str,
        first_seen: datetime,
        verification_status: str,
    ) -> int:
        """Store a new statement and return its local ID."""

    @abstractmethod
    def get_by_hash(self, statement_hash: str) -> NodeRecord | None: ...

    @abstractmethod
    def batch_after(self, min_id: int, limit: int) -> list[NodeRecord]: ...

    @abstractmethod
    def max_id(self) -> int: ...

    @abstractmethod
    def count(self) -> int: ...

    @abstractmethod
    def iter_records(self) -> Iterable[NodeRecord]:
        """All records in ascending local ID order."""

    @abstractmethod
    def all_hashes(self) -> set[str]: ...

    @abstractmethod
    def set_verification_status(self, statement_hash: str, status: str) -> None: ...

    @abstractmethod
    def get_peer(self, peer_id: str) -> PeerState | None: ...

    @abstractmethod
    def upsert_peer(self, state: PeerState) -> None: ...

    @abstractmethod
    def list_peers(self) -> list[PeerState]: ...

    @abstractmethod
    def append_own(self, statement_hash: str) -> None: ...

    @abstractmethod
    def own_hashes(self) -> list[str]: ...

    def close(self) -> None:
        pass


class MemoryStore(StatementStore):
    def __init__(self) -> None:
        self._records: list[NodeRecord] = []
        self._by_hash: dict[str, NodeRecord] = {}
        self._peers: dict[str, PeerState] = {}
        self._own: list[str] = []
        self._lock = threading.Lock()

    def insert_statement(self, *, text, statement_hash, publishing_domain,
                         content_kind, source, first_seen, verification_status) -> int:
        with self._lock:
            if statement_hash in self._by_hash:
                raise ValueError(f"duplicate hash {statement_hash}")
            record = NodeRecord(
                local_id=len(self._records) + 1,
                hash=statement_hash,
                text=text,
                publishing_domain=publishing_domain,
                content_kind=content_kind,
                source=source,
                first_seen=first_seen,
                verification_status=verification_status,
            )
            self._records.append(record)
            self._by_hash[statement_hash] = record
            return record.local_id

    def get_by_hash(self, statement_hash):
        return self._by_hash.get(statement_hash)

    def batch_after(self, min_id, limit):
        if limit <= 0:
            return []
        start = max(min_id, 0)
        return self._records[start:start + limit]

    def max_id(self):
        return len(self._records)

    def count(self):
        return len(self._records)

    def iter_records(self):
        return list(self._records)

    def all_hashes(self):
        return set(self._by_hash)

    def set_verification_status(self, statement_hash, status):
        with self._lock:
            record = self._by_hash.get(statement_hash)
            if record is None:
                raise KeyError(statement_hash)
            updated = replace(record, verification_status=status)
            self._by_hash[statement_hash] = updated
            self._records[record.local_id - 1] = updated

    def get_peer(self, peer_id):
        state = self._peers.get(peer_id)
        return replace(state) if state else None

    def upsert_peer(self, state):
        with self._lock:
            self._peers[state.peer_id] = replace(state)

    def list_peers(self):
        return [replace(p) for p in self._peers.values()]

    def append_own(self, statement_hash):
        with self._lock:
            if statement_hash not in self._own:
                self._own.append(statement_hash)

    def own_hashes(self):
        return list(self._own)


_SCHEMA = """
CREATE TABLE IF NOT EXISTS statements (
    local_id INTEGER PRIMARY KEY,
    hash TEXT NOT NULL UNIQUE,
    text TEXT NOT NULL,
    publishing_domain TEXT NOT NULL,
    content_kind TEXT NOT NULL,
    source TEXT NOT NULL,
    first_seen TEXT NOT NULL,
    verification_status TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS idx_statements_domain ON statements(publishing_domain);
CREATE TABLE IF NOT EXISTS peers (
    peer_id TEXT PRIMARY KEY,
    cursor INTEGER NOT NULL,
    reputation REAL NOT NULL,
    last_pull TEXT,
    delivered INTEGER NOT NULL,
    duplicates INTEGER NOT NULL,
    invalid INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS own_statements (
    seq INTEGER PRIMARY KEY,
    hash TEXT NOT NULL UNIQUE
);
"""


def _dt_to_text(moment: datetime | None) -> str | None:
    return moment.astimezone(timezone.utc).isoformat() if moment else None


def _dt_from_text(text: str | None) -> datetime | None:
    return datetime.fromisoformat(text) if text else None


class SqliteStore(StatementStore):
    """Durable store; every write commits before returning."""

    def __init__(self, path: str) -> None:
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._lock = threading.RLock()
        with self._lock:
            self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.execute("PRAGMA synchronous=FULL")
            self._conn.executescript(_SCHEMA)
            self._conn.commit()

    def _row_to_record(self, row) -> NodeRecord:
        return NodeRecord(
            local_id=row[0],
            hash=row[1],
            text=row[2],
            publishing_domain=row[3],
            content_kind=row[4],
            source=row[5],
            first_seen=_dt_from_text(row[6]),
            verification_status=row[7],
        )

    def insert_statement(self, *, text, statement_hash, publishing_domain,
                         content_kind, source, first_seen, verification_status) -> int:
        with self._lock:
            cursor = self._conn.execute(
                "INSERT INTO statements"
                " (hash, text, publishing_domain, content_kind, source,"
                "  first_seen, verification_status)"
                " VALUES (?, ?, ?, ?, ?, ?, ?)",
                (
                    statement_hash,
                    text,
                    publishing_domain,
                    content_kind,
                    source,
                    _dt_to_text(first_seen),
                    verification_status,
                ),
            )
            self._conn.commit()
            return cursor.lastrowid

    def get_by_hash(self, statement_hash):
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM statements WHERE hash = ?", (statement_hash,)
            ).fetchone()
        return self._row_to_record(row) if row else None

    def batch_after(self, min_id, limit):
        if limit <= 0:
            return []
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM statements WHERE local_id > ? ORDER BY local_id LIMIT ?",
                (min_id, limit),
            ).fetchall()
        return [self._row_to_record(row) for row in rows]

    def max_id(self):
        with self._lock:
            row = self._conn.execute("SELECT MAX(local_id) FROM statements").fetchone()
        return row[0] or 0

    def count(self):
        with self._lock:
            return self._conn.execute("SELECT COUNT(*) FROM statements").fetchone()[0]

    def iter_records(self):
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM statements ORDER BY local_id"
            ).fetchall()
        return [self._row_to_record(row) for row in rows]

    def all_hashes(self):
        with self._lock:
            rows = self._conn.execute("SELECT hash FROM statements").fetchall()
        return {row[0] for row in rows}

    def set_verification_status(self, statement_hash, status):
        with self._lock:
            changed = self._conn.execute(
                "UPDATE statements SET verification_status = ? WHERE hash = ?",
                (status, statement_hash),
            ).rowcount
            self._conn.commit()
        if not changed:
            raise KeyError(statement_hash)

    def get_peer(self, peer_id):
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM peers WHERE peer_id = ?", (peer_id,)
            ).fetchone()
        if not row:
            return None
        return PeerState(
            peer_id=row[0], cursor=row[1], reputation=row[2],
            last_pull=_dt_from_text(row[3]), delivered=row[4],
            duplicates=row[5], invalid=row[6],
        )

    def upsert_peer(self, state):
        with self._lock:
            self._conn.execute(
                "INSERT INTO peers"
                " (peer_id, cursor, reputation, last_pull, delivered, duplicates, invalid)"
                " VALUES (?, ?, ?, ?, ?, ?, ?)"
                " ON CONFLICT(peer_id) DO UPDATE SET"
                " cursor=excluded.cursor, reputation=excluded.reputation,"
                " last_pull=excluded.last_pull, delivered=excluded.delivered,"
                " duplicates=excluded.duplicates, invalid=excluded.invalid",
                (
                    state.peer_id, state.cursor, state.reputation,
                    _dt_to_text(state.last_pull), state.delivered,
                    state.duplicates, state.invalid,
                ),
            )
            self._conn.commit()

    def list_peers(self):
        with self._lock:
            rows = self._conn.execute("SELECT * FROM peers ORDER BY peer_id").fetchall()
        return [
            PeerState(
                peer_id=row[0], cursor=row[1], reputation=row[2],
                last_pull=_dt_from_text(row[3]), delivered=row[4],
                duplicates=row[5], invalid=row[6],
            )
            for row in rows
        ]

    def append_own(self, statement_hash):
        with self._lock:
            self._conn.execute(
                "INSERT OR IGNORE INTO own_statements (hash) VALUES (?)",
                (statement_hash,),
            )
            self._conn.commit()

    def own_hashes(self):
        with self._lock:
            rows = self._conn.execute(
                "SELECT hash FROM own_statements ORDER BY seq"
            ).fetchall()
        return [row[0] for row in rows]

    def close(self):
        with self._lock:
            self._conn.close()
