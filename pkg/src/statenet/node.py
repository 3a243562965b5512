"""Aggregator node core: ingestion, pull gossip, reputation, and read views.

The node is transport-agnostic: gossip rounds receive a mapping from peer ID
to a pull callable, so the same code drives in-process simulations and HTTP
peers. A single writer lock serializes ID assignment and store mutation;
reads take consistent snapshots at batch granularity.
"""

from __future__ import annotations

import logging
import random
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Mapping, Sequence

from . import content as typed
from . import polls, trust
from .errors import ProtocolError
from .format import (
    MAX_STATEMENT_BYTES,
    hash_bytes,
    join_statement_file,
    parse_statement,
    serialize_statement,
)
from .store import (
    STATUS_DNS_CONFIRMED,
    STATUS_DOMAIN_CONFIRMED,
    STATUS_UNVERIFIED,
    NodeRecord,
    PeerState,
    StatementStore,
)

logger = logging.getLogger(__name__)

SOURCE_LOCAL = "local"
SOURCE_DOMAIN_FETCH = "domain-fetch"
SOURCE_PEER = "peer"

OUTCOME_STORED = "stored"
OUTCOME_DUPLICATE = "duplicate"
OUTCOME_REJECTED = "rejected"

REASON_TOO_LARGE = "too-large"
REASON_MALFORMED = "malformed"

# A pull client maps (min_id, limit) to ascending (remote_id, text) pairs.
PullClient = Callable[[int, int], Sequence[tuple[int, str]]]


@dataclass(frozen=True)
class ReputationPolicy:
    alpha: float = 0.2
    threshold: float = 0.2
    initial: float = 0.5


def update_reputation(previous: float, delivered: int, valid: int, *, alpha: float = 0.2) -> float:
    """Exponential moving average toward this round's valid fraction.

    Rounds that deliver nothing carry no information and leave the score
    unchanged.
    """
    if delivered <= 0:
        return previous
    valid_fraction = valid / delivered
    return (1.0 - alpha) * previous + alpha * valid_fraction


@dataclass(frozen=True)
class IngestResult:
    outcome: str
    hash: str
    local_id: int | None = None
    reason: str | None = None


@dataclass
class PeerRoundReport:
    peer_id: str
    delivered: int = 0
    stored: int = 0
    duplicates: int = 0
    invalid: int = 0
    errors: list[str] = field(default_factory=list)
    cursor_before: int = 0
    cursor_after: int = 0
    reputation_before: float = 0.0
    reputation_after: float = 0.0


@dataclass
class GossipRoundReport:
    selected: list[str]
    peers: list[PeerRoundReport]

    @property
    def stored_total(self) -> int:
        return sum(p.stored for p in self.peers)


class Node:
    def __init__(
        self,
        store: StatementStore,
        *,
        own_domain: str,
        reputation: ReputationPolicy = ReputationPolicy(),
        fanout: int = 3,
        batch_limit: int = 500,
        max_batches_per_pull: int = 100,
        max_statement_bytes: int = MAX_STATEMENT_BYTES,
        clock: Callable[[], datetime] | None = None,
    ) -> None:
        self.store = store
        self.own_domain = own_domain
        self.reputation = reputation
        self.fanout = fanout
        self.batch_limit = batch_limit
        self.max_batches_per_pull = max_batches_per_pull
        self.max_statement_bytes = max_statement_bytes
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self._writer_lock = threading.Lock()

    # -- ingestion ---------------------------------------------------------

    def ingest(self, text: str, source: str = SOURCE_LOCAL) -> IngestResult:
        """Validate, dedup by hash, and store one statement text."""
        if not isinstance(text, str) or len(text.encode("utf-8")) > self.max_statement_bytes:
            return IngestResult(OUTCOME_REJECTED, hash="", reason=REASON_TOO_LARGE)
        statement_hash = hash_bytes(text.encode("utf-8"))
        existing = self.store.get_by_hash(statement_hash)
        if existing is not None:
            return IngestResult(OUTCOME_DUPLICATE, statement_hash, local_id=existing.local_id)
        try:
            statement = parse_statement(text)
            if serialize_statement(statement) != text:
                raise ProtocolError("non-canonical statement text")
            decoded = typed.parse_content(statement.content)
        except ProtocolError as exc:
            return IngestResult(
                OUTCOME_REJECTED, statement_hash, reason=f"{REASON_MALFORMED}: {exc}"
            )
        status = (
            STATUS_DOMAIN_CONFIRMED
            if source == f"{SOURCE_DOMAIN_FETCH}:{statement.publishing_domain}"
            else STATUS_UNVERIFIED
        )
        with self._writer_lock:
            existing = self.store.get_by_hash(statement_hash)
            if existing is not None:
                return IngestResult(OUTCOME_DUPLICATE, statement_hash, local_id=existing.local_id)
            local_id = self.store.insert_statement(
                text=text,
                statement_hash=statement_hash,
                publishing_domain=statement.publishing_domain,
                content_kind=typed.content_kind(decoded),
                source=source,
                first_seen=self._clock(),
                verification_status=status,
            )
        return IngestResult(OUTCOME_STORED, statement_hash, local_id=local_id)

    def publish_local(self, text: str) -> IngestResult:
        """Ingest an operator-authored statement and list it as our own."""
        try:
            statement = parse_statement(text)
        except ProtocolError as exc:
            return IngestResult(
                OUTCOME_REJECTED, hash_bytes(text.encode("utf-8")),
                reason=f"{REASON_MALFORMED}: {exc}",
            )
        if statement.publishing_domain != self.own_domain:
            return IngestResult(
                OUTCOME_REJECTED,
                hash_bytes(text.encode("utf-8")),
                reason=f"publishing domain must be {self.own_domain}",
            )
        result = self.ingest(text, source=SOURCE_LOCAL)
        if result.outcome in (OUTCOME_STORED, OUTCOME_DUPLICATE):
            self.store.append_own(result.hash)
            self.store.set_verification_status(result.hash, STATUS_DOMAIN_CONFIRMED)
        return result

    # -- gossip ------------------------------------------------------------

    def serve_pull(self, min_id: int, limit: int) -> list[tuple[int, str]]:
        """Ascending (local_id, text) pairs with local_id > min_id."""
        limit = max(0, min(limit, self.batch_limit))
        return [(r.local_id, r.text) for r in self.store.batch_after(min_id, limit)]

    def add_peer(self, peer_id: str) -> PeerState:
        existing = self.store.get_peer(peer_id)
        if existing is not None:
            return existing
        state = PeerState(peer_id=peer_id, reputation=self.reputation.initial)
        self.store.upsert_peer(state)
        return state

    def gossip_round(
        self,
        rng: random.Random,
        peer_clients: Mapping[str, PullClient],
        k: int | None = None,
    ) -> GossipRoundReport:
        """Pull from a random eligible peer subset and ingest what arrives.

        The cursor advances per fully processed batch; transport failures end
        that peer's pull without aborting the round.
        """
        fanout = self.fanout if k is None else k
        peers = sorted(self.store.list_peers(), key=lambda p: p.peer_id)
        eligible = [p for p in peers if p.reputation >= self.reputation.threshold]
        chosen = rng.sample(eligible, min(fanout, len(eligible)))
        reports: list[PeerRoundReport] = []
        for peer in chosen:
            report = PeerRoundReport(
                peer_id=peer.peer_id,
                cursor_before=peer.cursor,
                reputation_before=peer.reputation,
            )
            client = peer_clients.get(peer.peer_id)
            if client is None:
                report.errors.append("no client for peer")
                report.cursor_after = peer.cursor
                report.reputation_after = peer.reputation
                reports.append(report)
                continue
            cursor = peer.cursor
            valid = 0
            # bounded pull: a hostile peer must not stream forever in one round
            for _ in range(self.max_batches_per_pull):
                try:
                    batch = list(client(cursor, self.batch_limit))
                except Exception as exc:  # noqa: BLE001 - per-peer fault isolation
                    report.errors.append(str(exc))
                    break
                if not batch:
                    break
                highest = cursor
                for remote_id, text in batch:
                    if not isinstance(remote_id, int) or remote_id <= highest:
                        report.invalid += 1
                        report.delivered += 1
                        continue
                    highest = remote_id
                    result = self.ingest(text, source=f"{SOURCE_PEER}:{peer.peer_id}")
                    report.delivered += 1
                    if result.outcome == OUTCOME_STORED:
                        report.stored += 1
                        valid += 1
                    elif result.outcome == OUTCOME_DUPLICATE:
                        report.duplicates += 1
                        valid += 1
                    else:
                        report.invalid += 1
                if highest == cursor:
                    break  # peer made no forward progress; stop pulling
                cursor = highest
            peer.cursor = cursor
            peer.reputation = update_reputation(
                peer.reputation, report.delivered, valid, alpha=self.reputation.alpha
            )
            peer.last_pull = self._clock()
            peer.delivered += report.delivered
            peer.duplicates += report.duplicates
            peer.invalid += report.invalid
            self.store.upsert_peer(peer)
            report.cursor_after = cursor
            report.reputation_after = peer.reputation
            reports.append(report)
        return GossipRoundReport(selected=[p.peer_id for p in chosen], peers=reports)

    # -- verification upgrades ----------------------------------------------

    def confirm_from_domain(self, statement_hash: str, fetcher) -> bool:
        """Strict attribution: re-fetch the statement from its claimed domain."""
        record = self.store.get_by_hash(statement_hash)
        if record is None:
            raise KeyError(statement_hash)
        try:
            fetcher.fetch_statement_by_hash(record.publishing_domain, statement_hash)
        except ProtocolError as exc:
            logger.info("domain confirmation failed for %s: %s", statement_hash, exc)
            return False
        if record.verification_status == STATUS_UNVERIFIED:
            self.store.set_verification_status(statement_hash, STATUS_DOMAIN_CONFIRMED)
        return True

    def confirm_from_dns(self, statement_hash: str, resolver=None) -> str:
        """Upgrade to dns-confirmed when the domain publishes the hash in TXT."""
        from .dnstxt import STATE_CONFIRMED, verify_dns_txt

        record = self.store.get_by_hash(statement_hash)
        if record is None:
            raise KeyError(statement_hash)
        outcome = verify_dns_txt(record.publishing_domain, statement_hash, resolver=resolver)
        if outcome.state == STATE_CONFIRMED:
            self.store.set_verification_status(statement_hash, STATUS_DNS_CONFIRMED)
        return outcome.state

    # -- domain polling ------------------------------------------------------

    def poll_domain(self, fetcher, domain: str) -> list[IngestResult]:
        """Fetch a domain's statement file and ingest every entry."""
        statements, _meta = fetcher.fetch_statement_file(domain)
        return [
            self.ingest(text, source=f"{SOURCE_DOMAIN_FETCH}:{domain}")
            for text in statements
        ]

    # -- read views ----------------------------------------------------------

    def records(self) -> list[NodeRecord]:
        return list(self.store.iter_records())

    def effective_records(self) -> list[NodeRecord]:
        records = self.records()
        resolution = trust.resolve_supersession([(r.hash, r.parsed) for r in records])
        return [r for r in records if resolution.is_effective(r.hash)]

    def feed(
        self,
        *,
        kind: str | None = None,
        domain: str | None = None,
        tag: str | None = None,
        limit: int = 200,
    ) -> list[NodeRecord]:
        """Newest-first browsing view over stored records."""
        out = []
        for record in reversed(self.records()):
            if kind is not None and record.content_kind != kind:
                continue
            if domain is not None and record.publishing_domain != domain:
                continue
            if tag is not None and tag not in record.parsed.tags:
                continue
            out.append(record)
            if len(out) >= limit:
                break
        return out

    def trust_assessment(self, domain: str) -> trust.TrustAssessment:
        records = [(r.hash, r.parsed) for r in self.records()]
        return trust.assess_from_statements(domain, records)

    def poll_tally(self, poll_hash: str, eligibility=None) -> polls.Tally:
        poll_record = self.store.get_by_hash(poll_hash)
        if poll_record is None:
            raise KeyError(poll_hash)
        effective = self.effective_records()
        votes = [
            (r.hash, r.parsed)
            for r in effective
            if r.content_kind == typed.Vote.TYPE_LABEL
        ]
        return polls.tally((poll_record.hash, poll_record.parsed), votes, eligibility)

    def own_statements_text(self) -> str:
        texts = []
        for statement_hash in self.store.own_hashes():
            record = self.store.get_by_hash(statement_hash)
            if record is not None:
                texts.append(record.text)
        return join_statement_file(texts)
