"""Node core: ingestion, dedup, local IDs, pull serving, gossip, reputation."""

from __future__ import annotations

import random
import threading
from datetime import datetime, timedelta, timezone

import pytest

from conftest import corpus_text
from statenet.content import build_statement
from statenet.node import Node, update_reputation
from statenet.store import MemoryStore, SqliteStore

BASE = datetime(2027, 1, 1, tzinfo=timezone.utc)


def make_text(i: int, domain: str = "org.example") -> str:
    return build_statement(
        domain=domain,
        author="Org",
        content=f"Position number {i}.",
        time=BASE + timedelta(seconds=i),
    )


@pytest.fixture(params=["memory", "sqlite"])
def store(request, tmp_path):
    if request.param == "memory":
        return MemoryStore()
    return SqliteStore(str(tmp_path / "node.db"))


def test_ingest_assigns_monotone_ids(store):
    node = Node(store, own_domain="node.example")
    first = node.ingest(make_text(1))
    second = node.ingest(make_text(2))
    assert (first.outcome, first.local_id) == ("stored", 1)
    assert (second.outcome, second.local_id) == ("stored", 2)


def test_duplicate_ingest_is_noop(store):
    node = Node(store, own_domain="node.example")
    text = make_text(1)
    first = node.ingest(text)
    again = node.ingest(text)
    assert again.outcome == "duplicate"
    assert again.local_id == first.local_id
    assert node.store.count() == 1


def test_malformed_rejected(store):
    node = Node(store, own_domain="node.example")
    result = node.ingest("Publishing domain: broken")
    assert result.outcome == "rejected"
    assert result.reason.startswith("malformed")
    assert node.store.count() == 0


def test_oversize_rejected(store):
    node = Node(store, own_domain="node.example", max_statement_bytes=64)
    result = node.ingest(make_text(1))
    assert result.outcome == "rejected"
    assert result.reason == "too-large"


def test_unknown_type_stored_and_relayed(store):
    node = Node(store, own_domain="node.example")
    text = corpus_text("unknown_type")
    result = node.ingest(text)
    assert result.outcome == "stored"
    record = node.store.get_by_hash(result.hash)
    assert record.content_kind == "Treaty ratification"
    assert node.serve_pull(0, 10) == [(record.local_id, text)]


def test_serve_pull_pagination_matches_exhaustive_oracle(store):
    node = Node(store, own_domain="node.example")
    texts = [make_text(i) for i in range(25)]
    for text in texts:
        node.ingest(text)
    # oracle: the full suffix via one big read
    suffix = node.serve_pull(5, 10_000)
    paged = []
    cursor = 5
    while True:
        batch = node.serve_pull(cursor, 1)
        if not batch:
            break
        paged.extend(batch)
        cursor = batch[-1][0]
    assert paged == suffix
    assert [i for i, _ in paged] == list(range(6, 26))


def test_serve_pull_beyond_max_is_empty(store):
    node = Node(store, own_domain="node.example")
    node.ingest(make_text(1))
    assert node.serve_pull(1, 10) == []
    assert node.serve_pull(99, 10) == []


def test_domain_fetch_source_sets_domain_confirmed(store):
    node = Node(store, own_domain="node.example")
    text = make_text(1, domain="org.example")
    stored = node.ingest(text, source="domain-fetch:org.example")
    assert node.store.get_by_hash(stored.hash).verification_status == "domain-confirmed"
    other = node.ingest(make_text(2, domain="borrowed.example"), source="domain-fetch:org.example")
    assert node.store.get_by_hash(other.hash).verification_status == "unverified"


def test_publish_local_enforces_own_domain(store):
    node = Node(store, own_domain="node.example")
    good = build_statement(
        domain="node.example", author="Operator", content="Our stance.", time=BASE
    )
    result = node.publish_local(good)
    assert result.outcome == "stored"
    assert node.store.own_hashes() == [result.hash]
    assert node.own_statements_text() == good

    foreign = make_text(5, domain="other.example")
    rejected = node.publish_local(foreign)
    assert rejected.outcome == "rejected"
    assert "publishing domain" in rejected.reason


def test_update_reputation_examples():
    assert update_reputation(0.5, 10, 10) == pytest.approx(0.6)
    assert update_reputation(0.5, 0, 0) == 0.5
    reputation = 0.5
    rounds = 0
    while reputation >= 0.2:
        reputation = update_reputation(reputation, 10, 0)
        rounds += 1
    assert rounds == 5  # analytic: 0.8^n * 0.5 < 0.2 first at n = 5
    assert reputation == pytest.approx(0.5 * 0.8**5)


def test_two_node_sync():
    a = Node(MemoryStore(), own_domain="a.example")
    b = Node(MemoryStore(), own_domain="b.example")
    for i in range(5):
        a.ingest(make_text(i))
    b.add_peer("peer://a")
    report = b.gossip_round(random.Random(1), {"peer://a": a.serve_pull})
    assert report.stored_total == 5
    assert b.store.all_hashes() == a.store.all_hashes()
    assert b.store.get_peer("peer://a").cursor == 5
    # second round: nothing new, cursor stable, reputation unchanged (no deliveries)
    before = b.store.get_peer("peer://a").reputation
    b.gossip_round(random.Random(2), {"peer://a": a.serve_pull})
    peer = b.store.get_peer("peer://a")
    assert peer.cursor == 5
    assert peer.reputation == before


def test_gossip_transport_failure_does_not_advance_cursor():
    b = Node(MemoryStore(), own_domain="b.example")
    b.add_peer("peer://down")

    def failing(_min_id, _limit):
        raise ConnectionError("unreachable")

    report = b.gossip_round(random.Random(3), {"peer://down": failing})
    assert report.peers[0].errors
    assert b.store.get_peer("peer://down").cursor == 0


def test_gossip_partial_failure_keeps_completed_batches():
    a = Node(MemoryStore(), own_domain="a.example", batch_limit=2)
    b = Node(MemoryStore(), own_domain="b.example", batch_limit=2)
    for i in range(4):
        a.ingest(make_text(i))
    b.add_peer("peer://a")
    calls = {"n": 0}

    def flaky(min_id, limit):
        calls["n"] += 1
        if calls["n"] > 1:
            raise ConnectionError("dropped mid-sync")
        return a.serve_pull(min_id, limit)

    b.gossip_round(random.Random(4), {"peer://a": flaky})
    assert b.store.get_peer("peer://a").cursor == 2
    assert b.store.count() == 2
    # recovery: next round resumes from the durable cursor
    b.gossip_round(random.Random(5), {"peer://a": a.serve_pull})
    assert b.store.get_peer("peer://a").cursor == 4
    assert b.store.all_hashes() == a.store.all_hashes()


def test_malicious_peer_reputation_falls_and_is_dropped():
    # the peer streams garbage forever; the per-round batch cap bounds the pull
    node = Node(MemoryStore(), own_domain="n.example", max_batches_per_pull=3)
    node.add_peer("peer://evil")
    served = {"next": 1}

    def evil(min_id, limit):
        batch = [(served["next"] + i, f"garbage {min_id}-{i}") for i in range(10)]
        served["next"] += 10
        return batch

    rounds_selected = 0
    rng = random.Random(6)
    for _ in range(10):
        report = node.gossip_round(rng, {"peer://evil": evil})
        if report.selected:
            rounds_selected += 1
    assert rounds_selected == 5  # ineligible after exactly five all-invalid rounds
    assert node.store.get_peer("peer://evil").reputation < 0.2
    assert node.store.count() == 0


def test_peer_stats_accumulate():
    a = Node(MemoryStore(), own_domain="a.example")
    a.ingest(make_text(1))
    b = Node(MemoryStore(), own_domain="b.example")
    b.add_peer("peer://a")

    def mixed(min_id, limit):
        real = a.serve_pull(min_id, limit)
        if min_id == 0:
            return real + [(1000, "broken statement")]
        return []

    b.gossip_round(random.Random(7), {"peer://a": mixed})
    peer = b.store.get_peer("peer://a")
    assert peer.delivered == 2
    assert peer.invalid == 1


class StubFetcher:
    """Stands in for StatementFetcher in verification-upgrade tests."""

    def __init__(self, statements=None, by_hash=None, error=None):
        self.statements = statements or []
        self.by_hash = by_hash or {}
        self.error = error

    def fetch_statement_file(self, domain, force=False):
        from statenet.format import StatementFile

        return StatementFile(tuple(self.statements)), None

    def fetch_statement_by_hash(self, domain, statement_hash):
        if self.error is not None:
            raise self.error
        return self.by_hash[statement_hash]


def test_poll_domain_ingests_and_confirms(store):
    node = Node(store, own_domain="node.example")
    texts = [make_text(i, domain="org.example") for i in range(3)]
    results = node.poll_domain(StubFetcher(statements=texts), "org.example")
    assert [r.outcome for r in results] == ["stored"] * 3
    for result in results:
        record = node.store.get_by_hash(result.hash)
        assert record.verification_status == "domain-confirmed"
        assert record.source == "domain-fetch:org.example"


def test_confirm_from_domain_upgrades_peer_sourced_statement(store):
    from statenet.errors import HashMismatch

    node = Node(store, own_domain="node.example")
    text = make_text(1, domain="org.example")
    result = node.ingest(text, source="peer:http://p")
    assert node.store.get_by_hash(result.hash).verification_status == "unverified"

    ok = node.confirm_from_domain(result.hash, StubFetcher(by_hash={result.hash: text}))
    assert ok is True
    assert node.store.get_by_hash(result.hash).verification_status == "domain-confirmed"

    other = node.ingest(make_text(2, domain="org.example"), source="peer:http://p")
    failed = node.confirm_from_domain(
        other.hash, StubFetcher(error=HashMismatch("tampered"))
    )
    assert failed is False
    assert node.store.get_by_hash(other.hash).verification_status == "unverified"


def test_confirm_from_dns_upgrades_status(store):
    node = Node(store, own_domain="node.example")
    result = node.ingest(make_text(1, domain="org.example"), source="peer:http://p")
    state = node.confirm_from_dns(result.hash, resolver=lambda name: [result.hash])
    assert state == "confirmed"
    assert node.store.get_by_hash(result.hash).verification_status == "dns-confirmed"

    second = node.ingest(make_text(2, domain="org.example"), source="peer:http://p")
    state = node.confirm_from_dns(second.hash, resolver=lambda name: [])
    assert state == "absent"
    assert node.store.get_by_hash(second.hash).verification_status == "unverified"


def test_concurrent_ingest_never_duplicates_and_stays_gapless(store):
    node = Node(store, own_domain="node.example")
    texts = [make_text(i) for i in range(40)]
    errors = []

    def worker():
        rng = random.Random(threading.get_ident())
        for text in rng.sample(texts, len(texts)):
            try:
                node.ingest(text)
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert node.store.count() == len(texts)
    ids = [r.local_id for r in node.store.iter_records()]
    assert ids == list(range(1, len(texts) + 1))
