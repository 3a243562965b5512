"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line per
criterion.
"""

from __future__ import annotations

import math
import random
import time
from contextlib import contextmanager
import httpx
import pytest

from conftest import CORPUS_DIR, CORPUS_HASHES, EMPTY_INPUT_HASH, corpus_text
from statenet import format as fmt
from statenet import polls, trust
from statenet.errors import (
    BadStatus,
    BodyTooLarge,
    BomPresent,
    HashMismatch,
    MalformedEnvelope,
    WrongContentType,
)
from statenet.fetch import StatementFetcher
from statenet.node import Node, update_reputation
from statenet.sim import run_simulation
from statenet.store import MemoryStore

BASE64URL_ALPHABET = set(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_"
)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    else:
        print(f"PASS  {name}")


def test_format_conformance_golden_corpus():
    with criterion("format conformance: golden corpus round-trip + hash-named files"):
        started = time.monotonic()
        files = sorted(CORPUS_DIR.glob("*.txt"))
        assert len(files) >= 13
        kinds = set()
        for path in files:
            data = path.read_bytes()
            text = data.decode("utf-8")
            statement = fmt.parse_statement(text)
            assert fmt.serialize_statement(statement) == text  # byte identity
            assert fmt.hash_statement(text) == path.stem  # name equals hash
            from statenet.content import content_kind, parse_content

            kinds.add(content_kind(parse_content(statement.content)))
        # every typed payload plus plain and an unknown type is covered
        assert kinds >= {
            "Organisation verification", "Person verification", "Sign PDF",
            "Poll", "Vote", "Response", "Bounty", "Boycott",
            "Dispute statement authenticity", "Dispute statement content",
            "Rating", "Plain", "Treaty ratification",
        }
        assert corpus_text("sign_pdf") in {p.read_text(encoding="utf-8") for p in files}
        elapsed = time.monotonic() - started
        assert elapsed < 1.0, f"conformance run took {elapsed:.2f}s"


def test_hash_oracle_pinned_values():
    with criterion("hash oracle: pinned independent hashes incl. empty input"):
        assert fmt.hash_bytes(b"") == EMPTY_INPUT_HASH
        assert fmt.hash_statement("", require_canonical=False) == EMPTY_INPUT_HASH
        for name, pinned in CORPUS_HASHES.items():
            value = fmt.hash_statement(corpus_text(name))
            assert value == pinned, name
            assert len(value) == 43
            assert set(value) <= BASE64URL_ALPHABET
        rng = random.Random(1009)
        for _ in range(1000):
            value = fmt.hash_bytes(rng.getrandbits(256).to_bytes(32, "big"))
            assert len(value) == 43
            assert set(value) <= BASE64URL_ALPHABET


def test_confidence_math():
    with criterion("confidence math: 0.992 example + 1e4 random property checks"):
        assert abs(trust.aggregate_confidence([0.8, 0.8, 0.8]) - 0.992) < 1e-12
        rng = random.Random(4242)
        for _ in range(10_000):
            values = [rng.random() for _ in range(rng.randint(0, 10))]
            combined = trust.aggregate_confidence(values)
            assert 0.0 <= combined <= 1.0
            shuffled = values[:]
            rng.shuffle(shuffled)
            assert trust.aggregate_confidence(shuffled) == pytest.approx(combined)
            assert trust.aggregate_confidence(values + [rng.random()]) >= combined - 1e-15
            assert combined == pytest.approx(1.0 - math.prod(1.0 - v for v in values))


def test_supersession_oracle_equivalence():
    from test_trust import _oracle_statuses, _random_instance

    with criterion("supersession: oracle equivalence on 500 random graphs + cycle flags"):
        rng = random.Random(60601)
        cycle_seen = False
        for _ in range(500):
            records = _random_instance(rng)
            result = trust.resolve_supersession(records)
            expected = _oracle_statuses(records)
            assert result.statuses == expected
            if trust.SupersessionStatus.FLAGGED_CYCLE in expected.values():
                cycle_seen = True
        assert cycle_seen, "instance generator never produced a cycle"


def test_tally_oracle_equivalence():
    from test_polls import _oracle_recount, _random_poll_instance

    with criterion("tally: recount equivalence on 500 random polls + order invariance"):
        rng = random.Random(271828)
        for index in range(500):
            poll, votes = _random_poll_instance(rng)
            result = polls.tally(poll, votes)
            counts, flagged = _oracle_recount(poll, votes)
            assert result.counts == {o: counts.get(o, 0) for o in result.counts}
            assert set(result.flagged_domains) == flagged
            assert result.total_votes + len(result.rejected) == len(votes)
            if index % 50 == 0:
                for _ in range(10):
                    shuffled = votes[:]
                    rng.shuffle(shuffled)
                    assert polls.tally(poll, shuffled) == result


def test_gossip_convergence_100_seeds():
    with criterion("gossip: 8 nodes, 100 statements, 100/100 seeds converge <= 50 rounds"):
        started = time.monotonic()
        for seed in range(100):
            report = run_simulation(
                nodes=8, statements=100, max_rounds=50, seed=seed
            )
            assert report.converged_round is not None, f"seed {seed} did not converge"
            assert report.converged_round <= 50
            assert all(size == 100 for size in report.rounds[-1].store_sizes)
        elapsed = time.monotonic() - started
        assert elapsed < 30.0, f"simulation took {elapsed:.1f}s"


def test_reputation_ineligibility_after_exactly_five_rounds():
    with criterion("reputation: all-invalid peer ineligible after exactly 5 rounds"):
        reputation = 0.5
        for round_number in range(1, 6):
            assert reputation >= 0.2  # still eligible entering the round
            reputation = update_reputation(reputation, delivered=10, valid=0)
            if round_number < 5:
                assert reputation >= 0.2
        assert reputation < 0.2
        assert reputation == pytest.approx(0.5 * 0.8**5)

        # end to end: the node stops selecting the peer after round 5
        node = Node(MemoryStore(), own_domain="n.example", max_batches_per_pull=2)
        node.add_peer("peer://evil")
        served = {"next": 1}

        def evil(_min_id, _limit):
            batch = [(served["next"] + i, "garbage") for i in range(5)]
            served["next"] += 5
            return batch

        selected_rounds = 0
        rng = random.Random(99)
        for _ in range(10):
            report = node.gossip_round(rng, {"peer://evil": evil})
            if report.selected:
                selected_rounds += 1
        assert selected_rounds == 5


def test_transport_enforcement_fixture_matrix():
    with criterion("transport: content-type/BOM/CRLF/oversize/hash-mismatch enforced"):
        text_plain = "text/plain; charset=utf-8"
        good_text = corpus_text("sign_pdf")
        good_hash = fmt.hash_statement(good_text)
        tampered = good_text.replace("Ministry", "Majestic")
        crlf_body = corpus_text("plain_inline").replace("\n", "\r\n")

        def handler(request: httpx.Request) -> httpx.Response:
            path = request.url.path
            host = request.url.host
            if host == "good.example" and path == "/.well-known/statements.txt":
                return httpx.Response(
                    200, content=good_text.encode() + b"\n",
                    headers={"content-type": text_plain},
                )
            if host == "wrongtype.example":
                return httpx.Response(
                    200, content=good_text.encode(), headers={"content-type": "text/html"}
                )
            if host == "bom.example":
                return httpx.Response(
                    200, content=b"\xef\xbb\xbf" + good_text.encode(),
                    headers={"content-type": text_plain},
                )
            if host == "crlf.example":
                return httpx.Response(
                    200, content=crlf_body.encode(), headers={"content-type": text_plain}
                )
            if host == "oversize.example":
                return httpx.Response(
                    200, content=b"y" * (5 * 1024 * 1024 + 1),
                    headers={"content-type": text_plain},
                )
            if host == "tamper.example":
                return httpx.Response(
                    200, content=tampered.encode(), headers={"content-type": text_plain}
                )
            return httpx.Response(404)

        fetcher = StatementFetcher(
            transport=httpx.MockTransport(handler), min_poll_interval=0.0
        )
        statements, _ = fetcher.fetch_statement_file("good.example")
        assert list(statements) == [good_text]
        with pytest.raises(WrongContentType):
            fetcher.fetch_statement_file("wrongtype.example")
        with pytest.raises(BomPresent):
            fetcher.fetch_statement_file("bom.example")
        crlf_statements, _ = fetcher.fetch_statement_file("crlf.example")
        with pytest.raises(MalformedEnvelope):
            fmt.parse_statement(crlf_statements.statements[0])
        with pytest.raises(BodyTooLarge):
            fetcher.fetch_statement_file("oversize.example")
        with pytest.raises(HashMismatch):
            fetcher.fetch_statement_by_hash("tamper.example", good_hash)
        with pytest.raises(BadStatus):
            fetcher.fetch_statement_by_hash("good.example", fmt.hash_bytes(b"missing"))
        fetcher.close()


def test_node_durability_kill_restart(tmp_path):
    from test_store import run_kill_restart_check

    with criterion("durability: SIGKILL mid-ingestion preserves store, ids, cursors"):
        run_kill_restart_check(tmp_path, kill_after=30)
