"""JSON projections shared by the HTTP API and the CLI.

These shapes are part of the external interface; they carry a schema_version
so downstream tooling can detect changes.
"""

from __future__ import annotations

from . import content as typed
from .format import format_timestamp, hash_bytes
from .polls import Tally
from .store import NodeRecord
from .trust import TrustAssessment

SCHEMA_VERSION = 1


def feed_entry(record: NodeRecord) -> dict:
    statement = record.parsed
    decoded = typed.parse_content(statement.content)
    return {
        "id": record.local_id,
        "hash": record.hash,
        "publishing_domain": statement.publishing_domain,
        "author": statement.author,
        "representative": statement.representative,
        "time": format_timestamp(statement.time),
        "tags": list(statement.tags),
        "superseded_statement": statement.superseded_statement,
        "content_kind": record.content_kind,
        "content": typed.content_fields(decoded),
        "content_hash": hash_bytes(statement.content.encode("utf-8")),
        "verification_status": record.verification_status,
        "source": record.source,
        "text": record.text,
    }


def tally_json(tally: Tally) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "poll_hash": tally.poll_hash,
        "counts": tally.counts,
        "total_votes": tally.total_votes,
        "rejected": [
            {"vote_hash": r.vote_hash, "reason": r.reason, "domain": r.domain}
            for r in tally.rejected
        ],
        "qualified_counts": tally.qualified_counts,
        "flagged_domains": list(tally.flagged_domains),
    }


def assessment_json(assessment: TrustAssessment) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "domain": assessment.subject_domain,
        "aggregate_confidence": assessment.aggregate_confidence,
        "edges": [
            {
                "verifier_domain": e.verifier_domain,
                "subject_domain": e.subject_domain,
                "subject_name": e.subject_name,
                "confidence": e.confidence,
                "statement_hash": e.statement_hash,
                "time": format_timestamp(e.time),
            }
            for e in assessment.contributing_edges
        ],
        "disputes": [
            {
                "dispute_hash": d.dispute_hash,
                "disputed_hash": d.disputed_hash,
                "kind": d.kind,
                "disputer_domain": d.disputer_domain,
                "time": format_timestamp(d.time),
            }
            for d in assessment.active_disputes
        ],
        "ratings": {
            quality: {"mean_stars": summary.mean_stars, "count": summary.count}
            for quality, summary in assessment.mean_stars.items()
        },
    }
