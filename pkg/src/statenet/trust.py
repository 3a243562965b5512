"""Web-of-trust aggregation: supersession, verification edges, assessments.

Aggregate identity confidence over independent verifications is
``1 - prod(1 - c_i)``. Disputes never change the number; they ride along as
first-class flags for the caller to judge.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Iterable, Sequence

from . import content as typed
from .errors import OutOfRangeConfidence
from .format import Statement

logger = logging.getLogger(__name__)


def aggregate_confidence(confidences: Iterable[float]) -> float:
    """Combined confidence of independent verifications: 1 - prod(1 - c)."""
    values = list(confidences)
    for c in values:
        if not isinstance(c, (int, float)) or math.isnan(c) or not 0.0 <= c <= 1.0:
            raise OutOfRangeConfidence(f"confidence must lie in [0, 1], got {c!r}")
    return 1.0 - math.prod(1.0 - c for c in values)


class SupersessionStatus(Enum):
    EFFECTIVE = "effective"
    SUPERSEDED = "superseded"
    FLAGGED_CYCLE = "flagged-cycle"


@dataclass(frozen=True)
class SupersessionResult:
    """Partition of a statement set into effective / superseded / cycle-flagged."""

    statuses: dict[str, SupersessionStatus]
    effective: tuple[tuple[str, Statement], ...]

    def is_effective(self, statement_hash: str) -> bool:
        return self.statuses.get(statement_hash) is SupersessionStatus.EFFECTIVE


def resolve_supersession(
    statements: Sequence[tuple[str, Statement]],
) -> SupersessionResult:
    """Resolve which statements remain effective after revocations.

    A statement is superseded when another statement from the same publishing
    domain names its hash in `Superseded statement`. Claimed timestamps do not
    gate revocation (they are self-reported). Reference cycles, which cannot
    arise from honestly computed hashes, mark every member as flagged.
    Cross-domain supersession attempts are ignored and logged.
    """
    by_hash: dict[str, Statement] = {}
    order: list[str] = []
    for statement_hash, statement in statements:
        if statement_hash not in by_hash:
            by_hash[statement_hash] = statement
            order.append(statement_hash)

    supersedes: dict[str, str] = {}  # superseding hash -> superseded hash
    for statement_hash in order:
        statement = by_hash[statement_hash]
        target = statement.superseded_statement
        if target is None or target not in by_hash or target == statement_hash:
            continue
        if by_hash[target].publishing_domain != statement.publishing_domain:
            logger.info(
                "ignoring cross-domain supersession: %s (%s) -> %s (%s)",
                statement_hash,
                statement.publishing_domain,
                target,
                by_hash[target].publishing_domain,
            )
            continue
        supersedes[statement_hash] = target

    superseded = set(supersedes.values())

    # Each node has at most one outgoing edge, so cycle members are exactly
    # the nodes whose chain of references returns to themselves.
    cycle_members: set[str] = set()
    resolved: dict[str, bool] = {}
    for start in order:
        if start in resolved:
            continue
        path: list[str] = []
        seen_at: dict[str, int] = {}
        node = start
        while node is not None and node not in resolved and node not in seen_at:
            seen_at[node] = len(path)
            path.append(node)
            node = supersedes.get(node)
        on_cycle = False
        cycle_start = len(path)
        if node is not None and node in seen_at:
            cycle_start = seen_at[node]
            on_cycle = True
        elif node is not None and resolved.get(node, False):
            on_cycle = False  # tail into an already-resolved chain; cycle flag not inherited
        for position, member in enumerate(path):
            in_cycle = on_cycle and position >= cycle_start
            resolved[member] = in_cycle
            if in_cycle:
                cycle_members.add(member)

    statuses: dict[str, SupersessionStatus] = {}
    effective: list[tuple[str, Statement]] = []
    for statement_hash in order:
        if statement_hash in cycle_members:
            statuses[statement_hash] = SupersessionStatus.FLAGGED_CYCLE
        elif statement_hash in superseded:
            statuses[statement_hash] = SupersessionStatus.SUPERSEDED
        else:
            statuses[statement_hash] = SupersessionStatus.EFFECTIVE
            effective.append((statement_hash, by_hash[statement_hash]))
    return SupersessionResult(statuses=statuses, effective=tuple(effective))


@dataclass(frozen=True)
class VerificationEdge:
    verifier_domain: str
    subject_domain: str
    subject_name: str
    confidence: float
    statement_hash: str
    time: datetime


@dataclass(frozen=True)
class DisputeNotice:
    dispute_hash: str
    disputed_hash: str
    kind: str  # "authenticity" | "content"
    disputer_domain: str
    time: datetime


@dataclass(frozen=True)
class RatingEntry:
    rater_domain: str
    subject_domain: str
    subject_name: str
    quality: str
    stars: int
    statement_hash: str
    time: datetime


@dataclass(frozen=True)
class QualitySummary:
    mean_stars: float
    count: int


@dataclass(frozen=True)
class TrustAssessment:
    subject_domain: str
    aggregate_confidence: float
    contributing_edges: tuple[VerificationEdge, ...]
    active_disputes: tuple[DisputeNotice, ...]
    mean_stars: dict[str, QualitySummary] = field(default_factory=dict)


def extract_verification_edges(
    effective: Sequence[tuple[str, Statement]],
) -> list[VerificationEdge]:
    """Verification edges from effective statements; self-verifications dropped.

    Organisation and person verifications both contribute edges keyed by the
    verified domain; the aggregation formula treats them alike.
    """
    edges: list[VerificationEdge] = []
    for statement_hash, statement in effective:
        decoded = typed.parse_content(statement.content)
        if isinstance(decoded, (typed.OrganisationVerification, typed.PersonVerification)):
            if decoded.domain_owned == statement.publishing_domain:
                continue  # self-verification carries zero weight
            edges.append(
                VerificationEdge(
                    verifier_domain=statement.publishing_domain,
                    subject_domain=decoded.domain_owned,
                    subject_name=decoded.name,
                    confidence=decoded.confidence_value,
                    statement_hash=statement_hash,
                    time=statement.time,
                )
            )
    return edges


def extract_disputes(
    effective: Sequence[tuple[str, Statement]], subject_domain: str
) -> list[DisputeNotice]:
    """Disputes whose target is a statement published by ``subject_domain``."""
    subject_hashes = {
        h for h, s in effective if s.publishing_domain == subject_domain
    }
    notices: list[DisputeNotice] = []
    for statement_hash, statement in effective:
        decoded = typed.parse_content(statement.content)
        if isinstance(decoded, typed.DisputeAuthenticity):
            kind = "authenticity"
        elif isinstance(decoded, typed.DisputeContent):
            kind = "content"
        else:
            continue
        if decoded.statement_hash in subject_hashes:
            notices.append(
                DisputeNotice(
                    dispute_hash=statement_hash,
                    disputed_hash=decoded.statement_hash,
                    kind=kind,
                    disputer_domain=statement.publishing_domain,
                    time=statement.time,
                )
            )
    return notices


def extract_ratings(effective: Sequence[tuple[str, Statement]]) -> list[RatingEntry]:
    entries: list[RatingEntry] = []
    for statement_hash, statement in effective:
        decoded = typed.parse_content(statement.content)
        if isinstance(decoded, typed.Rating):
            entries.append(
                RatingEntry(
                    rater_domain=statement.publishing_domain,
                    subject_domain=decoded.subject_domain,
                    subject_name=decoded.subject_name,
                    quality=decoded.quality,
                    stars=decoded.stars,
                    statement_hash=statement_hash,
                    time=statement.time,
                )
            )
    return entries


def _latest(items, key_fn):
    """Keep the newest item per key; (time, statement_hash) breaks ties."""
    best = {}
    for item in items:
        key = key_fn(item)
        current = best.get(key)
        if current is None or (item.time, item.statement_hash) > (
            current.time,
            current.statement_hash,
        ):
            best[key] = item
    return best


def assess_domain(
    subject_domain: str,
    edges: Sequence[VerificationEdge],
    disputes: Sequence[DisputeNotice] = (),
    ratings: Sequence[RatingEntry] = (),
) -> TrustAssessment:
    """Aggregate trust inputs for one domain.

    One edge per verifier counts (latest wins); disputes are attached without
    touching the number; star ratings average per quality label, one rating
    per rater and quality.
    """
    relevant = [
        e
        for e in edges
        if e.subject_domain == subject_domain and e.verifier_domain != subject_domain
    ]
    per_verifier = _latest(relevant, lambda e: e.verifier_domain)
    contributing = tuple(
        sorted(per_verifier.values(), key=lambda e: (e.verifier_domain, e.statement_hash))
    )
    aggregate = aggregate_confidence(e.confidence for e in contributing)

    relevant_ratings = [
        r
        for r in ratings
        if r.subject_domain == subject_domain and r.rater_domain != subject_domain
    ]
    per_rater = _latest(relevant_ratings, lambda r: (r.rater_domain, r.quality))
    by_quality: dict[str, list[int]] = {}
    for entry in per_rater.values():
        by_quality.setdefault(entry.quality, []).append(entry.stars)
    means = {
        quality: QualitySummary(mean_stars=sum(stars) / len(stars), count=len(stars))
        for quality, stars in sorted(by_quality.items())
    }

    return TrustAssessment(
        subject_domain=subject_domain,
        aggregate_confidence=aggregate,
        contributing_edges=contributing,
        active_disputes=tuple(
            sorted(disputes, key=lambda d: (d.time, d.dispute_hash))
        ),
        mean_stars=means,
    )


def assess_from_statements(
    subject_domain: str, statements: Sequence[tuple[str, Statement]]
) -> TrustAssessment:
    """Convenience: resolve supersession, extract inputs, and assess."""
    effective = resolve_supersession(statements).effective
    return assess_domain(
        subject_domain,
        extract_verification_edges(effective),
        extract_disputes(effective, subject_domain),
        extract_ratings(effective),
    )
