"""Deterministic poll tallying under deadline and one-vote-per-domain rules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from . import content as typed
from .errors import NotAPoll
from .format import Statement

REASON_WRONG_POLL = "wrong-poll"
REASON_AFTER_DEADLINE = "after-deadline"
REASON_UNKNOWN_OPTION = "unknown-option"
REASON_DUPLICATE_OLDER = "duplicate-older"
REASON_TIED_TIMESTAMP = "tied-timestamp"
REASON_MALFORMED = "malformed"


@dataclass(frozen=True)
class RejectedVote:
    vote_hash: str
    reason: str
    domain: str | None = None


@dataclass(frozen=True)
class Tally:
    poll_hash: str
    counts: dict[str, int]  # option text -> accepted votes, in poll option order
    total_votes: int
    rejected: tuple[RejectedVote, ...]
    qualified_counts: dict[str, int] | None = None
    flagged_domains: tuple[str, ...] = ()


def tally(
    poll_record: tuple[str, Statement],
    votes: Sequence[tuple[str, Statement]],
    eligibility: Callable[[str], bool] | None = None,
) -> Tally:
    """Count one vote per publishing domain against a poll.

    The latest vote with time <= deadline wins per domain; earlier votes are
    rejected as duplicates and two votes tied on the latest timestamp reject
    both and flag the domain. The result is a pure function of the inputs and
    invariant under permutation of ``votes``.
    """
    poll_hash, poll_statement = poll_record
    decoded = typed.parse_content(poll_statement.content)
    if not isinstance(decoded, typed.Poll):
        raise NotAPoll(f"statement {poll_hash} does not carry Poll content")
    deadline = decoded.voting_deadline
    options = decoded.options

    rejected: list[RejectedVote] = []
    candidates: dict[str, list[tuple]] = {}  # domain -> [(time, hash, option)]
    for vote_hash, statement in votes:
        domain = statement.publishing_domain
        try:
            vote = typed.parse_content(statement.content)
        except Exception:
            rejected.append(RejectedVote(vote_hash, REASON_MALFORMED, domain))
            continue
        if not isinstance(vote, typed.Vote):
            rejected.append(RejectedVote(vote_hash, REASON_MALFORMED, domain))
            continue
        if vote.poll_hash != poll_hash:
            rejected.append(RejectedVote(vote_hash, REASON_WRONG_POLL, domain))
            continue
        if statement.time > deadline:
            rejected.append(RejectedVote(vote_hash, REASON_AFTER_DEADLINE, domain))
            continue
        if vote.option not in options:
            rejected.append(RejectedVote(vote_hash, REASON_UNKNOWN_OPTION, domain))
            continue
        candidates.setdefault(domain, []).append((statement.time, vote_hash, vote.option))

    counts = {option: 0 for option in options}
    flagged: list[str] = []
    qualified = {option: 0 for option in options} if eligibility is not None else None
    for domain in sorted(candidates):
        entries = sorted(candidates[domain])  # by (time, hash) for determinism
        latest_time = entries[-1][0]
        tied = [e for e in entries if e[0] == latest_time]
        older = [e for e in entries if e[0] != latest_time]
        for _, vote_hash, _ in older:
            rejected.append(RejectedVote(vote_hash, REASON_DUPLICATE_OLDER, domain))
        if len(tied) > 1:
            flagged.append(domain)
            for _, vote_hash, _ in tied:
                rejected.append(RejectedVote(vote_hash, REASON_TIED_TIMESTAMP, domain))
            continue
        winner_option = tied[0][2]
        counts[winner_option] += 1
        if qualified is not None and eligibility(domain):
            qualified[winner_option] += 1

    return Tally(
        poll_hash=poll_hash,
        counts=counts,
        total_votes=sum(counts.values()),
        rejected=tuple(sorted(rejected, key=lambda r: r.vote_hash)),
        qualified_counts=qualified,
        flagged_domains=tuple(flagged),
    )
