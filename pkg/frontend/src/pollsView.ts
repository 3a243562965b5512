// Poll dashboard view model: everything displayed is computed from the
// node's tally JSON, never recounted in the browser.

import type { PollInfo, TallyResponse } from "./types.js";

export interface OptionBar {
  option: string;
  count: number;
  fraction: number; // of total accepted votes; 0 when no votes
}

export interface PollDashboard {
  pollHash: string;
  question: string;
  publishingDomain: string;
  deadline: string;
  millisecondsRemaining: number | null;
  closed: boolean;
  bars: OptionBar[];
  totalVotes: number;
  rejected: TallyResponse["rejected"];
  flaggedDomains: string[];
  qualifiedCounts: Record<string, number> | null;
}

export function buildPollDashboard(
  poll: PollInfo,
  tally: TallyResponse,
  now: Date,
): PollDashboard {
  const deadlineMs = Date.parse(poll.voting_deadline);
  const remaining = Number.isNaN(deadlineMs) ? null : deadlineMs - now.getTime();
  const total = tally.total_votes;
  const bars = poll.options.map((option) => {
    const count = tally.counts[option] ?? 0;
    return { option, count, fraction: total > 0 ? count / total : 0 };
  });
  return {
    pollHash: tally.poll_hash,
    question: poll.question,
    publishingDomain: poll.publishing_domain,
    deadline: poll.voting_deadline,
    millisecondsRemaining: remaining,
    closed: remaining !== null && remaining <= 0,
    bars,
    totalVotes: total,
    rejected: tally.rejected,
    flaggedDomains: tally.flagged_domains,
    qualifiedCounts: tally.qualified_counts,
  };
}

export function formatCountdown(millisecondsRemaining: number | null): string {
  if (millisecondsRemaining === null) return "unknown deadline";
  if (millisecondsRemaining <= 0) return "voting closed";
  const totalSeconds = Math.floor(millisecondsRemaining / 1000);
  const days = Math.floor(totalSeconds / 86_400);
  const hours = Math.floor((totalSeconds % 86_400) / 3600);
  const minutes = Math.floor((totalSeconds % 3600) / 60);
  if (days > 0) return `${days}d ${hours}h remaining`;
  if (hours > 0) return `${hours}h ${minutes}m remaining`;
  return `${minutes}m remaining`;
}
