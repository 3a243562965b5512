// Poll dashboards must display exactly the node's tally JSON for every
// fixture poll; the browser never recounts.

import { describe, expect, it } from "vitest";

import { NodeApi } from "../src/api.js";
import { buildPollDashboard, formatCountdown } from "../src/pollsView.js";
import { baseUrl, fixtures } from "./helpers.js";

describe("poll dashboard fidelity", () => {
  it("mirrors the tally JSON for all fixture polls", async () => {
    const api = new NodeApi(baseUrl());
    const index = await api.polls();
    const pinned = fixtures();
    expect(pinned.polls.length).toBe(10);
    const byHash = new Map(index.polls.map((poll) => [poll.hash, poll]));
    for (const fixture of pinned.polls) {
      const poll = byHash.get(fixture.hash);
      expect(poll, `poll ${fixture.hash} missing from index`).toBeDefined();
      const tally = await api.tally(fixture.hash);
      const dashboard = buildPollDashboard(poll!, tally, new Date());

      // dashboard numbers are the tally numbers, option for option
      expect(dashboard.totalVotes).toBe(tally.total_votes);
      for (const bar of dashboard.bars) {
        expect(bar.count).toBe(tally.counts[bar.option] ?? 0);
      }
      const barTotal = dashboard.bars.reduce((sum, bar) => sum + bar.count, 0);
      expect(barTotal).toBe(tally.total_votes);
      expect(dashboard.rejected).toEqual(tally.rejected);
      expect(dashboard.flaggedDomains).toEqual(tally.flagged_domains);
    }
  });

  it("shows rejection reasons from the node", async () => {
    const api = new NodeApi(baseUrl());
    const pinned = fixtures();
    const tally = await api.tally(pinned.polls[0]!.hash);
    const reasons = new Set(tally.rejected.map((reject) => reject.reason));
    expect(reasons.has("after-deadline")).toBe(true);
    expect(reasons.has("duplicate-older")).toBe(true);
    expect(reasons.has("tied-timestamp")).toBe(true);
  });

  it("formats countdowns for open and closed polls", () => {
    expect(formatCountdown(-5)).toBe("voting closed");
    expect(formatCountdown(90_000)).toBe("1m remaining");
    expect(formatCountdown(3 * 86_400_000 + 7_200_000)).toBe("3d 2h remaining");
    expect(formatCountdown(null)).toBe("unknown deadline");
  });
});
