// Feed grouping: identical statement content, published by several domains,
// collapses into one consensus group keyed by the content block's hash.

import type { FeedEntry } from "./types.js";

export interface ContentGroup {
  contentHash: string;
  contentKind: string;
  domains: string[];
  entries: FeedEntry[];
}

export function groupByContentHash(entries: FeedEntry[]): ContentGroup[] {
  const groups = new Map<string, ContentGroup>();
  for (const entry of entries) {
    let group = groups.get(entry.content_hash);
    if (!group) {
      group = {
        contentHash: entry.content_hash,
        contentKind: entry.content_kind,
        domains: [],
        entries: [],
      };
      groups.set(entry.content_hash, group);
    }
    group.entries.push(entry);
    if (!group.domains.includes(entry.publishing_domain)) {
      group.domains.push(entry.publishing_domain);
    }
  }
  return [...groups.values()];
}
