// JSON shapes served by the node API (schema_version 1).

export interface InfoResponse {
  schema_version: number;
  domain: string;
  statements: number;
  max_id: number;
  peers: number;
}

export interface FeedEntry {
  id: number;
  hash: string;
  publishing_domain: string;
  author: string;
  representative: string | null;
  time: string;
  tags: string[];
  superseded_statement: string | null;
  content_kind: string;
  content: Record<string, unknown>;
  content_hash: string;
  verification_status: string;
  source: string;
  text: string;
}

export interface FeedResponse {
  schema_version: number;
  statements: FeedEntry[];
}

export interface PollInfo {
  hash: string;
  publishing_domain: string;
  question: string;
  options: string[];
  voting_deadline: string;
}

export interface PollIndexResponse {
  schema_version: number;
  polls: PollInfo[];
}

export interface RejectedVote {
  vote_hash: string;
  reason: string;
  domain: string | null;
}

export interface TallyResponse {
  schema_version: number;
  poll_hash: string;
  counts: Record<string, number>;
  total_votes: number;
  rejected: RejectedVote[];
  qualified_counts: Record<string, number> | null;
  flagged_domains: string[];
}

export interface TrustEdge {
  verifier_domain: string;
  subject_domain: string;
  subject_name: string;
  confidence: number;
  statement_hash: string;
  time: string;
}

export interface TrustDispute {
  dispute_hash: string;
  disputed_hash: string;
  kind: string;
  disputer_domain: string;
  time: string;
}

export interface TrustResponse {
  schema_version: number;
  domain: string;
  aggregate_confidence: number;
  edges: TrustEdge[];
  disputes: TrustDispute[];
  ratings: Record<string, { mean_stars: number; count: number }>;
}

export interface PreviewRequest {
  kind: string;
  envelope: {
    domain?: string;
    author: string;
    time?: string;
    tags?: string;
    representative?: string;
    superseded?: string;
  };
  fields: Record<string, unknown>;
}

export interface PreviewResponse {
  schema_version: number;
  text: string;
  hash: string;
}

export interface PublishResponse {
  schema_version: number;
  outcome: "stored" | "duplicate";
  hash: string;
  id: number | null;
}
