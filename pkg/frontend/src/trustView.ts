// Trust page view model over the node's assessment JSON.

import type { TrustResponse } from "./types.js";

export interface TrustModel {
  domain: string;
  aggregateConfidence: number;
  aggregatePercent: string;
  edges: TrustResponse["edges"];
  disputes: TrustResponse["disputes"];
  ratings: { quality: string; meanStars: number; count: number }[];
}

export function buildTrustModel(assessment: TrustResponse): TrustModel {
  return {
    domain: assessment.domain,
    aggregateConfidence: assessment.aggregate_confidence,
    aggregatePercent: `${(assessment.aggregate_confidence * 100).toFixed(1)}%`,
    edges: assessment.edges,
    disputes: assessment.disputes,
    ratings: Object.entries(assessment.ratings).map(([quality, summary]) => ({
      quality,
      meanStars: summary.mean_stars,
      count: summary.count,
    })),
  };
}
