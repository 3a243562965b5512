// Compose flow plumbing: assemble /api/preview requests from form values.
//
// The canonical text and hash shown in the preview pane always come from the
// node; the browser only collects fields.

import { fieldsForPreview, type TypeSchema } from "./schema.js";
import type { PreviewRequest } from "./types.js";

export interface EnvelopeValues {
  domain: string;
  author: string;
  time: string;
  tags: string;
  representative: string;
  superseded: string;
}

export const EMPTY_ENVELOPE: EnvelopeValues = {
  domain: "",
  author: "",
  time: "",
  tags: "",
  representative: "",
  superseded: "",
};

export function buildPreviewRequest(
  schema: TypeSchema,
  envelope: EnvelopeValues,
  values: Record<string, string>,
): PreviewRequest {
  const request: PreviewRequest = {
    kind: schema.kind,
    envelope: { author: envelope.author.trim() },
    fields: fieldsForPreview(schema, values),
  };
  if (envelope.domain.trim()) request.envelope.domain = envelope.domain.trim();
  if (envelope.time.trim()) request.envelope.time = envelope.time.trim();
  if (envelope.tags.trim()) request.envelope.tags = envelope.tags.trim();
  if (envelope.representative.trim()) {
    request.envelope.representative = envelope.representative.trim();
  }
  if (envelope.superseded.trim()) request.envelope.superseded = envelope.superseded.trim();
  return request;
}
