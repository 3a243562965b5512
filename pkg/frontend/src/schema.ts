// Form schemas for every statement type, plus client-side pre-validation.
//
// These checks exist for immediate feedback only; the node's /api/preview is
// the source of truth and re-validates everything. Error messages mirror the
// node's validation vocabulary so operators see consistent wording.

export type FieldKind =
  | "text"
  | "textarea"
  | "domain"
  | "hash"
  | "timestamp"
  | "date"
  | "confidence"
  | "stars"
  | "options";

export interface FormField {
  key: string;
  label: string;
  kind: FieldKind;
  required: boolean;
  help?: string;
}

export interface TypeSchema {
  kind: string; // content kind sent to /api/preview
  title: string;
  fields: FormField[];
}

const HASH_PATTERN = /^[A-Za-z0-9_-]{43}$/;
const TIMESTAMP_PATTERN = /^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$/;
const DATE_PATTERN = /^\d{4}-\d{2}-\d{2}$/;
const CONFIDENCE_PATTERN = /^(?:0(?:\.\d{1,2})?|1(?:\.0{1,2})?)$/;

export const STATEMENT_TYPES: TypeSchema[] = [
  {
    kind: "plain",
    title: "Plain statement",
    fields: [
      { key: "text", label: "Statement text", kind: "textarea", required: true },
    ],
  },
  {
    kind: "Organisation verification",
    title: "Organisation verification",
    fields: [
      { key: "name", label: "Organisation name", kind: "text", required: true },
      { key: "country", label: "Country", kind: "text", required: true },
      { key: "legal_form", label: "Legal form", kind: "text", required: true },
      { key: "domain_owned", label: "Owner of the domain", kind: "domain", required: true },
      {
        key: "confidence",
        label: "Confidence (0.0-1.0)",
        kind: "confidence",
        required: true,
        help: "Verification certainty; at most two decimals.",
      },
    ],
  },
  {
    kind: "Person verification",
    title: "Person verification",
    fields: [
      { key: "name", label: "Full name", kind: "text", required: true },
      { key: "birth_date", label: "Date of birth", kind: "date", required: true },
      { key: "birth_city", label: "City of birth", kind: "text", required: true },
      { key: "birth_country", label: "Country of birth", kind: "text", required: true },
      { key: "domain_owned", label: "Owner of the domain", kind: "domain", required: true },
      { key: "confidence", label: "Confidence (0.0-1.0)", kind: "confidence", required: true },
    ],
  },
  {
    kind: "Sign PDF",
    title: "Sign PDF",
    fields: [
      { key: "description", label: "Description", kind: "text", required: true },
      {
        key: "pdf_hash",
        label: "PDF file hash",
        kind: "hash",
        required: true,
        help: "SHA-256 of the PDF bytes, URL-safe base64 without padding.",
      },
    ],
  },
  {
    kind: "Poll",
    title: "Poll",
    fields: [
      { key: "voting_deadline", label: "Voting deadline (UTC)", kind: "timestamp", required: true },
      { key: "question", label: "Question", kind: "text", required: true },
      {
        key: "options",
        label: "Options (one per line)",
        kind: "options",
        required: true,
        help: "Between 2 and 20 distinct options.",
      },
      { key: "eligibility_description", label: "Who can vote", kind: "text", required: true },
    ],
  },
  {
    kind: "Vote",
    title: "Vote",
    fields: [
      { key: "poll_hash", label: "Poll hash", kind: "hash", required: true },
      { key: "option", label: "Selected option (verbatim)", kind: "text", required: true },
    ],
  },
  {
    kind: "Response",
    title: "Response",
    fields: [
      { key: "statement_hash", label: "Statement hash", kind: "hash", required: true },
      { key: "response_text", label: "Response", kind: "text", required: true },
    ],
  },
  {
    kind: "Bounty",
    title: "Bounty",
    fields: [
      { key: "action_description", label: "Action", kind: "text", required: true },
      { key: "reward_description", label: "Reward", kind: "text", required: true },
      { key: "judge", label: "Judge", kind: "text", required: false },
    ],
  },
  {
    kind: "Boycott",
    title: "Boycott",
    fields: [
      { key: "subject", label: "Subject", kind: "text", required: true },
      { key: "description", label: "Description", kind: "text", required: true },
    ],
  },
  {
    kind: "Dispute statement authenticity",
    title: "Dispute authenticity",
    fields: [
      { key: "statement_hash", label: "Statement hash", kind: "hash", required: true },
    ],
  },
  {
    kind: "Dispute statement content",
    title: "Dispute content",
    fields: [
      { key: "statement_hash", label: "Statement hash", kind: "hash", required: true },
      { key: "description", label: "Description", kind: "text", required: false },
    ],
  },
  {
    kind: "Rating",
    title: "Rating",
    fields: [
      { key: "subject_name", label: "Organisation name", kind: "text", required: true },
      { key: "subject_domain", label: "Organisation domain", kind: "domain", required: true },
      { key: "quality", label: "Rated quality", kind: "text", required: true },
      { key: "stars", label: "Stars (1-5)", kind: "stars", required: true },
      { key: "comment", label: "Comment", kind: "text", required: false },
    ],
  },
];

export function schemaFor(kind: string): TypeSchema | undefined {
  return STATEMENT_TYPES.find((schema) => schema.kind === kind);
}

export function validateField(field: FormField, raw: string): string | null {
  const value = raw.trim();
  if (!value) {
    return field.required ? `${field.label} is required` : null;
  }
  switch (field.kind) {
    case "confidence":
      if (!CONFIDENCE_PATTERN.test(value)) {
        return "confidence must be within 0.0 and 1.0 with at most two decimals";
      }
      return null;
    case "stars": {
      if (!/^[1-5]$/.test(value)) return "stars must be an integer between 1 and 5";
      return null;
    }
    case "hash":
      if (!HASH_PATTERN.test(value)) {
        return "must be a 43-character URL-safe base64 content hash";
      }
      return null;
    case "timestamp":
      if (!TIMESTAMP_PATTERN.test(value)) {
        return "must be a UTC timestamp like 2027-05-01T12:00:00Z";
      }
      return null;
    case "date":
      if (!DATE_PATTERN.test(value)) return "must be a date like 1975-04-23";
      return null;
    case "domain":
      if (!/^[a-z0-9.-]+$/.test(value) || value.includes("..")) {
        return "must be a lowercase hostname without scheme";
      }
      return null;
    case "options": {
      const options = value.split("\n").map((line) => line.trim()).filter(Boolean);
      if (options.length < 2) return "a poll needs at least two options";
      if (options.length > 20) return "at most 20 options are supported";
      if (new Set(options).size !== options.length) return "options must be distinct";
      return null;
    }
    default:
      return null;
  }
}

export interface FormState {
  errors: Record<string, string>;
  canSubmit: boolean;
}

export function validateForm(
  schema: TypeSchema,
  values: Record<string, string>,
  author: string,
): FormState {
  const errors: Record<string, string> = {};
  if (!author.trim()) errors["author"] = "Author is required";
  for (const field of schema.fields) {
    const error = validateField(field, values[field.key] ?? "");
    if (error) errors[field.key] = error;
  }
  return { errors, canSubmit: Object.keys(errors).length === 0 };
}

export function fieldsForPreview(
  schema: TypeSchema,
  values: Record<string, string>,
): Record<string, unknown> {
  const fields: Record<string, unknown> = {};
  for (const field of schema.fields) {
    const raw = (values[field.key] ?? "").trim();
    if (!raw) continue;
    if (field.kind === "options") {
      fields[field.key] = raw.split("\n").map((line) => line.trim()).filter(Boolean);
    } else {
      fields[field.key] = raw;
    }
  }
  return fields;
}
