// Console entry point: hash router, compose form, feed, polls, trust pages.
// Reads refresh by polling, matching the network's pull philosophy.

import { ApiError, NodeApi } from "./api.js";
import { buildPreviewRequest, EMPTY_ENVELOPE, type EnvelopeValues } from "./compose.js";
import { apiAffordance, clear, el, emptyState, errorBox, verbatimBlock } from "./dom.js";
import { groupByContentHash } from "./feed.js";
import { buildPollDashboard, formatCountdown } from "./pollsView.js";
import { schemaFor, STATEMENT_TYPES, validateForm } from "./schema.js";
import { buildTrustModel } from "./trustView.js";
import type { PreviewResponse } from "./types.js";

const api = new NodeApi("");
const REFRESH_MS = 10_000;

// operator token lives in memory for this page only, never persisted
let operatorToken = "";
let refreshTimer: number | undefined;

interface ComposePrefill {
  kind: string;
  fields: Record<string, string>;
}

let composePrefill: ComposePrefill | null = null;

function navigate(hash: string): void {
  window.location.hash = hash;
}

function setRefresh(callback: (() => void) | null): void {
  if (refreshTimer !== undefined) {
    window.clearInterval(refreshTimer);
    refreshTimer = undefined;
  }
  if (callback) {
    refreshTimer = window.setInterval(callback, REFRESH_MS);
  }
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) return `${error.status}: ${error.detail}`;
  return String(error);
}

// -- compose -----------------------------------------------------------------

function renderCompose(container: HTMLElement): void {
  setRefresh(null);
  clear(container);
  const prefill = composePrefill;
  composePrefill = null;

  const envelope: EnvelopeValues = { ...EMPTY_ENVELOPE };
  const values: Record<string, string> = prefill ? { ...prefill.fields } : {};
  let currentKind = prefill?.kind ?? "plain";

  const typeSelect = el("select", { id: "type-select" });
  for (const schema of STATEMENT_TYPES) {
    const option = el("option", { value: schema.kind }, schema.title);
    if (schema.kind === currentKind) option.setAttribute("selected", "selected");
    typeSelect.append(option);
  }

  const fieldsBox = el("div", { class: "fields" });
  const previewText = el("div", { class: "preview-pane" });
  const previewHash = el("code", { class: "preview-hash" }, "");
  const statusLine = el("div", { class: "status-line" });
  const publishButton = el("button", { class: "primary", disabled: "disabled" }, "Publish");
  const tokenInput = el("input", {
    type: "password",
    placeholder: "operator token (kept in memory only)",
    value: operatorToken,
  });

  let latestPreview: PreviewResponse | null = null;
  let previewEpoch = 0;

  const envelopeInputs: [keyof EnvelopeValues, string, string][] = [
    ["domain", "Publishing domain", "defaults to this node's domain"],
    ["author", "Author", "organization legal name"],
    ["time", "Time (UTC)", "YYYY-MM-DDTHH:MM:SSZ; defaults to now"],
    ["tags", "Tags", "comma-separated"],
    ["representative", "Authorized signing representative", ""],
    ["superseded", "Superseded statement hash", "revokes one of your statements"],
  ];

  function schedulePreview(): void {
    const schema = schemaFor(currentKind);
    if (!schema) return;
    const state = validateForm(schema, values, envelope.author);

    for (const input of fieldsBox.querySelectorAll<HTMLElement>("[data-error-for]")) {
      const key = input.dataset["errorFor"] ?? "";
      input.textContent = state.errors[key] ?? "";
    }
    const authorError = container.querySelector<HTMLElement>("[data-error-for=author]");
    if (authorError) authorError.textContent = state.errors["author"] ?? "";

    if (!state.canSubmit) {
      publishButton.setAttribute("disabled", "disabled");
      latestPreview = null;
      clear(previewText);
      previewText.append(emptyState("preview appears once the form is valid"));
      previewHash.textContent = "";
      return;
    }
    const epoch = ++previewEpoch;
    api
      .preview(buildPreviewRequest(schema, envelope, values))
      .then((preview) => {
        if (epoch !== previewEpoch) return;
        latestPreview = preview;
        clear(previewText);
        previewText.append(verbatimBlock(preview.text));
        previewHash.textContent = preview.hash;
        publishButton.removeAttribute("disabled");
        statusLine.textContent = "";
      })
      .catch((error) => {
        if (epoch !== previewEpoch) return;
        latestPreview = null;
        publishButton.setAttribute("disabled", "disabled");
        clear(previewText);
        previewText.append(errorBox(describeError(error)));
        previewHash.textContent = "";
      });
  }

  function renderFields(): void {
    const schema = schemaFor(currentKind);
    clear(fieldsBox);
    if (!schema) return;
    for (const field of schema.fields) {
      const id = `field-${field.key}`;
      let input: HTMLElement;
      if (field.kind === "textarea" || field.kind === "options") {
        input = el("textarea", { id, rows: "4" });
        (input as HTMLTextAreaElement).value = values[field.key] ?? "";
      } else {
        input = el("input", { id, type: "text" });
        (input as HTMLInputElement).value = values[field.key] ?? "";
      }
      input.addEventListener("input", () => {
        values[field.key] = (input as HTMLInputElement | HTMLTextAreaElement).value;
        schedulePreview();
      });
      fieldsBox.append(
        el(
          "label",
          { for: id },
          `${field.label}${field.required ? "" : " (optional)"}`,
        ),
        input,
        field.help ? el("p", { class: "hint" }, field.help) : "",
        el("p", { class: "field-error", "data-error-for": field.key }),
      );
    }
  }

  typeSelect.addEventListener("change", () => {
    currentKind = (typeSelect as HTMLSelectElement).value;
    for (const key of Object.keys(values)) delete values[key];
    renderFields();
    schedulePreview();
  });

  tokenInput.addEventListener("input", () => {
    operatorToken = (tokenInput as HTMLInputElement).value;
  });

  publishButton.addEventListener("click", () => {
    if (!latestPreview) return;
    if (!operatorToken) {
      statusLine.textContent = "an operator token is required to publish";
      return;
    }
    api
      .publish(latestPreview.text, operatorToken)
      .then((result) => {
        statusLine.textContent =
          result.outcome === "stored"
            ? `published as #${result.id} (${result.hash})`
            : `already published (${result.hash})`;
      })
      .catch((error) => {
        statusLine.textContent = `publish failed — ${describeError(error)}`;
      });
  });

  const envelopeBox = el("div", { class: "fields" });
  for (const [key, label, help] of envelopeInputs) {
    const id = `envelope-${key}`;
    const input = el("input", { id, type: "text" });
    (input as HTMLInputElement).value = envelope[key];
    input.addEventListener("input", () => {
      envelope[key] = (input as HTMLInputElement).value;
      schedulePreview();
    });
    envelopeBox.append(
      el("label", { for: id }, label),
      input,
      help ? el("p", { class: "hint" }, help) : "",
      key === "author" ? el("p", { class: "field-error", "data-error-for": "author" }) : "",
    );
  }

  container.append(
    el("h2", {}, "Compose statement"),
    el("div", { class: "columns" },
      el("div", { class: "column" },
        el("h3", {}, "Type"),
        typeSelect,
        el("h3", {}, "Envelope"),
        envelopeBox,
        el("h3", {}, "Content"),
        fieldsBox,
      ),
      el("div", { class: "column" },
        el("h3", {}, "Canonical preview (from the node)"),
        previewText,
        el("p", {}, "Hash: ", previewHash),
        apiAffordance(
          "previews are produced by the node; the browser never hashes",
          api.url("/api/preview"),
        ),
        el("div", { class: "publish-row" }, tokenInput, publishButton),
        statusLine,
      ),
    ),
  );
  renderFields();
  schedulePreview();
}

// -- feed ---------------------------------------------------------------------

function renderFeed(container: HTMLElement): void {
  clear(container);
  const typeInput = el("input", { placeholder: "type (e.g. Poll)" });
  const domainInput = el("input", { placeholder: "domain" });
  const tagInput = el("input", { placeholder: "tag" });
  const list = el("div", { class: "feed-list" });

  function load(): void {
    const filters = {
      type: (typeInput as HTMLInputElement).value.trim() || undefined,
      domain: (domainInput as HTMLInputElement).value.trim() || undefined,
      tag: (tagInput as HTMLInputElement).value.trim() || undefined,
    };
    api
      .feed(filters)
      .then((response) => {
        clear(list);
        if (response.statements.length === 0) {
          list.append(emptyState("no statements match — the store may be empty"));
          return;
        }
        for (const group of groupByContentHash(response.statements)) {
          const first = group.entries[0];
          if (!first) continue;
          const card = el("div", { class: "card" });
          if (group.domains.length > 1) {
            card.append(
              el(
                "div",
                { class: "consensus-banner" },
                `identical content published by ${group.domains.length} domains: ${group.domains.join(", ")}`,
              ),
            );
          }
          card.append(
            el("div", { class: "card-head" },
              el("strong", {}, first.publishing_domain),
              el("span", { class: "kind-chip" }, first.content_kind),
              el("span", { class: "muted" }, first.time),
              el("span", { class: `status status-${first.verification_status}` },
                first.verification_status),
            ),
            verbatimBlock(first.text),
            el("p", { class: "muted" }, `hash ${first.hash}`),
          );
          list.append(card);
        }
      })
      .catch((error) => {
        clear(list);
        list.append(errorBox(describeError(error)));
      });
  }

  for (const input of [typeInput, domainInput, tagInput]) {
    input.addEventListener("change", load);
  }
  container.append(
    el("h2", {}, "Statement feed"),
    el("div", { class: "filter-row" }, typeInput, domainInput, tagInput),
    apiAffordance("same data as this page", api.url("/api/feed")),
    list,
  );
  load();
  setRefresh(load);
}

// -- polls ---------------------------------------------------------------------

function renderPolls(container: HTMLElement): void {
  clear(container);
  const list = el("div", { class: "feed-list" });

  function load(): void {
    api
      .polls()
      .then((response) => {
        clear(list);
        if (response.polls.length === 0) {
          list.append(emptyState("no polls in the store yet"));
          return;
        }
        for (const poll of response.polls) {
          const link = el("a", { href: `#/poll/${poll.hash}` }, poll.question);
          list.append(
            el("div", { class: "card" },
              el("div", { class: "card-head" },
                el("strong", {}, poll.publishing_domain),
                el("span", { class: "muted" }, `deadline ${poll.voting_deadline}`),
              ),
              el("h3", {}, link),
              el("p", { class: "muted" }, poll.options.join(" / ")),
            ),
          );
        }
      })
      .catch((error) => {
        clear(list);
        list.append(errorBox(describeError(error)));
      });
  }

  container.append(
    el("h2", {}, "Polls"),
    apiAffordance("poll index", api.url("/api/polls")),
    list,
  );
  load();
  setRefresh(load);
}

function renderPollDetail(container: HTMLElement, pollHash: string): void {
  clear(container);
  const body = el("div", {});

  function load(): void {
    Promise.all([api.polls(), api.tally(pollHash)])
      .then(([index, tally]) => {
        const poll = index.polls.find((p) => p.hash === pollHash);
        if (!poll) {
          clear(body);
          body.append(errorBox("poll is not in (or no longer effective in) this store"));
          return;
        }
        const dashboard = buildPollDashboard(poll, tally, new Date());
        clear(body);
        body.append(
          el("h2", {}, dashboard.question),
          el("p", { class: "muted" },
            `published by ${dashboard.publishingDomain} — ` +
            `${formatCountdown(dashboard.millisecondsRemaining)} (deadline ${dashboard.deadline})`),
        );
        const bars = el("div", { class: "bars" });
        for (const bar of dashboard.bars) {
          const voteLink = el(
            "a",
            { href: "#/compose", class: "vote-shortcut" },
            "vote",
          );
          voteLink.addEventListener("click", () => {
            composePrefill = {
              kind: "Vote",
              fields: { poll_hash: dashboard.pollHash, option: bar.option },
            };
          });
          bars.append(
            el("div", { class: "bar-row" },
              el("span", { class: "bar-label" }, bar.option),
              el("div", { class: "bar-track" },
                el("div", {
                  class: "bar-fill",
                  style: `width: ${Math.round(bar.fraction * 100)}%`,
                }),
              ),
              el("span", { class: "bar-count" }, String(bar.count)),
              dashboard.closed ? "" : voteLink,
            ),
          );
        }
        body.append(bars, el("p", {}, `${dashboard.totalVotes} accepted votes`));
        if (dashboard.flaggedDomains.length > 0) {
          body.append(
            errorBox(`tied same-time votes rejected; flagged: ${dashboard.flaggedDomains.join(", ")}`),
          );
        }
        if (dashboard.rejected.length > 0) {
          const table = el("table", { class: "rejects" },
            el("tr", {}, el("th", {}, "rejected vote"), el("th", {}, "domain"), el("th", {}, "reason")));
          for (const reject of dashboard.rejected) {
            table.append(
              el("tr", {},
                el("td", {}, el("code", {}, reject.vote_hash.slice(0, 12) + "…")),
                el("td", {}, reject.domain ?? "?"),
                el("td", {}, reject.reason),
              ),
            );
          }
          body.append(el("h3", {}, "Rejected votes"), table);
        }
        body.append(
          apiAffordance("tally as computed by the node", api.url(`/api/polls/${pollHash}/tally`)),
        );
      })
      .catch((error) => {
        clear(body);
        body.append(errorBox(describeError(error)));
      });
  }

  container.append(body);
  load();
  setRefresh(load);
}

// -- trust ---------------------------------------------------------------------

function renderTrust(container: HTMLElement, domain: string): void {
  clear(container);
  const input = el("input", { placeholder: "domain, e.g. example.gov", value: domain });
  const go = el("button", {}, "Assess");
  const body = el("div", {});
  go.addEventListener("click", () => {
    const target = (input as HTMLInputElement).value.trim();
    if (target) navigate(`#/trust/${target}`);
  });
  container.append(
    el("h2", {}, "Trust assessment"),
    el("div", { class: "filter-row" }, input, go),
    body,
  );
  if (!domain) {
    body.append(emptyState("enter a domain to inspect its verification network"));
    setRefresh(null);
    return;
  }

  function load(): void {
    api
      .trust(domain)
      .then((assessment) => {
        const model = buildTrustModel(assessment);
        clear(body);
        body.append(
          el("div", { class: "aggregate" },
            el("span", { class: "aggregate-number" }, model.aggregatePercent),
            el("span", { class: "muted" },
              ` aggregate confidence from ${model.edges.length} independent verifications`),
          ),
        );
        if (model.edges.length === 0) {
          body.append(emptyState("no effective verifications for this domain"));
        } else {
          const table = el("table", { class: "edges" },
            el("tr", {},
              el("th", {}, "verifier"), el("th", {}, "subject name"),
              el("th", {}, "confidence"), el("th", {}, "time"), el("th", {}, "statement")));
          for (const edge of model.edges) {
            table.append(
              el("tr", {},
                el("td", {}, edge.verifier_domain),
                el("td", {}, edge.subject_name),
                el("td", {}, edge.confidence.toFixed(2)),
                el("td", {}, edge.time),
                el("td", {}, el("code", {}, edge.statement_hash.slice(0, 12) + "…")),
              ),
            );
          }
          body.append(table);
        }
        if (model.disputes.length > 0) {
          const list = el("ul", {});
          for (const dispute of model.disputes) {
            list.append(
              el("li", {},
                `${dispute.disputer_domain} disputes ${dispute.kind} of `,
                el("code", {}, dispute.disputed_hash.slice(0, 12) + "…"),
                ` (${dispute.time})`,
              ),
            );
          }
          body.append(el("h3", {}, "Active disputes"), list);
        }
        if (model.ratings.length > 0) {
          const list = el("ul", {});
          for (const rating of model.ratings) {
            list.append(
              el("li", {},
                `${rating.quality}: ${rating.meanStars.toFixed(2)} stars over ${rating.count} ratings`),
            );
          }
          body.append(el("h3", {}, "Ratings"), list);
        }
        body.append(
          apiAffordance("assessment as computed by the node", api.url(`/api/trust/${domain}`)),
        );
      })
      .catch((error) => {
        clear(body);
        body.append(errorBox(describeError(error)));
      });
  }

  load();
  setRefresh(load);
}

// -- router ---------------------------------------------------------------------

function route(): void {
  const container = document.getElementById("view");
  if (!container) return;
  const hash = window.location.hash || "#/feed";
  const [, page, argument] = hash.split("/");
  switch (page) {
    case "compose":
      renderCompose(container);
      break;
    case "polls":
      renderPolls(container);
      break;
    case "poll":
      renderPollDetail(container, argument ?? "");
      break;
    case "trust":
      renderTrust(container, argument ?? "");
      break;
    default:
      renderFeed(container);
  }
  for (const link of document.querySelectorAll("nav a")) {
    link.classList.toggle("active", link.getAttribute("href") === `#/${page}`);
  }
}

function boot(): void {
  api
    .info()
    .then((info) => {
      const badge = document.getElementById("node-domain");
      if (badge) badge.textContent = info.domain;
    })
    .catch(() => {
      const badge = document.getElementById("node-domain");
      if (badge) badge.textContent = "node unreachable";
    });
  window.addEventListener("hashchange", route);
  route();
}

boot();
