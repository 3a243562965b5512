// Thin client over the node HTTP API. The console never computes canonical
// text or hashes itself; everything canonical comes from these endpoints.

import type {
  FeedResponse,
  InfoResponse,
  PollIndexResponse,
  PreviewRequest,
  PreviewResponse,
  PublishResponse,
  TallyResponse,
  TrustResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`API error ${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class NodeApi {
  constructor(readonly baseUrl: string = "") {}

  url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.url(path));
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(
    path: string,
    body: unknown,
    headers: Record<string, string> = {},
  ): Promise<T> {
    const response = await fetch(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json", ...headers },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  info(): Promise<InfoResponse> {
    return this.getJson("/api/info");
  }

  feed(filters: { type?: string; domain?: string; tag?: string } = {}): Promise<FeedResponse> {
    const params = new URLSearchParams();
    if (filters.type) params.set("type", filters.type);
    if (filters.domain) params.set("domain", filters.domain);
    if (filters.tag) params.set("tag", filters.tag);
    const query = params.toString();
    return this.getJson(`/api/feed${query ? `?${query}` : ""}`);
  }

  polls(): Promise<PollIndexResponse> {
    return this.getJson("/api/polls");
  }

  tally(pollHash: string): Promise<TallyResponse> {
    return this.getJson(`/api/polls/${encodeURIComponent(pollHash)}/tally`);
  }

  trust(domain: string): Promise<TrustResponse> {
    return this.getJson(`/api/trust/${encodeURIComponent(domain)}`);
  }

  statementText(hash: string): Promise<string> {
    return fetch(this.url(`/api/statements/${encodeURIComponent(hash)}`)).then(
      async (response) => {
        if (!response.ok) throw await parseError(response);
        return response.text();
      },
    );
  }

  preview(request: PreviewRequest): Promise<PreviewResponse> {
    return this.postJson("/api/preview", request);
  }

  publish(text: string, token: string): Promise<PublishResponse> {
    return this.postJson(
      "/api/publish",
      { text },
      { authorization: `Bearer ${token}` },
    );
  }
}
