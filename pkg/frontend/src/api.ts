import type { CostDoc, DecisionResponse, ModelDoc, SessionDoc } from "./types.js";

/** A service error, preserved verbatim for display. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(message: string, code: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

export interface CostResult {
  doc: CostDoc & { subgraph: string };
  /** The exact bytes the service sent, kept so displayed numbers can be
      checked against the payload instead of a re-serialization. */
  raw: string;
}

type Fetch = typeof fetch;

export class ApiClient {
  private base: string;
  private fetchFn: Fetch;

  constructor(base = "", fetchFn: Fetch = fetch) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request(path: string, init?: RequestInit): Promise<string> {
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    if (!response.ok) {
      let message = text;
      let code = "error";
      try {
        const body = JSON.parse(text);
        if (typeof body.error === "string") message = body.error;
        if (typeof body.code === "string") code = body.code;
      } catch {
        // not a service-shaped error; keep the raw text
      }
      throw new ApiError(message, code, response.status);
    }
    return text;
  }

  async model(): Promise<ModelDoc> {
    return JSON.parse(await this.request("/api/model"));
  }

  async session(): Promise<SessionDoc> {
    return JSON.parse(await this.request("/api/session"));
  }

  async cost(
    id: string,
    opts: { words?: number | null; midpattern?: string[] } = {},
  ): Promise<CostResult> {
    const query = new URLSearchParams();
    if (opts.words !== undefined && opts.words !== null) {
      query.set("words", String(opts.words));
    }
    if (opts.midpattern !== undefined && opts.midpattern.length > 0) {
      query.set("midpattern", opts.midpattern.join(","));
    }
    const suffix = query.toString() ? `?${query}` : "";
    const raw = await this.request(
      `/api/candidates/${encodeURIComponent(id)}/cost${suffix}`,
    );
    return { doc: JSON.parse(raw), raw };
  }

  async decide(
    id: string,
    verdict: "accept" | "reject",
    opts: { allowWholeGraph?: boolean; note?: string } = {},
  ): Promise<DecisionResponse> {
    const body: Record<string, unknown> = { id, verdict };
    if (opts.allowWholeGraph) body.allow_whole_graph = true;
    if (opts.note) body.note = opts.note;
    const raw = await this.request("/api/decisions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return JSON.parse(raw);
  }
}
