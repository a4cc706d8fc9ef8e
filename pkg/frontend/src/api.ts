import type {
  AssigneesResponse,
  InterplayPayload,
  PapersResponse,
  ResearcherDetail,
  ScatterResponse,
  StatsResponse,
  TimelineResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

/**
 * Thin fetch wrapper. Each view owns one slot: issuing a request for a slot
 * aborts whatever was in flight there, so at most one request per view is
 * ever outstanding.
 */
export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(private readonly base: string = "") {}

  async get<T>(path: string, params: Record<string, string>, slot: string): Promise<T> {
    this.inflight.get(slot)?.abort();
    const controller = new AbortController();
    this.inflight.set(slot, controller);

    const query = new URLSearchParams(params).toString();
    const url = `${this.base}${path}${query ? `?${query}` : ""}`;
    const resp = await fetch(url, { signal: controller.signal });
    if (this.inflight.get(slot) === controller) this.inflight.delete(slot);
    if (!resp.ok) {
      let code = "http_error";
      let message = `${resp.status}`;
      try {
        const body = (await resp.json()) as { code?: string; message?: string };
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, code, message);
    }
    return (await resp.json()) as T;
  }

  interplay(params: Record<string, string>): Promise<InterplayPayload> {
    return this.get("/interplay", params, "interplay");
  }

  stats(params: Record<string, string>): Promise<StatsResponse> {
    return this.get("/stats", params, "stats");
  }

  researchers(params: Record<string, string>): Promise<ScatterResponse> {
    return this.get("/researchers", params, "researchers");
  }

  researcherDetail(id: string): Promise<ResearcherDetail> {
    return this.get(`/researchers/${encodeURIComponent(id)}`, {}, "detail");
  }

  timeline(ids: string[], kind?: "paper" | "patent"): Promise<TimelineResponse> {
    const params: Record<string, string> = { ids: ids.join(",") };
    if (kind) params.kind = kind;
    return this.get("/timeline", params, `timeline:${kind ?? "auto"}`);
  }

  assignees(params: Record<string, string>): Promise<AssigneesResponse> {
    return this.get("/assignees", params, "assignees");
  }

  papers(params: Record<string, string>): Promise<PapersResponse> {
    return this.get("/papers", params, "papers");
  }
}
