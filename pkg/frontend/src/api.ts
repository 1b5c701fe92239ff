import type { ClusterPoint, DatasetRow, ReportBody, StatsPayload, TagsPayload } from "./types.js";

export class ApiError extends Error {
  status: number;
  detail?: string;
  offset?: number;

  constructor(status: number, message: string, detail?: string, offset?: number) {
    super(message);
    this.status = status;
    this.detail = detail;
    this.offset = offset;
  }
}

async function fail(resp: Response): Promise<never> {
  let message = `HTTP ${resp.status}`;
  let detail: string | undefined;
  let offset: number | undefined;
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") message = body.error;
    if (typeof body.detail === "string") detail = body.detail;
    if (typeof body.offset === "number") offset = body.offset;
  } catch {
    // non-JSON error body; keep the status message
  }
  throw new ApiError(resp.status, message, detail, offset);
}

/** Thin client over the catalogue read API; all methods return parsed JSON. */
export class CatalogApi {
  constructor(
    private baseUrl: string = "",
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async get<T>(path: string, params?: Record<string, string>, signal?: AbortSignal): Promise<T> {
    const qs = params ? "?" + new URLSearchParams(params).toString() : "";
    const resp = await this.fetchFn(`${this.baseUrl}${path}${qs}`, { signal });
    if (!resp.ok) await fail(resp);
    return (await resp.json()) as T;
  }

  schema(): Promise<string[]> {
    return this.get("/datasets/schema");
  }

  datasets(query?: string, features?: string[], signal?: AbortSignal): Promise<DatasetRow[]> {
    const params: Record<string, string> = {};
    if (query) params.query = query;
    if (features && features.length) params.features = features.join(",");
    return this.get("/datasets", params, signal);
  }

  record(index: number): Promise<DatasetRow> {
    return this.get(`/datasets/${index}`);
  }

  tags(features?: string[]): Promise<TagsPayload> {
    const params = features && features.length ? { features: features.join(",") } : undefined;
    return this.get("/datasets/tags", params);
  }

  stats(): Promise<StatsPayload> {
    return this.get("/datasets/stats");
  }

  clusters(): Promise<ClusterPoint[]> {
    return this.get("/datasets/clusters");
  }

  async submitReport(body: ReportBody): Promise<{ id: string }> {
    const resp = await this.fetchFn(`${this.baseUrl}/reports`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) await fail(resp);
    return (await resp.json()) as { id: string };
  }
}
