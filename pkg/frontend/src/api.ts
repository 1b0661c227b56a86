/**
 * Typed client for the gateway HTTP API (/api/v1).
 *
 * The UI is a thin client: everything rendered comes verbatim from these
 * responses. Errors use the gateway's uniform {code, message} body.
 */

export interface ExplanationLine {
  key: string;
  provenance: string;
  weight: number;
  field: string;
  idf: number;
}

export interface SearchResultItem {
  id: string;
  score: number;
  explanation: ExplanationLine[];
  personalization_factor: number;
  titles: Record<string, string>;
  url: string;
  administration: string;
  sector: string;
}

export interface EnrichedTerm {
  key: string;
  weight: number;
  provenance: string;
}

export interface SearchResponse {
  results: SearchResultItem[];
  enriched_terms: EnrichedTerm[];
  language: string;
  timing_ms?: number;
}

export interface RecommendationItem {
  id: string;
  titles: Record<string, string>;
  url: string;
  administration: string;
  sector: string;
  interest: number;
}

export interface RecommendationsResponse {
  recommendations: RecommendationItem[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    return new ApiError(response.status, body.code ?? "error", body.message ?? response.statusText);
  } catch {
    return new ApiError(response.status, "error", response.statusText);
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private url(path: string, params: Record<string, string | undefined>): string {
    const query = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined && value !== "") query.set(key, value);
    }
    const suffix = query.toString();
    return `${this.baseUrl}/api/v1${path}${suffix ? "?" + suffix : ""}`;
  }

  async search(
    q: string,
    lang: string | undefined,
    user: string,
    signal?: AbortSignal,
  ): Promise<SearchResponse> {
    const response = await fetch(this.url("/search", { q, lang, user }), { signal });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as SearchResponse;
  }

  async feedback(user: string, serviceId: string, query?: string): Promise<void> {
    const response = await fetch(`${this.baseUrl}/api/v1/feedback`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ user, service_id: serviceId, ...(query ? { query } : {}) }),
    });
    if (!response.ok) throw await parseError(response);
  }

  async recommendations(user: string, k?: number): Promise<RecommendationsResponse> {
    const response = await fetch(
      this.url("/recommendations", { user, k: k === undefined ? undefined : String(k) }),
    );
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as RecommendationsResponse;
  }
}
