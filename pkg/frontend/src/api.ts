import type {
  ConceptInfo,
  Decision,
  LinkRecord,
  SearchResult,
  Settings,
  SuggestionDto,
  UnitDto,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = "internal";
    let message = response.statusText;
    try {
      const body = await response.json();
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, code, message);
  }
  return response.json() as Promise<T>;
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private url(path: string, params?: Record<string, string | number | undefined>): string {
    const url = new URL(this.baseUrl + path);
    for (const [key, value] of Object.entries(params ?? {})) {
      if (value !== undefined) url.searchParams.set(key, String(value));
    }
    return url.toString();
  }

  listUnits(): Promise<UnitDto[]> {
    return this.fetchImpl(this.url("/api/units")).then((r) => asJson<UnitDto[]>(r));
  }

  getUnit(unitId: string): Promise<UnitDto> {
    return this.fetchImpl(this.url(`/api/units/${encodeURIComponent(unitId)}`)).then((r) =>
      asJson<UnitDto>(r),
    );
  }

  getSuggestions(unitId: string, threshold?: number, topK?: number): Promise<SuggestionDto[]> {
    const path = `/api/units/${encodeURIComponent(unitId)}/suggestions`;
    return this.fetchImpl(this.url(path, { threshold, top_k: topK })).then((r) =>
      asJson<SuggestionDto[]>(r),
    );
  }

  searchConcepts(query: string, limit = 10): Promise<SearchResult[]> {
    return this.fetchImpl(this.url("/api/taxonomy/search", { q: query, limit })).then((r) =>
      asJson<SearchResult[]>(r),
    );
  }

  getConcept(conceptId: string): Promise<ConceptInfo> {
    return this.fetchImpl(
      this.url(`/api/taxonomy/concepts/${encodeURIComponent(conceptId)}`),
    ).then((r) => asJson<ConceptInfo>(r));
  }

  postDecision(unitId: string, conceptId: string, decision: Decision, confidence = 0): Promise<unknown> {
    return this.fetchImpl(this.url("/api/decisions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        unit_id: unitId,
        concept_id: conceptId,
        decision,
        confidence,
      }),
    }).then((r) => asJson(r));
  }

  createLink(unitId: string, conceptId: string): Promise<unknown> {
    return this.fetchImpl(this.url("/api/links"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ unit_id: unitId, concept_id: conceptId }),
    }).then((r) => asJson(r));
  }

  deleteLink(unitId: string, conceptId: string): Promise<unknown> {
    const path = `/api/links/${encodeURIComponent(unitId)}/${encodeURIComponent(conceptId)}`;
    return this.fetchImpl(this.url(path), { method: "DELETE" }).then((r) => asJson(r));
  }

  async listLinks(): Promise<LinkRecord[]> {
    const response = await this.fetchImpl(this.url("/api/links", { format: "jsonl" }));
    if (!response.ok) throw new ApiError(response.status, "internal", response.statusText);
    const text = await response.text();
    return text
      .split("\n")
      .filter((line) => line.trim().length > 0)
      .map((line) => JSON.parse(line) as LinkRecord);
  }

  getSettings(): Promise<Settings> {
    return this.fetchImpl(this.url("/api/settings")).then((r) => asJson<Settings>(r));
  }

  putSettings(settings: Settings): Promise<Settings> {
    return this.fetchImpl(this.url("/api/settings"), {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(settings),
    }).then((r) => asJson<Settings>(r));
  }
}
