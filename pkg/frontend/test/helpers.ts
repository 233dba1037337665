import type { ConceptInfo, SuggestionDto, UnitDto } from "../src/types.js";

export function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function makeConcept(id: string, overrides: Partial<ConceptInfo> = {}): ConceptInfo {
  return {
    id,
    code: null,
    pref_label: id,
    alt_labels: [],
    definition: null,
    parent: null,
    ancestors: [],
    ...overrides,
  };
}

export function makeUnit(unitId = "doc#0", text = "install the pump"): UnitDto {
  return { unit_id: unitId, doc_id: "doc", seq: 0, text };
}

export function makeSuggestion(
  unitId: string,
  conceptId: string,
  confidence: number,
  overrides: Partial<SuggestionDto> = {},
): SuggestionDto {
  return {
    unit_id: unitId,
    concept_id: conceptId,
    confidence,
    scores: { exact: confidence, stem: 0, trigram: 0, tfidf: 0 },
    evidence: [],
    concept: makeConcept(conceptId),
    ...overrides,
  };
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason?: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export type Handler = (input: string, init?: RequestInit) => Response | Promise<Response>;

/** Tiny fetch stand-in that routes by "METHOD /path" prefix and records calls. */
export class FakeFetch {
  calls: Array<{ url: string; method: string; body?: unknown }> = [];
  private routes: Array<{ method: string; path: string; handler: Handler }> = [];

  on(method: string, path: string, handler: Handler): void {
    this.routes.push({ method, path, handler });
  }

  get fetch(): typeof fetch {
    return (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = String(input);
      const method = init?.method ?? "GET";
      const body = typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
      this.calls.push({ url, method, body });
      const path = new URL(url).pathname;
      // last registration wins so tests can override the harness defaults
      for (const route of [...this.routes].reverse()) {
        if (route.method === method && path === route.path) {
          return route.handler(url, init);
        }
      }
      return jsonResponse({ code: "not-found", message: `no route ${method} ${path}` }, 404);
    }) as typeof fetch;
  }
}
