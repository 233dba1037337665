export interface AncestorInfo {
  id: string;
  pref_label: string;
  code: string | null;
}

export interface ConceptInfo {
  id: string;
  code: string | null;
  pref_label: string;
  alt_labels: string[];
  definition: string | null;
  parent: string | null;
  ancestors: AncestorInfo[];
}

export interface EvidenceSpan {
  start: number;
  end: number;
  label: string;
}

export interface SuggestionDto {
  unit_id: string;
  concept_id: string;
  confidence: number;
  scores: Record<string, number>;
  evidence: EvidenceSpan[];
  concept: ConceptInfo;
}

export interface UnitDto {
  unit_id: string;
  doc_id: string;
  seq: number;
  text: string;
}

export interface SearchResult {
  concept: ConceptInfo;
  match_kind: string;
}

export interface Settings {
  threshold: number;
  max_rejects: number;
  top_k: number;
}

export interface LinkRecord {
  unit_id: string;
  concept_id: string;
  code: string;
  label: string;
  provenance: string;
  confidence: number;
  created_at: string;
}

export type Decision = "accept" | "reject";

export type CardState = "pending" | "busy" | "accepted" | "rejected";

export interface SuggestionCard {
  conceptId: string;
  label: string;
  code: string | null;
  breadcrumb: string;
  confidence: number;
  evidence: EvidenceSpan[];
  state: CardState;
}
