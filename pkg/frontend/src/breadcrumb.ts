import type { ConceptInfo } from "./types.js";

/** Ancestor trail root-first, e.g. "Tekniska system › Vattensystem › Pump". */
export function breadcrumbTrail(concept: ConceptInfo, separator = " › "): string {
  const parts = concept.ancestors
    .slice()
    .reverse()
    .map((a) => a.pref_label);
  parts.push(concept.pref_label);
  return parts.join(separator);
}
