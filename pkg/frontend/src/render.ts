import type { EvidenceSpan, SuggestionCard, UnitDto } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Confidence as a percentage with one decimal, e.g. 0.8333 -> "83.3%". */
export function formatConfidence(confidence: number): string {
  return `${(confidence * 100).toFixed(1)}%`;
}

/** Requirement text with evidence spans wrapped in <mark> elements. */
export function highlightEvidence(text: string, spans: EvidenceSpan[]): string {
  const sorted = spans
    .slice()
    .sort((a, b) => a.start - b.start)
    .filter((s) => s.start >= 0 && s.end <= text.length && s.start < s.end);
  let cursor = 0;
  let html = "";
  for (const span of sorted) {
    if (span.start < cursor) continue; // overlapping span already covered
    html += escapeHtml(text.slice(cursor, span.start));
    html += `<mark title="${escapeHtml(span.label)}">${escapeHtml(text.slice(span.start, span.end))}</mark>`;
    cursor = span.end;
  }
  html += escapeHtml(text.slice(cursor));
  return html;
}

export function renderCard(card: SuggestionCard): string {
  const code = card.code ? `<span class="code">${escapeHtml(card.code)}</span> ` : "";
  const disabled = card.state !== "pending" ? " disabled" : "";
  return [
    `<div class="card card-${card.state}" data-concept-id="${escapeHtml(card.conceptId)}">`,
    `<div class="breadcrumb">${escapeHtml(card.breadcrumb)}</div>`,
    `<div class="label">${code}${escapeHtml(card.label)}</div>`,
    `<div class="confidence">${formatConfidence(card.confidence)}</div>`,
    `<button class="accept"${disabled}>Accept</button>`,
    `<button class="reject"${disabled}>Reject</button>`,
    `</div>`,
  ].join("");
}

/** Unit view: highlighted requirement text plus cards in confidence order. */
export function renderUnitView(unit: UnitDto, cards: SuggestionCard[]): string {
  const spans = cards.flatMap((c) => c.evidence);
  const ordered = cards.slice().sort((a, b) => b.confidence - a.confidence);
  const body =
    ordered.length === 0
      ? `<p class="empty">No suggestions above the current threshold.</p>`
      : ordered.map(renderCard).join("\n");
  return [
    `<section class="unit" data-unit-id="${escapeHtml(unit.unit_id)}">`,
    `<p class="requirement">${highlightEvidence(unit.text, spans)}</p>`,
    body,
    `</section>`,
  ].join("\n");
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)} <button class="retry">Retry</button></div>`;
}
