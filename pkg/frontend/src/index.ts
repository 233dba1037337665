import { ApiClient } from "./api.js";
import { breadcrumbTrail } from "./breadcrumb.js";
import { renderErrorBanner, renderUnitView } from "./render.js";
import { debounce } from "./search.js";
import { clampThreshold, validateSettings } from "./settings.js";
import { Session } from "./state.js";
import type { Decision } from "./types.js";

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

export async function bootstrap(baseUrl: string = window.location.origin): Promise<void> {
  const api = new ApiClient(baseUrl);
  const session = new Session(api);
  await session.init();

  const unitList = byId("unit-list");
  const unitView = byId("unit-view");
  const searchBox = byId("search-box") as HTMLInputElement;
  const searchResults = byId("search-results");
  const banner = byId("banner");
  const thresholdInput = byId("threshold") as HTMLInputElement;
  const maxRejectsInput = byId("max-rejects") as HTMLInputElement;
  const topKInput = byId("top-k") as HTMLInputElement;

  function redraw(): void {
    if (session.activeUnit) {
      unitView.innerHTML = renderUnitView(session.activeUnit, session.cards);
    }
    banner.innerHTML = session.lastError ? renderErrorBanner(session.lastError) : "";
    thresholdInput.value = String(session.settings.threshold);
    maxRejectsInput.value = String(session.settings.max_rejects);
    topKInput.value = String(session.settings.top_k);
  }

  const units = await api.listUnits();
  unitList.innerHTML = units
    .map(
      (u) =>
        `<li><a href="#" data-unit-id="${u.unit_id}">${u.unit_id}</a> ${u.text.slice(0, 60)}</li>`,
    )
    .join("");
  unitList.addEventListener("click", async (event) => {
    const target = event.target as HTMLElement;
    const unitId = target.dataset.unitId;
    if (!unitId) return;
    event.preventDefault();
    await session.openUnit(unitId);
    redraw();
  });

  unitView.addEventListener("click", async (event) => {
    const target = event.target as HTMLElement;
    const card = target.closest(".card") as HTMLElement | null;
    if (!card) return;
    const conceptId = card.dataset.conceptId;
    if (!conceptId) return;
    let decision: Decision | null = null;
    if (target.classList.contains("accept")) decision = "accept";
    if (target.classList.contains("reject")) decision = "reject";
    if (!decision) return;
    try {
      await session.decide(conceptId, decision);
      await session.refreshSuggestions();
    } catch {
      // lastError set by the session; banner shows it
    }
    redraw();
  });

  const runSearch = debounce(async () => {
    await session.manualSearch(searchBox.value);
    searchResults.innerHTML = session.searchResults
      .map(
        (r) =>
          `<li><span class="breadcrumb">${breadcrumbTrail(r.concept)}</span> ` +
          `<button data-link-concept="${r.concept.id}">Link</button></li>`,
      )
      .join("");
  }, 250);
  searchBox.addEventListener("input", runSearch);
  searchResults.addEventListener("click", async (event) => {
    const target = event.target as HTMLElement;
    const conceptId = target.dataset.linkConcept;
    if (!conceptId) return;
    try {
      await session.createManualLink(conceptId);
    } catch (error) {
      session.lastError = error instanceof Error ? error.message : String(error);
    }
    redraw();
  });

  async function onSettingsChange(): Promise<void> {
    const next = {
      threshold: clampThreshold(Number(thresholdInput.value)),
      max_rejects: Number(maxRejectsInput.value),
      top_k: Number(topKInput.value),
    };
    if (!validateSettings(next).ok) {
      redraw(); // revert controls to the last accepted values
      return;
    }
    try {
      await session.applySettings(next);
    } catch {
      // session reverted to previous settings on 422
    }
    redraw();
  }
  for (const input of [thresholdInput, maxRejectsInput, topKInput]) {
    input.addEventListener("change", onSettingsChange);
  }

  if (units.length > 0) {
    await session.openUnit(units[0].unit_id);
  }
  redraw();
}
