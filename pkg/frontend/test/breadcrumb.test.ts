import { describe, expect, it } from "vitest";
import { breadcrumbTrail } from "../src/breadcrumb.js";
import { makeConcept } from "./helpers.js";

describe("breadcrumbTrail", () => {
  it("is just the label for a root concept", () => {
    expect(breadcrumbTrail(makeConcept("urn:t", { pref_label: "Tekniska system" }))).toBe(
      "Tekniska system",
    );
  });

  it("lists ancestors root-first, concept last", () => {
    // the API reports ancestors nearest-first, so the trail reverses them
    const concept = makeConcept("urn:pump", {
      pref_label: "Pump",
      ancestors: [
        { id: "urn:va", pref_label: "Vattensystem", code: "VA" },
        { id: "urn:t", pref_label: "Tekniska system", code: "T" },
      ],
    });
    expect(breadcrumbTrail(concept)).toBe("Tekniska system › Vattensystem › Pump");
  });

  it("honours a custom separator", () => {
    const concept = makeConcept("urn:pump", {
      pref_label: "Pump",
      ancestors: [{ id: "urn:va", pref_label: "Vattensystem", code: "VA" }],
    });
    expect(breadcrumbTrail(concept, " / ")).toBe("Vattensystem / Pump");
  });
});
