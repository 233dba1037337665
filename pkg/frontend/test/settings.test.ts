import { describe, expect, it } from "vitest";
import { clampThreshold, validateSettings } from "../src/settings.js";

describe("validateSettings", () => {
  it("accepts the defaults", () => {
    expect(validateSettings({ threshold: 0.5, max_rejects: 3, top_k: 5 }).ok).toBe(true);
  });

  it("accepts the boundary thresholds", () => {
    expect(validateSettings({ threshold: 0, max_rejects: 1, top_k: 1 }).ok).toBe(true);
    expect(validateSettings({ threshold: 1, max_rejects: 1, top_k: 1 }).ok).toBe(true);
  });

  it("rejects thresholds outside [0, 1]", () => {
    expect(validateSettings({ threshold: -0.1, max_rejects: 3, top_k: 5 }).ok).toBe(false);
    expect(validateSettings({ threshold: 1.01, max_rejects: 3, top_k: 5 }).ok).toBe(false);
    expect(validateSettings({ threshold: NaN, max_rejects: 3, top_k: 5 }).ok).toBe(false);
  });

  it("rejects non-positive or fractional counters", () => {
    for (const bad of [0, -1, 1.5, NaN]) {
      expect(validateSettings({ threshold: 0.5, max_rejects: bad, top_k: 5 }).ok).toBe(false);
      expect(validateSettings({ threshold: 0.5, max_rejects: 3, top_k: bad }).ok).toBe(false);
    }
  });

  it("names every offending field", () => {
    const result = validateSettings({ threshold: 2, max_rejects: 0, top_k: 0.5 });
    expect(result.errors).toHaveLength(3);
  });
});

describe("clampThreshold", () => {
  it("clamps into [0, 1]", () => {
    expect(clampThreshold(-3)).toBe(0);
    expect(clampThreshold(1.7)).toBe(1);
  });

  it("rounds to two decimals", () => {
    expect(clampThreshold(0.666666)).toBe(0.67);
    expect(clampThreshold(0.5)).toBe(0.5);
  });
});
