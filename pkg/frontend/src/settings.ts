import type { Settings } from "./types.js";

export interface SettingsValidation {
  ok: boolean;
  errors: string[];
}

/** Client-side validation mirroring the server's 422 rules, so invalid
 * values never leave the browser. */
export function validateSettings(settings: Settings): SettingsValidation {
  const errors: string[] = [];
  if (!(settings.threshold >= 0 && settings.threshold <= 1)) {
    errors.push("threshold must be between 0 and 1");
  }
  if (!Number.isInteger(settings.max_rejects) || settings.max_rejects < 1) {
    errors.push("max rejects must be an integer of at least 1");
  }
  if (!Number.isInteger(settings.top_k) || settings.top_k < 1) {
    errors.push("top k must be an integer of at least 1");
  }
  return { ok: errors.length === 0, errors };
}

export function clampThreshold(value: number): number {
  return Math.min(1, Math.max(0, Math.round(value * 100) / 100));
}
