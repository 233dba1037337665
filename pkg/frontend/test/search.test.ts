import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { debounce } from "../src/search.js";

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once after the wait, with the last arguments", () => {
    const calls: string[] = [];
    const run = debounce((q: string) => calls.push(q), 250);
    run("p");
    run("pu");
    run("pump");
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(249);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual(["pump"]);
  });

  it("fires again for a later burst", () => {
    const calls: string[] = [];
    const run = debounce((q: string) => calls.push(q), 100);
    run("valve");
    vi.advanceTimersByTime(100);
    run("valves");
    vi.advanceTimersByTime(100);
    expect(calls).toEqual(["valve", "valves"]);
  });
});
