import { describe, expect, it } from "vitest";

import {
  crossoverMarker,
  linearScale,
  logTicks,
  seriesPaths,
  splitAtGaps,
  valueExtent,
  yearTicks,
} from "../src/chart.js";
import { tornadoBars, tornadoExtent } from "../src/tornado.js";
import type { CurvePoint, SweepReport } from "../src/types.js";

describe("splitAtGaps", () => {
  it("keeps a contiguous series whole", () => {
    const points: CurvePoint[] = [[2025, 1], [2025.1, 2], [2025.2, 3]];
    expect(splitAtGaps(points, 0.1)).toEqual([points]);
  });

  it("splits where the server omitted samples", () => {
    const points: CurvePoint[] = [[2025, 1], [2025.1, 2], [2027, 9], [2027.1, 10]];
    const segments = splitAtGaps(points, 0.1);
    expect(segments.length).toBe(2);
    expect(segments[0].length).toBe(2);
    expect(segments[1][0][0]).toBe(2027);
  });

  it("handles empty series", () => {
    expect(splitAtGaps([], 0.1)).toEqual([]);
  });
});

describe("seriesPaths", () => {
  it("emits one subpath per segment and skips singletons", () => {
    const x = linearScale(2025, 2026, 0, 100);
    const y = linearScale(0, 10, 100, 0);
    const points: CurvePoint[] = [[2025, 0], [2025.1, 1], [2025.9, 5]];
    const paths = seriesPaths(points, 0.1, x, y);
    expect(paths.length).toBe(1); // the lone trailing point is not drawable
    expect(paths[0].startsWith("M")).toBe(true);
  });
});

describe("crossoverMarker", () => {
  it("lands within one sample step of the reported year", () => {
    const feasibility: CurvePoint[] = [];
    for (let i = 0; i <= 100; i++) {
      feasibility.push([2025 + i * 0.1, i * 0.2]);
    }
    const marker = crossoverMarker(2029.97, feasibility)!;
    expect(Math.abs(marker.t - 2029.97)).toBeLessThanOrEqual(0.1 / 2 + 1e-9);
  });

  it("null for an empty series", () => {
    expect(crossoverMarker(2030, [])).toBeNull();
  });
});

describe("ticks and extents", () => {
  it("log ticks sit on decades with 1eK labels", () => {
    const ticks = logTicks(0.3, 4.7);
    expect(ticks.map((t) => t.value)).toEqual([1, 2, 3, 4]);
    expect(ticks[0].label).toBe("1e1");
  });

  it("log ticks thin out on huge ranges", () => {
    expect(logTicks(0, 300, 8).length).toBeLessThanOrEqual(8);
  });

  it("year ticks stay within bounds", () => {
    const ticks = yearTicks(2025.2, 2055);
    expect(ticks[0]).toBeGreaterThanOrEqual(2026);
    expect(ticks[ticks.length - 1]).toBeLessThanOrEqual(2055);
  });

  it("value extent pads and survives empty input", () => {
    const [lo, hi] = valueExtent([[[0, 5], [1, 10]]]);
    expect(lo).toBeLessThan(5);
    expect(hi).toBeGreaterThan(10);
    expect(valueExtent([[]])).toEqual([0, 1]);
  });
});

describe("tornado geometry", () => {
  const report: SweepReport = {
    target_size_log10: 20,
    baseline_year: 2030,
    rows: [
      { param: "baseline", value: null, year: 2030, delta_years: 0, note: "" },
      { param: "hws", value: 4, year: 2026, delta_years: -4, note: "" },
      { param: "hws", value: 6, year: 2041, delta_years: 11, note: "" },
      { param: "qir_pct", value: 0, year: null, delta_years: null, note: "" },
      { param: "qir_pct", value: -30, year: 2028, delta_years: -2, note: "" },
    ],
  };

  it("one bar per parameter, widest first, spanning the baseline", () => {
    const bars = tornadoBars(report);
    expect(bars.map((b) => b.param)).toEqual(["hws", "qir_pct"]);
    expect(bars[0].lowYear).toBe(2026);
    expect(bars[0].highYear).toBe(2041);
    expect(bars[1].lowYear).toBe(2028);
    expect(bars[1].highYear).toBe(2030); // baseline included in the span
    expect(bars[1].unresolved).toBe(1);
  });

  it("extent covers all bars", () => {
    const bars = tornadoBars(report);
    const [lo, hi] = tornadoExtent(bars, report.baseline_year);
    expect(lo).toBeLessThanOrEqual(2026);
    expect(hi).toBeGreaterThanOrEqual(2041);
  });
});
