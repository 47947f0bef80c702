// Tornado-chart geometry for sweep reports: one bar per parameter spanning
// the advantage years its perturbations produced, widest effect first.

import type { SweepReport } from "./types.js";

export interface TornadoBar {
  param: string;
  lowYear: number;
  highYear: number;
  span: number;
  /** perturbed values that produced no advantage by the horizon */
  unresolved: number;
}

export function tornadoBars(report: SweepReport): TornadoBar[] {
  const byParam = new Map<string, { years: number[]; unresolved: number }>();
  for (const row of report.rows) {
    if (row.param === "baseline") continue;
    let entry = byParam.get(row.param);
    if (!entry) {
      entry = { years: [], unresolved: 0 };
      byParam.set(row.param, entry);
    }
    if (row.year === null) {
      entry.unresolved += 1;
    } else {
      entry.years.push(row.year);
    }
  }
  const base = report.baseline_year;
  const bars: TornadoBar[] = [];
  for (const [param, { years, unresolved }] of byParam) {
    const all = base !== null ? [...years, base] : years;
    if (all.length === 0) continue;
    const lowYear = Math.min(...all);
    const highYear = Math.max(...all);
    bars.push({ param, lowYear, highYear, span: highYear - lowYear, unresolved });
  }
  bars.sort((a, b) => b.span - a.span || a.param.localeCompare(b.param));
  return bars;
}

/** Horizontal extent of the chart: all bar ends plus the baseline. */
export function tornadoExtent(bars: TornadoBar[], baseline: number | null): [number, number] {
  let min = baseline ?? Infinity;
  let max = baseline ?? -Infinity;
  for (const bar of bars) {
    min = Math.min(min, bar.lowYear);
    max = Math.max(max, bar.highYear);
  }
  if (!Number.isFinite(min)) return [2020, 2040];
  const pad = Math.max((max - min) * 0.05, 0.5);
  return [min - pad, max + pad];
}
