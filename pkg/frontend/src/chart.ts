// Chart geometry: pure functions from series data to SVG path strings and
// tick positions. The app layer only assembles elements.

import type { CurvePoint } from "./types.js";

export interface Scale {
  (value: number): number;
}

export function linearScale(
  d0: number, d1: number, r0: number, r1: number,
): Scale {
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Split a sampled series into contiguous runs. The server omits samples
 * where a curve has no finite value, so a hole in the time grid marks a
 * real gap that must not be bridged by a line segment. */
export function splitAtGaps(points: CurvePoint[], gridStep: number): CurvePoint[][] {
  const segments: CurvePoint[][] = [];
  let current: CurvePoint[] = [];
  for (const point of points) {
    const previous = current[current.length - 1];
    if (previous && point[0] - previous[0] > 1.5 * gridStep) {
      if (current.length > 0) segments.push(current);
      current = [];
    }
    current.push(point);
  }
  if (current.length > 0) segments.push(current);
  return segments;
}

export function pathFor(points: CurvePoint[], x: Scale, y: Scale): string {
  return points
    .map(([t, v], i) => `${i === 0 ? "M" : "L"}${x(t).toFixed(2)},${y(v).toFixed(2)}`)
    .join("");
}

export function seriesPaths(
  points: CurvePoint[], gridStep: number, x: Scale, y: Scale,
): string[] {
  return splitAtGaps(points, gridStep)
    .filter((segment) => segment.length > 1)
    .map((segment) => pathFor(segment, x, y));
}

/** Marker for the crossover badge: the feasibility sample nearest t*.
 * Stays within one sample step of the reported year by construction. */
export function crossoverMarker(
  tStar: number, feasibility: CurvePoint[],
): { t: number; v: number } | null {
  let best: CurvePoint | null = null;
  for (const point of feasibility) {
    if (best === null || Math.abs(point[0] - tStar) < Math.abs(best[0] - tStar)) {
      best = point;
    }
  }
  return best ? { t: best[0], v: best[1] } : null;
}

/** Ticks for a log10-valued axis: decade positions labeled 10^k. */
export function logTicks(
  minLog10: number, maxLog10: number, maxCount = 8,
): { value: number; label: string }[] {
  const lo = Math.ceil(minLog10);
  const hi = Math.floor(maxLog10);
  if (hi < lo) return [];
  const stride = Math.max(1, Math.ceil((hi - lo + 1) / maxCount));
  const ticks = [];
  for (let k = lo; k <= hi; k += stride) {
    ticks.push({ value: k, label: `1e${k}` });
  }
  return ticks;
}

export function yearTicks(
  t0: number, t1: number, maxCount = 8,
): number[] {
  const span = t1 - t0;
  const stride = Math.max(1, Math.ceil(span / maxCount));
  const ticks = [];
  for (let t = Math.ceil(t0); t <= t1; t += stride) {
    ticks.push(t);
  }
  return ticks;
}

/** Overall [min, max] of the log10 values across series, padded a little. */
export function valueExtent(seriesList: CurvePoint[][]): [number, number] {
  let min = Infinity;
  let max = -Infinity;
  for (const series of seriesList) {
    for (const [, v] of series) {
      if (v < min) min = v;
      if (v > max) max = v;
    }
  }
  if (!Number.isFinite(min)) return [0, 1];
  const pad = Math.max((max - min) * 0.05, 0.5);
  return [min - pad, max + pad];
}
