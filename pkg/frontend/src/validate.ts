// Client-side mirrors of the server's invariants, so obviously bad edits
// surface immediately without a round trip. The server stays authoritative:
// its 400 diagnostics map onto the same field names.

import type { Overrides, RoadmapDoc } from "./types.js";

export const PLQR_FLOOR = 3;

const NUMBER_FIELDS = new Set([
  "hws", "qir_pct", "plqr", "rir_pct", "cir_pct",
  "processors_log10", "cost_factor_log10", "t0",
]);

const EXPRESSION_FIELDS = new Set([
  "classical_runtime", "quantum_runtime", "classical_work", "quantum_work",
  "connectivity_penalty",
]);

export function validateField(field: keyof Overrides, value: unknown): string | null {
  if (NUMBER_FIELDS.has(field)) {
    const num = typeof value === "number" ? value : NaN;
    if (!Number.isFinite(num)) return "must be a number";
    if (field === "plqr" && num < PLQR_FLOOR) {
      return `must be at least the floor of ${PLQR_FLOOR}`;
    }
    if ((field === "qir_pct" || field === "rir_pct" || field === "cir_pct")
        && num <= -100) {
      return "must be above -100 percent per year";
    }
    return null;
  }
  if (EXPRESSION_FIELDS.has(field)) {
    if (typeof value !== "string" || value.trim() === "") {
      return "expression required";
    }
    return null;
  }
  if (field === "qps") {
    return value === "exponential" || value === "linear" || value === "logarithmic"
      ? null : "must be exponential, linear, or logarithmic";
  }
  if (field === "roadmap") {
    return validateRoadmap(value as RoadmapDoc);
  }
  return null;
}

export function validateRoadmap(doc: RoadmapDoc): string | null {
  if (!doc || !Array.isArray(doc.points)) return "roadmap needs a points list";
  if (doc.points.length < 2) return "roadmap needs at least 2 points";
  for (let i = 0; i < doc.points.length; i++) {
    const p = doc.points[i];
    if (!Number.isFinite(p.year)) return `point ${i + 1}: year must be a number`;
    if (!Number.isFinite(p.qubits) || p.qubits <= 0) {
      return `point ${i + 1}: qubit count must be positive`;
    }
    if (i > 0 && p.year <= doc.points[i - 1].year) {
      return `point ${i + 1}: years must be strictly increasing`;
    }
  }
  return null;
}

export function validateFixedSize(value: number): string | null {
  if (!Number.isFinite(value) || value < 0) return "must be a log10 size >= 0";
  return null;
}

// Slowdown composer inputs must all be positive.
export function validateComposerInput(value: number): string | null {
  return Number.isFinite(value) && value > 0 ? null : "must be positive";
}
