// Scenario state and its pure transitions. The app layer owns side effects
// (debounced /evaluate calls); everything here is synchronous and testable.
//
// Displayed numbers always come from lastResponse; the state only carries
// the inputs that produced it. Exporting a scenario serializes exactly the
// config the UI sends to /evaluate, so the CLI reproduces it bit for bit.

import type {
  EvaluateResponse,
  HardwarePreset,
  Mode,
  Overrides,
  PresetCatalog,
  RoadmapDoc,
  RunConfig,
} from "./types.js";
import { validateField, validateFixedSize, validateRoadmap } from "./validate.js";

export interface ScenarioState {
  problemId: string;
  hardwareId: string;
  overrides: Overrides;
  mode: Mode;
  fixedSizes: number[];
  lastResponse: EvaluateResponse | null;
  fieldErrors: Record<string, string>;
}

export function initialState(problemId = "search", hardwareId = "QuEra"): ScenarioState {
  return {
    problemId,
    hardwareId,
    overrides: {},
    mode: "both",
    fixedSizes: [],
    lastResponse: null,
    fieldErrors: {},
  };
}

export function buildConfig(state: ScenarioState): RunConfig {
  const config: RunConfig = {
    problem: state.problemId,
    hardware: state.hardwareId,
  };
  if (Object.keys(state.overrides).length > 0) {
    config.overrides = state.overrides;
  }
  config.mode = state.mode;
  if (state.fixedSizes.length > 0) {
    config.fixed_sizes = state.fixedSizes;
  }
  return config;
}

/** Valid edits update the override set and clear the field's error; invalid
 * edits record a diagnostic and leave the scenario untouched, so the last
 * good chart stays up. Returns the new state plus whether to re-evaluate. */
export function applyFieldChange(
  state: ScenarioState,
  field: keyof Overrides,
  value: Overrides[keyof Overrides],
): { state: ScenarioState; refresh: boolean } {
  const error = validateField(field, value);
  if (error) {
    return {
      state: { ...state, fieldErrors: { ...state.fieldErrors, [field]: error } },
      refresh: false,
    };
  }
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors[field];
  const overrides = { ...state.overrides, [field]: value } as Overrides;
  return { state: { ...state, overrides, fieldErrors }, refresh: true };
}

export function clearOverride(
  state: ScenarioState,
  field: keyof Overrides,
): { state: ScenarioState; refresh: boolean } {
  if (!(field in state.overrides)) return { state, refresh: false };
  const overrides = { ...state.overrides };
  delete overrides[field];
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors[field];
  return { state: { ...state, overrides, fieldErrors }, refresh: true };
}

export function selectProblem(state: ScenarioState, problemId: string): ScenarioState {
  // expression/qps overrides belong to the previous problem; drop them
  const overrides = { ...state.overrides };
  delete overrides.classical_runtime;
  delete overrides.quantum_runtime;
  delete overrides.classical_work;
  delete overrides.quantum_work;
  delete overrides.qps;
  return { ...state, problemId, overrides };
}

export function selectHardware(state: ScenarioState, hardwareId: string): ScenarioState {
  const overrides = { ...state.overrides };
  delete overrides.hws;
  delete overrides.qir_pct;
  delete overrides.plqr;
  delete overrides.rir_pct;
  delete overrides.cir_pct;
  delete overrides.processors_log10;
  delete overrides.connectivity_penalty;
  delete overrides.roadmap;
  return { ...state, hardwareId, overrides };
}

export function setMode(state: ScenarioState, mode: Mode): ScenarioState {
  return { ...state, mode };
}

export function setFixedSizes(
  state: ScenarioState,
  sizes: number[],
): { state: ScenarioState; refresh: boolean } {
  for (const size of sizes) {
    const error = validateFixedSize(size);
    if (error) {
      return {
        state: { ...state, fieldErrors: { ...state.fieldErrors, fixed_sizes: error } },
        refresh: false,
      };
    }
  }
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors.fixed_sizes;
  return { state: { ...state, fixedSizes: sizes, fieldErrors }, refresh: true };
}

export function applyResponse(
  state: ScenarioState,
  response: EvaluateResponse,
): ScenarioState {
  return { ...state, lastResponse: response };
}

/** Server 400s carry {field, message} diagnostics; surface them inline. */
export function applyServerDiagnostics(
  state: ScenarioState,
  diagnostics: { field: string; message: string }[],
): ScenarioState {
  const fieldErrors = { ...state.fieldErrors };
  for (const d of diagnostics) {
    // strip the config prefix: "overrides.plqr" etc. map onto our fields
    const key = d.field.split(".").pop() ?? d.field;
    fieldErrors[key] = d.message;
  }
  return { ...state, fieldErrors };
}

// --- roadmap editing ---------------------------------------------------------

export function effectiveRoadmap(
  state: ScenarioState,
  catalog: PresetCatalog,
): RoadmapDoc {
  if (state.overrides.roadmap) return state.overrides.roadmap;
  const hardware = catalog.hardware.find((h) => h.name === state.hardwareId);
  const doc = hardware ? catalog.roadmaps[hardware.roadmap_ref] : undefined;
  if (!doc) throw new Error(`no roadmap for hardware '${state.hardwareId}'`);
  return doc;
}

export type RoadmapEdit =
  | { kind: "edit"; index: number; year: number; qubits: number }
  | { kind: "insert"; year: number; qubits: number }
  | { kind: "remove"; index: number };

export function applyRoadmapEdit(
  state: ScenarioState,
  catalog: PresetCatalog,
  edit: RoadmapEdit,
): { state: ScenarioState; refresh: boolean } {
  const current = effectiveRoadmap(state, catalog);
  const points = current.points.map((p) => ({ ...p }));
  if (edit.kind === "edit") {
    if (!points[edit.index]) {
      return fail(state, "roadmap", `no point at index ${edit.index}`);
    }
    points[edit.index] = {
      ...points[edit.index], year: edit.year, qubits: edit.qubits,
      source_note: "edited",
    };
  } else if (edit.kind === "insert") {
    points.push({ year: edit.year, qubits: edit.qubits, source_note: "added" });
    points.sort((a, b) => a.year - b.year);
  } else {
    if (!points[edit.index]) {
      return fail(state, "roadmap", `no point at index ${edit.index}`);
    }
    points.splice(edit.index, 1);
  }
  const doc: RoadmapDoc = { ...current, points };
  const error = validateRoadmap(doc);
  if (error) return fail(state, "roadmap", error);
  return applyFieldChange(state, "roadmap", doc);
}

function fail(state: ScenarioState, field: string, message: string) {
  return {
    state: { ...state, fieldErrors: { ...state.fieldErrors, [field]: message } },
    refresh: false,
  };
}

// --- effective parameter view -------------------------------------------------

/** Number shown in an input: the override if present, else the preset value. */
export function effectiveHardwareValue(
  state: ScenarioState,
  catalog: PresetCatalog,
  field: keyof HardwarePreset & keyof Overrides,
): number {
  const override = state.overrides[field];
  if (typeof override === "number") return override;
  const hardware = catalog.hardware.find((h) => h.name === state.hardwareId);
  if (!hardware) throw new Error(`unknown hardware '${state.hardwareId}'`);
  return hardware[field] as number;
}

// --- banner -------------------------------------------------------------------

export type Banner =
  | { kind: "already" }
  | { kind: "year"; year: number; exact: number }
  | { kind: "never" }
  | { kind: "none" };

export function banner(state: ScenarioState, costMode = false): Banner {
  const r = state.lastResponse;
  if (!r) return { kind: "none" };
  const status = costMode ? r.cost_status : r.status;
  const tStar = costMode ? r.t_c_star : r.t_star;
  const tYear = costMode ? r.t_c_star_year : r.t_star_year;
  if (status === "already_achieved") return { kind: "already" };
  if (status === "advantage_at" && tStar != null && tYear != null) {
    return { kind: "year", year: tYear, exact: tStar };
  }
  if (status === "no_advantage_by_3000") return { kind: "never" };
  return { kind: "none" };
}

// --- scenario export / import --------------------------------------------------

/** The downloadable document is exactly the /evaluate body plus an output
 * section, so `qea run` on it reproduces the on-screen numbers. */
export function exportScenario(state: ScenarioState): string {
  const config: RunConfig = {
    ...buildConfig(state),
    output: { format: "csv", path: "qea_out" },
  };
  return JSON.stringify(config, null, 2) + "\n";
}

export function importScenario(text: string): ScenarioState {
  const data = JSON.parse(text) as RunConfig;
  if (typeof data.problem !== "string" || typeof data.hardware !== "string") {
    throw new Error("scenario must reference presets by name");
  }
  const state = initialState(data.problem, data.hardware);
  return {
    ...state,
    overrides: data.overrides ?? {},
    mode: data.mode ?? "both",
    fixedSizes: data.fixed_sizes ?? [],
  };
}
