import { describe, expect, it } from "vitest";

import {
  applyFieldChange,
  applyResponse,
  applyRoadmapEdit,
  applyServerDiagnostics,
  banner,
  buildConfig,
  clearOverride,
  effectiveHardwareValue,
  effectiveRoadmap,
  exportScenario,
  importScenario,
  initialState,
  selectHardware,
  setFixedSizes,
} from "../src/state.js";
import type { EvaluateResponse, PresetCatalog } from "../src/types.js";

const catalog: PresetCatalog = {
  problems: [],
  hardware: [
    {
      name: "QuEra", hws: 5.1, qir_pct: -10, connectivity_penalty: "1",
      plqr: 100, rir_pct: -23, cir_pct: -10, processors_log10: 8,
      gate_time_ns: 250, roadmap_ref: "quera", notes: "",
    },
  ],
  roadmaps: {
    quera: {
      label: "QuEra", qubit_kind: "physical", extrapolation: "exponential",
      points: [
        { year: 2024, qubits: 256 },
        { year: 2025, qubits: 3000 },
        { year: 2026, qubits: 10000 },
      ],
    },
  },
};

function someResponse(): EvaluateResponse {
  return {
    status: "advantage_at",
    t_star: 2025.7,
    t_star_year: 2025,
    n_star_log10: 26.2,
    cost_status: "already_achieved",
    t_c_star: null,
    t_c_star_year: null,
    n_c_star_log10: 0,
    fixed_sizes: [],
    warnings: [],
    mode: "both",
    curves: { advantage: [], feasibility: [], cost_advantage: [] },
    runtime_curves: { x_log10n: [], classical_log10: [], quantum_adjusted_log10: [] },
    resolved_params: {},
  };
}

describe("field changes", () => {
  it("valid edits land in overrides and request a refresh", () => {
    const { state, refresh } = applyFieldChange(initialState(), "hws", 4.2);
    expect(refresh).toBe(true);
    expect(state.overrides.hws).toBe(4.2);
    expect(state.fieldErrors).toEqual({});
  });

  it("plqr below the floor is rejected without touching the scenario", () => {
    const { state, refresh } = applyFieldChange(initialState(), "plqr", 2);
    expect(refresh).toBe(false);
    expect(state.overrides.plqr).toBeUndefined();
    expect(state.fieldErrors.plqr).toMatch(/floor of 3/);
  });

  it("rates at -100 are rejected", () => {
    const { state, refresh } = applyFieldChange(initialState(), "qir_pct", -100);
    expect(refresh).toBe(false);
    expect(state.fieldErrors.qir_pct).toMatch(/-100/);
  });

  it("a later valid edit clears the error", () => {
    const bad = applyFieldChange(initialState(), "plqr", 1).state;
    const { state } = applyFieldChange(bad, "plqr", 10);
    expect(state.fieldErrors.plqr).toBeUndefined();
    expect(state.overrides.plqr).toBe(10);
  });

  it("clearOverride returns to the preset value", () => {
    const withOverride = applyFieldChange(initialState(), "hws", 9).state;
    const { state } = clearOverride(withOverride, "hws");
    expect(state.overrides.hws).toBeUndefined();
    expect(effectiveHardwareValue(state, catalog, "hws")).toBe(5.1);
  });

  it("fixed sizes must be nonnegative", () => {
    const { state, refresh } = setFixedSizes(initialState(), [20, -1]);
    expect(refresh).toBe(false);
    expect(state.fieldErrors.fixed_sizes).toBeTruthy();
  });
});

describe("roadmap edits", () => {
  it("ordering violations are inline diagnostics", () => {
    const { state, refresh } = applyRoadmapEdit(initialState(), catalog, {
      kind: "edit", index: 0, year: 2030, qubits: 256,
    });
    expect(refresh).toBe(false);
    expect(state.fieldErrors.roadmap).toMatch(/increasing/);
  });

  it("raising a milestone produces an inline roadmap override", () => {
    const { state, refresh } = applyRoadmapEdit(initialState(), catalog, {
      kind: "edit", index: 2, year: 2026, qubits: 20000,
    });
    expect(refresh).toBe(true);
    expect(state.overrides.roadmap?.points[2].qubits).toBe(20000);
    // preset catalog copy untouched
    expect(catalog.roadmaps.quera.points[2].qubits).toBe(10000);
  });

  it("deleting down to one point is rejected", () => {
    let state = initialState();
    state = applyRoadmapEdit(state, catalog, { kind: "remove", index: 0 }).state;
    state = applyRoadmapEdit(state, catalog, { kind: "remove", index: 0 }).state;
    expect(state.fieldErrors.roadmap).toMatch(/at least 2/);
    expect(effectiveRoadmap(state, catalog).points.length).toBe(2);
  });

  it("inserted points keep year order", () => {
    const { state } = applyRoadmapEdit(initialState(), catalog, {
      kind: "insert", year: 2024.5, qubits: 1000,
    });
    const years = state.overrides.roadmap!.points.map((p) => p.year);
    expect(years).toEqual([2024, 2024.5, 2025, 2026]);
  });

  it("positivity enforced", () => {
    const { state, refresh } = applyRoadmapEdit(initialState(), catalog, {
      kind: "edit", index: 1, year: 2025, qubits: 0,
    });
    expect(refresh).toBe(false);
    expect(state.fieldErrors.roadmap).toMatch(/positive/);
  });
});

describe("server diagnostics", () => {
  it("map onto field names without losing the last response", () => {
    let state = applyResponse(initialState(), someResponse());
    state = applyServerDiagnostics(state, [
      { field: "overrides.quantum_runtime", message: "unknown variable 'z'" },
    ]);
    expect(state.fieldErrors.quantum_runtime).toMatch(/unknown variable/);
    expect(state.lastResponse?.t_star).toBe(2025.7);
  });
});

describe("banner", () => {
  it("reports the advantage year from the response only", () => {
    const state = applyResponse(initialState(), someResponse());
    expect(banner(state)).toEqual({ kind: "year", year: 2025, exact: 2025.7 });
    expect(banner(state, true)).toEqual({ kind: "already" });
  });

  it("empty before any response", () => {
    expect(banner(initialState())).toEqual({ kind: "none" });
  });
});

describe("scenario export / import", () => {
  it("round-trips to an identical scenario", () => {
    let state = initialState();
    state = applyFieldChange(state, "hws", 6.5).state;
    state = applyFieldChange(state, "t0", 2025).state;
    state = applyRoadmapEdit(state, catalog, {
      kind: "edit", index: 2, year: 2027, qubits: 30000,
    }).state;
    state = setFixedSizes(state, [20]).state;

    const text = exportScenario(state);
    const back = importScenario(text);
    expect(back.problemId).toBe(state.problemId);
    expect(back.hardwareId).toBe(state.hardwareId);
    expect(back.overrides).toEqual(state.overrides);
    expect(back.mode).toBe(state.mode);
    expect(back.fixedSizes).toEqual(state.fixedSizes);
  });

  it("export carries exactly the evaluate body plus an output section", () => {
    const state = applyFieldChange(initialState(), "plqr", 50).state;
    const doc = JSON.parse(exportScenario(state));
    const { output, ...rest } = doc;
    expect(rest).toEqual(JSON.parse(JSON.stringify(buildConfig(state))));
    expect(output).toEqual({ format: "csv", path: "qea_out" });
  });

  it("edited roadmap points survive the round trip", () => {
    const { state } = applyRoadmapEdit(initialState(), catalog, {
      kind: "edit", index: 1, year: 2025, qubits: 5000,
    });
    const back = importScenario(exportScenario(state));
    expect(back.overrides.roadmap?.points[1].qubits).toBe(5000);
  });
});

describe("preset switching", () => {
  it("drops hardware overrides when the hardware changes", () => {
    let state = applyFieldChange(initialState(), "hws", 9).state;
    state = applyFieldChange(state, "t0", 2025).state;
    state = selectHardware(state, "IBM");
    expect(state.overrides.hws).toBeUndefined();
    expect(state.overrides.t0).toBe(2025); // scenario-level override survives
  });
});
