// Payload shapes shared with the HTTP service.

export type Mode = "speed" | "cost" | "both";
export type QpsKind = "exponential" | "linear" | "logarithmic";

export interface RoadmapPoint {
  year: number;
  qubits: number;
  source_note?: string;
}

export interface RoadmapDoc {
  label: string;
  qubit_kind: "physical" | "logical";
  extrapolation: "exponential" | "linear";
  points: RoadmapPoint[];
}

export interface ProblemPreset {
  name: string;
  classical_runtime: string;
  quantum_runtime: string;
  classical_work: string;
  quantum_work: string;
  qps: QpsKind;
  notes: string;
}

export interface HardwarePreset {
  name: string;
  hws: number;
  qir_pct: number;
  connectivity_penalty: string;
  plqr: number;
  rir_pct: number;
  cir_pct: number;
  processors_log10: number;
  gate_time_ns: number;
  roadmap_ref: string;
  notes: string;
}

export interface PresetCatalog {
  problems: ProblemPreset[];
  hardware: HardwarePreset[];
  roadmaps: Record<string, RoadmapDoc>;
}

// Override keys accepted by the service; expressions travel as source text.
export interface Overrides {
  classical_runtime?: string;
  quantum_runtime?: string;
  classical_work?: string;
  quantum_work?: string;
  connectivity_penalty?: string;
  qps?: QpsKind;
  hws?: number;
  qir_pct?: number;
  plqr?: number;
  rir_pct?: number;
  cir_pct?: number;
  processors_log10?: number;
  cost_factor_log10?: number;
  t0?: number;
  roadmap?: RoadmapDoc;
}

export interface SweepPerturbation {
  param: string;
  values: number[];
  mode?: "set" | "scale";
}

export interface RunConfig {
  problem: string;
  hardware: string;
  overrides?: Overrides;
  mode?: Mode;
  fixed_sizes?: number[];
  sweep?: {
    target_size_log10: number;
    perturbations: "default" | SweepPerturbation[];
    cost?: boolean;
  };
  output?: { format: "csv" | "json"; path: string };
}

export type CurvePoint = [number, number]; // [year, log10 n]

export interface FixedSizeYears {
  log10_n: number;
  year?: number | null;
  year_floor?: number | null;
  cost_year?: number | null;
  cost_year_floor?: number | null;
}

export interface EvaluateResponse {
  status?: string;
  t_star?: number | null;
  t_star_year?: number | null;
  n_star_log10?: number | string;
  cost_status?: string;
  t_c_star?: number | null;
  t_c_star_year?: number | null;
  n_c_star_log10?: number | string;
  fixed_sizes: FixedSizeYears[];
  warnings: string[];
  mode: Mode;
  curves: {
    advantage: CurvePoint[];
    feasibility: CurvePoint[];
    cost_advantage: CurvePoint[];
  };
  runtime_curves: {
    x_log10n: number[];
    classical_log10: number[];
    quantum_adjusted_log10: number[];
  };
  resolved_params: Record<string, unknown>;
}

export interface SweepRow {
  param: string;
  value: number | null;
  year: number | null;
  delta_years: number | null;
  note: string;
}

export interface SweepReport {
  target_size_log10: number;
  baseline_year: number | null;
  rows: SweepRow[];
}

export interface FieldDiagnostic {
  field: string;
  message: string;
}
