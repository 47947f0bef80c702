// DOM wiring for the calculator. All numbers on screen come from the last
// /evaluate response; this layer only collects edits, asks the server, and
// redraws.

import { ApiClient, ValidationError } from "./api.js";
import {
  crossoverMarker,
  linearScale,
  logTicks,
  seriesPaths,
  valueExtent,
  yearTicks,
} from "./chart.js";
import { EDIT_DEBOUNCE_MS, LatestWins, debounce } from "./debounce.js";
import {
  Banner,
  RoadmapEdit,
  ScenarioState,
  applyFieldChange,
  applyResponse,
  applyRoadmapEdit,
  applyServerDiagnostics,
  banner,
  buildConfig,
  effectiveHardwareValue,
  effectiveRoadmap,
  exportScenario,
  importScenario,
  initialState,
  selectHardware,
  selectProblem,
  setFixedSizes,
} from "./state.js";
import { DEFAULT_INPUTS, SlowdownInputs, composeSlowdownLog10 } from "./slowdown.js";
import { tornadoBars, tornadoExtent } from "./tornado.js";
import type { Overrides, PresetCatalog, SweepReport } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CURVE_STEP_YEARS = 0.1;

const NUMERIC_FIELDS: { field: keyof Overrides; label: string; step: number }[] = [
  { field: "hws", label: "hardware slowdown (log10)", step: 0.1 },
  { field: "qir_pct", label: "slowdown change %/yr", step: 1 },
  { field: "plqr", label: "physical per logical qubit", step: 1 },
  { field: "rir_pct", label: "qubit-ratio change %/yr", step: 1 },
  { field: "processors_log10", label: "classical processors (log10)", step: 0.5 },
  { field: "cir_pct", label: "cost change %/yr", step: 1 },
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, attrs: Record<string, string> = {}, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svg(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export class App {
  state: ScenarioState = initialState();
  catalog: PresetCatalog | null = null;
  sweepReport: SweepReport | null = null;
  composer: SlowdownInputs = { ...DEFAULT_INPUTS };
  costView = false;

  private gate = new LatestWins();
  private scheduleRefresh: () => void;

  constructor(private api: ApiClient, private root: HTMLElement) {
    this.scheduleRefresh = debounce(() => void this.refresh(), EDIT_DEBOUNCE_MS);
  }

  async start() {
    this.catalog = await this.api.presets();
    this.renderSkeleton();
    await this.refresh();
  }

  /** Apply a state transition; kick the debounced evaluate when asked. */
  private transition(next: { state: ScenarioState; refresh: boolean }) {
    this.state = next.state;
    this.renderControls();
    if (next.refresh) this.scheduleRefresh();
  }

  private async refresh() {
    const ticket = this.gate.start();
    try {
      const response = await this.api.evaluate(buildConfig(this.state));
      if (!this.gate.isCurrent(ticket)) return; // superseded by a newer edit
      this.state = applyResponse(this.state, response);
      this.renderControls();
      this.renderCharts();
    } catch (error) {
      if (!this.gate.isCurrent(ticket)) return;
      if (error instanceof ValidationError) {
        this.state = applyServerDiagnostics(this.state, error.diagnostics);
        this.renderControls(); // prior charts stay up
      } else {
        this.setStatusLine(`service error: ${String(error)}`);
      }
    }
  }

  private async runSweep() {
    if (this.state.fixedSizes.length === 0) {
      this.setStatusLine("add a fixed problem size to sweep around");
      return;
    }
    const config = {
      ...buildConfig(this.state),
      sweep: {
        target_size_log10: this.state.fixedSizes[0],
        perturbations: "default" as const,
        cost: this.costView,
      },
    };
    this.setStatusLine("sweeping...");
    try {
      this.sweepReport = await this.api.sweep(config);
      this.setStatusLine("");
      this.renderTornado();
    } catch (error) {
      this.setStatusLine(`sweep failed: ${String(error)}`);
    }
  }

  // --- rendering -------------------------------------------------------------

  private renderSkeleton() {
    this.root.replaceChildren();
    const header = el("header");
    header.append(el("h1", {}, "Quantum economic advantage calculator"));
    header.append(el("div", { id: "banner", class: "banner" }));
    this.root.append(header);

    const layout = el("div", { class: "layout" });
    const controls = el("div", { class: "controls", id: "controls" });
    const charts = el("div", { class: "charts" });
    charts.append(
      el("div", { id: "status", class: "status" }),
      el("h2", {}, "Runtime crossover (classical vs adjusted quantum)"),
      el("div", { id: "runtime-chart" }),
      el("h2", {}, "Feasibility and advantage over time"),
      el("div", { id: "time-chart" }),
      el("h2", {}, "Parameter sweep"),
      el("div", { id: "tornado" }),
    );
    layout.append(controls, charts);
    this.root.append(layout);
    this.renderControls();
  }

  private renderControls() {
    const catalog = this.catalog;
    if (!catalog) return;
    const container = document.getElementById("controls");
    if (!container) return;
    container.replaceChildren();

    // scenario pickers
    const scenario = el("fieldset");
    scenario.append(el("legend", {}, "Scenario"));
    scenario.append(this.presetSelect("problem", catalog.problems.map((p) => p.name),
      this.state.problemId, (name) => {
        this.state = selectProblem(this.state, name);
        this.renderControls();
        this.scheduleRefresh();
      }));
    scenario.append(this.presetSelect("hardware", catalog.hardware.map((h) => h.name),
      this.state.hardwareId, (name) => {
        this.state = selectHardware(this.state, name);
        this.renderControls();
        this.scheduleRefresh();
      }));

    const modeRow = el("div", { class: "row" });
    modeRow.append(el("label", {}, "view"));
    const toggle = el("button", { type: "button" },
      this.costView ? "cost mode" : "speed mode");
    toggle.addEventListener("click", () => {
      this.costView = !this.costView;
      this.renderControls();
      this.renderCharts();
    });
    modeRow.append(toggle);
    scenario.append(modeRow);

    const sizesRow = el("div", { class: "row" });
    sizesRow.append(el("label", {}, "fixed sizes (log10 n)"));
    const sizes = el("input", {
      type: "text",
      value: this.state.fixedSizes.join(", "),
      placeholder: "e.g. 20",
    });
    sizes.addEventListener("change", () => {
      const parsed = sizes.value.split(",").map((s) => s.trim()).filter(Boolean)
        .map(Number);
      this.transition(setFixedSizes(this.state, parsed));
    });
    sizesRow.append(sizes);
    sizesRow.append(this.errorLabel("fixed_sizes"));
    scenario.append(sizesRow);
    container.append(scenario);

    // numeric overhead parameters
    const params = el("fieldset");
    params.append(el("legend", {}, "Hardware overheads"));
    for (const { field, label, step } of NUMERIC_FIELDS) {
      const row = el("div", { class: "row" });
      row.append(el("label", {}, label));
      const input = el("input", {
        type: "number",
        step: String(step),
        value: String(effectiveHardwareValue(this.state, catalog, field as never)),
      });
      input.addEventListener("change", () => {
        this.transition(applyFieldChange(this.state, field, Number(input.value)));
      });
      row.append(input, this.errorLabel(field));
      params.append(row);
    }

    const t0Row = el("div", { class: "row" });
    t0Row.append(el("label", {}, "reference year t0"));
    const t0 = el("input", {
      type: "number", step: "1",
      value: String(this.state.overrides.t0 ?? new Date().getFullYear()),
    });
    t0.addEventListener("change", () => {
      this.transition(applyFieldChange(this.state, "t0", Number(t0.value)));
    });
    t0Row.append(t0, this.errorLabel("t0"));
    params.append(t0Row);

    const penaltyRow = el("div", { class: "row" });
    penaltyRow.append(el("label", {}, "connectivity penalty P(q)"));
    const hardware = catalog.hardware.find((h) => h.name === this.state.hardwareId);
    const penalty = el("input", {
      type: "text",
      value: this.state.overrides.connectivity_penalty
        ?? hardware?.connectivity_penalty ?? "1",
    });
    penalty.addEventListener("change", () => {
      this.transition(applyFieldChange(this.state, "connectivity_penalty", penalty.value));
    });
    penaltyRow.append(penalty, this.errorLabel("connectivity_penalty"));
    params.append(penaltyRow);
    container.append(params);

    container.append(this.composerPanel());
    container.append(this.roadmapPanel());

    // export / import / sweep
    const actions = el("fieldset");
    actions.append(el("legend", {}, "Scenario file"));
    const exportBtn = el("button", { type: "button" }, "export scenario");
    exportBtn.addEventListener("click", () => this.download());
    const importInput = el("input", { type: "file", accept: ".json" });
    importInput.addEventListener("change", async () => {
      const file = importInput.files?.[0];
      if (!file) return;
      try {
        this.state = importScenario(await file.text());
        this.renderControls();
        this.scheduleRefresh();
      } catch (error) {
        this.setStatusLine(`import failed: ${String(error)}`);
      }
    });
    const sweepBtn = el("button", { type: "button" }, "run sweep");
    sweepBtn.addEventListener("click", () => void this.runSweep());
    actions.append(exportBtn, importInput, sweepBtn);
    container.append(actions);

    this.renderBanner();
  }

  private presetSelect(
    label: string, names: string[], selected: string,
    onChange: (name: string) => void,
  ): HTMLElement {
    const row = el("div", { class: "row" });
    row.append(el("label", {}, label));
    const select = el("select");
    for (const name of names) {
      const option = el("option", { value: name }, name);
      if (name === selected) option.setAttribute("selected", "selected");
      select.append(option);
    }
    select.addEventListener("change", () => onChange(select.value));
    row.append(select);
    return row;
  }

  private composerPanel(): HTMLElement {
    const panel = el("fieldset");
    panel.append(el("legend", {}, "Slowdown composer"));
    const rows: [string, keyof SlowdownInputs][] = [
      ["2-qubit gate time (ns)", "gateTimeNs"],
      ["classical clock (GHz)", "classicalClockGhz"],
      ["gate overhead", "gateOverhead"],
      ["algorithm constant ratio", "algConstantRatio"],
    ];
    for (const [label, key] of rows) {
      const row = el("div", { class: "row" });
      row.append(el("label", {}, label));
      const input = el("input", {
        type: "number", value: String(this.composer[key]), step: "any",
      });
      input.addEventListener("change", () => {
        this.composer = { ...this.composer, [key]: Number(input.value) };
        this.renderControls();
      });
      row.append(input);
      panel.append(row);
    }
    const composed = composeSlowdownLog10(this.composer);
    const result = el("div", { class: "row" });
    result.append(el("label", {}, "composed hws"));
    result.append(el("span", { class: "computed" },
      Number.isFinite(composed) ? composed.toFixed(3) : "invalid"));
    const apply = el("button", { type: "button" }, "use as hws");
    apply.addEventListener("click", () => {
      if (Number.isFinite(composed)) {
        this.transition(applyFieldChange(this.state, "hws",
          Math.round(composed * 1000) / 1000));
      }
    });
    result.append(apply);
    panel.append(result);
    return panel;
  }

  private roadmapPanel(): HTMLElement {
    const catalog = this.catalog!;
    const panel = el("fieldset");
    panel.append(el("legend", {}, "Qubit roadmap"));
    const doc = effectiveRoadmap(this.state, catalog);
    panel.append(el("div", { class: "hint" },
      `${doc.label} (${doc.qubit_kind} qubits, ${doc.extrapolation})`));
    const table = el("table");
    const head = el("tr");
    head.append(el("th", {}, "year"), el("th", {}, "qubits"), el("th", {}, ""));
    table.append(head);
    doc.points.forEach((point, index) => {
      const row = el("tr");
      const year = el("input", { type: "number", value: String(point.year), step: "1" });
      const qubits = el("input", { type: "number", value: String(point.qubits) });
      const commit = () => {
        this.transition(applyRoadmapEdit(this.state, catalog, {
          kind: "edit", index, year: Number(year.value), qubits: Number(qubits.value),
        }));
      };
      year.addEventListener("change", commit);
      qubits.addEventListener("change", commit);
      const remove = el("button", { type: "button", title: point.source_note ?? "" }, "x");
      remove.addEventListener("click", () => {
        this.transition(applyRoadmapEdit(this.state, catalog,
          { kind: "remove", index } as RoadmapEdit));
      });
      const cells = [year, qubits, remove].map((c) => {
        const td = el("td");
        td.append(c);
        return td;
      });
      row.append(...cells);
      table.append(row);
    });
    panel.append(table);
    const add = el("button", { type: "button" }, "add point");
    add.addEventListener("click", () => {
      const last = doc.points[doc.points.length - 1];
      this.transition(applyRoadmapEdit(this.state, catalog, {
        kind: "insert", year: last.year + 1, qubits: last.qubits * 2,
      }));
    });
    panel.append(add, this.errorLabel("roadmap"));
    return panel;
  }

  private errorLabel(field: string): HTMLElement {
    const message = this.state.fieldErrors[field];
    return el("span", { class: message ? "error" : "error empty" }, message ?? "");
  }

  private renderBanner() {
    const node = document.getElementById("banner");
    if (!node) return;
    const b: Banner = banner(this.state, this.costView);
    const label = this.costView ? "cost advantage" : "economic advantage";
    if (b.kind === "already") {
      node.textContent = `Quantum ${label}: already achieved`;
      node.className = "banner good";
    } else if (b.kind === "year") {
      node.textContent = `Quantum ${label} in ${b.year} (t* = ${b.exact.toFixed(1)})`;
      node.className = "banner good";
    } else if (b.kind === "never") {
      node.textContent = `No quantum ${label} by the year 3000`;
      node.className = "banner bad";
    } else {
      node.textContent = "";
      node.className = "banner";
    }
    const warnings = this.state.lastResponse?.warnings ?? [];
    if (warnings.length > 0) {
      node.textContent += ` (${warnings.join("; ")})`;
    }
  }

  private renderCharts() {
    this.renderBanner();
    this.renderRuntimeChart();
    this.renderTimeChart();
    this.renderTornado();
  }

  private renderRuntimeChart() {
    const container = document.getElementById("runtime-chart");
    const response = this.state.lastResponse;
    if (!container || !response) return;
    const { x_log10n, classical_log10, quantum_adjusted_log10 } = response.runtime_curves;
    const classical = x_log10n.map((x, i) => [x, classical_log10[i]] as [number, number]);
    const quantum = x_log10n.map(
      (x, i) => [x, quantum_adjusted_log10[i]] as [number, number]);
    const width = 640;
    const height = 300;
    const [vMin, vMax] = valueExtent([classical, quantum]);
    const xs = linearScale(x_log10n[0] ?? 0, x_log10n[x_log10n.length - 1] ?? 1,
      40, width - 10);
    const ys = linearScale(vMin, vMax, height - 24, 10);
    const step = (x_log10n[1] ?? 1) - (x_log10n[0] ?? 0);
    const node = svg("svg", {
      viewBox: `0 0 ${width} ${height}`, width: String(width), height: String(height),
      role: "img",
    });
    node.append(...this.axes(xs, ys, x_log10n[0] ?? 0,
      x_log10n[x_log10n.length - 1] ?? 1, vMin, vMax, width, height, true));
    for (const path of seriesPaths(classical, step, xs, ys)) {
      node.append(svg("path", { d: path, class: "line classical" }));
    }
    for (const path of seriesPaths(quantum, step, xs, ys)) {
      node.append(svg("path", { d: path, class: "line quantum" }));
    }
    container.replaceChildren(node, this.legend([
      ["classical runtime", "classical"],
      ["quantum runtime (slowdown + penalty applied)", "quantum"],
    ]));
  }

  private renderTimeChart() {
    const container = document.getElementById("time-chart");
    const response = this.state.lastResponse;
    if (!container || !response) return;
    const advantage = this.costView
      ? response.curves.cost_advantage : response.curves.advantage;
    const feasibility = response.curves.feasibility;
    const tStar = this.costView ? response.t_c_star : response.t_star;
    const width = 640;
    const height = 300;
    const all = [...advantage, ...feasibility];
    if (all.length === 0) {
      container.replaceChildren(el("div", { class: "hint" }, "no finite samples"));
      return;
    }
    const t0 = Math.min(...all.map((p) => p[0]));
    const t1 = Math.max(...all.map((p) => p[0]));
    const [vMin, vMax] = valueExtent([advantage, feasibility]);
    const xs = linearScale(t0, t1, 40, width - 10);
    const ys = linearScale(vMin, vMax, height - 24, 10);
    const node = svg("svg", {
      viewBox: `0 0 ${width} ${height}`, width: String(width), height: String(height),
      role: "img",
    });
    node.append(...this.axes(xs, ys, t0, t1, vMin, vMax, width, height, false));
    for (const path of seriesPaths(advantage, CURVE_STEP_YEARS, xs, ys)) {
      node.append(svg("path", { d: path, class: "line advantage" }));
    }
    for (const path of seriesPaths(feasibility, CURVE_STEP_YEARS, xs, ys)) {
      node.append(svg("path", { d: path, class: "line feasibility" }));
    }
    if (tStar != null) {
      const marker = crossoverMarker(tStar, feasibility);
      if (marker) {
        node.append(svg("circle", {
          cx: String(xs(marker.t)), cy: String(ys(marker.v)), r: "5",
          class: "crossover",
        }));
        node.append(svg("line", {
          x1: String(xs(marker.t)), x2: String(xs(marker.t)),
          y1: "10", y2: String(height - 24), class: "crossover-guide",
        }));
      }
    }
    container.replaceChildren(node, this.legend([
      [this.costView ? "cost-advantage size" : "advantage size", "advantage"],
      ["feasible size", "feasibility"],
    ]));
  }

  private renderTornado() {
    const container = document.getElementById("tornado");
    if (!container) return;
    if (!this.sweepReport) {
      container.replaceChildren(el("div", { class: "hint" },
        "run a sweep to see which parameters move the year most"));
      return;
    }
    const bars = tornadoBars(this.sweepReport);
    const baseline = this.sweepReport.baseline_year;
    const [lo, hi] = tornadoExtent(bars, baseline);
    const width = 640;
    const rowHeight = 26;
    const height = bars.length * rowHeight + 30;
    const xs = linearScale(lo, hi, 150, width - 10);
    const node = svg("svg", {
      viewBox: `0 0 ${width} ${height}`, width: String(width), height: String(height),
    });
    bars.forEach((bar, i) => {
      const y = 10 + i * rowHeight;
      const text = svg("text", { x: "4", y: String(y + 14), class: "bar-label" });
      text.textContent = bar.unresolved > 0
        ? `${bar.param} (${bar.unresolved} none)` : bar.param;
      node.append(text);
      node.append(svg("rect", {
        x: String(xs(bar.lowYear)), y: String(y),
        width: String(Math.max(xs(bar.highYear) - xs(bar.lowYear), 2)),
        height: String(rowHeight - 8), class: "bar",
      }));
    });
    if (baseline !== null) {
      node.append(svg("line", {
        x1: String(xs(baseline)), x2: String(xs(baseline)),
        y1: "4", y2: String(height - 20), class: "crossover-guide",
      }));
      const label = svg("text", {
        x: String(xs(baseline) + 4), y: String(height - 6), class: "bar-label",
      });
      label.textContent = `baseline ${baseline.toFixed(1)}`;
      node.append(label);
    }
    container.replaceChildren(node);
  }

  private axes(
    xs: (v: number) => number, ys: (v: number) => number,
    x0: number, x1: number, vMin: number, vMax: number,
    width: number, height: number, logX: boolean,
  ): SVGElement[] {
    const nodes: SVGElement[] = [
      svg("line", { x1: "40", y1: String(height - 24), x2: String(width - 10),
        y2: String(height - 24), class: "axis" }),
      svg("line", { x1: "40", y1: "10", x2: "40", y2: String(height - 24),
        class: "axis" }),
    ];
    const xTicks = logX ? logTicks(x0, x1).map((t) => ({ v: t.value, label: t.label }))
      : yearTicks(x0, x1).map((t) => ({ v: t, label: String(t) }));
    for (const { v, label } of xTicks) {
      const text = svg("text", {
        x: String(xs(v)), y: String(height - 8), class: "tick",
        "text-anchor": "middle",
      });
      text.textContent = label;
      nodes.push(text);
    }
    for (const tick of logTicks(vMin, vMax, 6)) {
      const text = svg("text", {
        x: "36", y: String(ys(tick.value) + 4), class: "tick", "text-anchor": "end",
      });
      text.textContent = tick.label;
      nodes.push(text);
    }
    return nodes;
  }

  private legend(entries: [string, string][]): HTMLElement {
    const box = el("div", { class: "legend" });
    for (const [label, cls] of entries) {
      const item = el("span", { class: "legend-item" });
      item.append(el("span", { class: `swatch ${cls}` }), el("span", {}, label));
      box.append(item);
    }
    return box;
  }

  private download() {
    const text = exportScenario(this.state);
    const blob = new Blob([text], { type: "application/json" });
    const link = el("a", {
      href: URL.createObjectURL(blob), download: "scenario.json",
    });
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private setStatusLine(text: string) {
    const node = document.getElementById("status");
    if (node) node.textContent = text;
  }
}

export function mount() {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "http://127.0.0.1:8765";
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const app = new App(new ApiClient(base), root);
  void app.start().catch((error) => {
    root.textContent = `cannot reach the service at ${base}: ${String(error)}`;
  });
  return app;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount();
}
