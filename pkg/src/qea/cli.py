"""Batch front door: validate configs, run solves, emit reports.

Subcommands:

    qea run CONFIG [--out DIR]      solve and write summary/curves/sweep
    qea validate CONFIG             schema and invariant checks only
    qea presets                     list bundled problems/hardware/roadmaps
    qea sweep CONFIG [--out DIR]    robustness sweep only
    qea serve [--port N]            start the HTTP service

The config file is the single source of truth; flags only pick files and
output locations, so identical configs produce byte-identical artifacts.
Exit codes: 0 ok, 2 config error, 3 solver nonconvergence, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .config import ConfigError, ResolvedRun, resolve, validate_config
from .model import CurveBundle, NoConvergenceError
from .presets import PresetCorruptError, load_presets, load_roadmaps
from .sensitivity import SweepReport, run_sweep
from .solver import QeaResult, advantage_year_for_size, floor_year, solve_qea

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4

CURVE_SPAN_YEARS = 30.0
CURVE_STEP_YEARS = 0.1

CSV_HEADER = "year,adv_log10n,feas_log10n,advcost_log10n"


def _round_year(t: float | None) -> float | None:
    """Outputs report years at 0.1-year resolution."""
    return None if t is None else round(t * 10.0) / 10.0


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def dumps_json(obj) -> str:
    """Deterministic JSON form used for every artifact and response."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_value) + "\n"


def summarize(result: QeaResult, run: ResolvedRun) -> dict:
    """Result summary; years at 0.1 resolution plus whole-year floors."""
    summary: dict = {"mode": run.mode, "warnings": list(result.warnings)}
    if run.mode in ("speed", "both"):
        summary.update({
            "status": result.status,
            "t_star": _round_year(result.t_star),
            "t_star_year": floor_year(result.t_star),
            "n_star_log10": _json_value(result.n_star_log10),
        })
    if run.mode in ("cost", "both"):
        summary.update({
            "cost_status": result.cost_status,
            "t_c_star": _round_year(result.t_c_star),
            "t_c_star_year": floor_year(result.t_c_star),
            "n_c_star_log10": _json_value(result.n_c_star_log10),
        })
    sizes = []
    for size in run.fixed_sizes:
        entry: dict = {"log10_n": size}
        if run.mode in ("speed", "both"):
            year = advantage_year_for_size(run.params, size)
            entry["year"] = _round_year(year)
            entry["year_floor"] = floor_year(year)
        if run.mode in ("cost", "both"):
            year = advantage_year_for_size(run.params, size, cost=True)
            entry["cost_year"] = _round_year(year)
            entry["cost_year_floor"] = floor_year(year)
        sizes.append(entry)
    summary["fixed_sizes"] = sizes
    return summary


def curves_to_csv(curves: CurveBundle, t0: float, step: float = CURVE_STEP_YEARS,
                  span: float = CURVE_SPAN_YEARS) -> str:
    """Fixed-grid CSV; repr floats so a reload loses nothing."""
    by_t = {}
    for name, series in (("adv", curves.advantage), ("feas", curves.feasibility),
                         ("cost", curves.cost_advantage)):
        for s in series:
            by_t.setdefault(round((s.t - t0) / step), {})[name] = s.log10_n
    lines = [CSV_HEADER]
    count = int(math.floor(span / step + 1e-9)) + 1
    for i in range(count):
        t = t0 + i * step
        row = by_t.get(i, {})
        cells = [repr(t)]
        for name in ("adv", "feas", "cost"):
            cells.append(repr(row[name]) if name in row else "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def curves_to_dict(curves: CurveBundle) -> dict:
    return {
        "advantage": [[s.t, s.log10_n] for s in curves.advantage],
        "feasibility": [[s.t, s.log10_n] for s in curves.feasibility],
        "cost_advantage": [[s.t, s.log10_n] for s in curves.cost_advantage],
    }


def sweep_to_dict(report: SweepReport) -> dict:
    return {
        "target_size_log10": report.target_size_log10,
        "baseline_year": report.baseline_year,
        "rows": [
            {"param": r.param, "value": r.value, "year": r.year,
             "delta_years": r.delta_years, "note": r.note}
            for r in report.rows
        ],
    }


def sweep_to_csv(report: SweepReport) -> str:
    lines = ["param,value,year,delta_years,note"]
    for r in report.rows:
        cells = [r.param,
                 "" if r.value is None else repr(r.value),
                 "" if r.year is None else repr(r.year),
                 "" if r.delta_years is None else repr(r.delta_years),
                 r.note]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IoFailure(f"cannot read config: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([{"field": "config", "message": f"not valid JSON: {exc}"}])


class _IoFailure(RuntimeError):
    pass


def cmd_run(args) -> int:
    data = _load_config(args.config)
    run = resolve(data)
    out_dir = Path(args.out or run.output_path)

    result = solve_qea(run.params, include_curves=True,
                       curve_span=CURVE_SPAN_YEARS, curve_step=CURVE_STEP_YEARS)
    summary = summarize(result, run)

    try:
        _write(out_dir / "summary.json", dumps_json(summary))
        if run.output_format == "json":
            _write(out_dir / "curves.json", dumps_json(curves_to_dict(result.curves)))
        else:
            _write(out_dir / "curves.csv",
                   curves_to_csv(result.curves, run.params.t0))
        if run.sweep is not None:
            report = run_sweep(run.sweep, cost=run.sweep_cost)
            if run.output_format == "json":
                _write(out_dir / "sweep.json", dumps_json(sweep_to_dict(report)))
            else:
                _write(out_dir / "sweep.csv", sweep_to_csv(report))
    except OSError as exc:
        raise _IoFailure(f"cannot write artifacts: {exc}")

    print(dumps_json(summary), end="")
    return EXIT_OK


def cmd_validate(args) -> int:
    data = _load_config(args.config)
    diagnostics = validate_config(data)
    for d in diagnostics:
        print(f"{d['field']}: {d['message']}")
    if not diagnostics:
        print("ok")
        return EXIT_OK
    return EXIT_CONFIG


def cmd_presets(args) -> int:
    problems, hardware = load_presets()
    roadmaps = load_roadmaps()
    print("problems:")
    for p in problems:
        print(f"  {p.name}: C={p.classical_runtime.source_text} "
              f"Q={p.quantum_runtime.source_text} qps={p.qps.kind}")
    print("hardware:")
    for h in hardware:
        print(f"  {h.name}: hws={h.hws} plqr={h.plqr} "
              f"penalty={h.connectivity_penalty.source_text} roadmap={h.roadmap_ref}")
    print("roadmaps:")
    for name in sorted(roadmaps):
        rm = roadmaps[name]
        years = f"{rm.points[0].year:.0f}-{rm.points[-1].year:.0f}"
        print(f"  {name}: {rm.label}, {len(rm.points)} points ({years}), "
              f"{rm.qubit_kind}, {rm.extrapolation}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    data = _load_config(args.config)
    run = resolve(data)
    if run.sweep is None:
        raise ConfigError([{"field": "sweep", "message": "config has no sweep section"}])
    report = run_sweep(run.sweep, cost=run.sweep_cost)
    out_dir = Path(args.out or run.output_path)
    try:
        if run.output_format == "json":
            _write(out_dir / "sweep.json", dumps_json(sweep_to_dict(report)))
        else:
            _write(out_dir / "sweep.csv", sweep_to_csv(report))
    except OSError as exc:
        raise _IoFailure(f"cannot write artifacts: {exc}")
    print(sweep_to_csv(report), end="")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve
    serve(port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qea",
        description="Forecast when quantum hardware beats cost-equivalent "
                    "classical machines on a problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="solve a config and write artifacts")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (default from config)")
    p_run.set_defaults(fn=cmd_run)

    p_val = sub.add_parser("validate", help="check a config without solving")
    p_val.add_argument("config")
    p_val.set_defaults(fn=cmd_validate)

    p_pre = sub.add_parser("presets", help="list bundled presets")
    p_pre.set_defaults(fn=cmd_presets)

    p_sweep = sub.add_parser("sweep", help="run only the robustness sweep")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--out", help="output directory (default from config)")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=None,
                         help="port (default: QEA_PORT env var or 8765)")
    p_serve.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        for d in exc.diagnostics:
            print(f"config error: {d['field']}: {d['message']}", file=sys.stderr)
        return EXIT_CONFIG
    except PresetCorruptError as exc:
        print(f"preset data error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except _IoFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
