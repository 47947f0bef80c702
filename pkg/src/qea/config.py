"""Run configuration: the single schema the CLI and the HTTP service share.

A config names (or inlines) a problem and a hardware row, applies
overrides, and optionally asks for fixed-size years and a robustness
sweep. Validation returns a list of field-addressed diagnostics without
running any solver; resolution turns a valid config into ModelParams.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import model
from .expressions import ExpressionError
from .model import InvalidParamsError, ModelParams, QpsKind
from .presets import (
    InvalidOverrideError,
    build_params,
    hardware_by_name,
    load_roadmaps,
    problem_by_name,
    HardwarePreset,
    ProblemPreset,
)
from .roadmap import InvalidRoadmapError, Roadmap
from .sensitivity import (
    InvalidPerturbationError,
    Perturbation,
    SweepSpec,
    default_perturbations,
)

MODES = ("speed", "cost", "both")
OUTPUT_FORMATS = ("csv", "json")

_EXPRESSION_FIELDS = {
    "classical_runtime": (model.parse_classical_runtime, True),
    "quantum_runtime": (model.parse_quantum_runtime, True),
    "classical_work": (model.parse_classical_work, False),
    "quantum_work": (model.parse_quantum_work, False),
}
_HARDWARE_NUMBERS = ("hws", "qir_pct", "plqr", "rir_pct", "cir_pct",
                     "processors_log10")


class ConfigError(ValueError):
    def __init__(self, diagnostics: list[dict]):
        super().__init__("; ".join(f"{d['field']}: {d['message']}" for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class ResolvedRun:
    params: ModelParams
    mode: str
    fixed_sizes: tuple[float, ...]
    sweep: SweepSpec | None
    sweep_cost: bool
    output_format: str
    output_path: str


def _diag(field: str, message: str) -> dict:
    return {"field": field, "message": str(message)}


def _validate_problem(source, diags: list[dict]):
    if isinstance(source, str):
        try:
            return problem_by_name(source)
        except KeyError as exc:
            diags.append(_diag("problem", exc.args[0]))
            return None
    if not isinstance(source, dict):
        diags.append(_diag("problem", "must be a preset name or an inline object"))
        return None
    ok = True
    fields = {}
    for name, (parser, required) in _EXPRESSION_FIELDS.items():
        raw = source.get(name)
        if raw is None:
            if required:
                diags.append(_diag(f"problem.{name}", "required"))
                ok = False
            continue
        try:
            fields[name] = parser(str(raw))
        except ExpressionError as exc:
            diags.append(_diag(f"problem.{name}", exc))
            ok = False
    try:
        fields["qps"] = QpsKind(str(source.get("qps", "")))
    except InvalidParamsError as exc:
        diags.append(_diag("problem.qps", exc))
        ok = False
    if not ok:
        return None
    return dict(fields, name=str(source.get("name", "inline")),
                notes=str(source.get("notes", "")))


def _validate_hardware(source, roadmaps, diags: list[dict]):
    if isinstance(source, str):
        try:
            return hardware_by_name(source)
        except KeyError as exc:
            diags.append(_diag("hardware", exc.args[0]))
            return None
    if not isinstance(source, dict):
        diags.append(_diag("hardware", "must be a preset name or an inline object"))
        return None
    ok = True
    fields = {}
    for name in _HARDWARE_NUMBERS:
        raw = source.get(name)
        if raw is None:
            diags.append(_diag(f"hardware.{name}", "required"))
            ok = False
            continue
        try:
            fields[name] = float(raw)
        except (TypeError, ValueError):
            diags.append(_diag(f"hardware.{name}", "must be a number"))
            ok = False
    if "plqr" in fields and fields["plqr"] < model.PLQR_FLOOR:
        diags.append(_diag("hardware.plqr",
                           f"must be >= floor {model.PLQR_FLOOR:.0f}"))
        ok = False
    for name in ("qir_pct", "rir_pct", "cir_pct"):
        if name in fields and fields[name] <= -100.0:
            diags.append(_diag(f"hardware.{name}", "must be > -100 percent per year"))
            ok = False
    try:
        fields["connectivity_penalty"] = model.parse_penalty(
            str(source.get("connectivity_penalty", "1")))
    except ExpressionError as exc:
        diags.append(_diag("hardware.connectivity_penalty", exc))
        ok = False
    roadmap_doc = source.get("roadmap")
    roadmap_ref = source.get("roadmap_ref")
    if roadmap_doc is not None and roadmap_ref is not None:
        diags.append(_diag("hardware.roadmap", "give either roadmap or roadmap_ref"))
        ok = False
    elif roadmap_doc is not None:
        try:
            fields["roadmap"] = Roadmap.from_dict(roadmap_doc)
        except InvalidRoadmapError as exc:
            diags.append(_diag("hardware.roadmap", exc))
            ok = False
    elif roadmap_ref is not None:
        if roadmap_ref in roadmaps:
            fields["roadmap"] = roadmaps[roadmap_ref]
        else:
            diags.append(_diag("hardware.roadmap_ref",
                               f"no bundled snapshot named '{roadmap_ref}'"))
            ok = False
    else:
        diags.append(_diag("hardware.roadmap", "roadmap or roadmap_ref required"))
        ok = False
    if not ok:
        return None
    return dict(fields, name=str(source.get("name", "inline")))


def _validate_sweep(raw, diags: list[dict]):
    if not isinstance(raw, dict):
        diags.append(_diag("sweep", "must be an object"))
        return None
    target = raw.get("target_size_log10")
    if not isinstance(target, (int, float)) or target < 0:
        diags.append(_diag("sweep.target_size_log10", "must be a number >= 0"))
        return None
    perturbations = raw.get("perturbations", "default")
    if perturbations == "default":
        return {"target": float(target), "perturbations": default_perturbations(),
                "cost": bool(raw.get("cost", False))}
    if not isinstance(perturbations, list):
        diags.append(_diag("sweep.perturbations", "must be 'default' or a list"))
        return None
    parsed = []
    for i, entry in enumerate(perturbations):
        try:
            parsed.append(Perturbation(
                param=str(entry["param"]),
                values=tuple(float(v) for v in entry["values"]),
                mode=str(entry.get("mode", "set")),
            ))
        except (KeyError, TypeError, ValueError, InvalidPerturbationError) as exc:
            diags.append(_diag(f"sweep.perturbations[{i}]", exc))
    if len(parsed) != len(perturbations):
        return None
    return {"target": float(target), "perturbations": tuple(parsed),
            "cost": bool(raw.get("cost", False))}


def validate_config(data) -> list[dict]:
    """Schema, expression, and invariant checks; no solver runs.

    Returns a list of {field, message} diagnostics; empty means valid.
    """
    diags: list[dict] = []
    if not isinstance(data, dict):
        return [_diag("config", "document must be a JSON object")]
    try:
        roadmaps = load_roadmaps()
    except Exception as exc:
        return [_diag("presets", f"bundled data unreadable: {exc}")]

    if "problem" not in data:
        diags.append(_diag("problem", "required"))
    else:
        _validate_problem(data["problem"], diags)
    if "hardware" not in data:
        diags.append(_diag("hardware", "required"))
    else:
        _validate_hardware(data["hardware"], roadmaps, diags)

    mode = data.get("mode", "both")
    if mode not in MODES:
        diags.append(_diag("mode", f"must be one of {MODES}"))

    fixed = data.get("fixed_sizes", [])
    if not isinstance(fixed, list):
        diags.append(_diag("fixed_sizes", "must be a list of log10 sizes"))
    else:
        for i, v in enumerate(fixed):
            if not isinstance(v, (int, float)) or v < 0:
                diags.append(_diag(f"fixed_sizes[{i}]", "must be a number >= 0"))

    overrides = data.get("overrides", {})
    if not isinstance(overrides, dict):
        diags.append(_diag("overrides", "must be an object"))
        overrides = {}

    if "sweep" in data:
        _validate_sweep(data["sweep"], diags)

    output = data.get("output", {})
    if not isinstance(output, dict):
        diags.append(_diag("output", "must be an object"))
    else:
        fmt = output.get("format", "csv")
        if fmt not in OUTPUT_FORMATS:
            diags.append(_diag("output.format", f"must be one of {OUTPUT_FORMATS}"))

    if not diags:
        # full assembly catches cross-field problems (override collisions etc.)
        try:
            _assemble(data, roadmaps)
        except ConfigError as exc:
            diags.extend(exc.diagnostics)
    return diags


def _assemble(data: dict, roadmaps) -> ResolvedRun:
    diags: list[dict] = []
    problem = _validate_problem(data.get("problem"), diags)
    hardware = _validate_hardware(data.get("hardware"), roadmaps, diags)
    if diags or problem is None or hardware is None:
        raise ConfigError(diags or [_diag("config", "problem and hardware required")])

    overrides = dict(data.get("overrides", {}))
    try:
        if isinstance(problem, ProblemPreset) and isinstance(hardware, HardwarePreset):
            params = build_params(problem, hardware, overrides, roadmaps=roadmaps)
        else:
            params = _build_inline(problem, hardware, overrides, roadmaps)
    except (InvalidOverrideError, InvalidParamsError) as exc:
        raise ConfigError([_diag("overrides", exc)])

    sweep_spec = None
    sweep_cost = False
    if "sweep" in data:
        parsed = _validate_sweep(data["sweep"], diags)
        if diags:
            raise ConfigError(diags)
        sweep_spec = SweepSpec(params, parsed["target"], parsed["perturbations"])
        sweep_cost = parsed["cost"]

    output = data.get("output", {}) if isinstance(data.get("output", {}), dict) else {}
    return ResolvedRun(
        params=params,
        mode=data.get("mode", "both"),
        fixed_sizes=tuple(float(v) for v in data.get("fixed_sizes", [])),
        sweep=sweep_spec,
        sweep_cost=sweep_cost,
        output_format=output.get("format", "csv"),
        output_path=str(output.get("path", "qea_out")),
    )


def _build_inline(problem, hardware, overrides, roadmaps) -> ModelParams:
    """Assemble params when either side came inline instead of from a preset."""
    import datetime

    if isinstance(problem, ProblemPreset):
        problem = dict(
            classical_runtime=problem.classical_runtime,
            quantum_runtime=problem.quantum_runtime,
            classical_work=problem.classical_work,
            quantum_work=problem.quantum_work,
            qps=problem.qps,
        )
    if isinstance(hardware, HardwarePreset):
        hardware = dict(
            hws=hardware.hws, qir_pct=hardware.qir_pct,
            connectivity_penalty=hardware.connectivity_penalty,
            plqr=hardware.plqr, rir_pct=hardware.rir_pct,
            cir_pct=hardware.cir_pct,
            processors_log10=hardware.processors_log10,
            roadmap=roadmaps[hardware.roadmap_ref],
        )

    fields = dict(
        classical_runtime=problem["classical_runtime"],
        quantum_runtime=problem["quantum_runtime"],
        classical_work=problem.get("classical_work"),
        quantum_work=problem.get("quantum_work"),
        qps=problem["qps"],
        connectivity_penalty=hardware["connectivity_penalty"],
        roadmap=hardware["roadmap"],
        hws=hardware["hws"],
        qir_pct=hardware["qir_pct"],
        plqr=hardware["plqr"],
        rir_pct=hardware["rir_pct"],
        processors_log10=hardware["processors_log10"],
        cir_pct=hardware["cir_pct"],
        cost_factor_log10=0.0,
        t0=float(datetime.date.today().year),
    )
    from .presets import _EXPRESSION_OVERRIDES, _NUMERIC_OVERRIDES

    for key, value in overrides.items():
        if key in _NUMERIC_OVERRIDES:
            fields[key] = float(value)
        elif key in _EXPRESSION_OVERRIDES:
            try:
                fields[key] = _EXPRESSION_OVERRIDES[key](str(value))
            except ExpressionError as exc:
                raise InvalidOverrideError(f"{key}: {exc}") from exc
        elif key == "qps":
            fields[key] = QpsKind(str(value))
        elif key == "roadmap":
            if isinstance(value, str):
                if value not in roadmaps:
                    raise InvalidOverrideError(f"roadmap: no snapshot named '{value}'")
                fields[key] = roadmaps[value]
            else:
                fields[key] = Roadmap.from_dict(value)
        else:
            raise InvalidOverrideError(f"unknown override key '{key}'")
    return ModelParams(**fields)


def resolve(data: dict) -> ResolvedRun:
    """Validate and assemble; raises ConfigError carrying diagnostics."""
    diags = validate_config(data)
    if diags:
        raise ConfigError(diags)
    return _assemble(data, load_roadmaps())


def params_to_dict(params: ModelParams) -> dict:
    """Echo of the fully resolved parameter set, canonical source forms."""
    return {
        "classical_runtime": params.classical_runtime.source_text,
        "quantum_runtime": params.quantum_runtime.source_text,
        "classical_work": (params.classical_work.source_text
                           if params.classical_work else None),
        "quantum_work": (params.quantum_work.source_text
                         if params.quantum_work else None),
        "connectivity_penalty": params.connectivity_penalty.source_text,
        "qps": params.qps.kind,
        "hws": params.hws,
        "qir_pct": params.qir_pct,
        "plqr": params.plqr,
        "rir_pct": params.rir_pct,
        "processors_log10": params.processors_log10,
        "cir_pct": params.cir_pct,
        "cost_factor_log10": params.cost_factor_log10,
        "t0": params.t0,
        "roadmap": params.roadmap.to_dict(),
    }
