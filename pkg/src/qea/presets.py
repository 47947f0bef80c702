"""Bundled problem and hardware presets plus vendor roadmap snapshots.

Problems carry runtime/work expressions and the qubit-to-size map;
hardware rows carry the overhead parameters and a roadmap reference.
Roadmap snapshots are editable data inputs transcribed from public vendor
communications around the 2025 reference year, not ground truth; every
point carries a source note.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass
from importlib import resources

from . import model
from .expressions import ExpressionError, Expression
from .model import InvalidParamsError, ModelParams, QpsKind, compose_slowdown, SlowdownBreakdown
from .roadmap import InvalidRoadmapError, Roadmap

# Composed slowdown from the stored gate time must agree with the stored
# hws to this tolerance.
_HWS_CONSISTENCY = 0.01


class PresetCorruptError(RuntimeError):
    pass


class InvalidOverrideError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemPreset:
    name: str
    classical_runtime: Expression
    quantum_runtime: Expression
    classical_work: Expression
    quantum_work: Expression
    qps: QpsKind
    notes: str = ""

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemPreset":
        return cls(
            name=data["name"],
            classical_runtime=model.parse_classical_runtime(data["classical_runtime"]),
            quantum_runtime=model.parse_quantum_runtime(data["quantum_runtime"]),
            classical_work=model.parse_classical_work(data["classical_work"]),
            quantum_work=model.parse_quantum_work(data["quantum_work"]),
            qps=QpsKind(data["qps"]),
            notes=data.get("notes", ""),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "classical_runtime": self.classical_runtime.source_text,
            "quantum_runtime": self.quantum_runtime.source_text,
            "classical_work": self.classical_work.source_text,
            "quantum_work": self.quantum_work.source_text,
            "qps": self.qps.kind,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class HardwarePreset:
    name: str
    hws: float
    qir_pct: float
    connectivity_penalty: Expression
    plqr: float
    rir_pct: float
    cir_pct: float
    processors_log10: float
    gate_time_ns: float
    roadmap_ref: str
    notes: str = ""

    def __post_init__(self):
        composed = compose_slowdown(SlowdownBreakdown(gate_time_ns=self.gate_time_ns))
        if abs(composed - self.hws) > _HWS_CONSISTENCY:
            raise PresetCorruptError(
                f"{self.name}: hws {self.hws} inconsistent with gate time "
                f"{self.gate_time_ns} ns (composes to {composed:.4f})")

    @classmethod
    def from_dict(cls, data: dict) -> "HardwarePreset":
        return cls(
            name=data["name"],
            hws=float(data["hws"]),
            qir_pct=float(data["qir_pct"]),
            connectivity_penalty=model.parse_penalty(data["connectivity_penalty"]),
            plqr=float(data["plqr"]),
            rir_pct=float(data["rir_pct"]),
            cir_pct=float(data["cir_pct"]),
            processors_log10=float(data["processors_log10"]),
            gate_time_ns=float(data["gate_time_ns"]),
            roadmap_ref=data["roadmap_ref"],
            notes=data.get("notes", ""),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "hws": self.hws,
            "qir_pct": self.qir_pct,
            "connectivity_penalty": self.connectivity_penalty.source_text,
            "plqr": self.plqr,
            "rir_pct": self.rir_pct,
            "cir_pct": self.cir_pct,
            "processors_log10": self.processors_log10,
            "gate_time_ns": self.gate_time_ns,
            "roadmap_ref": self.roadmap_ref,
            "notes": self.notes,
        }


def _data_text(relative: str) -> str:
    return resources.files("qea.data").joinpath(relative).read_text(encoding="utf-8")


def load_presets() -> tuple[list[ProblemPreset], list[HardwarePreset]]:
    """Bundled problems and hardware rows, in catalog order."""
    try:
        problems = [ProblemPreset.from_dict(d)
                    for d in json.loads(_data_text("problems.json"))["problems"]]
        hardware = [HardwarePreset.from_dict(d)
                    for d in json.loads(_data_text("hardware.json"))["hardware"]]
    except (KeyError, TypeError, ValueError, ExpressionError) as exc:
        raise PresetCorruptError(f"bundled preset data unreadable: {exc}") from exc
    return problems, hardware


def load_roadmaps() -> dict[str, Roadmap]:
    """Bundled vendor snapshots keyed by reference name."""
    out: dict[str, Roadmap] = {}
    try:
        root = resources.files("qea.data").joinpath("roadmaps")
        for entry in sorted(root.iterdir(), key=lambda e: e.name):
            if entry.name.endswith(".json"):
                data = json.loads(entry.read_text(encoding="utf-8"))
                out[entry.name[:-5]] = Roadmap.from_dict(data)
    except (KeyError, TypeError, ValueError, InvalidRoadmapError) as exc:
        raise PresetCorruptError(f"bundled roadmap data unreadable: {exc}") from exc
    return out


def problem_by_name(name: str) -> ProblemPreset:
    for p in load_presets()[0]:
        if p.name == name:
            return p
    raise KeyError(f"no problem preset named '{name}'")


def hardware_by_name(name: str) -> HardwarePreset:
    for h in load_presets()[1]:
        if h.name == name:
            return h
    raise KeyError(f"no hardware preset named '{name}'")


# Override keys build_params accepts, beyond the expression slots.
_NUMERIC_OVERRIDES = (
    "hws", "qir_pct", "plqr", "rir_pct", "processors_log10", "cir_pct",
    "cost_factor_log10", "t0",
)
_EXPRESSION_OVERRIDES = {
    "classical_runtime": model.parse_classical_runtime,
    "quantum_runtime": model.parse_quantum_runtime,
    "classical_work": model.parse_classical_work,
    "quantum_work": model.parse_quantum_work,
    "connectivity_penalty": model.parse_penalty,
}


def build_params(problem: ProblemPreset, hardware: HardwarePreset,
                 overrides: dict | None = None,
                 roadmaps: dict[str, Roadmap] | None = None) -> ModelParams:
    """Merge a problem and a hardware row into ModelParams.

    Overrides apply last. Numeric keys replace parameter values; expression
    keys take source strings; 'qps' takes a kind name; 'roadmap' takes a
    roadmap document or a bundled snapshot name. t0 defaults to the current
    calendar year.
    """
    overrides = dict(overrides or {})
    roadmaps = roadmaps if roadmaps is not None else load_roadmaps()

    rm = roadmaps.get(hardware.roadmap_ref)
    if rm is None:
        raise PresetCorruptError(
            f"hardware '{hardware.name}' references unknown roadmap "
            f"'{hardware.roadmap_ref}'")

    fields = dict(
        classical_runtime=problem.classical_runtime,
        quantum_runtime=problem.quantum_runtime,
        classical_work=problem.classical_work,
        quantum_work=problem.quantum_work,
        qps=problem.qps,
        connectivity_penalty=hardware.connectivity_penalty,
        roadmap=rm,
        hws=hardware.hws,
        qir_pct=hardware.qir_pct,
        plqr=hardware.plqr,
        rir_pct=hardware.rir_pct,
        processors_log10=hardware.processors_log10,
        cir_pct=hardware.cir_pct,
        cost_factor_log10=0.0,
        t0=float(datetime.date.today().year),
    )

    for key, value in overrides.items():
        if key in _NUMERIC_OVERRIDES:
            try:
                fields[key] = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidOverrideError(f"{key}: {exc}") from exc
        elif key in _EXPRESSION_OVERRIDES:
            try:
                fields[key] = _EXPRESSION_OVERRIDES[key](str(value))
            except ExpressionError as exc:
                raise InvalidOverrideError(f"{key}: {exc}") from exc
        elif key == "qps":
            try:
                fields[key] = QpsKind(str(value))
            except InvalidParamsError as exc:
                raise InvalidOverrideError(f"qps: {exc}") from exc
        elif key == "roadmap":
            if isinstance(value, str):
                if value not in roadmaps:
                    raise InvalidOverrideError(f"roadmap: no snapshot named '{value}'")
                fields[key] = roadmaps[value]
            else:
                try:
                    fields[key] = Roadmap.from_dict(value)
                except InvalidRoadmapError as exc:
                    raise InvalidOverrideError(f"roadmap: {exc}") from exc
        else:
            raise InvalidOverrideError(f"unknown override key '{key}'")

    try:
        return ModelParams(**fields)
    except InvalidParamsError as exc:
        raise InvalidOverrideError(str(exc)) from exc
