"""Quantum economic advantage forecasting.

Solves for the year a quantum machine first beats a cost-equivalent
classical one on a given problem, from qubit roadmaps, runtime
expressions, and overhead parameters.
"""

from .expressions import DomainError, Expression, LogValue, eval_log10, parse
from .model import (
    CurveBundle,
    CurveSample,
    ModelParams,
    QpsKind,
    SlowdownBreakdown,
    advantage_size_at,
    compose_slowdown,
    cost_advantage_size_at,
    feasible_size_at,
    sample_curves,
)
from .presets import build_params, load_presets, load_roadmaps
from .roadmap import Roadmap, RoadmapPoint
from .sensitivity import SweepReport, SweepSpec, default_perturbations, run_sweep, spread
from .solver import QeaResult, advantage_year_for_size, solve_qea

__all__ = [
    "CurveBundle",
    "CurveSample",
    "DomainError",
    "Expression",
    "LogValue",
    "ModelParams",
    "QeaResult",
    "QpsKind",
    "Roadmap",
    "RoadmapPoint",
    "SlowdownBreakdown",
    "SweepReport",
    "SweepSpec",
    "advantage_size_at",
    "advantage_year_for_size",
    "build_params",
    "compose_slowdown",
    "cost_advantage_size_at",
    "default_perturbations",
    "eval_log10",
    "feasible_size_at",
    "load_presets",
    "load_roadmaps",
    "parse",
    "run_sweep",
    "sample_curves",
    "solve_qea",
    "spread",
]

__version__ = "0.1.0"
