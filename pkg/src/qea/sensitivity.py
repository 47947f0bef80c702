"""One-at-a-time robustness sweeps over the model parameters.

Each perturbation replaces a single parameter, re-solves the advantage
year for a fixed problem size, and records the shift against the
baseline. Rate parameters sweep over absolute percent-per-year values;
scale parameters sweep over multipliers (a factor of 10 on a log10-typed
field is a +-1 shift).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import PLQR_FLOOR, ModelParams
from .solver import advantage_year_for_size

RATE_PARAMS = ("qir_pct", "rir_pct", "cir_pct")
SCALE_PARAMS = ("hws", "processors_log10", "plqr")

SET_MODE = "set"
SCALE_MODE = "scale"

BASELINE_ROW = "baseline"

DEFAULT_RATE_GRID = (0.0, -5.0, -10.0, -20.0, -30.0)
DEFAULT_SCALE_MULTIPLIERS = (0.1, 10.0)


class InvalidPerturbationError(ValueError):
    pass


class SpreadUndefinedError(ValueError):
    pass


@dataclass(frozen=True)
class Perturbation:
    param: str
    values: tuple[float, ...]
    mode: str = SET_MODE

    def __post_init__(self):
        if self.mode not in (SET_MODE, SCALE_MODE):
            raise InvalidPerturbationError(f"unknown mode '{self.mode}'")
        if self.param not in RATE_PARAMS + SCALE_PARAMS:
            raise InvalidPerturbationError(
                f"'{self.param}' is not a sweepable parameter "
                f"(rates: {RATE_PARAMS}, scales: {SCALE_PARAMS})")
        if self.mode == SCALE_MODE and any(v <= 0 for v in self.values):
            raise InvalidPerturbationError("multipliers must be positive")


@dataclass(frozen=True)
class SweepSpec:
    baseline: ModelParams
    target_size_log10: float
    perturbations: tuple[Perturbation, ...]


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float | None
    year: float | None
    delta_years: float | None
    note: str = ""


@dataclass(frozen=True)
class SweepReport:
    target_size_log10: float
    rows: tuple[SweepRow, ...]

    @property
    def baseline_year(self) -> float | None:
        for row in self.rows:
            if row.param == BASELINE_ROW:
                return row.year
        return None


def default_perturbations() -> tuple[Perturbation, ...]:
    """The standard robustness set: rate grid plus factor-of-10 scales."""
    perturbations = [Perturbation(p, DEFAULT_RATE_GRID, SET_MODE)
                     for p in RATE_PARAMS]
    perturbations += [Perturbation(p, DEFAULT_SCALE_MULTIPLIERS, SCALE_MODE)
                      for p in SCALE_PARAMS]
    return tuple(perturbations)


def _apply(baseline: ModelParams, param: str, value: float,
           mode: str) -> tuple[ModelParams, float, str]:
    """Returns (new params, effective value recorded in the row, note)."""
    note = ""
    if mode == SET_MODE:
        effective = value
    elif param == "plqr":
        effective = baseline.plqr * value
        if effective < PLQR_FLOOR:
            effective = PLQR_FLOOR
            note = f"clamped to floor {PLQR_FLOOR:.0f}"
    else:
        # hws and processors_log10 are log10-typed: a multiplier shifts them
        effective = getattr(baseline, param) + math.log10(value)
    return replace(baseline, **{param: effective}), effective, note


def run_sweep(spec: SweepSpec, *, cost: bool = False) -> SweepReport:
    """Perturb one parameter at a time and re-solve the advantage year.

    Rows where the perturbed scenario never reaches an advantage record
    None instead of failing the sweep.
    """
    baseline_year = advantage_year_for_size(
        spec.baseline, spec.target_size_log10, cost=cost)
    rows = [SweepRow(BASELINE_ROW, None, baseline_year, 0.0 if baseline_year else None)]
    for perturbation in spec.perturbations:
        for value in perturbation.values:
            params, effective, note = _apply(
                spec.baseline, perturbation.param, value, perturbation.mode)
            year = advantage_year_for_size(params, spec.target_size_log10, cost=cost)
            delta = None
            if year is not None and baseline_year is not None:
                delta = year - baseline_year
            rows.append(SweepRow(perturbation.param, effective, year, delta, note))
    return SweepReport(spec.target_size_log10, tuple(rows))


def spread(report: SweepReport) -> float:
    """Max minus min advantage year across rows that found one."""
    years = [row.year for row in report.rows if row.year is not None]
    if not years:
        raise SpreadUndefinedError("no sweep row found an advantage year")
    return max(years) - min(years)
