"""Crossover-year location for the advantage and feasibility curves.

The headline quantity is t*: the first year the maximum feasible problem
size reaches the minimum advantageous size. The same machinery finds the
cost-mode crossover and the first year a fixed problem size is both
feasible and advantageous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    CurveBundle,
    ModelParams,
    advantage_size_at,
    cost_advantage_size_at,
    feasible_size_at,
    sample_curves,
)

HORIZON_YEAR = 3000.0
SCAN_STEP_YEARS = 0.25
YEAR_TOLERANCE = 1e-3

ALREADY_ACHIEVED = "already_achieved"
ADVANTAGE_AT = "advantage_at"
NO_ADVANTAGE_BY_3000 = "no_advantage_by_3000"

# Sign changes after the first crossing are only noteworthy, not
# year-accurate, so the continuation scan runs coarser to stay cheap.
_WARNING_SCAN_STEP = 2.0


@dataclass(frozen=True)
class QeaResult:
    """Solver output for one scenario.

    n_star_log10 / n_c_star_log10 are the advantage sizes at the reference
    year t0 (may be +inf sentinels). t_star / t_c_star are present only
    for the corresponding 'advantage_at' status.
    """

    status: str
    t_star: float | None
    n_star_log10: float
    cost_status: str
    t_c_star: float | None
    n_c_star_log10: float
    curves: CurveBundle | None = None
    warnings: tuple[str, ...] = ()


def _gap(feas: float, adv: float) -> float:
    """Feasibility minus advantage in log10 units, inf-safe."""
    if adv == math.inf or feas == -math.inf:
        return -math.inf
    if adv == -math.inf or feas == math.inf:
        return math.inf
    return feas - adv


def _first_gap_crossing(gap, t0: float, horizon: float, scan_step: float,
                        check_monotone: bool = False):
    """(crossing year or None, extra warnings). gap(t) must return the
    log10 headroom; crossing = first t with gap >= 0, bisected to
    YEAR_TOLERANCE."""
    g = gap(t0)
    if g >= 0.0:
        return t0, ()
    prev = t0
    t = t0
    while t < horizon:
        t = min(t + scan_step, horizon)
        if gap(t) >= 0.0:
            lo, hi = prev, t
            while hi - lo > YEAR_TOLERANCE:
                mid = 0.5 * (lo + hi)
                if gap(mid) >= 0.0:
                    hi = mid
                else:
                    lo = mid
            star = 0.5 * (lo + hi)
            warnings = _check_monotone(gap, t, horizon) if check_monotone else ()
            return star, warnings
        prev = t
    return None, ()


def _check_monotone(gap, from_year: float, horizon: float):
    """Look for the gap dipping negative again after the crossing."""
    t = from_year
    positive = True
    changes = 0
    while t < horizon:
        t = min(t + _WARNING_SCAN_STEP, horizon)
        now_positive = gap(t) >= 0.0
        if now_positive != positive:
            changes += 1
            positive = now_positive
    if changes:
        return (
            "gap between feasibility and advantage changes sign "
            f"{changes + 1} times before {horizon:.0f}; first crossing reported",
        )
    return ()


def solve_qea(params: ModelParams, *, horizon: float = HORIZON_YEAR,
              scan_step: float = SCAN_STEP_YEARS, include_curves: bool = True,
              curve_span: float = 30.0, curve_step: float = 0.1) -> QeaResult:
    """Classify the scenario and locate t* and the cost-mode t_c*.

    Feasibility already at or above the advantage size at t0 reports
    'already_achieved'; otherwise the first crossing year up to the
    horizon, else 'no_advantage_by_3000'.
    """
    t0 = params.t0

    def speed_gap(t: float) -> float:
        feas = feasible_size_at(params, t)
        if feas == -math.inf:
            return -math.inf
        return _gap(feas, advantage_size_at(params, t))

    def cost_gap(t: float) -> float:
        feas = feasible_size_at(params, t)
        if feas == -math.inf:
            return -math.inf
        return _gap(feas, cost_advantage_size_at(params, t))

    warnings: list[str] = []

    t_star, extra = _first_gap_crossing(speed_gap, t0, horizon, scan_step,
                                         check_monotone=True)
    warnings += [f"speed: {w}" for w in extra]
    if t_star == t0:
        status, t_star = ALREADY_ACHIEVED, None
    elif t_star is None:
        status = NO_ADVANTAGE_BY_3000
    else:
        status = ADVANTAGE_AT

    t_c_star, extra = _first_gap_crossing(cost_gap, t0, horizon, scan_step,
                                           check_monotone=True)
    warnings += [f"cost: {w}" for w in extra]
    if t_c_star == t0:
        cost_status, t_c_star = ALREADY_ACHIEVED, None
    elif t_c_star is None:
        cost_status = NO_ADVANTAGE_BY_3000
    else:
        cost_status = ADVANTAGE_AT

    curves = None
    if include_curves:
        curves = sample_curves(params, t0, t0 + curve_span, curve_step)

    return QeaResult(
        status=status,
        t_star=t_star,
        n_star_log10=advantage_size_at(params, t0),
        cost_status=cost_status,
        t_c_star=t_c_star,
        n_c_star_log10=cost_advantage_size_at(params, t0),
        curves=curves,
        warnings=tuple(warnings),
    )


def advantage_year_for_size(params: ModelParams, n_log10: float, *,
                            cost: bool = False, horizon: float = HORIZON_YEAR,
                            scan_step: float = SCAN_STEP_YEARS) -> float | None:
    """First year a problem of size 10^n_log10 is feasible AND advantageous
    (cost-advantageous with cost=True); None if that never happens by the
    horizon."""
    if n_log10 < 0:
        raise ValueError("n_log10 must be >= 0")
    size_at = cost_advantage_size_at if cost else advantage_size_at

    def headroom(t: float) -> float:
        feas = feasible_size_at(params, t)
        lhs = -math.inf if feas == -math.inf else feas - n_log10
        if lhs < 0.0:
            return lhs  # infeasible regardless of the advantage side
        adv = size_at(params, t)
        rhs = -math.inf if adv == math.inf else n_log10 - adv
        return min(lhs, rhs)

    year, _ = _first_gap_crossing(headroom, params.t0, horizon, scan_step)
    return year


def floor_year(t: float | None) -> int | None:
    """Whole calendar year for summaries."""
    return None if t is None else int(math.floor(t))
