"""Core curves: minimum advantageous size, feasibility, and cost advantage.

All problem sizes are carried as log10(n). The three curves are:

  advantage_size_at(t)       smallest n where the quantum runtime, inflated
                             by the effective hardware slowdown and the
                             connectivity penalty, is at or below the
                             classical runtime on the cost-equivalent
                             processor pool
  feasible_size_at(t)        largest n executable on the logical qubits the
                             roadmap projects for year t
  cost_advantage_size_at(t)  smallest n where total quantum work, inflated
                             by the cost factor and penalty, is at or below
                             total classical work

Yearly drift of the overheads is percent-per-year compounding; negative
rates mean the quantum-side overhead declines. Three floors always hold:
slowdown >= 1, physical-to-logical ratio >= 3, processors >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .expressions import Expression, log10_value, parse
from .roadmap import Roadmap

LOG10_2 = math.log10(2.0)

# Crossing searches run over log10(n) in [0, SIZE_CAP_LOG10]; a curve that
# never crosses below the cap reports +inf.
SIZE_CAP_LOG10 = 1e6

# "Advantage at n=1" is decided just above n=1, at the resolution of the
# reference grid scan (1e-3 in log10 n). Formulas like n^2*ln(n) or the
# defaulted quantum work Q(n)*q degenerate to zero exactly at n=1 and
# would otherwise fake an advantage sliver there.
_EPS_LOG10 = 1e-3

# Effective physical-to-logical ratio never decays below the cheapest
# known error-correcting code.
PLQR_FLOOR = 3.0

CLASSICAL_RUNTIME_VARS = frozenset({"n", "procs"})
QUANTUM_RUNTIME_VARS = frozenset({"n"})
CLASSICAL_WORK_VARS = frozenset({"n"})
QUANTUM_WORK_VARS = frozenset({"n", "q"})
PENALTY_VARS = frozenset({"q"})


class InvalidParamsError(ValueError):
    pass


class NoConvergenceError(RuntimeError):
    def __init__(self, message: str, scanned: tuple[float, float]):
        super().__init__(f"{message} (scanned log10 n in [{scanned[0]}, {scanned[1]}])")
        self.scanned = scanned


@dataclass(frozen=True)
class QpsKind:
    """Map between logical qubit count q and maximum problem size n.

    kind 'exponential' means n = 2^q (search-like), 'linear' n = q
    (factoring-like), 'logarithmic' n = log2(q). Both directions work on
    log10 magnitudes so q = 2^n stays representable for huge n.
    """

    kind: str

    def __post_init__(self):
        if self.kind not in ("exponential", "linear", "logarithmic"):
            raise InvalidParamsError(f"unknown qubit-to-size kind '{self.kind}'")

    def problem_size_log10(self, q_log10: float) -> float:
        """log10 of the largest solvable n given log10 of the qubit count."""
        if self.kind == "exponential":
            if q_log10 == -math.inf:
                return -math.inf
            if q_log10 > 308.0:
                return math.inf
            return (10.0 ** q_log10) * LOG10_2
        if self.kind == "linear":
            return q_log10
        # logarithmic: n = log2 q, positive only when q > 1
        if q_log10 <= 0.0:
            return -math.inf
        return math.log10(q_log10 / LOG10_2)

    def qubits_log10(self, n_log10: float) -> float:
        """log10 of the qubits needed for problem size 10^n_log10."""
        if self.kind == "exponential":
            # q = log2 n
            if n_log10 <= 0.0:
                return -math.inf
            return math.log10(n_log10 / LOG10_2)
        if self.kind == "linear":
            return n_log10
        # logarithmic: q = 2^n
        if n_log10 > 308.0:
            return math.inf
        return (10.0 ** n_log10) * LOG10_2


@dataclass(frozen=True)
class SlowdownBreakdown:
    """Factors composing the hardware slowdown between cost-equivalent machines.

    The speed ratio is gate time times classical clock (ns times GHz is
    dimensionless); gate overhead covers fault-tolerance operations and
    the constant ratio compares the algorithms' leading constants.
    """

    gate_time_ns: float
    classical_clock_ghz: float = 5.0
    gate_overhead: float = 100.0
    alg_constant_ratio: float = 1.0

    def __post_init__(self):
        for name in ("gate_time_ns", "classical_clock_ghz", "gate_overhead",
                     "alg_constant_ratio"):
            if getattr(self, name) <= 0:
                raise InvalidParamsError(f"{name} must be positive")


def compose_slowdown(b: SlowdownBreakdown) -> float:
    """log10 of the composed slowdown (operations per quantum operation)."""
    return math.log10(
        b.gate_time_ns * b.classical_clock_ghz * b.gate_overhead * b.alg_constant_ratio
    )


@dataclass(frozen=True)
class ModelParams:
    """Complete parameter set for one problem-on-hardware scenario.

    Immutable; all curve evaluations are pure functions of (params, t).
    classical_work defaults to the classical runtime at one processor and
    quantum_work to quantum runtime times logical qubit count.
    """

    classical_runtime: Expression
    quantum_runtime: Expression
    connectivity_penalty: Expression
    qps: QpsKind
    roadmap: Roadmap
    hws: float
    t0: float
    qir_pct: float = 0.0
    plqr: float = PLQR_FLOOR
    rir_pct: float = 0.0
    processors_log10: float = 0.0
    cir_pct: float = 0.0
    cost_factor_log10: float = 0.0
    classical_work: Expression | None = None
    quantum_work: Expression | None = None

    def __post_init__(self):
        _check_vars("classical_runtime", self.classical_runtime, CLASSICAL_RUNTIME_VARS)
        _check_vars("quantum_runtime", self.quantum_runtime, QUANTUM_RUNTIME_VARS)
        _check_vars("connectivity_penalty", self.connectivity_penalty, PENALTY_VARS)
        if self.classical_work is not None:
            _check_vars("classical_work", self.classical_work, CLASSICAL_WORK_VARS)
        if self.quantum_work is not None:
            _check_vars("quantum_work", self.quantum_work, QUANTUM_WORK_VARS)
        if self.plqr < PLQR_FLOOR:
            raise InvalidParamsError(
                f"plqr must be >= {PLQR_FLOOR:.0f}, got {self.plqr}")
        for name in ("qir_pct", "rir_pct", "cir_pct"):
            if getattr(self, name) <= -100.0:
                raise InvalidParamsError(f"{name} must be > -100 percent per year")
        for name in ("hws", "processors_log10", "cost_factor_log10", "t0"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParamsError(f"{name} must be finite")


def _check_vars(name: str, expr: Expression, allowed: frozenset[str]):
    extra = expr.variables - allowed
    if extra:
        raise InvalidParamsError(
            f"{name} may only use {sorted(allowed)}, found {sorted(extra)}")


def _yearly_log10_factor(rate_pct: float) -> float:
    return math.log10(1.0 + rate_pct / 100.0)


def effective_slowdown_log10(params: ModelParams, t: float) -> float:
    """log10 of the slowdown at year t, floored at 1 (log10 0)."""
    drift = (t - params.t0) * _yearly_log10_factor(params.qir_pct)
    return max(0.0, params.hws + drift)


def effective_processors_log10(params: ModelParams, t: float) -> float:
    """log10 of the cost-equivalent processor count at year t, floored at 1."""
    drift = (t - params.t0) * _yearly_log10_factor(params.cir_pct)
    return max(0.0, params.processors_log10 + drift)


def effective_plqr(params: ModelParams, t: float) -> float:
    ratio = params.plqr * (1.0 + params.rir_pct / 100.0) ** (t - params.t0)
    return max(PLQR_FLOOR, ratio)


def effective_cost_factor_log10(params: ModelParams, t: float) -> float:
    drift = (t - params.t0) * _yearly_log10_factor(params.cir_pct)
    return max(0.0, params.cost_factor_log10 + drift)


def logical_qubits_at(params: ModelParams, t: float) -> float:
    """Projected logical qubit count; the ratio step is skipped for
    roadmaps already stated in logical qubits."""
    raw = params.roadmap.qubits_at(t)
    if params.roadmap.qubit_kind == "logical":
        return raw
    return raw / effective_plqr(params, t)


def feasible_size_at(params: ModelParams, t: float) -> float:
    """log10 of the maximum feasible problem size at year t.

    Returns -inf when the projected qubits cannot express any size >= 1
    (for example a logarithmic qubit-to-size map with q <= 1).
    """
    q = logical_qubits_at(params, t)
    if q <= 0.0:
        return -math.inf
    return params.qps.problem_size_log10(math.log10(q))


def _speed_margin(params: ModelParams, t: float):
    """Margin(x) = log10 classical - log10 (slowdown * quantum * penalty)
    at x = log10 n; advantage holds where the margin is >= 0."""
    s = effective_slowdown_log10(params, t)
    p = effective_processors_log10(params, t)
    c_expr = params.classical_runtime
    q_expr = params.quantum_runtime
    pen_expr = params.connectivity_penalty
    qps = params.qps

    def margin(x: float) -> float:
        classical = log10_value(c_expr, {"n": x, "procs": p})
        q_log10 = qps.qubits_log10(x)
        quantum = log10_value(q_expr, {"n": x})
        penalty = log10_value(pen_expr, {"q": q_log10})
        return classical - (s + quantum + penalty)

    return margin


def _cost_margin(params: ModelParams, t: float):
    """Cost analogue: classical work vs cost factor * quantum work * penalty."""
    cf = effective_cost_factor_log10(params, t)
    cw_expr = params.classical_work
    c_expr = params.classical_runtime
    qw_expr = params.quantum_work
    q_expr = params.quantum_runtime
    pen_expr = params.connectivity_penalty
    qps = params.qps

    def margin(x: float) -> float:
        if cw_expr is not None:
            classical = log10_value(cw_expr, {"n": x})
        else:
            classical = log10_value(c_expr, {"n": x, "procs": 0.0})
        q_log10 = qps.qubits_log10(x)
        if qw_expr is not None:
            quantum = log10_value(qw_expr, {"n": x, "q": q_log10})
        else:
            quantum = log10_value(q_expr, {"n": x}) + q_log10
        penalty = log10_value(pen_expr, {"q": q_log10})
        return classical - (cf + quantum + penalty)

    return margin


def _first_crossing(margin, cap: float = SIZE_CAP_LOG10) -> float:
    """Smallest x in [0, cap] with margin(x) >= 0 (ties count as advantage).

    Returns 0.0 when the advantage already holds just above n = 1, +inf
    when the margin never turns nonnegative below the cap. The scan walks
    a unit grid up to x = 40 (where preset crossings live) and grows
    geometrically beyond; a bracketed sign change is refined to a quarter
    step and then bisected, so the reported crossing is the leftmost one
    the grid resolves.
    """
    m0 = margin(_EPS_LOG10)
    if math.isnan(m0):
        raise NoConvergenceError("margin is indeterminate near n = 1",
                                 (_EPS_LOG10, _EPS_LOG10))
    if m0 >= 0.0:
        return 0.0
    prev = _EPS_LOG10
    x = 1.0
    lo = hi = None
    while True:
        if x > cap:
            x = cap
        mv = margin(x)
        if math.isnan(mv):
            raise NoConvergenceError("margin is indeterminate", (prev, x))
        if mv >= 0.0:
            lo, hi = prev, x
            break
        if x >= cap:
            return math.inf
        prev = x
        x = x + 1.0 if x < 40.0 else x * 1.25
    # narrow to the first quarter-step subinterval with the sign change
    if hi - lo > 0.25:
        steps = int(math.ceil((hi - lo) / 0.25))
        width = (hi - lo) / steps
        for i in range(1, steps):
            probe = lo + i * width
            if margin(probe) >= 0.0:
                hi = probe
                break
            lo = probe
    for _ in range(100):
        if hi - lo <= 1e-10:
            break
        mid = 0.5 * (lo + hi)
        if margin(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def advantage_size_at(params: ModelParams, t: float) -> float:
    """log10 of the smallest problem size with a quantum speed advantage
    at year t; 0.0 if quantum already wins at n = 1, +inf if no size
    below the cap qualifies."""
    return _first_crossing(_speed_margin(params, t))


def cost_advantage_size_at(params: ModelParams, t: float) -> float:
    """log10 of the smallest problem size at which the quantum computation
    is at least as cheap; same sentinels as advantage_size_at."""
    return _first_crossing(_cost_margin(params, t))


@dataclass(frozen=True)
class CurveSample:
    t: float
    log10_n: float


@dataclass(frozen=True)
class CurveBundle:
    """Sampled series for charting. Non-finite values are omitted, so a
    missing year inside the sampled range marks a gap."""

    advantage: tuple[CurveSample, ...]
    feasibility: tuple[CurveSample, ...]
    cost_advantage: tuple[CurveSample, ...]


def sample_curves(params: ModelParams, t_start: float, t_end: float,
                  step: float) -> CurveBundle:
    if step <= 0:
        raise ValueError("step must be positive")
    if t_start >= t_end:
        raise ValueError("t_start must be before t_end")
    adv, feas, cost = [], [], []
    count = int(math.floor((t_end - t_start) / step + 1e-9)) + 1
    for i in range(count):
        t = t_start + i * step
        a = advantage_size_at(params, t)
        if math.isfinite(a):
            adv.append(CurveSample(t, a))
        f = feasible_size_at(params, t)
        if math.isfinite(f):
            feas.append(CurveSample(t, f))
        c = cost_advantage_size_at(params, t)
        if math.isfinite(c):
            cost.append(CurveSample(t, c))
    return CurveBundle(tuple(adv), tuple(feas), tuple(cost))


def runtime_crossover_at(params: ModelParams, t: float, x_max: float,
                         count: int = 200):
    """Size-domain chart series at year t: log10 classical runtime and
    log10 of the slowdown-and-penalty-adjusted quantum runtime, sampled
    over log10 n in [0, x_max]. Points where either side is non-finite
    are omitted.
    """
    if x_max <= 0 or count < 2:
        raise ValueError("x_max must be positive and count >= 2")
    s = effective_slowdown_log10(params, t)
    p = effective_processors_log10(params, t)
    xs, classical, quantum = [], [], []
    for i in range(count):
        x = max(x_max * i / (count - 1), _EPS_LOG10)
        c = log10_value(params.classical_runtime, {"n": x, "procs": p})
        q_log10 = params.qps.qubits_log10(x)
        q = (s + log10_value(params.quantum_runtime, {"n": x})
             + log10_value(params.connectivity_penalty, {"q": q_log10}))
        if math.isfinite(c) and math.isfinite(q):
            xs.append(x)
            classical.append(c)
            quantum.append(q)
    return xs, classical, quantum


# Convenience for tests and presets: parse the four expression slots.
def parse_classical_runtime(source: str) -> Expression:
    return parse(source, CLASSICAL_RUNTIME_VARS)


def parse_quantum_runtime(source: str) -> Expression:
    return parse(source, QUANTUM_RUNTIME_VARS)


def parse_classical_work(source: str) -> Expression:
    return parse(source, CLASSICAL_WORK_VARS)


def parse_quantum_work(source: str) -> Expression:
    return parse(source, QUANTUM_WORK_VARS)


def parse_penalty(source: str) -> Expression:
    return parse(source, PENALTY_VARS)
