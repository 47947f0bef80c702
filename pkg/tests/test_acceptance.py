"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The oracles here are deliberately independent of the package's crossing
search: closed-form log10 curves evaluated with numpy on brute-force
grids (1e-3 in log10 size, 0.01 years in time).
"""

import json
import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from qea.expressions import parse
from qea.model import (
    ModelParams,
    QpsKind,
    SlowdownBreakdown,
    advantage_size_at,
    compose_slowdown,
    cost_advantage_size_at,
    effective_plqr,
    effective_processors_log10,
    effective_slowdown_log10,
    feasible_size_at,
)
from qea.presets import build_params, hardware_by_name, load_presets, problem_by_name
from qea.roadmap import Roadmap, RoadmapPoint
from qea.sensitivity import SweepSpec, default_perturbations, run_sweep, spread
from qea.solver import advantage_year_for_size, floor_year, solve_qea

LN10 = math.log(10.0)
L2 = math.log10(2.0)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


# --- closed-form log10 curves for the two preset problems -------------------

def _gnfs_log10(x):
    n = 10.0 ** x
    return (64.0 / 9.0 * n) ** (1.0 / 3.0) * np.log(n) ** (2.0 / 3.0) / LN10


def _speed_margin_grid(problem, x, hws, p, sqrt_penalty):
    if problem == "search":
        classical = x - p
        quantum = x / 2.0
        pen = 0.5 * np.log10(x / L2) if sqrt_penalty else 0.0
    else:
        classical = _gnfs_log10(x) - p
        quantum = 2.0 * x + np.log10(x * LN10)
        pen = 0.5 * x if sqrt_penalty else 0.0
    return classical - (hws + quantum + pen)


def _cost_margin_grid(problem, x, cf, sqrt_penalty):
    if problem == "search":
        classical = x
        quantum = x / 2.0 + np.log10(x / L2)
        pen = 0.5 * np.log10(x / L2) if sqrt_penalty else 0.0
    else:
        classical = _gnfs_log10(x)
        quantum = 2.0 * x + np.log10(x * LN10) + x
        pen = 0.5 * x if sqrt_penalty else 0.0
    return classical - (cf + quantum + pen)


def _first_nonnegative(x, margins):
    idx = np.nonzero(margins >= 0.0)[0]
    if len(idx) == 0:
        return math.inf
    if idx[0] == 0:
        return 0.0
    return float(x[idx[0]])


def _scenario_params(problem_name, hws, p, sqrt_penalty, cf=0.0, **kw):
    problem = problem_by_name(problem_name)
    defaults = dict(
        classical_runtime=problem.classical_runtime,
        quantum_runtime=problem.quantum_runtime,
        classical_work=problem.classical_work,
        quantum_work=problem.quantum_work,
        qps=problem.qps,
        connectivity_penalty=parse("sqrt(q)" if sqrt_penalty else "1", {"q"}),
        roadmap=Roadmap("flat", (RoadmapPoint(2020, 100.0), RoadmapPoint(2021, 100.0))),
        hws=hws,
        t0=2025.0,
        plqr=100.0,
        processors_log10=p,
        cost_factor_log10=cf,
    )
    defaults.update(kw)
    return ModelParams(**defaults)


# --- criteria ----------------------------------------------------------------

def test_slowdown_composition():
    with criterion("slowdown composition reproduces 3.78 / 8.48 / 5.10"):
        compose_slowdown(SlowdownBreakdown(gate_time_ns=1.0))  # warm up
        start = time.perf_counter()
        got = [compose_slowdown(SlowdownBreakdown(gate_time_ns=g))
               for g in (12.0, 600000.0, 250.0)]
        elapsed = time.perf_counter() - start
        for value, want in zip(got, (3.78, 8.48, 5.10)):
            assert value == pytest.approx(want, abs=0.01)
        assert elapsed < 1e-3, f"took {elapsed * 1e3:.3f} ms"


def test_analytic_grover_size():
    with criterion("analytic square-root-speedup size: log10 n* = 32.96"):
        start = time.perf_counter()
        params = _scenario_params("search", hws=8.48, p=8.0, sqrt_penalty=False)
        got = advantage_size_at(params, 2025.0)
        elapsed = time.perf_counter() - start
        assert got == pytest.approx(2.0 * (8.48 + 8.0), abs=1e-6)
        assert elapsed < 1.0, f"took {elapsed:.2f} s"


def test_oracle_equivalence_sizes():
    with criterion("25 randomized scenarios match the 1e-3 size-grid scan"):
        start = time.perf_counter()
        rng = random.Random(1105)
        x = np.arange(1e-3, 60.0, 1e-3)
        for trial in range(25):
            problem = rng.choice(["search", "factoring"])
            hws = rng.uniform(2.0, 9.0)
            p = rng.uniform(0.0, 9.0)
            cf = rng.uniform(0.0, 9.0)
            sqrt_penalty = rng.random() < 0.5
            params = _scenario_params(problem, hws, p, sqrt_penalty, cf)
            label = f"trial {trial}: {problem} hws={hws:.3f} p={p:.3f} " \
                    f"cf={cf:.3f} pen={sqrt_penalty}"

            got = advantage_size_at(params, 2025.0)
            want = _first_nonnegative(x, _speed_margin_grid(problem, x, hws, p,
                                                            sqrt_penalty))
            assert math.isfinite(want), label
            assert abs(got - want) <= 1e-3 + 1e-9, f"speed {label}: {got} vs {want}"

            got_c = cost_advantage_size_at(params, 2025.0)
            want_c = _first_nonnegative(x, _cost_margin_grid(problem, x, cf,
                                                             sqrt_penalty))
            assert math.isfinite(want_c), label
            assert abs(got_c - want_c) <= 1e-3 + 1e-9, f"cost {label}: {got_c} vs {want_c}"
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"took {elapsed:.1f} s"


def test_oracle_equivalence_years():
    with criterion("25 randomized roadmap scenarios match the 0.01-year scan"):
        start = time.perf_counter()
        rng = random.Random(2211)
        t = np.arange(2025.0, 3000.0, 0.01)
        done = 0
        attempts = 0
        while done < 25:
            attempts += 1
            assert attempts < 200, "scenario generator stuck"
            problem = rng.choice(["search", "factoring"])
            hws = rng.uniform(2.0, 9.0)
            p = rng.uniform(0.0, 9.0)
            sqrt_penalty = rng.random() < 0.5
            q0 = rng.uniform(20.0, 2000.0)
            growth = rng.uniform(1.3, 3.0)
            span = rng.choice([1.0, 2.0, 3.0])
            plqr = rng.uniform(3.0, 400.0)
            qir = rng.choice([0.0, -10.0, -23.0])
            rir = rng.choice([0.0, -10.0, -23.0])
            cir = rng.choice([0.0, -10.0])
            roadmap = Roadmap("synthetic", (
                RoadmapPoint(2025.0, q0),
                RoadmapPoint(2025.0 + span, q0 * growth ** span)))
            params = _scenario_params(problem, hws, p, sqrt_penalty,
                                      roadmap=roadmap, plqr=plqr, qir_pct=qir,
                                      rir_pct=rir, cir_pct=cir)
            if feasible_size_at(params, 2025.0) >= advantage_size_at(params, 2025.0):
                continue  # already achieved; not a crossing scenario

            # oracle: gap >= 0 iff the margin at the feasible size is >= 0
            # (margins of both preset problems rise monotonically past n=1)
            log_r = np.log10(q0) + (t - 2025.0) * math.log10(growth)
            ratio = np.maximum(3.0, plqr * (1.0 + rir / 100.0) ** (t - 2025.0))
            log_q = log_r - np.log10(ratio)
            if problem == "search":
                # cap far past any crossing so the linear scale never overflows
                feas = 10.0 ** np.minimum(log_q, 300.0) * L2
            else:
                feas = log_q
            hws_eff = np.maximum(0.0, hws + (t - 2025.0) * math.log10(1 + qir / 100.0))
            p_eff = np.maximum(0.0, p + (t - 2025.0) * math.log10(1 + cir / 100.0))
            probe = np.clip(feas, 1e-3, 300.0)
            if problem == "search":
                classical = probe - p_eff
                quantum = probe / 2.0
                pen = 0.5 * np.log10(probe / L2) if sqrt_penalty else 0.0
            else:
                classical = _gnfs_log10(probe) - p_eff
                quantum = 2.0 * probe + np.log10(probe * LN10)
                pen = 0.5 * probe if sqrt_penalty else 0.0
            crossed = (feas >= 0.0) & (classical - (hws_eff + quantum + pen) >= 0.0)
            idx = np.nonzero(crossed)[0]

            result = solve_qea(params, include_curves=False)
            label = f"{problem} hws={hws:.2f} p={p:.2f} q0={q0:.0f} g={growth:.2f}"
            if len(idx) == 0:
                assert result.t_star is None, label
            else:
                want = float(t[idx[0]])
                assert result.t_star is not None, f"{label}: oracle found {want}"
                assert abs(result.t_star - want) <= 0.02, \
                    f"{label}: {result.t_star} vs {want}"
            done += 1
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f} s"


TABLE_YEARS = {
    "IBM": {"search": 2030, "factoring": 2032, "rsa2048": 2034},
    "IonQ": {"search": 2030, "factoring": 2029, "rsa2048": 2033},
    "QuEra": {"search": 2025, "factoring": 2026, "rsa2048": 2028},
}


def test_vendor_snapshot_years():
    with criterion("bundled snapshots reproduce the nine forecast years +-2"):
        for vendor, targets in TABLE_YEARS.items():
            hardware = hardware_by_name(vendor)
            for problem_name in ("search", "factoring"):
                params = build_params(problem_by_name(problem_name), hardware,
                                      {"t0": 2025})
                result = solve_qea(params, include_curves=False)
                assert result.t_star is not None, f"{vendor}/{problem_name}"
                got = floor_year(result.t_star)
                want = targets[problem_name]
                assert abs(got - want) <= 2, \
                    f"{vendor}/{problem_name}: {got} vs {want}"
            params = build_params(problem_by_name("factoring"), hardware,
                                  {"t0": 2025})
            rsa_year = advantage_year_for_size(params, math.log10(2048.0))
            assert rsa_year is not None, f"{vendor}/rsa2048"
            got = floor_year(rsa_year)
            assert abs(got - targets["rsa2048"]) <= 2, \
                f"{vendor}/rsa2048: {got} vs {targets['rsa2048']}"


def test_robustness_ordering():
    with criterion("fixed-size factoring forecasts are more robust than search"):
        for vendor in ("IBM", "IonQ", "QuEra"):
            hardware = hardware_by_name(vendor)
            shor = build_params(problem_by_name("factoring"), hardware, {"t0": 2025})
            grover = build_params(problem_by_name("search"), hardware, {"t0": 2025})
            shor_spread = spread(run_sweep(SweepSpec(
                shor, math.log10(2048.0), default_perturbations())))
            grover_spread = spread(run_sweep(SweepSpec(
                grover, 20.0, default_perturbations())))
            assert shor_spread < grover_spread, \
                f"{vendor}: {shor_spread:.1f} vs {grover_spread:.1f}"


def test_invariant_suite(tmp_path):
    with criterion("floors, monotonicity, qubit-map round-trip, CLI determinism"):
        start = time.perf_counter()

        # floors hold across a 10-decade horizon on every preset pair
        problems, hardware = load_presets()
        for h in hardware:
            params = build_params(problems[0], h, {"t0": 2025})
            for dt in range(0, 101, 2):
                t = 2025.0 + dt
                assert effective_slowdown_log10(params, t) >= 0.0
                assert effective_plqr(params, t) >= 3.0
                assert effective_processors_log10(params, t) >= 0.0

        # advantage nonincreasing, feasibility nondecreasing under preset rates
        for problem_name in ("search", "factoring"):
            for h in hardware:
                params = build_params(problem_by_name(problem_name), h, {"t0": 2025})
                adv = [advantage_size_at(params, 2025.0 + dt) for dt in range(0, 31, 3)]
                feas = [feasible_size_at(params, 2025.0 + dt) for dt in range(0, 31, 3)]
                assert all(b <= a + 1e-9 for a, b in zip(adv, adv[1:])), \
                    f"{problem_name}/{h.name} advantage"
                assert all(b >= a - 1e-9 for a, b in zip(feas, feas[1:])), \
                    f"{problem_name}/{h.name} feasibility"

        # qubit-map round-trip to 1e-9 over n in [1, 1e100]
        rng = random.Random(9)
        for kind in ("exponential", "linear", "logarithmic"):
            qps = QpsKind(kind)
            for _ in range(200):
                x = rng.uniform(0.001, 100.0)
                assert abs(qps.problem_size_log10(qps.qubits_log10(x)) - x) <= 1e-9

        # CLI determinism: byte-identical artifacts on rerun
        from qea.cli import main
        config = {
            "problem": "search", "hardware": "QuEra",
            "overrides": {"t0": 2025}, "mode": "both", "fixed_sizes": [20.0],
            "sweep": {"target_size_log10": 20.0,
                      "perturbations": [{"param": "hws", "values": [0.1, 10.0],
                                         "mode": "scale"}]},
            "output": {"format": "csv", "path": "out"},
        }
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config), encoding="utf-8")
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["run", str(cfg), "--out", str(out1)]) == 0
        assert main(["run", str(cfg), "--out", str(out2)]) == 0
        for name in ("summary.json", "curves.csv", "sweep.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name

        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"took {elapsed:.1f} s"
