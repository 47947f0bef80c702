import pytest

from qea.config import ConfigError, params_to_dict, resolve, validate_config

INLINE = {
    "problem": {
        "name": "my-problem",
        "classical_runtime": "n / procs",
        "quantum_runtime": "n^(1/3)",
        "qps": "linear",
    },
    "hardware": {
        "name": "my-box",
        "hws": 4.0,
        "qir_pct": -10,
        "plqr": 50,
        "rir_pct": -20,
        "cir_pct": -10,
        "processors_log10": 6,
        "connectivity_penalty": "sqrt(q)",
        "roadmap": {
            "label": "mine",
            "qubit_kind": "physical",
            "extrapolation": "exponential",
            "points": [{"year": 2025, "qubits": 100},
                       {"year": 2030, "qubits": 3200}],
        },
    },
    "overrides": {"t0": 2025},
}


class TestValidate:
    def test_inline_config_valid(self):
        assert validate_config(INLINE) == []

    def test_collects_multiple_diagnostics(self):
        bad = {
            "problem": {"classical_runtime": "n +", "quantum_runtime": "sqrt(n)",
                        "qps": "spiral"},
            "hardware": "Rigetti",
            "mode": "sideways",
        }
        diags = validate_config(bad)
        fields = {d["field"] for d in diags}
        assert "problem.classical_runtime" in fields
        assert "problem.qps" in fields
        assert "hardware" in fields
        assert "mode" in fields

    def test_roadmap_and_ref_are_exclusive(self):
        bad = dict(INLINE)
        bad["hardware"] = dict(INLINE["hardware"], roadmap_ref="ibm")
        fields = {d["field"] for d in validate_config(bad)}
        assert "hardware.roadmap" in fields

    def test_non_object_rejected(self):
        assert validate_config([1, 2])[0]["field"] == "config"


class TestResolve:
    def test_inline_round_trip(self):
        run = resolve(INLINE)
        assert run.params.hws == 4.0
        assert run.params.t0 == 2025.0
        assert run.params.qps.kind == "linear"
        assert run.params.classical_work is None  # defaults apply

    def test_mixed_preset_problem_inline_hardware(self):
        config = dict(INLINE, problem="search")
        run = resolve(config)
        assert run.params.quantum_runtime.source_text == "sqrt(n)"
        assert run.params.plqr == 50.0

    def test_inline_with_roadmap_ref(self):
        hardware = dict(INLINE["hardware"])
        del hardware["roadmap"]
        hardware["roadmap_ref"] = "quera"
        run = resolve(dict(INLINE, hardware=hardware))
        assert run.params.roadmap.label.startswith("QuEra")

    def test_raises_with_diagnostics(self):
        with pytest.raises(ConfigError) as err:
            resolve(dict(INLINE, mode="sideways"))
        assert any(d["field"] == "mode" for d in err.value.diagnostics)

    def test_params_echo_contains_sources_and_roadmap(self):
        run = resolve(INLINE)
        echo = params_to_dict(run.params)
        assert echo["classical_runtime"] == "n / procs"
        assert echo["quantum_work"] is None
        assert echo["roadmap"]["points"][0]["year"] == 2025
        assert echo["t0"] == 2025.0
