import json
import urllib.error
import urllib.request

import pytest

from qea.service import serve_background

BODY = {
    "problem": "search",
    "hardware": "QuEra",
    "overrides": {"t0": 2025},
    "mode": "both",
    "fixed_sizes": [20.0],
}


@pytest.fixture(scope="module")
def server_port():
    server, port = serve_background()
    yield port
    server.shutdown()


def get(port, path):
    req = urllib.request.Request(f"http://127.0.0.1:{port}{path}")
    with urllib.request.urlopen(req, timeout=30) as resp:
        return resp.status, dict(resp.headers), resp.read()


def post(port, path, body):
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}",
        data=json.dumps(body).encode("utf-8"),
        headers={"Content-Type": "application/json"},
        method="POST")
    try:
        with urllib.request.urlopen(req, timeout=120) as resp:
            return resp.status, dict(resp.headers), resp.read()
    except urllib.error.HTTPError as err:
        return err.code, dict(err.headers), err.read()


class TestPresets:
    def test_catalog_contains_vendor_rows(self, server_port):
        status, _, body = get(server_port, "/presets")
        assert status == 200
        catalog = json.loads(body)
        names = [h["name"] for h in catalog["hardware"]]
        assert names == ["IBM", "IonQ", "QuEra"]
        assert {"ibm", "ionq", "quera", "google", "pasqal"} <= set(catalog["roadmaps"])

    def test_identical_bodies_on_repeat(self, server_port):
        _, _, first = get(server_port, "/presets")
        _, _, second = get(server_port, "/presets")
        assert first == second

    def test_cors_headers(self, server_port):
        _, headers, _ = get(server_port, "/presets")
        assert headers.get("Access-Control-Allow-Origin") == "*"


class TestEvaluate:
    def test_search_quera_advantage_near_2025(self, server_port):
        status, _, body = post(server_port, "/evaluate", BODY)
        assert status == 200
        result = json.loads(body)
        assert result["status"] == "advantage_at"
        assert 2025 <= result["t_star"] <= 2027
        assert result["resolved_params"]["plqr"] == 100.0
        assert result["resolved_params"]["t0"] == 2025.0
        assert len(result["curves"]["feasibility"]) > 0

    def test_responses_identical_for_identical_bodies(self, server_port):
        _, _, first = post(server_port, "/evaluate", BODY)
        _, _, second = post(server_port, "/evaluate", BODY)
        assert first == second

    def test_plqr_below_floor_is_field_diagnostic(self, server_port):
        bad = dict(BODY, overrides={"plqr": 1})
        status, _, body = post(server_port, "/evaluate", bad)
        assert status == 400
        detail = json.loads(body)
        assert detail["error"] == "validation"
        messages = json.dumps(detail["detail"])
        assert "plqr" in messages and "3" in messages

    def test_malformed_json_body(self, server_port):
        req = urllib.request.Request(
            f"http://127.0.0.1:{server_port}/evaluate",
            data=b"{not json", headers={"Content-Type": "application/json"},
            method="POST")
        try:
            with urllib.request.urlopen(req, timeout=30) as resp:
                status = resp.status
        except urllib.error.HTTPError as err:
            status = err.code
        assert status == 400

    def test_matches_cli_output(self, server_port, tmp_path):
        from qea.cli import main

        config = dict(BODY, output={"format": "csv", "path": "out"})
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        out = tmp_path / "out"
        assert main(["run", str(path), "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        _, _, body = post(server_port, "/evaluate", BODY)
        response = json.loads(body)
        for key in ("status", "t_star", "t_star_year", "n_star_log10",
                    "cost_status", "t_c_star", "n_c_star_log10"):
            assert response[key] == summary[key], key
        assert response["fixed_sizes"] == summary["fixed_sizes"]

    def test_curve_window_cap(self, server_port):
        wide = dict(BODY, curve={"span_years": 900.0, "step_years": 0.01})
        status, _, body = post(server_port, "/evaluate", wide)
        assert status == 200
        curves = json.loads(body)["curves"]
        assert len(curves["feasibility"]) <= 2000

    def test_unknown_path_404(self, server_port):
        status, _, _ = post(server_port, "/solve", BODY)
        assert status == 404


class TestSweep:
    def test_empty_perturbations_baseline_only(self, server_port):
        body = dict(BODY, sweep={"target_size_log10": 20.0, "perturbations": []})
        status, _, raw = post(server_port, "/sweep", body)
        assert status == 200
        report = json.loads(raw)
        assert [r["param"] for r in report["rows"]] == ["baseline"]

    def test_matches_in_process_run_sweep(self, server_port):
        from qea.config import resolve
        from qea.sensitivity import Perturbation, SweepSpec, run_sweep

        body = dict(BODY, sweep={
            "target_size_log10": 20.0,
            "perturbations": [{"param": "hws", "values": [0.1, 10.0],
                               "mode": "scale"}]})
        _, _, raw = post(server_port, "/sweep", body)
        rows = json.loads(raw)["rows"]
        run = resolve({k: v for k, v in BODY.items()})
        spec = SweepSpec(run.params, 20.0,
                         (Perturbation("hws", (0.1, 10.0), "scale"),))
        direct = run_sweep(spec)
        assert [r["year"] for r in rows] == [r.year for r in direct.rows]

    def test_invalid_parameter_id_400(self, server_port):
        body = dict(BODY, sweep={
            "target_size_log10": 20.0,
            "perturbations": [{"param": "gate_time_ns", "values": [1.0]}]})
        status, _, _ = post(server_port, "/sweep", body)
        assert status == 400

    def test_streaming_rows(self, server_port):
        body = dict(BODY, sweep={
            "target_size_log10": 20.0,
            "perturbations": [{"param": "qir_pct", "values": [0.0, -20.0]}]})
        status, headers, raw = post(server_port, "/sweep?stream=1", body)
        assert status == 200
        assert headers.get("Content-Type") == "application/x-ndjson"
        lines = [json.loads(line) for line in raw.decode().splitlines() if line]
        assert [r["param"] for r in lines] == ["baseline", "qir_pct", "qir_pct"]


def test_runtime_curves_in_response(server_port):
    _, _, body = post(server_port, "/evaluate", BODY)
    rc = json.loads(body)["runtime_curves"]
    assert len(rc["x_log10n"]) == len(rc["classical_log10"])
    assert len(rc["x_log10n"]) == len(rc["quantum_adjusted_log10"])
    assert rc["x_log10n"][-1] >= 26.0  # window reaches past the advantage size
