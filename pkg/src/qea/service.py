"""Thin JSON-over-HTTP layer for the companion UI.

Stateless: every response is a pure function of the request body, and
identical bodies produce identical bytes. Endpoints:

    GET  /presets     bundled problems, hardware rows, roadmap snapshots
    POST /evaluate    full solve for one config fragment
    POST /sweep       robustness sweep; ?stream=1 emits NDJSON rows

CORS is open so the bundled UI can call from any origin. The port comes
from --port, the QEA_PORT environment variable, or 8765.
"""

from __future__ import annotations

import json
import math
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .cli import curves_to_dict, dumps_json, summarize, sweep_to_dict
from .config import ConfigError, params_to_dict, resolve
from .model import NoConvergenceError, feasible_size_at, runtime_crossover_at
from .presets import PresetCorruptError, load_presets, load_roadmaps
from .sensitivity import run_sweep
from .solver import solve_qea

DEFAULT_PORT = 8765

# The UI zooms by requesting narrower windows; cap the series instead of
# streaming unbounded samples.
MAX_CURVE_SAMPLES = 2000


def _preset_catalog() -> dict:
    problems, hardware = load_presets()
    roadmaps = load_roadmaps()
    return {
        "problems": [p.to_dict() for p in problems],
        "hardware": [h.to_dict() for h in hardware],
        "roadmaps": {name: rm.to_dict() for name, rm in sorted(roadmaps.items())},
    }


def evaluate_request(data: dict) -> dict:
    """Resolve and solve one request body; the response echoes the fully
    resolved parameters so the UI displays what was actually computed."""
    run = resolve(data)
    curve = data.get("curve", {}) if isinstance(data.get("curve"), dict) else {}
    span = float(curve.get("span_years", 30.0))
    step = float(curve.get("step_years", 0.1))
    if span <= 0 or step <= 0:
        raise ConfigError([{"field": "curve", "message": "span and step must be positive"}])
    step = max(step, span / (MAX_CURVE_SAMPLES - 1))
    result = solve_qea(run.params, include_curves=True,
                       curve_span=span, curve_step=step)
    response = summarize(result, run)
    response["curves"] = curves_to_dict(result.curves)
    response["runtime_curves"] = _runtime_curves(run.params, result)
    response["resolved_params"] = params_to_dict(run.params)
    return response


def _runtime_curves(params, result) -> dict:
    """Size-domain series for the runtime-crossover chart, windowed a bit
    past the current advantage size and feasible size."""
    candidates = [3.0]
    for v in (result.n_star_log10, feasible_size_at(params, params.t0)):
        if math.isfinite(v) and v > 0:
            candidates.append(v)
    x_max = 1.25 * max(candidates)
    xs, classical, quantum = runtime_crossover_at(params, params.t0, x_max)
    return {"x_log10n": xs, "classical_log10": classical,
            "quantum_adjusted_log10": quantum}


def sweep_request(data: dict):
    run = resolve(data)
    if run.sweep is None:
        raise ConfigError([{"field": "sweep", "message": "sweep section required"}])
    return run_sweep(run.sweep, cost=run.sweep_cost)


class _Handler(BaseHTTPRequestHandler):
    server_version = "qea"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _headers(self, code: int, content_type: str, length: int | None = None,
                 chunked: bool = False):
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        if chunked:
            self.send_header("Transfer-Encoding", "chunked")
        elif length is not None:
            self.send_header("Content-Length", str(length))
        self.end_headers()

    def _send_json(self, code: int, obj):
        body = dumps_json(obj).encode("utf-8")
        self._headers(code, "application/json", len(body))
        self.wfile.write(body)

    def _send_error_json(self, code: int, kind: str, detail):
        self._send_json(code, {"error": kind, "detail": detail})

    def _read_body(self):
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b""
        try:
            return json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None

    def do_OPTIONS(self):
        self._headers(204, "text/plain", 0)

    def do_GET(self):
        path = urlparse(self.path).path
        if path == "/presets":
            try:
                self._send_json(200, _preset_catalog())
            except PresetCorruptError as exc:
                self._send_error_json(500, "preset_corrupt", str(exc))
            return
        self._send_error_json(404, "not_found", path)

    def do_POST(self):
        parsed = urlparse(self.path)
        data = self._read_body()
        if data is None:
            self._send_error_json(400, "validation",
                                  [{"field": "body", "message": "not valid JSON"}])
            return
        try:
            if parsed.path == "/evaluate":
                self._send_json(200, evaluate_request(data))
            elif parsed.path == "/sweep":
                report = sweep_request(data)
                query = parse_qs(parsed.query)
                if query.get("stream", ["0"])[0] in ("1", "true"):
                    self._stream_sweep(report)
                else:
                    self._send_json(200, sweep_to_dict(report))
            else:
                self._send_error_json(404, "not_found", parsed.path)
        except ConfigError as exc:
            self._send_error_json(400, "validation", exc.diagnostics)
        except NoConvergenceError as exc:
            self._send_error_json(422, "no_convergence",
                                  {"message": str(exc), "scanned": list(exc.scanned)})
        except PresetCorruptError as exc:
            self._send_error_json(500, "preset_corrupt", str(exc))

    def _stream_sweep(self, report):
        self._headers(200, "application/x-ndjson", chunked=True)
        for row in report.rows:
            line = json.dumps(
                {"param": row.param, "value": row.value, "year": row.year,
                 "delta_years": row.delta_years, "note": row.note},
                sort_keys=True).encode("utf-8") + b"\n"
            self.wfile.write(f"{len(line):x}\r\n".encode("ascii"))
            self.wfile.write(line + b"\r\n")
        self.wfile.write(b"0\r\n\r\n")


def make_server(port: int = 0) -> ThreadingHTTPServer:
    """Bound but not yet serving; port 0 picks a free one (handy in tests)."""
    return ThreadingHTTPServer(("127.0.0.1", port), _Handler)


def serve(port: int | None = None):
    if port is None:
        port = int(os.environ.get("QEA_PORT", DEFAULT_PORT))
    server = ThreadingHTTPServer(("0.0.0.0", port), _Handler)
    print(f"serving on http://0.0.0.0:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()


def serve_background(port: int = 0) -> tuple[ThreadingHTTPServer, int]:
    """Start on a background thread; returns (server, bound port)."""
    server = make_server(port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, server.server_address[1]
