"""Scripted backend served over the generation wire protocol.

Implements POST /generate and GET /healthz with stdlib http.server so
tests and demos can exercise the real HTTP client without a model.
"""
from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from frameparse.pipeline import ScriptedBackend


class _Handler(BaseHTTPRequestHandler):
    backend: ScriptedBackend  # set on the server class

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        if self.path == "/healthz":
            self._send_json(200, {"status": "ok"})
        else:
            self._send_json(404, {"error": "not found"})

    def do_POST(self) -> None:  # noqa: N802
        if self.path != "/generate":
            self._send_json(404, {"error": "not found"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length) or b"{}")
            inputs = payload["inputs"]
            if not isinstance(inputs, list) or not all(isinstance(s, str) for s in inputs):
                raise ValueError("inputs must be a list of strings")
        except (ValueError, KeyError) as exc:
            self._send_json(400, {"error": str(exc)})
            return
        outputs = self.server.backend.generate_batch(inputs)  # type: ignore[attr-defined]
        self._send_json(200, {"outputs": outputs})

    def log_message(self, format: str, *args) -> None:  # silence stdout chatter
        pass


class MockServer:
    """Runs the scripted backend on a local port, optionally in-thread."""

    def __init__(self, backend: ScriptedBackend, host: str = "127.0.0.1", port: int = 0) -> None:
        self._server = ThreadingHTTPServer((host, port), _Handler)
        self._server.backend = backend  # type: ignore[attr-defined]
        self._thread: threading.Thread | None = None

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    def start_background(self) -> "MockServer":
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self) -> None:
        self._server.serve_forever()

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
