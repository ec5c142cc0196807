"""Stateless JSON-over-HTTP front of the language service.

All endpoints are POST with UTF-8 JSON bodies:

    /v1/diagnostics {vocab, text}         -> {diagnostics: [...]}
    /v1/complete    {vocab, text, cursor} -> {items: [...]}
    /v1/highlight   {vocab, text}         -> {spans: [...]}
    /v1/compile     {vocab, text}         -> {xml} or {diagnostics}

Malformed JSON (or wrong field types) is the only 400; domain failures are
200 with diagnostics. With a ui directory configured, GET /ui/* serves the
editor's static assets.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import service


class BadRequest(Exception):
    pass


def _field(body: dict, name: str, kind) -> object:
    value = body.get(name)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise BadRequest(f'field "{name}" must be a {kind.__name__}')
    return value


def handle_request(path: str, body: dict) -> dict:
    """Dispatch one decoded request body; raises BadRequest on bad input."""
    if path == "/v1/diagnostics":
        vocab, text = _field(body, "vocab", str), _field(body, "text", str)
        return {"diagnostics": [service.diagnostic_wire(d)
                                for d in service.diagnostics(vocab, text)]}
    if path == "/v1/complete":
        vocab, text = _field(body, "vocab", str), _field(body, "text", str)
        cursor = _field(body, "cursor", int)
        return {"items": [service.completion_wire(item)
                          for item in service.complete(vocab, text, cursor)]}
    if path == "/v1/highlight":
        vocab, text = _field(body, "vocab", str), _field(body, "text", str)
        return {"spans": [service.highlight_wire(s)
                          for s in service.highlight(vocab, text)]}
    if path == "/v1/compile":
        vocab, text = _field(body, "vocab", str), _field(body, "text", str)
        result = service.compile_rules(vocab, text)
        if result.ok:
            return {"xml": result.xml}
        return {"diagnostics": [service.diagnostic_wire(d) for d in result.diagnostics]}
    raise BadRequest(f"no such endpoint: {path}")


class LanguageServiceHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def do_POST(self):
        try:
            length = int(self.headers.get("Content-Length", "0"))
            try:
                body = json.loads(self.rfile.read(length).decode("utf-8"))
                if not isinstance(body, dict):
                    raise BadRequest("request body must be a JSON object")
            except (ValueError, UnicodeDecodeError) as exc:
                raise BadRequest(f"malformed JSON: {exc}") from exc
            response = handle_request(self.path, body)
        except BadRequest as exc:
            self._send(400, {"error": str(exc)})
            return
        self._send(200, response)

    def do_GET(self):
        ui_dir = getattr(self.server, "ui_dir", None)
        if ui_dir is None or not (self.path == "/ui" or self.path.startswith("/ui/")):
            self._send(404, {"error": f"no such endpoint: {self.path}"})
            return
        relative = self.path[len("/ui"):].lstrip("/") or "index.html"
        root = Path(ui_dir).resolve()
        target = (root / relative).resolve()
        if root not in target.parents and target != root:
            self._send(404, {"error": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send(404, {"error": "not found"})
            return
        data = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send(self, status: int, payload: dict) -> None:
        data = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


class RuleCnlServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, ui_dir: str | None = None):
        super().__init__(address, LanguageServiceHandler)
        self.ui_dir = ui_dir


def serve(port: int, ui_dir: str | None = None) -> None:
    """Run the service until interrupted; requests are served concurrently."""
    with RuleCnlServer(("", port), ui_dir) as httpd:
        try:
            httpd.serve_forever()
        except KeyboardInterrupt:
            pass


def serve_stdio(stdin, stdout) -> None:
    """Line-framed stdio transport for editor plugins: one JSON request per
    line carrying the endpoint under "path" plus the same body fields as
    HTTP; one JSON response (or {"error"}) per line.
    """
    for line in stdin:
        if not line.strip():
            continue
        try:
            body = json.loads(line)
            if not isinstance(body, dict):
                raise BadRequest("request must be a JSON object")
            path = body.pop("path", None)
            if not isinstance(path, str):
                raise BadRequest('field "path" must be a string')
            response = handle_request(path, body)
        except BadRequest as exc:
            response = {"error": str(exc)}
        except ValueError as exc:
            response = {"error": f"malformed JSON: {exc}"}
        stdout.write(json.dumps(response, sort_keys=True) + "\n")
        stdout.flush()
