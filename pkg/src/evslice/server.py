"""Read-only HTTP/JSON query service over a loaded index.

Endpoints::

    GET /meta                          n, m, directed, registered keys, time range
    GET /stats?i=&j=&keys=a,b          flat {key: value} for one window
    GET /sweep?width=&step=&keys=      [{i, j, stats: {...}}] over all windows
    GET /time_window?t0=&t1=           maximal index window inside a time interval

Responses are deterministic (sorted keys, fixed separators); the engine is
immutable, so concurrent requests need no locking.  Bad parameters get 400,
unknown paths 404; a valid index never produces 500.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .engine import SliceEngine
from .graph import GraphError


class BadRequest(ValueError):
    pass


def _json_bytes(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def _int_param(params: dict, name: str) -> int:
    values = params.get(name)
    if not values:
        raise BadRequest(f"missing parameter {name!r}")
    try:
        return int(values[0])
    except ValueError:
        raise BadRequest(f"parameter {name!r} must be an integer") from None


def _float_param(params: dict, name: str) -> float:
    values = params.get(name)
    if not values:
        raise BadRequest(f"missing parameter {name!r}")
    try:
        return float(values[0])
    except ValueError:
        raise BadRequest(f"parameter {name!r} must be a number") from None


def _keys_param(params: dict) -> list[str]:
    values = params.get("keys")
    if not values or not values[0]:
        raise BadRequest("missing parameter 'keys'")
    return values[0].split(",")


class EngineRequestHandler(BaseHTTPRequestHandler):
    engine: SliceEngine  # set on the server class

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload) -> None:
        body = _json_bytes(payload)
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        engine = self.server.engine  # type: ignore[attr-defined]
        url = urlparse(self.path)
        params = parse_qs(url.query)
        try:
            if url.path == "/meta":
                graph = engine.graph
                self._send(
                    200,
                    {
                        "n": graph.n,
                        "m": graph.m,
                        "directed": graph.directed,
                        "keys": engine.available_keys(),
                        "influential": [graph.vertex_name(v) for v in sorted(graph.influential)],
                        "time_range": [graph.ts[0], graph.ts[-1]] if graph.m else None,
                    },
                )
            elif url.path == "/stats":
                i = _int_param(params, "i")
                j = _int_param(params, "j")
                keys = _keys_param(params)
                self._send(200, engine.stats(keys, i, j))
            elif url.path == "/sweep":
                width = _int_param(params, "width")
                step = _int_param(params, "step") if "step" in params else 1
                keys = _keys_param(params)
                self._send(200, engine.sweep(width, step, keys))
            elif url.path == "/time_window":
                t0 = _float_param(params, "t0")
                t1 = _float_param(params, "t1")
                window = engine.graph.time_window(t0, t1)
                if window is None:
                    self._send(200, {"i": None, "j": None, "empty": True})
                else:
                    self._send(200, {"i": window[0], "j": window[1], "empty": False})
            else:
                self._send(404, {"error": f"unknown path {url.path!r}"})
        except (BadRequest, GraphError) as exc:
            self._send(400, {"error": str(exc)})


class EngineServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], engine: SliceEngine):
        super().__init__(address, EngineRequestHandler)
        self.engine = engine


def serve_http(engine: SliceEngine, host: str, port: int, background: bool = False) -> EngineServer:
    """Serve the engine; blocks unless background=True (tests)."""
    server = EngineServer((host, port), engine)
    if background:
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        return server
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return server


def parse_bind(bind: str) -> tuple[str, int]:
    if ":" not in bind:
        raise GraphError(f"bind address must be HOST:PORT, got {bind!r}")
    host, port_text = bind.rsplit(":", 1)
    try:
        port = int(port_text)
    except ValueError:
        raise GraphError(f"bad port in bind address {bind!r}") from None
    return host or "127.0.0.1", port
