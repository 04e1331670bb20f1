"""HTTP/JSON session service for interactive play and tree exploration.

In-memory sessions over a shared space registry; the transport layer is the
standard library HTTP server, the routing core is a plain object that maps
(method, path, body) to (status, payload) and is driven directly by tests.
Responses are canonical JSON: sorted keys, no timestamps.
"""

from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

import json

from . import serialize as ser
from .errors import AsdimlabError, InvalidInputError
from .game import ABORTED, A_WINS, ONGOING, GameConfig, a_respond, b_move, is_stabilized, new_game
from .spaces import FiniteMetricSpace
from .trees import EmpiricalTreeConfig, empirical_dim_tree, node_ranks_recursive, rank_recursive


class SpaceRegistry:
    def __init__(self):
        self._spaces = {}
        self._lock = threading.Lock()

    def add(self, space: FiniteMetricSpace) -> None:
        with self._lock:
            self._spaces[space.label] = space

    def get(self, label: str) -> Optional[FiniteMetricSpace]:
        with self._lock:
            return self._spaces.get(label)

    def labels(self) -> list:
        with self._lock:
            return sorted(self._spaces)


class _Session:
    def __init__(self, game):
        self.game = game
        self.lock = threading.Lock()


class SessionStore:
    def __init__(self):
        self._sessions = {}
        self._lock = threading.Lock()
        self._next = 0

    def create(self, game) -> str:
        with self._lock:
            self._next += 1
            sid = f"g{self._next}"
            self._sessions[sid] = _Session(game)
            return sid

    def get(self, sid: str) -> Optional[_Session]:
        with self._lock:
            return self._sessions.get(sid)


class Api:
    """Routing core: handle(method, path, body) -> (status, payload)."""

    def __init__(self, registry: Optional[SpaceRegistry] = None):
        self.registry = registry or SpaceRegistry()
        self.sessions = SessionStore()

    # -- helpers ------------------------------------------------------------

    def _game_state(self, game, stabilization=None) -> dict:
        return ser.game_to_json(game, stabilization=stabilization)

    def _error(self, status: int, code: str, detail: str):
        return status, {"error": code, "detail": detail}

    # -- routes -------------------------------------------------------------

    def handle(self, method: str, path: str, body: Optional[dict] = None):
        parsed = urlparse(path)
        parts = [p for p in parsed.path.split("/") if p]
        query = {k: v[-1] for k, v in parse_qs(parsed.query).items()}
        try:
            if method == "GET" and parts == ["spaces"]:
                return 200, {"spaces": self.registry.labels()}
            if method == "POST" and parts == ["spaces"]:
                space = ser.space_from_json(body or {})
                self.registry.add(space)
                return 201, {"label": space.label}
            if method == "POST" and parts == ["games"]:
                return self._create_game(body or {})
            if method == "POST" and len(parts) == 3 and parts[0] == "games" and parts[2] == "move":
                return self._move(parts[1], body or {})
            if method == "GET" and len(parts) == 2 and parts[0] == "games":
                return self._get_game(parts[1])
            if method == "GET" and len(parts) == 3 and parts[0] == "games" and parts[2] == "export":
                return self._export(parts[1])
            if method == "GET" and parts == ["trees", "empirical"]:
                return self._empirical(query)
            return self._error(404, "not-found", f"no route for {method} {parsed.path}")
        except InvalidInputError as exc:
            return self._error(400, "invalid-input", str(exc))
        except AsdimlabError as exc:
            return self._error(400, "error", str(exc))

    def _create_game(self, body: dict):
        label = body.get("space")
        space = self.registry.get(label) if label else None
        if space is None:
            return self._error(404, "unknown-space", f"space {label!r} not registered")
        cfg = GameConfig(
            bound=int(body.get("bound", 2)),
            kcap=int(body.get("kcap", 4)),
            rmax=int(body.get("rmax", 6)),
            mode=body.get("mode", "exact"),
        )
        game = new_game(space, cfg)
        sid = self.sessions.create(game)
        return 201, {"id": sid, "state": self._game_state(game)}

    def _move(self, sid: str, body: dict):
        session = self.sessions.get(sid)
        if session is None:
            return self._error(404, "unknown-session", f"no session {sid!r}")
        if "r" not in body:
            return self._error(400, "invalid-input", "move needs a demand r")
        with session.lock:
            game = session.game
            if game.status != ONGOING:
                return self._error(
                    409, "conflict", f"game already ended with status {game.status}"
                )
            try:
                game = a_respond(b_move(game, int(body["r"])))
            except InvalidInputError as exc:
                return self._error(400, "invalid-move", str(exc))
            session.game = game
            stab = is_stabilized(game) if game.status != ABORTED else None
            payload = {
                "id": sid,
                "state": self._game_state(game, stabilization=stab),
                "status": game.status,
            }
            if game.rounds and game.status in (ONGOING, A_WINS):
                last = game.rounds[-1]
                payload["round"] = {
                    "r": last.r,
                    "k": last.k,
                    "cover": ser.cover_to_json(last.cover),
                }
            return 200, payload

    def _get_game(self, sid: str):
        session = self.sessions.get(sid)
        if session is None:
            return self._error(404, "unknown-session", f"no session {sid!r}")
        with session.lock:
            stab = is_stabilized(session.game) if session.game.status != ABORTED else None
            return 200, self._game_state(session.game, stabilization=stab)

    def _export(self, sid: str):
        session = self.sessions.get(sid)
        if session is None:
            return self._error(404, "unknown-session", f"no session {sid!r}")
        with session.lock:
            stab = is_stabilized(session.game) if session.game.status != ABORTED else None
            return 200, {
                "transcript": self._game_state(session.game, stabilization=stab),
                "space": ser.space_to_json(session.game.space),
            }

    def _empirical(self, query: dict):
        label = query.get("space")
        space = self.registry.get(label) if label else None
        if space is None:
            return self._error(404, "unknown-space", f"space {label!r} not registered")
        cfg = EmpiricalTreeConfig(
            rmax=int(query.get("rmax", 3)),
            lmax=int(query.get("lmax", 2)),
            bound=int(query.get("bound", 2)),
            variant=query.get("variant", "nondecreasing"),
        )
        tree = empirical_dim_tree(space, cfg)
        payload = ser.tree_to_json(tree, cfg)
        payload["rank"] = rank_recursive(tree)
        ranks = node_ranks_recursive(tree) if not tree.is_empty else {}
        payload["node_ranks"] = [
            [list(node), rank] for node, rank in sorted(ranks.items())
        ]
        return 200, payload


class _Handler(BaseHTTPRequestHandler):
    api: Api = None  # injected by make_server

    def _reply(self, status: int, payload: dict):
        data = ser.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> Optional[dict]:
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return None
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            return None

    def do_GET(self):
        status, payload = self.api.handle("GET", self.path, None)
        self._reply(status, payload)

    def do_POST(self):
        body = self._body()
        status, payload = self.api.handle("POST", self.path, body)
        self._reply(status, payload)

    def do_OPTIONS(self):
        self._reply(204, {})

    def log_message(self, fmt, *args):  # quiet by default
        pass


def make_server(port: int, registry: Optional[SpaceRegistry] = None) -> ThreadingHTTPServer:
    api = Api(registry)
    handler = type("BoundHandler", (_Handler,), {"api": api})
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.api = api  # convenient for tests
    return server


def serve(port: int, registry: Optional[SpaceRegistry] = None) -> None:
    server = make_server(port, registry)
    host, bound_port = server.server_address
    print(f"serving on http://{host}:{bound_port}")
    try:
        server.serve_forever()
    finally:
        server.server_close()
