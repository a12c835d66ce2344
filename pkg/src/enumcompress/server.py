"""HTTP JSON API for interactive game sessions, plus static UI hosting.

Endpoints (versionless, under /api):
  POST /api/game                  {k, variant, human, policy, max_rounds,
                                   universe, seed} -> {id}
  GET  /api/game/{id}             full state, history and configurations
  POST /api/game/{id}/move        {numbers: [...]} -> updated state, or 422
                                  with the violated rule's name
  GET  /api/game/{id}/hint        {move, configurations, rationale}

Everything else is served from the static directory (the built UI bundle).
No state transition bypasses game.apply_move.
"""

from __future__ import annotations

import json
import re
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import game

GAME_PATH = re.compile(r"^/api/game/([0-9a-f]+)(/move|/hint)?$")


def state_payload(session_id: str) -> dict:
    session = game.get_session(session_id)
    st, cfg = session.state, session.config
    loss_pair = None
    if st.outcome == game.P1_WINS and st.history and st.history[-1][1] is not None:
        n = st.history[-1][1]
        for other in (n - 2, n + 2):
            if other in st.p2_chosen:
                loss_pair = sorted((n, other))
                break
    return {
        "id": session.id,
        "k": cfg.k,
        "variant": cfg.variant,
        "max_rounds": cfg.max_rounds,
        "human": session.human,
        "outcome": st.outcome,
        "to_move": st.to_move,
        "p1_chosen": sorted(st.p1_chosen),
        "p2_chosen": sorted(st.p2_chosen),
        "pending_r": list(st.pending_r) if st.pending_r else None,
        "history": [
            {"r": list(r), "reply": reply} for r, reply in st.history
        ],
        "configurations": [
            {"pattern": c.pattern, "positions": list(c.positions), "spaced": c.spaced}
            for c in game.detect_configurations(st)
        ],
        "loss_pair": loss_pair,
    }


def hint_payload(session_id: str) -> dict:
    session = game.get_session(session_id)
    cfg = session.config
    if cfg.k not in (2, 3) and session.state.to_move == game.P1:
        return {
            "move": None,
            "configurations": [
                {"pattern": c.pattern, "positions": list(c.positions), "spaced": c.spaced}
                for c in game.detect_configurations(session.state)
            ],
            "rationale": "no strategy known; solver exploration only",
        }
    h = game.hint(session_id)
    move = h["move"]
    return {
        "move": list(move) if isinstance(move, tuple) else move,
        "configurations": [
            {"pattern": c.pattern, "positions": list(c.positions), "spaced": c.spaced}
            for c in h["configurations"]
        ],
        "rationale": h["rationale"],
    }


def make_handler(static_dir: str | None, session_log: Path | None = None):
    directory = static_dir or str(Path(__file__).parent / "static")

    class Handler(SimpleHTTPRequestHandler):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, directory=directory, **kwargs)

        def log_message(self, *args):  # quiet by default
            pass

        def _json(self, code, payload):
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _body(self):
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                return json.loads(raw or b"{}")
            except json.JSONDecodeError:
                return None

        def _log_session(self, record):
            if session_log is not None:
                with open(session_log, "a") as fh:
                    fh.write(json.dumps(record) + "\n")

        def do_POST(self):
            if self.path == "/api/game":
                body = self._body()
                if body is None:
                    return self._json(400, {"error": "malformed-json"})
                try:
                    cfg = game.GameConfig(
                        k=int(body.get("k", 3)),
                        variant=body.get("variant", game.REDUCED),
                        max_rounds=int(body.get("max_rounds", 8)),
                        universe_bound=body.get("universe"),
                    )
                    sid = game.new_session(
                        cfg,
                        human=body.get("human", game.P2),
                        policy=body.get("policy", "survival"),
                        seed=int(body.get("seed", 0)),
                    )
                except (ValueError, game.StrategyError) as exc:
                    return self._json(400, {"error": "bad-config", "detail": str(exc)})
                self._log_session({"id": sid, "event": "new", "config": body})
                return self._json(200, {"id": sid})
            m = GAME_PATH.match(self.path)
            if m and m.group(2) == "/move":
                body = self._body()
                if body is None or "numbers" not in body:
                    return self._json(400, {"error": "malformed-json"})
                numbers = body["numbers"]
                if isinstance(numbers, list):
                    move = numbers[0] if len(numbers) == 1 else numbers
                else:
                    move = numbers
                try:
                    game.submit_move(m.group(1), move)
                except game.SessionError:
                    return self._json(404, {"error": "unknown-session"})
                except game.IllegalMove as exc:
                    return self._json(422, {"error": exc.rule, "detail": str(exc)})
                self._log_session({"id": m.group(1), "event": "move", "numbers": numbers})
                return self._json(200, state_payload(m.group(1)))
            return self._json(404, {"error": "unknown-endpoint"})

        def do_GET(self):
            m = GAME_PATH.match(self.path)
            if m:
                try:
                    if m.group(2) == "/hint":
                        return self._json(200, hint_payload(m.group(1)))
                    if m.group(2) is None:
                        return self._json(200, state_payload(m.group(1)))
                except game.SessionError:
                    return self._json(404, {"error": "unknown-session"})
                return self._json(404, {"error": "unknown-endpoint"})
            if self.path.startswith("/api/"):
                return self._json(404, {"error": "unknown-endpoint"})
            return super().do_GET()

    return Handler


def make_server(port: int = 0, static_dir: str | None = None, session_log=None):
    """Bind a threaded HTTP server; port 0 picks an ephemeral port."""
    handler = make_handler(static_dir, Path(session_log) if session_log else None)
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve_forever(port: int = 0, static_dir: str | None = None, session_log=None):
    server = make_server(port, static_dir, session_log)
    print(f"serving on http://127.0.0.1:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
