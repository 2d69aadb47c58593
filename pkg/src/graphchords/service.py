"""HTTP/JSON service hosting game sessions for the browser UI.

In-memory game store with per-game locks; every accepted move bumps the
state version by exactly one so clients can poll cheaply.  Optional
append-only JSON-lines logs make games replayable after a restart.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import PreconditionError
from .game import GameConfig, GameState, apply_move, legal_moves, new_game
from .serialization import config_from_json, config_to_json, state_to_json


@dataclass
class _Session:
    config: GameConfig
    state: GameState
    lock: threading.Lock = field(default_factory=threading.Lock)


class GameStore:
    def __init__(self, log_dir: Optional[Path] = None):
        self._games: dict[str, _Session] = {}
        self._lock = threading.Lock()
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def create(self, config: GameConfig) -> tuple[str, GameState]:
        game_id = uuid.uuid4().hex[:12]
        session = _Session(config, new_game(config))
        with self._lock:
            self._games[game_id] = session
        self._log(game_id, {"event": "create", "config": config_to_json(config)})
        return game_id, session.state

    def get(self, game_id: str) -> _Session:
        try:
            return self._games[game_id]
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown game") from None

    def move(self, game_id: str, dots: list[int], player: Optional[int]) -> GameState:
        session = self.get(game_id)
        with session.lock:
            if player is not None and player != session.state.turn:
                raise HTTPException(status_code=409, detail="not this player's turn")
            try:
                session.state = apply_move(session.state, dots)
            except PreconditionError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            self._log(game_id, {"event": "move", "dots": list(dots)})
            return session.state

    def _log(self, game_id: str, entry: dict) -> None:
        if self.log_dir:
            with open(self.log_dir / f"{game_id}.jsonl", "a") as fh:
                fh.write(json.dumps(entry) + "\n")


def replay_game_log(path: Path) -> GameState:
    """Rebuild a game state from its append-only event log."""
    state: Optional[GameState] = None
    with open(path) as fh:
        for line in fh:
            entry = json.loads(line)
            if entry["event"] == "create":
                state = new_game(config_from_json(entry["config"]))
            elif entry["event"] == "move":
                if state is None:
                    raise PreconditionError("move before create in game log")
                state = apply_move(state, entry["dots"])
    if state is None:
        raise PreconditionError("empty game log")
    return state


def create_app(log_dir: Optional[Path] = None, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="graphchords game service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = GameStore(log_dir)
    app.state.store = store

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="malformed JSON body") from None
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="body must be a JSON object")
        return body

    @app.post("/games")
    async def create_game(request: Request):
        body = await _json_body(request)
        try:
            config = config_from_json(body)
        except PreconditionError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        game_id, state = store.create(config)
        return JSONResponse(state_to_json(state, game_id), status_code=201)

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        session = store.get(game_id)
        return state_to_json(session.state, game_id)

    @app.post("/games/{game_id}/moves")
    async def post_move(game_id: str, request: Request):
        body = await _json_body(request)
        dots = body.get("dots")
        if not isinstance(dots, list) or not all(isinstance(d, int) for d in dots):
            raise HTTPException(status_code=400, detail="dots must be a list of integers")
        player = body.get("player")
        if player is not None and player not in (1, 2):
            raise HTTPException(status_code=400, detail="player must be 1 or 2")
        state = store.move(game_id, dots, player)
        return state_to_json(state, game_id)

    @app.get("/games/{game_id}/legal")
    def get_legal(game_id: str):
        session = store.get(game_id)
        with session.lock:
            if session.state.finished:
                return {"moves": [], "version": session.state.version}
            return {
                "moves": [list(m) for m in legal_moves(session.state)],
                "version": session.state.version,
            }

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
