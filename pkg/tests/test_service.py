import pytest
from fastapi.testclient import TestClient

from graphchords.service import create_app, replay_game_log


@pytest.fixture
def client(tmp_path):
    app = create_app(log_dir=tmp_path / "logs")
    with TestClient(app) as client:
        client.log_dir = tmp_path / "logs"
        yield client


CIRCLE_CONFIG = {"board": "circle", "dots": 4, "m": 1, "n": 1}


def create_game(client, config=None):
    response = client.post("/games", json=config or CIRCLE_CONFIG)
    assert response.status_code == 201
    return response.json()


class TestCreate:
    def test_initial_state(self, client):
        state = create_game(client)
        assert state["statuses"] == ["none"] * 4
        assert state["version"] == 0
        assert state["turn"] == 1

    def test_malformed_config(self, client):
        assert client.post("/games", json={"board": "circle"}).status_code == 400

    def test_malformed_body(self, client):
        response = client.post("/games", content=b"{", headers={"content-type": "application/json"})
        assert response.status_code == 400


class TestMoves:
    def test_move_bumps_version_by_one(self, client):
        game = create_game(client)
        state = client.post(f"/games/{game['id']}/moves", json={"dots": [0]}).json()
        assert state["version"] == 1
        assert state["statuses"][0] == "p1"
        assert state["turn"] == 2

    def test_crossed_dot_rejected(self, client):
        game = create_game(client)
        client.post(f"/games/{game['id']}/moves", json={"dots": [0]})
        response = client.post(f"/games/{game['id']}/moves", json={"dots": [0]})
        assert response.status_code == 409

    def test_out_of_turn_rejected(self, client):
        game = create_game(client)
        response = client.post(f"/games/{game['id']}/moves", json={"dots": [0], "player": 2})
        assert response.status_code == 409

    def test_unknown_game(self, client):
        assert client.get("/games/nope").status_code == 404
        assert client.post("/games/nope/moves", json={"dots": [0]}).status_code == 404

    def test_bad_dots_payload(self, client):
        game = create_game(client)
        response = client.post(f"/games/{game['id']}/moves", json={"dots": "zero"})
        assert response.status_code == 400

    def test_playout_reaches_witness(self, client):
        game = create_game(client)
        gid = game["id"]
        state = client.post(f"/games/{gid}/moves", json={"dots": [0]}).json()
        state = client.post(f"/games/{gid}/moves", json={"dots": [1]}).json()
        assert state["finished"] is True
        assert state["loser"] == 2 and state["winner"] == 1
        assert sorted(state["witness"]["dots"]) == [0, 1]

    def test_moves_after_finish_rejected(self, client):
        game = create_game(client)
        gid = game["id"]
        client.post(f"/games/{gid}/moves", json={"dots": [0]})
        client.post(f"/games/{gid}/moves", json={"dots": [1]})
        assert client.post(f"/games/{gid}/moves", json={"dots": [2]}).status_code == 409


class TestLegal:
    def test_fresh_game(self, client):
        game = create_game(client)
        legal = client.get(f"/games/{game['id']}/legal").json()
        assert legal["moves"] == [[0], [1], [2], [3]]

    def test_terminal_game_has_no_moves(self, client):
        game = create_game(client)
        gid = game["id"]
        client.post(f"/games/{gid}/moves", json={"dots": [0]})
        client.post(f"/games/{gid}/moves", json={"dots": [1]})
        assert client.get(f"/games/{gid}/legal").json()["moves"] == []


class TestPersistence:
    def test_replay_matches_live_state(self, client):
        game = create_game(client)
        gid = game["id"]
        client.post(f"/games/{gid}/moves", json={"dots": [0]})
        state = client.post(f"/games/{gid}/moves", json={"dots": [2]}).json()
        replayed = replay_game_log(client.log_dir / f"{gid}.jsonl")
        assert replayed.version == state["version"]
        assert [{"none": 0, "p1": 1, "p2": 2}[s] for s in state["statuses"]] == list(replayed.statuses)


class TestGraphBoardGame:
    def test_figure_eight_board(self, client):
        config = {
            "board": "graph",
            "graph": {
                "vertices": ["u"],
                "edges": [{"id": "a", "ends": ["u", "u"]}, {"id": "b", "ends": ["u", "u"]}],
            },
            "positions": [["a", "1/4"], ["a", "3/4"], ["b", "1/4"], ["b", "3/4"]],
            "m": 1,
            "n": 1,
        }
        state = create_game(client, config)
        gid = state["id"]
        assert state["statuses"] == ["none"] * 4
        out = client.post(f"/games/{gid}/moves", json={"dots": [0]}).json()
        assert out["version"] == 1
