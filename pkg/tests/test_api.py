import random

import pytest
from fastapi.testclient import TestClient

from simgame.board import (
    GameStatus,
    apply_move,
    edge_name,
    edges_in,
    parse_move,
    parse_position,
    replay,
)
from simgame.server import create_app
from simgame.strategy import canonical_mini_board, engine_move, strategy_decision


@pytest.fixture()
def client():
    app = create_app()
    with TestClient(app) as c:
        yield c


def new_game(client):
    resp = client.post("/games")
    assert resp.status_code == 201
    return resp.json()


class TestCreateAndGet:
    def test_create_initial_state(self, client):
        doc = new_game(client)
        assert doc["position"] == "." * 15
        assert doc["status"] == "ongoing"
        assert doc["turn"] == "p1"
        assert doc["transcript"] == []
        assert doc["explanation"] is None
        assert doc["id"]

    def test_distinct_ids(self, client):
        assert new_game(client)["id"] != new_game(client)["id"]

    def test_get_matches_create(self, client):
        doc = new_game(client)
        got = client.get(f"/games/{doc['id']}")
        assert got.status_code == 200
        assert got.json() == doc

    def test_unknown_id_404(self, client):
        assert client.get("/games/nope").status_code == 404
        resp = client.post("/games/nope/moves", json={"move": "01"})
        assert resp.status_code == 404


class TestSubmitMove:
    def test_first_exchange(self, client):
        doc = new_game(client)
        resp = client.post(f"/games/{doc['id']}/moves", json={"move": "01"})
        assert resp.status_code == 200
        state = resp.json()
        assert state["status"] == "ongoing"
        assert state["turn"] == "p1"
        assert len(state["transcript"]) == 2
        assert state["transcript"][0] == "01"
        engine = state["engine_move"]
        assert engine in ["02", "03", "04", "05", "12", "13", "14", "15"]
        expl = state["explanation"]
        assert expl["mini_board_vertices"] == [0, 1, 2]
        assert expl["rule1_moves"] == ["02", "12"]
        assert expl["rule2_counts"] == {"02": 1, "12": 1}
        assert expl["rule3_counts"] == {"02": 1, "12": 1}
        assert expl["final_moves"] == ["02", "12"]

    def test_duplicate_move_409(self, client):
        doc = new_game(client)
        client.post(f"/games/{doc['id']}/moves", json={"move": "01"})
        resp = client.post(f"/games/{doc['id']}/moves", json={"move": "01"})
        assert resp.status_code == 409

    def test_malformed_moves_400(self, client):
        gid = new_game(client)["id"]
        for body in [{"move": "0"}, {"move": "00"}, {"move": "66"}, {"move": 7}, {}]:
            resp = client.post(f"/games/{gid}/moves", json=body)
            assert resp.status_code == 400, body
        resp = client.post(
            f"/games/{gid}/moves",
            content=b"not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400

    def test_move_after_game_over_409(self, client):
        gid = new_game(client)["id"]
        state = drive_to_completion(client, gid, seed=1)
        assert state["status"] == "p1_lost"
        leftover = [
            edge_name(e)
            for e in edges_in(parse_position(state["position"]).uncolored)
        ]
        move = leftover[0] if leftover else "01"
        resp = client.post(f"/games/{gid}/moves", json={"move": move})
        assert resp.status_code == 409

    def test_concurrent_mutation_conflict(self, client):
        gid = new_game(client)["id"]
        session = client.app.state.store.get(gid)
        assert session.lock.acquire(blocking=False)
        try:
            resp = client.post(f"/games/{gid}/moves", json={"move": "01"})
            assert resp.status_code == 409
        finally:
            session.lock.release()


def drive_to_completion(client, gid, seed):
    """Play random legal P1 moves until the game ends; returns final state."""
    rng = random.Random(seed)
    state = client.get(f"/games/{gid}").json()
    while state["status"] == "ongoing":
        p = parse_position(state["position"])
        moves = [edge_name(e) for e in edges_in(p.uncolored)]
        state = client.post(
            f"/games/{gid}/moves", json={"move": rng.choice(moves)}
        ).json()
    return state


class TestGameInvariants:
    def test_random_games_engine_never_loses(self, client):
        for seed in range(12):
            gid = new_game(client)["id"]
            state = drive_to_completion(client, gid, seed=seed)
            assert state["status"] == "p1_lost"
            tri = state["losing_triangle"]
            assert len(tri) == 3
            final = parse_position(state["position"])
            for uv in tri:
                assert final.red >> parse_move(uv) & 1

    def test_engine_moves_recomputable_from_prior_state(self, client):
        # The reply is a deterministic function of the position after the
        # human move: canonical mini-board, rules 1-3, lowest edge id.
        rng = random.Random(99)
        gid = new_game(client)["id"]
        state = client.get(f"/games/{gid}").json()
        while state["status"] == "ongoing":
            before = parse_position(state["position"])
            move = rng.choice([edge_name(e) for e in edges_in(before.uncolored)])
            after_human, status = apply_move(before, parse_move(move))
            state = client.post(f"/games/{gid}/moves", json={"move": move}).json()
            if status is not GameStatus.ONGOING:
                assert state["status"] == "p1_lost"
                assert state["engine_move"] is None
                break
            expected_reply, decision = engine_move(after_human)
            assert state["engine_move"] == edge_name(expected_reply)
            assert decision.final_moves == (
                strategy_decision(
                    after_human, canonical_mini_board(after_human)
                ).final_moves
            )
            assert state["explanation"] == decision.to_doc()

    def test_state_is_pure_function_of_transcript(self, client):
        gid = new_game(client)["id"]
        state = drive_to_completion(client, gid, seed=5)
        position, status = replay(state["transcript"])
        from simgame.board import format_position

        assert format_position(position) == state["position"]
        assert status.value == state["status"]
        refreshed = client.get(f"/games/{gid}").json()
        assert refreshed == state

    def test_at_rest_p1_turn_or_over(self, client):
        gid = new_game(client)["id"]
        rng = random.Random(17)
        state = client.get(f"/games/{gid}").json()
        for _ in range(4):
            if state["status"] != "ongoing":
                break
            assert state["turn"] == "p1"
            p = parse_position(state["position"])
            move = rng.choice([edge_name(e) for e in edges_in(p.uncolored)])
            state = client.post(f"/games/{gid}/moves", json={"move": move}).json()


class TestSessionExpiry:
    def test_idle_sessions_expire(self):
        app = create_app(idle_ttl=0.0)
        with TestClient(app) as c:
            gid = c.post("/games").json()["id"]
            assert c.get(f"/games/{gid}").status_code == 404
