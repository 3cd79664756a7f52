"""The JSON API the web board consumes."""

import pytest
from fastapi.testclient import TestClient

from conway_groupoids import design as dz
from conway_groupoids.webapi import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(dz.build_p3(), seed=777))


def new_session(client):
    return client.post("/api/session").json()["id"]


class TestDesignEndpoint:
    def test_design_json(self, client):
        r = client.get("/api/design")
        assert r.status_code == 200
        data = r.json()
        assert data["n"] == 13 and len(data["blocks"]) == 13


class TestSessionLifecycle:
    def test_create_and_read(self, client):
        sid = new_session(client)
        state = client.get(f"/api/session/{sid}").json()
        assert state["hole"] == 0 and state["start"] == 0
        assert state["closed"] and state["is_identity"]
        assert state["permutation"] == list(range(13))
        assert state["history"] == [] and state["displaced"] == 0

    def test_create_with_custom_hole(self, client):
        r = client.post("/api/session", json={"hole": 7})
        state = client.get(f"/api/session/{r.json()['id']}").json()
        assert state["hole"] == 7 and state["start"] == 7

    def test_unknown_session_404(self, client):
        assert client.get("/api/session/nope").status_code == 404
        assert client.post("/api/session/nope/move", json={"to": 1}).status_code == 404

    def test_bad_hole_400(self, client):
        assert client.post("/api/session", json={"hole": 99}).status_code == 400


class TestMoves:
    def test_move_then_undo_restores(self, client):
        sid = new_session(client)
        before = client.get(f"/api/session/{sid}").json()
        moved = client.post(f"/api/session/{sid}/move", json={"to": 5}).json()
        assert moved["hole"] == 5 and moved["displaced"] == 4
        after = client.post(f"/api/session/{sid}/undo").json()
        assert after == before

    def test_move_to_hole_409(self, client):
        sid = new_session(client)
        client.post(f"/api/session/{sid}/move", json={"to": 5})
        assert client.post(f"/api/session/{sid}/move", json={"to": 5}).status_code == 409

    def test_malformed_moves_400(self, client):
        sid = new_session(client)
        assert client.post(f"/api/session/{sid}/move", json={"to": "x"}).status_code == 400
        assert client.post(f"/api/session/{sid}/move", json={}).status_code == 400
        assert client.post(f"/api/session/{sid}/move", json={"to": 99}).status_code == 400

    def test_undo_on_fresh_session_409(self, client):
        sid = new_session(client)
        assert client.post(f"/api/session/{sid}/undo").status_code == 409

    def test_displaced_matches_closure_size_on_first_move(self, client):
        sid = new_session(client)
        state = client.post(f"/api/session/{sid}/move", json={"to": 3}).json()
        lam = 1
        assert state["displaced"] == 2 * lam + 2

    def test_closed_walk_membership_badge(self, client):
        sid = new_session(client)
        client.post(f"/api/session/{sid}/move", json={"to": 4})
        client.post(f"/api/session/{sid}/move", json={"to": 9})
        state = client.post(f"/api/session/{sid}/move", json={"to": 0}).json()
        assert state["closed"]
        assert state["in_hole_stabilizer"] is True

    def test_permutation_reflects_move_sequence(self, client):
        from conway_groupoids import groupoid as gp

        sid = new_session(client)
        path = [0, 6, 2, 11]
        for p in path[1:]:
            state = client.post(f"/api/session/{sid}/move", json={"to": p}).json()
        expected = gp.move_sequence(dz.build_p3(), path)
        assert state["permutation"] == list(expected.images)


class TestScrambleReset:
    def test_scramble_steps_and_reset(self, client):
        sid = new_session(client)
        state = client.post(f"/api/session/{sid}/scramble", json={"steps": 9}).json()
        assert len(state["history"]) == 9
        state = client.post(f"/api/session/{sid}/reset").json()
        assert state["is_identity"] and state["history"] == []

    def test_scramble_validation(self, client):
        sid = new_session(client)
        assert client.post(f"/api/session/{sid}/scramble", json={}).status_code == 400
        assert (
            client.post(f"/api/session/{sid}/scramble", json={"steps": -1}).status_code
            == 400
        )

    def test_seeded_scramble_is_reproducible(self):
        histories = []
        for _ in range(2):
            c = TestClient(create_app(dz.build_p3(), seed=2024))
            sid = c.post("/api/session").json()["id"]
            state = c.post(f"/api/session/{sid}/scramble", json={"steps": 25}).json()
            histories.append(state["history"])
        assert histories[0] == histories[1]


class TestClientMirrorInvariant:
    def test_counter_map_tracks_server_permutation(self):
        # maintain the client-side counter map incrementally (as the UI does)
        # and check it always equals the map recomputed from the permutation
        client = TestClient(create_app(dz.build_sp_design(3, 1), seed=31))
        sid = client.post("/api/session").json()["id"]
        state = client.get(f"/api/session/{sid}").json()

        def counters_from(perm, start):
            return {perm[x]: x for x in range(len(perm)) if x != start}

        counters = counters_from(state["permutation"], state["start"])
        import random

        rng = random.Random(55)
        for _ in range(50):
            if state["history"] and rng.random() < 0.3:
                state = client.post(f"/api/session/{sid}/undo").json()
                expected_diff = 2 * 5 + 2  # undoing a move supports the same set
            else:
                to = rng.choice([x for x in range(28) if x != state["hole"]])
                state = client.post(f"/api/session/{sid}/move", json={"to": to}).json()
                expected_diff = 2 * 5 + 2
            fresh = counters_from(state["permutation"], state["start"])
            diff = {
                p for p in set(counters) | set(fresh) if counters.get(p) != fresh.get(p)
            }
            assert len(diff) == expected_diff
            counters = fresh
