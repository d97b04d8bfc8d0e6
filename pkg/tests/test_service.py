"""HTTP service: instance store, what-if scoring, solve jobs, restarts."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from cyberseg.cli import run as cli_run
from cyberseg.service import create_app


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(tmp_path / "data"))


def wait_terminal(client, job_id, deadline=20.0):
    end = time.time() + deadline
    while time.time() < end:
        job = client.get(f"/api/jobs/{job_id}").json()
        if job["state"] in ("done", "timeout", "failed"):
            return job
        time.sleep(0.02)
    raise AssertionError(f"job {job_id} never reached a terminal state")


TRIANGLE = {"devices": [0, 1, 2], "connections": [[0, 1], [1, 2], [0, 2]], "attacked": [0]}


class TestInstanceRoutes:
    def test_create_valid_instance(self, client):
        r = client.post("/api/instances", json=TRIANGLE)
        assert r.status_code == 201
        body = r.json()
        assert body["devices"] == 3 and body["attacked"] == 1
        assert body["id"]

    def test_create_rejects_dangling_connection(self, client):
        r = client.post("/api/instances", json={"devices": [0, 1], "connections": [[0, 9]]})
        assert r.status_code == 400
        assert set(r.json()) == {"error", "detail"}

    def test_karate_shortcut(self, client):
        r = client.post("/api/instances", json={"source": "karate", "attacked": [0, 1, 2]})
        assert r.status_code == 201
        assert r.json()["devices"] == 34

    def test_list_get_delete(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        assert iid in [s["id"] for s in client.get("/api/instances").json()]
        detail = client.get(f"/api/instances/{iid}").json()
        assert detail["instance"]["devices"] == [0, 1, 2]
        assert client.delete(f"/api/instances/{iid}").status_code == 204
        assert client.get(f"/api/instances/{iid}").status_code == 404

    def test_unknown_instance_404(self, client):
        assert client.get("/api/instances/zzz").status_code == 404


class TestWhatIf:
    def test_empty_cut_is_baseline(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        body = client.post(f"/api/instances/{iid}/whatif", json={"isolate": []}).json()
        assert body["report"]["vulnerability"] == 2
        assert body["report"]["healthiness"] == 1

    def test_isolating_all_attacked_zeroes_vulnerability(self, client):
        iid = client.post(
            "/api/instances", json={"source": "karate", "attacked": [4, 8, 15]}
        ).json()["id"]
        body = client.post(f"/api/instances/{iid}/whatif", json={"isolate": [4, 8, 15]}).json()
        assert body["report"]["vulnerability"] == 0

    def test_isolating_everything_zeroes_both(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        body = client.post(f"/api/instances/{iid}/whatif", json={"isolate": [0, 1, 2]}).json()
        assert body["report"]["vulnerability"] == 0
        assert body["report"]["healthiness"] == 0
        assert body["components"] == []

    def test_unknown_device_400(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        assert client.post(f"/api/instances/{iid}/whatif", json={"isolate": [42]}).status_code == 400

    def test_unknown_instance_404(self, client):
        assert client.post("/api/instances/zzz/whatif", json={"isolate": []}).status_code == 404

    def test_matches_cli_score_field_for_field(self, client, tmp_path, capsys):
        iid = client.post(
            "/api/instances", json={"source": "karate", "attacked": [0, 1, 2]}
        ).json()["id"]
        http_doc = client.post(f"/api/instances/{iid}/whatif", json={"isolate": [0, 5, 9]}).json()

        detail = client.get(f"/api/instances/{iid}").json()["instance"]
        inst_path = tmp_path / "inst.json"
        inst_path.write_text(json.dumps(detail))
        code = cli_run(["score", "--instance", str(inst_path), "--isolate", "0,5,9"])
        assert code == 0
        cli_doc = json.loads(capsys.readouterr().out)
        assert cli_doc == http_doc

    def test_concurrent_calls_identical(self, client):
        iid = client.post(
            "/api/instances", json={"source": "karate", "attacked": [3, 7]}
        ).json()["id"]

        def call(_):
            return client.post(f"/api/instances/{iid}/whatif", json={"isolate": [7, 20]}).json()

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(call, range(16)))
        assert all(r == results[0] for r in results)


class TestSolveJobs:
    def test_budget_zero_completes_with_empty_cut(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        r = client.post(f"/api/instances/{iid}/solve", json={"algo": "direct", "k": 0})
        assert r.status_code == 202
        job = wait_terminal(client, r.json()["job_id"])
        assert job["state"] == "done"
        assert job["result"]["chosen"] == []

    def test_greedy_with_chunk_at_budget_equals_direct(self, client):
        iid = client.post(
            "/api/instances", json={"source": "karate", "attacked": [0, 1, 2]}
        ).json()["id"]
        d = client.post(f"/api/instances/{iid}/solve", json={"algo": "direct", "k": 2}).json()
        direct = wait_terminal(client, d["job_id"])
        g = client.post(
            f"/api/instances/{iid}/solve", json={"algo": "greedy", "k": 2, "x": 2}
        ).json()
        greedy = wait_terminal(client, g["job_id"])
        assert greedy["result"]["chosen"] == direct["result"]["chosen"]
        assert greedy["result"]["report"] == direct["result"]["report"]

    def test_oversized_solve_times_out_with_best_effort(self, client):
        edges = [[i, (i + 1) % 60] for i in range(60)] + [[i, (i + 9) % 60] for i in range(60)]
        doc = {"devices": list(range(60)), "connections": edges, "attacked": list(range(6))}
        iid = client.post("/api/instances", json=doc).json()["id"]
        r = client.post(f"/api/instances/{iid}/solve", json={"algo": "direct", "k": 6, "timeout": 1.0})
        job = wait_terminal(client, r.json()["job_id"], deadline=10.0)
        assert job["state"] == "timeout"
        assert job["result"] is not None
        assert len(job["result"]["chosen"]) <= 6

    def test_duplicate_running_job_conflicts(self, client):
        edges = [[i, (i + 1) % 40] for i in range(40)] + [[i, (i + 7) % 40] for i in range(40)]
        doc = {"devices": list(range(40)), "connections": edges, "attacked": [0, 1, 2, 3]}
        iid = client.post("/api/instances", json=doc).json()["id"]
        params = {"algo": "direct", "k": 4, "timeout": 5.0}
        first = client.post(f"/api/instances/{iid}/solve", json=params)
        assert first.status_code == 202
        second = client.post(f"/api/instances/{iid}/solve", json=params)
        assert second.status_code == 409
        wait_terminal(client, first.json()["job_id"])
        third = client.post(f"/api/instances/{iid}/solve", json=params)
        assert third.status_code == 202
        wait_terminal(client, third.json()["job_id"])

    def test_bad_params_400(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        assert client.post(f"/api/instances/{iid}/solve", json={"algo": "quantum", "k": 1}).status_code == 400
        assert client.post(f"/api/instances/{iid}/solve", json={"algo": "direct", "k": -1}).status_code == 400

    def test_missing_budget_400(self, client):
        iid = client.post("/api/instances", json=TRIANGLE).json()["id"]
        assert client.post(f"/api/instances/{iid}/solve", json={"algo": "direct"}).status_code == 400

    def test_budget_falls_back_to_stored_instance(self, client):
        doc = dict(TRIANGLE, budget=1)
        iid = client.post("/api/instances", json=doc).json()["id"]
        r = client.post(f"/api/instances/{iid}/solve", json={"algo": "direct"})
        assert r.status_code == 202
        job = wait_terminal(client, r.json()["job_id"])
        assert job["params"]["k"] == 1

    def test_unknown_job_404(self, client):
        assert client.get("/api/jobs/zzz").status_code == 404


class TestRestart:
    def test_instances_survive_jobs_fail(self, tmp_path):
        data = tmp_path / "data"
        c1 = TestClient(create_app(data))
        iid = c1.post("/api/instances", json=TRIANGLE).json()["id"]
        job = c1.post(f"/api/instances/{iid}/solve", json={"algo": "direct", "k": 1})
        jid = job.json()["job_id"]
        wait_terminal(c1, jid)

        c2 = TestClient(create_app(data))
        assert [s["id"] for s in c2.get("/api/instances").json()] == [iid]
        again = c2.get(f"/api/jobs/{jid}").json()
        assert again["state"] == "failed"
        assert c2.get("/api/jobs/neverissued").status_code == 404
