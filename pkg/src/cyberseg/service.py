"""HTTP/JSON service: stored instances, what-if scoring, and async solve jobs.

Instances persist as canonical JSON files in a data directory, one file per
id, so a restart loses nothing.  Solve jobs run on background threads and
live only in memory; after a restart an already-issued job id reports
``failed``.  Errors use {"error", "detail"} bodies.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal, Optional, Union

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .exact import ObjectiveMode, SolveConfig, SolveStatus, solve_direct, solve_oracle
from .greedy import GreedyConfig, solve_greedy
from .graph import AttackSet
from .instances import (
    Instance,
    ParseError,
    instance_from_json_dict,
    instance_to_json_dict,
    load_karate,
)
from .wire import solution_to_dict, whatif_to_dict


class ApiError(Exception):
    def __init__(self, status_code: int, error: str, detail: str) -> None:
        super().__init__(detail)
        self.status_code = status_code
        self.error = error
        self.detail = detail


@dataclass(frozen=True)
class StoredInstance:
    id: str
    name: str
    created_at: str
    instance: Instance

    def summary(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "created_at": self.created_at,
            "devices": self.instance.graph.device_count,
            "connections": self.instance.graph.connection_count,
            "attacked": len(self.instance.attacked.attacked),
            "budget": self.instance.budget,
        }


class InstanceStore:
    """Directory-backed instance registry; one canonical JSON file per id."""

    def __init__(self, data_dir: Union[str, Path]) -> None:
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._items: dict[str, StoredInstance] = {}
        for path in sorted(self._dir.glob("*.json")):
            try:
                obj = json.loads(path.read_text("utf-8"))
                inst = instance_from_json_dict(obj)
            except (ParseError, ValueError, OSError):
                continue  # skip foreign files rather than refusing to start
            self._items[path.stem] = StoredInstance(
                id=path.stem,
                name=obj.get("name", path.stem),
                created_at=obj.get("created_at", ""),
                instance=inst,
            )

    def create(self, inst: Instance, name: Optional[str]) -> StoredInstance:
        stored = StoredInstance(
            id=uuid.uuid4().hex[:12],
            name=name or f"instance-{len(self._items) + 1}",
            created_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            instance=inst,
        )
        doc = instance_to_json_dict(inst)
        doc["name"] = stored.name
        doc["created_at"] = stored.created_at
        with self._lock:
            (self._dir / f"{stored.id}.json").write_text(json.dumps(doc, indent=2) + "\n", "utf-8")
            self._items[stored.id] = stored
        return stored

    def get(self, instance_id: str) -> StoredInstance:
        try:
            return self._items[instance_id]
        except KeyError:
            raise ApiError(404, "not_found", f"no instance with id {instance_id!r}") from None

    def delete(self, instance_id: str) -> None:
        with self._lock:
            if instance_id not in self._items:
                raise ApiError(404, "not_found", f"no instance with id {instance_id!r}")
            del self._items[instance_id]
            (self._dir / f"{instance_id}.json").unlink(missing_ok=True)

    def list(self) -> list[StoredInstance]:
        return sorted(self._items.values(), key=lambda s: (s.created_at, s.id))


class SolveParams(BaseModel):
    algo: Literal["direct", "greedy", "oracle"] = "direct"
    k: Optional[int] = Field(default=None, ge=0)
    x: int = Field(default=3, ge=1)
    mode: Literal["snpv", "cnpv"] = "snpv"
    timeout: float = Field(default=600.0, gt=0)
    use_degree_one_filter: bool = True
    parallelism: int = Field(default=1, ge=1)


@dataclass
class SolveJob:
    id: str
    instance_id: str
    params: dict
    state: str = "queued"  # queued -> running -> done | timeout | failed
    result: Optional[dict] = None
    error: Optional[str] = None
    created_at: float = field(default_factory=time.time)

    def view(self) -> dict:
        return {
            "id": self.id,
            "instance_id": self.instance_id,
            "params": self.params,
            "state": self.state,
            "result": self.result,
            "error": self.error,
        }


class JobManager:
    """Background solve jobs with per-(instance, params) dedup.

    Job ids are appended to a registry file so that, after a restart, a
    client polling an id issued by the previous process sees a terminal
    ``failed`` state instead of a phantom 404.
    """

    def __init__(self, data_dir: Union[str, Path]) -> None:
        self._lock = threading.Lock()
        self._jobs: dict[str, SolveJob] = {}
        self._registry = Path(data_dir) / "jobs.txt"
        self._seen_before: set[str] = set()
        if self._registry.exists():
            self._seen_before = set(self._registry.read_text("utf-8").split())

    def _dedup_key(self, instance_id: str, params: dict) -> str:
        canonical = json.dumps({"instance": instance_id, **params}, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()

    def submit(self, stored: StoredInstance, params: SolveParams, k: int) -> SolveJob:
        params_doc = params.model_dump()
        params_doc["k"] = k
        key = self._dedup_key(stored.id, params_doc)
        with self._lock:
            for job in self._jobs.values():
                if job.state in ("queued", "running") and job.params.get("_key") == key:
                    raise ApiError(409, "duplicate_job", f"identical job {job.id} is already {job.state}")
            job = SolveJob(id=uuid.uuid4().hex[:12], instance_id=stored.id, params={**params_doc, "_key": key})
            self._jobs[job.id] = job
            with self._registry.open("a", encoding="utf-8") as fh:
                fh.write(job.id + "\n")
        thread = threading.Thread(target=self._run, args=(job, stored.instance), daemon=True)
        thread.start()
        return job

    def _run(self, job: SolveJob, inst: Instance) -> None:
        job.state = "running"
        p = job.params
        config = SolveConfig(
            budget_k=p["k"],
            objective_mode=ObjectiveMode(p["mode"]),
            use_degree_one_filter=p["use_degree_one_filter"],
            timeout_seconds=p["timeout"],
            parallelism=p["parallelism"],
        )
        try:
            if p["algo"] == "direct":
                solution = solve_direct(inst.graph, inst.attacked, config)
            elif p["algo"] == "greedy":
                solution = solve_greedy(
                    inst.graph,
                    inst.attacked,
                    GreedyConfig(budget_k=p["k"], chunk_x=p["x"], inner=replace(config, budget_k=0)),
                )
            else:
                solution = solve_oracle(inst.graph, inst.attacked, p["k"], ObjectiveMode(p["mode"]))
            job.result = solution_to_dict(solution)
            job.state = "done" if solution.status is SolveStatus.OPTIMAL else "timeout"
        except Exception as exc:  # report, never crash the service
            job.error = str(exc)
            job.state = "failed"

    def get(self, job_id: str) -> dict:
        job = self._jobs.get(job_id)
        if job is not None:
            view = job.view()
            view["params"] = {k: v for k, v in view["params"].items() if k != "_key"}
            return view
        if job_id in self._seen_before:
            return {
                "id": job_id,
                "instance_id": None,
                "params": None,
                "state": "failed",
                "result": None,
                "error": "job was lost in a service restart",
            }
        raise ApiError(404, "not_found", f"no job with id {job_id!r}")


def create_app(data_dir: Union[str, Path]) -> FastAPI:
    """Build the service bound to one data directory."""
    app = FastAPI(title="cyberseg", version="0.1.0")
    store = InstanceStore(data_dir)
    jobs = JobManager(data_dir)

    @app.exception_handler(ApiError)
    async def on_api_error(_req: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status_code, content={"error": exc.error, "detail": exc.detail})

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_req: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": "validation", "detail": str(exc.errors())})

    @app.post("/api/instances", status_code=201)
    async def create_instance(body: dict) -> dict:
        name = body.get("name")
        if body.get("source") == "karate":
            attacked = AttackSet(body.get("attacked", []))
            try:
                inst = Instance(load_karate(), attacked, body.get("budget"))
            except ValueError as exc:
                raise ApiError(400, "invalid_instance", str(exc)) from None
        else:
            try:
                inst = instance_from_json_dict(body)
            except (ParseError, ValueError) as exc:
                raise ApiError(400, "invalid_instance", str(exc)) from None
        return store.create(inst, name).summary()

    @app.get("/api/instances")
    async def list_instances() -> list[dict]:
        return [s.summary() for s in store.list()]

    @app.get("/api/instances/{instance_id}")
    async def get_instance(instance_id: str) -> dict:
        stored = store.get(instance_id)
        doc = stored.summary()
        doc["instance"] = instance_to_json_dict(stored.instance)
        return doc

    @app.delete("/api/instances/{instance_id}", status_code=204)
    async def delete_instance(instance_id: str) -> None:
        store.delete(instance_id)

    @app.post("/api/instances/{instance_id}/whatif")
    async def whatif(instance_id: str, body: dict) -> dict:
        stored = store.get(instance_id)
        isolate = body.get("isolate", [])
        if not isinstance(isolate, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in isolate
        ):
            raise ApiError(400, "invalid_isolate", "'isolate' must be an array of device ids")
        try:
            return whatif_to_dict(stored.instance, isolate)
        except ValueError as exc:
            raise ApiError(400, "invalid_isolate", str(exc)) from None

    @app.post("/api/instances/{instance_id}/solve", status_code=202)
    async def submit_solve(instance_id: str, params: SolveParams) -> dict:
        stored = store.get(instance_id)
        k = params.k if params.k is not None else stored.instance.budget
        if k is None:
            raise ApiError(400, "missing_budget", "pass 'k' or store the instance with a budget")
        job = jobs.submit(stored, params, k)
        return {"job_id": job.id, "state": job.state}

    @app.get("/api/jobs/{job_id}")
    async def get_job(job_id: str) -> dict:
        return jobs.get(job_id)

    return app
