#!/usr/bin/env python3
"""The HTTP surface end to end, in process.

The same flow works against a live server (`cyberseg serve --port 8000`);
this script drives the app through a test client so it needs no port.
Instances persist as JSON files in the data directory; solve jobs run in
the background and are polled until they reach a terminal state.
"""

import json
import tempfile
import time

from fastapi.testclient import TestClient

from cyberseg.service import create_app

data_dir = tempfile.mkdtemp(prefix="cyberseg-demo-")
client = TestClient(create_app(data_dir))

# Store the bundled benchmark network with three attacked devices.
created = client.post(
    "/api/instances",
    json={"source": "karate", "name": "demo", "attacked": [4, 8, 15], "budget": 3},
)
instance = created.json()
print(f"POST /api/instances -> {created.status_code} id={instance['id']}")

# What-if: the naive response is to isolate exactly the attacked devices.
naive = client.post(
    f"/api/instances/{instance['id']}/whatif", json={"isolate": [4, 8, 15]}
).json()
print(f"what-if naive cut: {json.dumps(naive['report'])}")

# The solver may find a cut with the same vulnerability but better healthiness.
job = client.post(
    f"/api/instances/{instance['id']}/solve", json={"algo": "direct", "k": 3}
).json()
print(f"POST .../solve -> job {job['job_id']} ({job['state']})")
while True:
    view = client.get(f"/api/jobs/{job['job_id']}").json()
    if view["state"] in ("done", "timeout", "failed"):
        break
    time.sleep(0.05)
result = view["result"]
print(f"job {view['state']}: cut {result['chosen']} report {json.dumps(result['report'])}")
print(f"healthiness: naive {naive['report']['healthiness']} vs solved {result['report']['healthiness']}")
