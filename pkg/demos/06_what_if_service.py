#!/usr/bin/env python3
"""Drive the what-if HTTP API end to end.

Starts the service in a background thread on a generated instance, asks a few
scenario questions the way the browser UI would, and prints the answers.
"""

import threading
import time

import httpx
import uvicorn

import riskcut as rc
from riskcut.service import create_app

PORT = 8777

config = rc.GenConfig(
    seed=5,
    n_facilities=80,
    min_facility_size=4,
    max_facility_size=200,
    size_alpha=1.1,
    avg_activities=4.0,
    infect_alpha=2.0,
    cost_mu=1.1,
    cost_sigma=0.5,
    isolation_cost_fraction=0.01,
    budget_fraction=0.05,
)
instance = rc.generate(config)

server = uvicorn.Server(
    uvicorn.Config(create_app(instance), host="127.0.0.1", port=PORT, log_level="warning")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()

base = f"http://127.0.0.1:{PORT}"
with httpx.Client(base_url=base, timeout=30.0) as client:
    for _ in range(100):
        try:
            if client.get("/healthz").status_code == 200:
                break
        except httpx.TransportError:
            pass
        time.sleep(0.05)

    summary = client.get("/instance/summary").json()
    print(f"loaded: {summary['nPeople']} people, {summary['nFacilities']} facilities, "
          f"budget {summary['budget']:.4g}, baseline risk {summary['baselineRisk']:.4g}")

    # Question 1: what does the solver recommend with the default budget?
    answer = client.post("/scenario", json={}).json()
    print(f"\ndefault scenario: ratio {answer['riskReport']['ratio']:.3f} at "
          f"split {answer['bestSplit']}%, "
          f"{len(answer['solution']['closedFacilities'])} closures, "
          f"{len(answer['solution']['isolatedPeople'])} isolations")

    # Question 2: the mayor insists facility 0 stays open. How much does
    # that protection cost in residual risk?
    constrained = client.post("/scenario", json={"excludedFacilities": [0]}).json()
    print(f"keeping facility 0 open: ratio {constrained['riskReport']['ratio']:.3f}")

    # Question 3: what if the budget doubles?
    richer = client.post("/scenario", json={"budget": 2 * summary["budget"]}).json()
    print(f"double budget: ratio {richer['riskReport']['ratio']:.3f}")

    # Question 4: force the biggest facility closed no matter what.
    sizes = summary["facilities"]["sizes"]
    biggest = sizes.index(max(sizes))
    forced = client.post("/scenario", json={"forcedClosures": [biggest]}).json()
    print(f"forcing facility {biggest} (size {max(sizes)}) closed: "
          f"ratio {forced['riskReport']['ratio']:.3f}")

server.should_exit = True
thread.join(timeout=5)
print("\nservice stopped")
