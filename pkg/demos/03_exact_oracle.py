"""
Exact minimum on a tiny instance
================================

For a handful of PODs every partition can be enumerated, which gives
the true minimum route count to compare the heuristic against.
"""

import numpy as np

from rssroute import Instance, Pod, Point, Rss, min_routes_bruteforce, solve, write_plan

rng = np.random.default_rng(7)
xy = rng.uniform(0, 100, size=(7, 2))
demand = rng.integers(1, 6, size=7)
inst = Instance(
    "tiny",
    (Rss(0, Point(50.0, 50.0)),),
    tuple(Pod(i + 1, Point(*map(float, p)), int(d)) for i, (p, d) in enumerate(zip(xy, demand))),
    capacity=10,
    max_route_time=120.0,
)

exact = min_routes_bruteforce(inst)
print("oracle:", exact.min_route_count, "routes after", exact.explored_count, "route evaluations")
print(write_plan(exact.witness_plan))

plan = solve(inst)
print("heuristic:", plan.route_count, "routes")
