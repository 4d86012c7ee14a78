"""
Reading instances and checking a best-known solution
====================================================

Parse a bundled benchmark, build its distance matrix and recompute the
route costs of the published solution.
"""

from rssroute import build_distance_matrix, load_benchmark, plan_stats, route_cost

inst, sol = load_benchmark("E-n22-k4")
print(inst.name, len(inst.pods), "PODs, capacity", inst.capacity, "time limit", inst.max_route_time)

# distances are plain Euclidean, kept in a numpy array keyed by node id
dist = build_distance_matrix(inst)
print("depot to POD 1:", round(dist(0, 1), 4))

# routes are open: the vehicle stops at its last POD
for seq in sol.routes:
    print(" ".join(map(str, seq)), "->", round(route_cost(seq, 0, dist), 3))

stats = plan_stats(sol, inst)
print("longest route", round(stats.max_route_cost, 3))
print("open total", round(stats.total_cost, 3), "closed total", round(stats.closed_total_cost, 3),
      "declared", sol.declared_cost)
