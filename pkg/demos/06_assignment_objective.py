"""
Indicator matrices and the link objective
=========================================

Express a plan as binary seed/link/adjacency indicators and evaluate the
summed-distance objective over them.
"""

from rssroute import assignment_from_plan, build_distance_matrix, load_benchmark, objective_value, solve

inst, _ = load_benchmark("E-n22-k4")
plan = solve(inst)
dist = build_distance_matrix(inst)
a = assignment_from_plan(plan, dist)
print("X links", int(a.X.sum()), "S links", int(a.S.sum()), "Y links", int(a.Y.sum()))
print("objective", round(objective_value(a, dist), 3))
