"""
Building a plan
===============

Run the constructive heuristic on a benchmark and inspect the routes.
"""

from rssroute import SolverParams, check_compliance, load_benchmark, solve, write_plan

inst, sol = load_benchmark("E-n22-k4")
plan = solve(inst)
print(write_plan(plan))
print("routes:", plan.route_count, "best known:", len(sol.routes))

report = check_compliance(plan, inst)
print("compliant:", report.passed)

# a tighter time limit needs more vehicles
params = SolverParams.from_instance(inst, max_route_time=70)
tight = solve(inst, params)
print("T_l = 70 ->", tight.route_count, "routes, longest", round(tight.max_route_time, 3))

# the capacity trimming rule can be switched
prefix = solve(inst, SolverParams.from_instance(inst, trim_rule="prefix"))
print("prefix trimming ->", prefix.route_count, "routes")
