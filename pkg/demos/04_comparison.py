"""
Comparing against best-known solutions
======================================

Solve every bundled benchmark with a chosen time limit and report the
extra routes needed relative to the published solution.
"""

from rssroute import SolverParams, average_difference, load_benchmark, plan_stats, solve
from rssroute.evaluate import ComparisonRow
from rssroute.formats import BENCHMARKS

limits = dict(zip(BENCHMARKS, (82.7, 165, 111.4, 221, 231, 199, 350, 125, 462)))

rows = []
for name in BENCHMARKS:
    inst, sol = load_benchmark(name)
    params = SolverParams.from_instance(inst, max_route_time=limits[name])
    plan = solve(inst, params)
    rows.append(ComparisonRow(name, limits[name], plan.route_count, plan.max_route_time,
                              len(sol.routes), plan_stats(sol, inst).max_route_cost))

for r in rows:
    print(f"{r.instance:10s} T_l {r.input_max_cost:7.1f}  generated {r.generated_route_count}"
          f"  best {r.best_known_k}  difference {r.difference}")
print("average difference", round(average_difference(rows), 3))
