"""
Route count against the time limit
==================================

Sweep the per-route time limit and watch the vehicle count respond.
Limits below the farthest POD's distance admit no plan at all.
"""

import numpy as np

from rssroute import InfeasibleError, SolverParams, load_benchmark, solve

inst, _ = load_benchmark("E-n22-k4")
for t in np.arange(50, 131, 10):
    try:
        plan = solve(inst, SolverParams.from_instance(inst, max_route_time=float(t)))
    except InfeasibleError:
        print(f"T_l {t:5.0f}: infeasible")
        continue
    print(f"T_l {t:5.0f}: {plan.route_count} routes, longest {plan.max_route_time:.2f}")
