"""Route costs, compliance checks and the comparison statistics."""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .formats import SolutionFile
from .model import DistanceMatrix, Instance, SizeError, build_distance_matrix
from .solver import Plan, Route, SolverParams, route_time


def route_cost(pod_sequence: Sequence[int], rss_id: int, dist: DistanceMatrix,
               params: Optional[SolverParams] = None) -> float:
    """Time to run the open route rss -> p1 -> ... -> pn."""
    if not pod_sequence:
        raise ValueError("empty route")
    if params is None:
        return dist.path_length([rss_id, *pod_sequence])
    return route_time(pod_sequence, rss_id, dist, params)


def closed_route_cost(pod_sequence: Sequence[int], rss_id: int, dist: DistanceMatrix) -> float:
    """Round-trip length, the convention used by the declared ``Cost:`` lines."""
    return dist.path_length([rss_id, *pod_sequence, rss_id])


@dataclass(frozen=True)
class PlanStats:
    route_count: int
    max_route_cost: float
    mean_route_cost: float
    cost_range: float
    total_cost: float
    closed_total_cost: float
    route_costs: Tuple[float, ...] = ()


def _anchored_routes(plan_or_solution, instance: Instance, dist: DistanceMatrix,
                     params: Optional[SolverParams]) -> List[Tuple[Tuple[int, ...], int]]:
    if isinstance(plan_or_solution, SolutionFile):
        out = []
        for seq in plan_or_solution.routes:
            # solution files carry no depot; use the one giving the cheapest route
            rss = min(instance.rss_ids, key=lambda r: (route_cost(seq, r, dist, params), r))
            out.append((tuple(seq), rss))
        return out
    routes = plan_or_solution.routes if isinstance(plan_or_solution, Plan) else plan_or_solution
    return [(r.pod_sequence, r.rss_id) for r in routes]


def plan_stats(plan_or_solution: Union[Plan, SolutionFile, Iterable[Route]], instance: Instance,
               params: Optional[SolverParams] = None, dist: Optional[DistanceMatrix] = None) -> PlanStats:
    if dist is None:
        dist = build_distance_matrix(instance)
    anchored = [(s, r) for s, r in _anchored_routes(plan_or_solution, instance, dist, params) if s]
    costs = [route_cost(s, r, dist, params) for s, r in anchored]
    if not costs:
        return PlanStats(0, 0.0, 0.0, 0.0, 0.0, 0.0)
    closed = sum(closed_route_cost(s, r, dist) for s, r in anchored)
    return PlanStats(
        route_count=len(costs),
        max_route_cost=max(costs),
        mean_route_cost=sum(costs) / len(costs),
        cost_range=max(costs) - min(costs),
        total_cost=sum(costs),
        closed_total_cost=closed,
        route_costs=tuple(costs),
    )


@dataclass(frozen=True)
class RouteCheck:
    index: int
    cost: float
    demand: int
    reasons: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.reasons


@dataclass(frozen=True)
class ComplianceReport:
    routes: Tuple[RouteCheck, ...]
    missing: Tuple[int, ...] = ()
    duplicated: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.routes) and not self.missing and not self.duplicated

    @property
    def failures(self) -> List[RouteCheck]:
        return [r for r in self.routes if not r.passed]


def check_compliance(plan: Union[Plan, Iterable[Route]], instance: Instance,
                     params: Optional[SolverParams] = None, dist: Optional[DistanceMatrix] = None,
                     tol: float = 1e-9) -> ComplianceReport:
    """Flag routes over the time limit ("time") or over capacity ("capacity").

    Costs are recomputed from the distance matrix, never taken from the route.
    """
    if params is None:
        params = plan.params_used if isinstance(plan, Plan) else SolverParams.from_instance(instance)
    if dist is None:
        dist = build_distance_matrix(instance)
    routes = plan.routes if isinstance(plan, Plan) else list(plan)
    demands = instance.demands
    checks = []
    seen = []
    for i, r in enumerate(routes, start=1):
        cost = route_cost(r.pod_sequence, r.rss_id, dist, params)
        demand = sum(demands[p] for p in r.pod_sequence)
        reasons = []
        if cost > params.max_route_time + tol:
            reasons.append("time")
        if demand > params.capacity:
            reasons.append("capacity")
        checks.append(RouteCheck(i, cost, demand, tuple(reasons)))
        seen.extend(r.pod_sequence)
    dup = sorted({p for p in seen if seen.count(p) > 1})
    missing = sorted(set(instance.pod_ids) - set(seen))
    return ComplianceReport(tuple(checks), tuple(missing), tuple(dup))


@dataclass(frozen=True)
class ComparisonRow:
    instance: str
    input_max_cost: float
    generated_route_count: int
    generated_max_cost: float
    best_known_k: Optional[int]
    solution_max_cost: Optional[float] = None

    @property
    def difference(self) -> Optional[int]:
        if self.best_known_k is None:
            return None
        return self.generated_route_count - self.best_known_k


def average_difference(rows: Iterable[Union[ComparisonRow, int]]) -> float:
    diffs = [r.difference if isinstance(r, ComparisonRow) else r for r in rows]
    diffs = [d for d in diffs if d is not None]
    if not diffs:
        raise SizeError("no comparison rows with a best-known route count")
    return sum(diffs) / len(diffs)
