"""Exact minimum route count for tiny instances by exhaustive enumeration."""
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .evaluate import route_cost
from .model import Instance, SizeError, build_distance_matrix
from .solver import Plan, SolverParams, make_route

MAX_ORACLE_PODS = 8


@dataclass(frozen=True)
class OracleResult:
    min_route_count: Optional[int]
    witness_plan: Optional[Plan]
    explored_count: int

    @property
    def feasible(self) -> bool:
        return self.min_route_count is not None


def partitions_into(items: Sequence[int], k: int) -> Iterator[List[List[int]]]:
    """All set partitions of ``items`` into exactly ``k`` nonempty blocks."""
    n = len(items)
    if k > n or k <= 0:
        return
    if k == n:
        yield [[x] for x in items]
        return
    if k == 1:
        yield [list(items)]
        return
    first, rest = items[0], items[1:]
    # first in its own block
    for p in partitions_into(rest, k - 1):
        yield [[first]] + p
    # first joins one of k blocks of a partition of the rest
    for p in partitions_into(rest, k):
        for i in range(k):
            yield [b if j != i else [first] + b for j, b in enumerate(p)]


def min_routes_bruteforce(instance: Instance, params: Optional[SolverParams] = None) -> OracleResult:
    if len(instance.pods) > MAX_ORACLE_PODS:
        raise SizeError(f"oracle handles at most {MAX_ORACLE_PODS} PODs, got {len(instance.pods)}")
    if params is None:
        params = SolverParams.from_instance(instance)
    dist = build_distance_matrix(instance)
    demands = instance.demands
    rss_ids = sorted(instance.rss_ids)
    best_block: Dict[FrozenSet[int], Optional[Tuple[float, Tuple[int, ...], int]]] = {}
    explored = 0

    def block_route(block: Sequence[int]):
        nonlocal explored
        key = frozenset(block)
        if key in best_block:
            return best_block[key]
        best = None
        if sum(demands[p] for p in block) <= params.capacity:
            for order in permutations(sorted(block)):
                for rss in rss_ids:
                    explored += 1
                    c = route_cost(order, rss, dist, params)
                    if best is None or c < best[0]:
                        best = (c, order, rss)
            if best is not None and best[0] > params.max_route_time:
                best = None
        best_block[key] = best
        return best

    pods = sorted(instance.pod_ids)
    for k in range(1, len(pods) + 1):
        for partition in partitions_into(pods, k):
            found = [block_route(b) for b in partition]
            if all(f is not None for f in found):
                routes = tuple(make_route(order, rss, dist, demands, params) for _, order, rss in found)
                return OracleResult(k, Plan(routes, instance.name, params), explored)
    return OracleResult(None, None, explored)
