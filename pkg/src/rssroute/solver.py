"""Multi-phase spatial heuristic for the RSS-to-POD delivery problem.

The goal is as few open routes as possible (depot -> PODs, no return leg)
subject to a per-route time limit and a per-vehicle capacity. A POD set is
split around its two mutually farthest PODs into two chains, each chain is
hooked to its nearest depot, and any route over the time limit is broken
up and split again. Routes over capacity are then trimmed; the trimmed PODs
are pooled and routed by the same procedure until nothing is trimmed.

Ties are broken deterministically: lowest POD id, then the first chain,
then lowest RSS id.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .model import (
    ConfigurationError,
    DistanceMatrix,
    InfeasibleError,
    Instance,
    IterationLimitError,
    Rss,
    SizeError,
    build_distance_matrix,
)


TRIM_RULES = ("first_fit", "prefix")


@dataclass(frozen=True)
class SolverParams:
    capacity: int
    max_route_time: float
    service_time_per_stop: float = 0.0
    speed: float = 1.0
    max_outer_iterations: int = 1000
    trim_rule: str = "first_fit"

    def __post_init__(self):
        if self.capacity <= 0:
            raise ConfigurationError(f"capacity must be positive, got {self.capacity}")
        if not self.max_route_time > 0:
            raise ConfigurationError(f"max_route_time must be positive, got {self.max_route_time}")
        if self.service_time_per_stop < 0:
            raise ConfigurationError("service_time_per_stop must be >= 0")
        if not self.speed > 0:
            raise ConfigurationError(f"speed must be positive, got {self.speed}")
        if self.max_outer_iterations <= 0:
            raise ConfigurationError("max_outer_iterations must be positive")
        if self.trim_rule not in TRIM_RULES:
            raise ConfigurationError(f"trim_rule must be one of {TRIM_RULES}, got {self.trim_rule!r}")

    @classmethod
    def from_instance(cls, instance: Instance, **overrides) -> "SolverParams":
        """Params taken from the instance file; ``None`` overrides are ignored."""
        kw = {"capacity": instance.capacity, "max_route_time": instance.max_route_time}
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass(frozen=True)
class Chain:
    """Ordered POD path grown from a seed (fPOD) to its last attached POD (ePOD)."""

    pods: Tuple[int, ...]

    def __post_init__(self):
        if not self.pods:
            raise ValueError("empty chain")
        if len(set(self.pods)) != len(self.pods):
            raise ValueError(f"repeated POD in chain {self.pods}")

    @property
    def seed_end(self) -> int:
        return self.pods[0]

    @property
    def grow_end(self) -> int:
        return self.pods[-1]


@dataclass(frozen=True)
class Route:
    pod_sequence: Tuple[int, ...]
    rss_id: int
    total_time: float
    total_demand: int
    orientation: str = "forward"

    def __len__(self):
        return len(self.pod_sequence)


@dataclass(frozen=True)
class Plan:
    routes: Tuple[Route, ...]
    instance_name: str
    params_used: SolverParams

    @property
    def route_count(self) -> int:
        return len(self.routes)

    @property
    def max_route_time(self) -> float:
        return max((r.total_time for r in self.routes), default=0.0)


def route_time(pod_sequence: Sequence[int], rss_id: int, dist: DistanceMatrix, params: SolverParams) -> float:
    """Open-route travel time from the depot through every POD, plus service time."""
    travel = dist.path_length([rss_id, *pod_sequence])
    return travel / params.speed + params.service_time_per_stop * len(pod_sequence)


def make_route(pod_sequence: Sequence[int], rss_id: int, dist: DistanceMatrix,
               demands: Dict[int, int], params: SolverParams, orientation: str = "forward") -> Route:
    seq = tuple(pod_sequence)
    return Route(seq, rss_id, route_time(seq, rss_id, dist, params),
                 sum(demands[p] for p in seq), orientation)


def farthest_pair(pods: Iterable[int], dist: DistanceMatrix) -> Tuple[int, int]:
    ids = sorted(set(pods))
    if len(ids) < 2:
        raise SizeError("farthest_pair needs at least two PODs")
    idx = [dist.index(p) for p in ids]
    sub = dist.values[np.ix_(idx, idx)]
    best = sub.max()
    # rows/cols follow sorted ids, so the first hit in row-major upper
    # triangle order is the lexicographically smallest (min id, max id) pair
    iu, ju = np.nonzero(np.triu(sub == best, k=1))
    return ids[iu[0]], ids[ju[0]]


def grow_chains(pods: Iterable[int], seeds: Tuple[int, int], dist: DistanceMatrix) -> Tuple[Chain, Chain]:
    a, b = seeds
    remaining = set(pods)
    if a == b or a not in remaining or b not in remaining:
        raise ValueError(f"seeds {seeds} must be two distinct members of the POD set")
    remaining -= {a, b}
    chains = [[a], [b]]
    while remaining:
        cand = sorted(remaining)
        cols = [dist.index(p) for p in cand]
        best = None
        for c, chain in enumerate(chains):
            row = dist.values[dist.index(chain[-1]), cols]
            k = int(np.argmin(row))  # argmin returns the first minimum -> lowest id
            key = (float(row[k]), cand[k], c)
            if best is None or key < best:
                best = key
        _, pod, c = best
        chains[c].append(pod)
        remaining.discard(pod)
    return Chain(tuple(chains[0])), Chain(tuple(chains[1]))


def attach_rss(chain: Chain, rss_sites: Sequence[Rss], dist: DistanceMatrix,
               demands: Dict[int, int], params: SolverParams) -> Route:
    """Anchor the chain at the closest (endpoint, depot) pair; the route is open."""
    if not rss_sites:
        raise ConfigurationError("no RSS site to attach routes to")
    best = None
    for r in sorted(rss_sites, key=lambda r: r.id):
        for end_rank, end in enumerate((chain.seed_end, chain.grow_end)):
            key = (dist(end, r.id), r.id, end_rank)
            if best is None or key < best:
                best = key
    _, rss_id, end_rank = best
    if end_rank == 0:
        return make_route(chain.pods, rss_id, dist, demands, params, "forward")
    return make_route(chain.pods[::-1], rss_id, dist, demands, params, "reverse")


def split_routes(pods: Iterable[int], rss_sites: Sequence[Rss], dist: DistanceMatrix,
                 demands: Dict[int, int], params: SolverParams) -> List[Route]:
    """Seed, grow and attach: one route for a single POD, two otherwise."""
    pods = set(pods)
    if len(pods) == 1:
        return [attach_rss(Chain(tuple(pods)), rss_sites, dist, demands, params)]
    seeds = farthest_pair(pods, dist)
    return [attach_rss(c, rss_sites, dist, demands, params) for c in grow_chains(pods, seeds, dist)]


def enforce_time(routes: Iterable[Route], params: SolverParams, dist: DistanceMatrix,
                 rss_sites: Sequence[Rss], demands: Dict[int, int]) -> List[Route]:
    out = []
    stack = list(routes)[::-1]
    while stack:
        r = stack.pop()
        if r.total_time <= params.max_route_time:
            out.append(r)
            continue
        if len(r) == 1:
            raise InfeasibleError(
                f"POD {r.pod_sequence[0]} cannot be reached within the time limit "
                f"{params.max_route_time:g} (needs {r.total_time:.3f})"
            )
        stack.extend(split_routes(r.pod_sequence, rss_sites, dist, demands, params)[::-1])
    return out


def trim_capacity(routes: Iterable[Route], params: SolverParams, dist: DistanceMatrix,
                  demands: Dict[int, int]) -> Tuple[List[Route], List[int]]:
    """Cut over-capacity routes down to size; returns (kept routes, trimmed PODs).

    PODs are loaded starting from the route endpoint farther from its depot.
    With ``trim_rule="prefix"`` loading stops at the first POD that does not
    fit. With ``"first_fit"`` (default) that POD is skipped and loading
    continues along the route, so vehicles leave fuller. Kept PODs keep
    their depot and relative order, so the kept route is never longer.
    """
    kept, pool = [], []
    for r in routes:
        if r.total_demand <= params.capacity:
            kept.append(r)
            continue
        seq = r.pod_sequence
        from_tail = dist(seq[-1], r.rss_id) > dist(seq[0], r.rss_id)
        walk = seq[::-1] if from_tail else seq
        load, keep = 0, set()
        for p in walk:
            if load + demands[p] > params.capacity:
                if params.trim_rule == "prefix":
                    break
                continue
            load += demands[p]
            keep.add(p)
        kept.append(make_route([p for p in seq if p in keep], r.rss_id, dist, demands, params, r.orientation))
        pool.extend(p for p in seq if p not in keep)
    return kept, pool


def _pool_route(pool: Sequence[int], rss_sites, dist, demands, params) -> Route:
    """Join the trimmed PODs into a single route by nearest-neighbour chaining."""
    if len(pool) == 1:
        start = pool[0]
    else:
        start = farthest_pair(pool, dist)[0]
    chain = [start]
    rest = set(pool) - {start}
    while rest:
        cand = sorted(rest)
        row = dist.values[dist.index(chain[-1]), [dist.index(p) for p in cand]]
        nxt = cand[int(np.argmin(row))]
        chain.append(nxt)
        rest.discard(nxt)
    return attach_rss(Chain(tuple(chain)), rss_sites, dist, demands, params)


def _compliant(r: Route, params: SolverParams) -> bool:
    return r.total_time <= params.max_route_time and r.total_demand <= params.capacity


def solve(instance: Instance, params: Optional[SolverParams] = None,
          dist: Optional[DistanceMatrix] = None) -> Plan:
    if params is None:
        params = SolverParams.from_instance(instance)
    if dist is None:
        dist = build_distance_matrix(instance)
    demands = instance.demands
    too_big = [p.id for p in instance.pods if p.demand > params.capacity]
    if too_big:
        raise InfeasibleError(f"POD(s) {too_big} exceed vehicle capacity {params.capacity}")
    rss = instance.rss_sites

    routes: List[Route] = []
    pool = list(instance.pod_ids)
    first = True
    for _ in range(params.max_outer_iterations):
        if not first:
            joined = _pool_route(pool, rss, dist, demands, params)
            if _compliant(joined, params):
                routes.append(joined)
                pool = []
                break
        first = False
        fresh = split_routes(pool, rss, dist, demands, params)
        fresh = enforce_time(fresh, params, dist, rss, demands)
        kept, trimmed = trim_capacity(fresh, params, dist, demands)
        routes.extend(kept)
        if len(trimmed) >= len(pool):
            raise IterationLimitError("trimming did not shrink the POD pool")
        pool = trimmed
        if not pool:
            break
    if pool:
        raise IterationLimitError(f"gave up after {params.max_outer_iterations} passes")
    return Plan(tuple(routes), instance.name, params)


@dataclass(frozen=True)
class AssignmentMatrix:
    """Binary link indicators over ``ids`` (all nodes, depots included).

    ``X[i, j]``: POD i is assigned to seed POD j. ``S[j, k]``: seed j is
    linked to POD-or-depot k. ``Y[i, k]``: PODs i and k are adjacent on a
    route; only the i < k half is populated.
    """

    ids: Tuple[int, ...]
    X: np.ndarray
    S: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        n = len(self.ids)
        for name in ("X", "S", "Y"):
            m = getattr(self, name)
            if m.shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}, got {m.shape}")
            if not np.isin(m, (0, 1)).all():
                raise ValueError(f"{name} must be binary")
        if np.tril(self.Y).any():
            raise ValueError("Y is defined only for i < j")


def assignment_from_plan(plan: Plan, dist: DistanceMatrix) -> AssignmentMatrix:
    """Indicators for a plan, taking each route's first POD as its seed."""
    ids = dist.ids
    n = len(ids)
    X, S, Y = (np.zeros((n, n), dtype=np.int8) for _ in range(3))
    for r in plan.routes:
        seq = r.pod_sequence
        head = dist.index(seq[0])
        for p in seq[1:]:
            X[dist.index(p), head] = 1
        S[head, dist.index(r.rss_id)] = 1
        if len(seq) > 1:
            S[head, dist.index(seq[1])] = 1
        for a, b in zip(seq[:-1], seq[1:]):
            i, k = sorted((dist.index(a), dist.index(b)))
            Y[i, k] = 1
    return AssignmentMatrix(ids, X, S, Y)


def objective_value(assignment: AssignmentMatrix, dist: DistanceMatrix) -> float:
    """sum_ij X_ij d_ij + sum_ijk S_jk Y_ik d_ik, evaluated literally.

    A diagnostic only; the construction never optimises it directly.
    """
    idx = [dist.index(i) for i in assignment.ids]
    d = dist.values[np.ix_(idx, idx)]
    X = assignment.X.astype(float)
    S = assignment.S.astype(float)
    Y = assignment.Y.astype(float)
    # sum_j S_jk factors out of the i-sum: sum_k (sum_j S_jk)(sum_i Y_ik d_ik)
    return float((X * d).sum() + S.sum(axis=0) @ (Y * d).sum(axis=0))
