"""Domain types and planar distance geometry.

Every node (POD or RSS depot) carries an integer id. Ids are the only keys
into a :class:`DistanceMatrix`; two nodes may share coordinates.
"""
import math
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np


class RssError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RssError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceError(RssError, ValueError):
    """Structurally valid input that violates an instance invariant."""


class InfeasibleError(RssError):
    """No compliant plan exists (e.g. a POD out of reach within the time limit)."""


class SizeError(RssError, ValueError):
    pass


class ConfigurationError(RssError, ValueError):
    pass


class IterationLimitError(RssError, RuntimeError):
    pass


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")


@dataclass(frozen=True)
class Pod:
    id: int
    location: Point
    demand: int

    def __post_init__(self):
        if self.demand < 0:
            raise ValueError(f"POD {self.id} has negative demand {self.demand}")


@dataclass(frozen=True)
class Rss:
    id: int
    location: Point


_NAME_RE = re.compile(r"-n(\d+)-k(\d+)")


def known_k_from_name(name: str) -> Optional[int]:
    m = _NAME_RE.search(name)
    return int(m.group(2)) if m else None


@dataclass(frozen=True)
class Instance:
    """One benchmark test case: depot(s), PODs, vehicle capacity and T_l."""

    name: str
    rss_sites: Tuple[Rss, ...]
    pods: Tuple[Pod, ...]
    capacity: int
    max_route_time: float
    known_k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "rss_sites", tuple(self.rss_sites))
        object.__setattr__(self, "pods", tuple(self.pods))
        if not self.rss_sites:
            raise InstanceError("instance needs at least one RSS site")
        if not self.pods:
            raise InstanceError("instance has no PODs")
        if self.capacity <= 0:
            raise InstanceError(f"capacity must be positive, got {self.capacity}")
        if not self.max_route_time > 0:
            raise InstanceError(f"max route time must be positive, got {self.max_route_time}")
        pod_ids = [p.id for p in self.pods]
        rss_ids = [r.id for r in self.rss_sites]
        if len(set(pod_ids)) != len(pod_ids) or len(set(rss_ids)) != len(rss_ids):
            raise InstanceError("duplicate node id")
        if set(pod_ids) & set(rss_ids):
            raise InstanceError("RSS and POD ids overlap")
        m = _NAME_RE.search(self.name)
        if m and int(m.group(1)) != len(self.pods) + len(self.rss_sites):
            raise InstanceError(
                f"{self.name}: name declares {m.group(1)} nodes, "
                f"found {len(self.pods) + len(self.rss_sites)}"
            )
        if self.known_k is None and m:
            object.__setattr__(self, "known_k", int(m.group(2)))
        for p in self.pods:
            if p.demand > self.capacity:
                raise InfeasibleError(
                    f"POD {p.id} demand {p.demand} exceeds vehicle capacity {self.capacity}"
                )

    @property
    def pod_ids(self) -> List[int]:
        return [p.id for p in self.pods]

    @property
    def rss_ids(self) -> List[int]:
        return [r.id for r in self.rss_sites]

    @property
    def demands(self) -> Dict[int, int]:
        return {p.id: p.demand for p in self.pods}

    def nodes(self) -> List[Tuple[int, Point]]:
        """All nodes, depots first, in declaration order."""
        return [(r.id, r.location) for r in self.rss_sites] + [(p.id, p.location) for p in self.pods]


def euclidean_distance(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric Euclidean distances keyed by node id."""

    ids: Tuple[int, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values.setflags(write=False)
        object.__setattr__(self, "_index", {nid: i for i, nid in enumerate(self.ids)})

    def index(self, node_id: int) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id}") from None

    def __call__(self, i: int, j: int) -> float:
        return float(self.values[self._index[i], self._index[j]])

    def __len__(self):
        return len(self.ids)

    def path_length(self, node_ids: Sequence[int]) -> float:
        idx = [self.index(n) for n in node_ids]
        if len(idx) < 2:
            return 0.0
        return float(sum(self.values[a, b] for a, b in zip(idx[:-1], idx[1:])))


def distance_matrix_from_points(nodes: Iterable[Tuple[int, Point]]) -> DistanceMatrix:
    nodes = list(nodes)
    xy = np.array([[p.x, p.y] for _, p in nodes], dtype=float).reshape(-1, 2)
    diff = xy[:, None, :] - xy[None, :, :]
    values = np.hypot(diff[..., 0], diff[..., 1])
    return DistanceMatrix(tuple(nid for nid, _ in nodes), values)


def build_distance_matrix(instance: Instance) -> DistanceMatrix:
    return distance_matrix_from_points(instance.nodes())
