import math

import numpy as np
import pytest

from rssroute import Instance, Pod, Point, Rss, load_benchmark
from rssroute.formats import BENCHMARKS

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {line}")


def make_instance(pods, rss=((0.0, 0.0),), capacity=100, max_time=1000.0, name="toy"):
    """pods: iterable of (x, y, demand); ids 1..n, depots 0, -1, -2, ..."""
    return Instance(
        name,
        tuple(Rss(-i, Point(float(x), float(y))) for i, (x, y) in enumerate(rss)),
        tuple(Pod(i, Point(float(x), float(y)), int(d)) for i, (x, y, d) in enumerate(pods, start=1)),
        capacity,
        float(max_time),
    )


def random_instance(rng: np.random.Generator, n_pods: int, n_rss: int = 1, capacity=None,
                    slack=(1.0, 3.0), name="rand"):
    """Random feasible instance: coordinates in [0,100]^2, demands in [1, capacity]."""
    if capacity is None:
        capacity = int(rng.integers(5, 40))
    xy = rng.uniform(0, 100, size=(n_pods, 2))
    depots = rng.uniform(0, 100, size=(n_rss, 2))
    demands = rng.integers(1, capacity + 1, size=n_pods)
    reach = max(min(math.dist(p, d) for d in depots) for p in xy)
    # every POD must be reachable on its own, otherwise no plan exists
    t_max = max(reach * float(rng.uniform(*slack)), reach) + 1e-6
    return make_instance(
        [(x, y, d) for (x, y), d in zip(xy, demands)],
        rss=[tuple(d) for d in depots],
        capacity=capacity,
        max_time=t_max,
        name=name,
    )


@pytest.fixture(scope="session")
def benchmarks():
    return {name: load_benchmark(name) for name in BENCHMARKS}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def congruent_copy(inst: Instance, rng: np.random.Generator) -> Instance:
    """Rotate, translate and relabel the PODs of ``inst``."""
    theta = float(rng.uniform(0, 2 * math.pi))
    shift = rng.uniform(-50, 50, size=2)
    c, s = math.cos(theta), math.sin(theta)

    def move(p: Point) -> Point:
        return Point(c * p.x - s * p.y + shift[0], s * p.x + c * p.y + shift[1])

    order = rng.permutation(len(inst.pods))
    pods = tuple(Pod(i + 1, move(inst.pods[j].location), inst.pods[j].demand) for i, j in enumerate(order))
    rss = tuple(Rss(r.id, move(r.location)) for r in inst.rss_sites)
    return Instance(inst.name, rss, pods, inst.capacity, inst.max_route_time)
