import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rssroute import (
    InfeasibleError,
    ParseError,
    parse_instance,
    parse_solution,
    serialize_instance,
    write_plan,
)
from rssroute.formats import BENCHMARKS, data_path, plan_to_dict, write_plan_csv, write_plan_json
from rssroute.model import SizeError
from rssroute.solver import Route


def test_parse_e_n22_k4_header_and_footer():
    inst = parse_instance(data_path("E-n22-k4.txt").read_text(), "E-n22-k4")
    assert (inst.rss_sites[0].location.x, inst.rss_sites[0].location.y) == (145, 215)
    first, last = inst.pods[0], inst.pods[-1]
    assert (first.location.x, first.location.y, first.demand) == (151, 264, 1100)
    assert (last.location.x, last.location.y, last.demand) == (139, 182, 700)
    assert inst.capacity == 6000
    assert inst.max_route_time == 90
    assert inst.known_k == 4
    assert inst.pod_ids == list(range(1, 22))
    assert inst.rss_ids == [0]


def test_parse_minimal():
    inst = parse_instance("0 0 0\n1 0 5\n10 100\n", "tiny")
    assert len(inst.pods) == 1
    assert inst.capacity == 10 and inst.max_route_time == 100


def test_parse_tolerates_whitespace():
    inst = parse_instance("\n 0\t0 0 \n\n1   0 5\n10 100\n\n", "tiny")
    assert inst.pods[0].demand == 5


def test_parse_demand_over_capacity():
    with pytest.raises(InfeasibleError):
        parse_instance("0 0 0\n1 0 50\n10 100\n", "tiny")


@pytest.mark.parametrize("text, line", [
    ("0 0 0\n1 0\n10 100\n", 2),
    ("0 0 0\n1 x 5\n10 100\n", 2),
    ("0 0\n1 0 5\n10 100\n", 1),
    ("0 0 0\n1 0 5\n10 100 7\n", 3),
    ("0 0 0\n1 0 2.5\n10 100\n", 2),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text, "bad")
    assert exc.value.line == line


def test_parse_empty_instance():
    with pytest.raises(SizeError):
        parse_instance("0 0 0\n10 100\n", "empty")


@pytest.mark.parametrize("name", BENCHMARKS)
def test_instance_roundtrip(name):
    a = parse_instance(data_path(f"{name}.txt").read_text(), name)
    b = parse_instance(serialize_instance(a), name)
    assert a == b


OPT_E22 = """Route #1: 17 20 18 15 12
Route #2: 16 19 21 14
Route #3: 13 11 4 3 8 10
Route #4: 9 7 5 2 1 6
Cost: 375
"""


def test_parse_solution_e_n22_k4():
    sol = parse_solution(OPT_E22)
    assert len(sol.routes) == 4
    assert sol.routes[0] == (17, 20, 18, 15, 12)
    assert sol.declared_cost == 375


def test_bundled_e_n22_k4_solution_verbatim():
    assert parse_solution(data_path("opt-E-n22-k4.txt").read_text()) == parse_solution(OPT_E22)


def test_parse_solution_singleton():
    sol = parse_solution("Route #1: 1\nCost: 0")
    assert sol.routes == ((1,),) and sol.declared_cost == 0


def test_parse_solution_duplicate():
    with pytest.raises(ParseError):
        parse_solution("Route #1: 1 2\nRoute #2: 2\nCost: 5")


def test_parse_solution_missing_cost():
    with pytest.raises(ParseError):
        parse_solution("Route #1: 1 2\n")


@pytest.mark.parametrize("name", BENCHMARKS)
def test_solution_covers_every_pod(name, benchmarks):
    inst, sol = benchmarks[name]
    ids = sorted(sol.pod_ids)
    assert ids == list(range(1, len(inst.pods) + 1))
    assert len(sol.routes) == inst.known_k


def _route(seq, cost, demand=1, rss=0):
    return Route(tuple(seq), rss, cost, demand)


def test_write_plan_empty():
    assert write_plan([]) == "Cost: 0.000"


def test_write_plan_single():
    assert write_plan([_route([3, 1], 12.5)]) == "Route #1: 3 1\nCost: 12.500"


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(1, 10_000), min_size=1, max_size=12, unique=True),
                min_size=0, max_size=8),
       st.floats(0, 1e4))
def test_write_parse_roundtrip(seqs, cost):
    # make PODs unique across routes
    seen, routes = set(), []
    for s in seqs:
        s = [p for p in s if p not in seen]
        seen.update(s)
        if s:
            routes.append(_route(s, cost))
    sol = parse_solution(write_plan(routes))
    assert [list(r) for r in sol.routes] == [list(r.pod_sequence) for r in routes]


def test_write_plan_csv_and_json():
    routes = [_route([3, 1], 12.5, demand=7), Route((2,), 0, 4.0, 2, "reverse")]
    csv_text = write_plan_csv(routes)
    assert csv_text.splitlines()[0] == "route,rss,pods,orientation,demand,cost"
    assert csv_text.splitlines()[1] == "1,0,3 1,forward,7,12.500"
    assert csv_text.splitlines()[2] == "2,0,2,reverse,2,4.000"
    d = plan_to_dict(routes)
    assert d["routes"][1]["orientation"] == "reverse"
    assert d["total_cost"] == 16.5
    assert write_plan_json(routes) == write_plan_json(routes)
