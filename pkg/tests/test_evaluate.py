import pytest

from rssroute import (
    SolverParams,
    average_difference,
    build_distance_matrix,
    check_compliance,
    plan_stats,
    route_cost,
    solve,
)
from rssroute.evaluate import ComparisonRow
from rssroute.model import SizeError
from rssroute.solver import Route, make_route

from conftest import make_instance

SOLUTION_MAX = {
    "E-n22-k4": 85.317,
    "E-n23-k3": 268.085,
    "E-n30-k3": 169.947,
    "E-n33-k4": 198.661,
    "E-n51-k5": 97.952,
    "E-n76-k7": 106.038,
    "F-n45-k4": 407.807,
    "F-n72-k4": 65.972,
    "F-n135-k7": 216.088,
}


def test_route_cost_singleton():
    inst = make_instance([(7, 0, 1)])
    assert route_cost((1,), 0, build_distance_matrix(inst)) == 7


def test_route_cost_longest_e_n22_k4(benchmarks):
    inst, _ = benchmarks["E-n22-k4"]
    d = build_distance_matrix(inst)
    assert route_cost((13, 11, 4, 3, 8, 10), 0, d) == pytest.approx(85.317, abs=0.01)


def test_route_cost_service_time(benchmarks):
    inst, _ = benchmarks["E-n22-k4"]
    d = build_distance_matrix(inst)
    seq = (13, 11, 4, 3, 8, 10)
    base = route_cost(seq, 0, d)
    p = SolverParams.from_instance(inst, service_time_per_stop=2)
    assert route_cost(seq, 0, d, p) == pytest.approx(base + 2 * len(seq))


def test_route_cost_empty():
    inst = make_instance([(7, 0, 1)])
    with pytest.raises(ValueError):
        route_cost((), 0, build_distance_matrix(inst))


@pytest.mark.parametrize("name", sorted(SOLUTION_MAX))
def test_solution_max_cost(name, benchmarks):
    inst, sol = benchmarks[name]
    assert plan_stats(sol, inst).max_route_cost == pytest.approx(SOLUTION_MAX[name], abs=0.01)


def test_e_n22_k4_declared_total(benchmarks):
    inst, sol = benchmarks["E-n22-k4"]
    stats = plan_stats(sol, inst)
    # the declared figure counts the return leg; the open total is much lower
    assert stats.closed_total_cost == pytest.approx(375, abs=2.0)
    assert stats.total_cost < stats.closed_total_cost
    assert stats.route_count == 4


def test_single_route_stats():
    inst = make_instance([(3, 4, 1)])
    d = build_distance_matrix(inst)
    p = SolverParams.from_instance(inst)
    s = plan_stats([make_route((1,), 0, d, inst.demands, p)], inst)
    assert s.max_route_cost == s.mean_route_cost == s.total_cost == 5
    assert s.cost_range == 0


def test_empty_stats():
    inst = make_instance([(3, 4, 1)])
    assert plan_stats([], inst).route_count == 0


def test_compliance_benchmarks(benchmarks):
    for name, (inst, _) in benchmarks.items():
        assert check_compliance(solve(inst), inst).passed, name


def test_compliance_flags_time():
    inst = make_instance([(10, 0, 1)], max_time=5)
    rep = check_compliance([Route((1,), 0, 0.0, 1)], inst)
    assert not rep.passed
    assert rep.failures[0].reasons == ("time",)
    # cost is recomputed, not trusted
    assert rep.failures[0].cost == 10


def test_compliance_flags_capacity():
    inst = make_instance([(1, 0, 6), (2, 0, 6)], capacity=10)
    rep = check_compliance([Route((1, 2), 0, 2.0, 12)], inst)
    assert rep.failures[0].reasons == ("capacity",)


def test_compliance_flags_coverage():
    inst = make_instance([(1, 0, 1), (2, 0, 1), (3, 0, 1)])
    rep = check_compliance([Route((1, 2), 0, 2.0, 2), Route((2,), 0, 2.0, 1)], inst)
    assert rep.missing == (3,)
    assert rep.duplicated == (2,)
    assert not rep.passed


def test_average_difference_reference_vector():
    assert average_difference([1, 3, 2, 1, 1, 0, 1, 2, 1]) == pytest.approx(12 / 9, abs=1e-9)


def test_average_difference_edges():
    assert average_difference([0, 0, 0]) == 0
    assert average_difference([4]) == 4
    with pytest.raises(SizeError):
        average_difference([])


def test_comparison_row_difference():
    row = ComparisonRow("x", 10.0, 6, 9.0, 4)
    assert row.difference == 2
    assert average_difference([row, ComparisonRow("y", 1.0, 5, 1.0, 5)]) == 1
    assert ComparisonRow("z", 1.0, 5, 1.0, None).difference is None
