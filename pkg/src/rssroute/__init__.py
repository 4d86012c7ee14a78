"""Route-count-minimising delivery planner for RSS depots and PODs."""
from .evaluate import (
    ComparisonRow,
    ComplianceReport,
    PlanStats,
    average_difference,
    check_compliance,
    closed_route_cost,
    plan_stats,
    route_cost,
)
from .formats import (
    BENCHMARKS,
    SolutionFile,
    load_benchmark,
    parse_instance,
    parse_solution,
    read_instance,
    read_solution,
    serialize_instance,
    write_plan,
    write_plan_csv,
    write_plan_json,
)
from .model import (
    DistanceMatrix,
    InfeasibleError,
    Instance,
    ParseError,
    Point,
    Pod,
    Rss,
    RssError,
    build_distance_matrix,
    euclidean_distance,
)
from .oracle import OracleResult, min_routes_bruteforce
from .solver import (
    AssignmentMatrix,
    Chain,
    Plan,
    Route,
    SolverParams,
    assignment_from_plan,
    attach_rss,
    enforce_time,
    farthest_pair,
    grow_chains,
    objective_value,
    solve,
    trim_capacity,
)

__version__ = "0.1.0"
