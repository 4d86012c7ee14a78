"""Command-line harness: ``rssroute {solve,cost,compare,sweep,batch,oracle}``.

Exit codes: 0 success, 1 internal error, 2 input error, 3 infeasible.
"""
import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import formats
from .evaluate import ComparisonRow, average_difference, check_compliance, plan_stats
from .model import InfeasibleError, RssError, build_distance_matrix
from .oracle import min_routes_bruteforce
from .solver import TRIM_RULES, SolverParams, solve

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3

REPORT_COLUMNS = ["instance", "input_max_cost", "gen_routes", "gen_max_cost", "best_k", "difference"]
SWEEP_COLUMNS = ["max_cost", "gen_routes", "gen_max_cost", "status"]


class InputError(RssError):
    pass


def _c(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.3f}"


def _load_instance(path):
    try:
        return formats.read_instance(path)
    except OSError as e:
        raise InputError(f"cannot read instance {path}: {e.strerror or e}") from None


def _load_solution(path, instance):
    try:
        sol = formats.read_solution(path)
    except OSError as e:
        raise InputError(f"cannot read solution {path}: {e.strerror or e}") from None
    formats.validate_solution(sol, instance)
    return sol


def _params(instance, args, max_cost=None) -> SolverParams:
    return SolverParams.from_instance(
        instance,
        max_route_time=max_cost if max_cost is not None else getattr(args, "max_cost", None),
        capacity=getattr(args, "capacity", None),
        service_time_per_stop=getattr(args, "service_time", None),
        speed=getattr(args, "speed", None),
        trim_rule=getattr(args, "trim_rule", None),
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _stats_lines(stats) -> str:
    return (
        f"routes: {stats.route_count}\n"
        f"max_route_cost: {stats.max_route_cost:.3f}\n"
        f"mean_route_cost: {stats.mean_route_cost:.3f}\n"
        f"cost_range: {stats.cost_range:.3f}\n"
        f"total_cost: {stats.total_cost:.3f}\n"
    )


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    params = _params(inst, args)
    plan = solve(inst, params)
    stats = plan_stats(plan, inst, params)
    if args.format == "csv":
        body = formats.write_plan_csv(plan)
    elif args.format == "structured":
        body = formats.write_plan_json(plan)
    else:
        body = formats.write_plan(plan) + "\n"
    if args.out:
        _emit(body, args.out)
        sys.stdout.write(_stats_lines(stats))
    elif args.format == "text":
        sys.stdout.write(body + "\n" + _stats_lines(stats))
    else:
        # keep stdout machine-readable
        sys.stdout.write(body)
        sys.stderr.write(_stats_lines(stats))
    return EXIT_OK


def cmd_cost(args) -> int:
    inst = _load_instance(args.instance)
    sol = _load_solution(args.solution, inst)
    params = _params(inst, args)
    stats = plan_stats(sol, inst, params)
    demands = inst.demands
    lines = [f"instance: {inst.name}"]
    for i, (seq, cost) in enumerate(zip(sol.routes, stats.route_costs), start=1):
        lines.append(f"route {i}: cost {cost:.3f} demand {sum(demands[p] for p in seq)} "
                     f"pods {' '.join(map(str, seq))}")
    lines += [
        f"max_route_cost: {stats.max_route_cost:.3f}",
        f"total_cost: {stats.total_cost:.3f}",
        f"closed_total_cost: {stats.closed_total_cost:.3f}",
        f"declared_cost: {sol.declared_cost:g}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def compare_row(instance_path, solution_path, max_cost=None, capacity=None,
                service_time=None, speed=None, trim_rule=None) -> ComparisonRow:
    inst = _load_instance(instance_path)
    sol = _load_solution(solution_path, inst) if solution_path else None
    params = SolverParams.from_instance(inst, max_route_time=max_cost, capacity=capacity,
                                        service_time_per_stop=service_time, speed=speed,
                                        trim_rule=trim_rule)
    plan = solve(inst, params)
    report = check_compliance(plan, inst, params)
    if not report.passed:
        raise RuntimeError(f"{inst.name}: solver produced a non-compliant plan")
    sol_max = plan_stats(sol, inst, params).max_route_cost if sol else None
    return ComparisonRow(
        instance=inst.name,
        input_max_cost=params.max_route_time,
        generated_route_count=plan.route_count,
        generated_max_cost=plan.max_route_time,
        best_known_k=len(sol.routes) if sol else None,
        solution_max_cost=sol_max,
    )


def report_csv(rows: Sequence[Optional[ComparisonRow]], names: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for i, r in enumerate(rows):
        if r is None:
            w.writerow([names[i] if i < len(names) else "", "", "", "", "", ""])
            continue
        w.writerow([
            r.instance,
            f"{r.input_max_cost:.3f}",
            r.generated_route_count,
            f"{r.generated_max_cost:.3f}",
            "" if r.best_known_k is None else r.best_known_k,
            "" if r.difference is None else r.difference,
        ])
    return buf.getvalue()


def cmd_compare(args) -> int:
    row = compare_row(args.instance, args.solution, args.max_cost, args.capacity,
                      args.service_time, args.speed, args.trim_rule)
    if args.format == "csv":
        _emit(report_csv([row]), args.out)
    else:
        _emit(
            f"instance: {row.instance}\n"
            f"solution_max_cost: {_c(row.solution_max_cost)}\n"
            f"input_max_cost: {row.input_max_cost:.3f}\n"
            f"gen_max_cost: {row.generated_max_cost:.3f}\n"
            f"best_k: {row.best_known_k}\n"
            f"gen_routes: {row.generated_route_count}\n"
            f"difference: {row.difference}\n",
            args.out,
        )
    return EXIT_OK


def sweep_grid(start: float, stop: float, step: float) -> List[float]:
    if step <= 0:
        raise InputError("--step must be positive")
    if stop < start:
        raise InputError("--from must not exceed --to")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(n)]


def cmd_sweep(args) -> int:
    inst = _load_instance(args.instance)
    grid = sweep_grid(args.start, args.stop, args.step)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for t in grid:
        params = _params(inst, args, max_cost=t)
        try:
            plan = solve(inst, params)
        except InfeasibleError:
            w.writerow([f"{t:.3f}", "", "", "infeasible"])
            continue
        w.writerow([f"{t:.3f}", plan.route_count, f"{plan.max_route_time:.3f}", "ok"])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


@dataclass(frozen=True)
class ManifestEntry:
    instance: Path
    solution: Optional[Path]
    max_cost: Optional[float]


def read_manifest(path) -> List[ManifestEntry]:
    """CSV manifest with header ``instance,solution,max_cost``.

    Relative paths resolve against the manifest's directory; ``solution``
    and ``max_cost`` may be empty. Lines starting with ``#`` are comments.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read manifest {path}: {e.strerror or e}") from None
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError(f"manifest {path} is empty")
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or "instance" not in reader.fieldnames:
        raise InputError("manifest header must contain an 'instance' column")
    base = path.parent
    entries = []
    for row in reader:
        inst = (row.get("instance") or "").strip()
        if not inst:
            raise InputError("manifest row without instance path")
        sol = (row.get("solution") or "").strip()
        mc = (row.get("max_cost") or "").strip()
        try:
            max_cost = float(mc) if mc else None
        except ValueError:
            raise InputError(f"bad max_cost {mc!r} for {inst}") from None
        if max_cost is not None and not max_cost > 0:
            raise InputError(f"max_cost must be positive for {inst}")
        entries.append(ManifestEntry(base / inst, base / sol if sol else None, max_cost))
    if not entries:
        raise InputError(f"manifest {path} has no entries")
    return entries


def _batch_one(entry: ManifestEntry, capacity, service_time, speed, trim_rule):
    try:
        return compare_row(entry.instance, entry.solution, entry.max_cost, capacity,
                           service_time, speed, trim_rule), None
    except (RssError, RuntimeError) as e:
        return None, f"{entry.instance.name}: {e}"


def cmd_batch(args) -> int:
    entries = read_manifest(args.manifest)
    work = [(e, args.capacity, args.service_time, args.speed, args.trim_rule) for e in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_batch_one, *zip(*work)))
    else:
        results = [_batch_one(*w) for w in work]
    rows = [r for r, _ in results]
    for _, err in results:
        if err:
            sys.stderr.write(f"error: {err}\n")
    names = [formats.instance_name_from_path(e.instance) for e in entries]
    text = report_csv(rows, names)
    scored = [r for r in rows if r is not None and r.difference is not None]
    if scored:
        text += f"# average_difference: {average_difference(scored):.3f}\n"
    _emit(text, args.out)
    return EXIT_OK if any(r is not None for r in rows) else EXIT_INPUT


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    params = _params(inst, args)
    res = min_routes_bruteforce(inst, params)
    if not res.feasible:
        sys.stdout.write(f"instance: {inst.name}\ninfeasible (explored {res.explored_count})\n")
        return EXIT_INFEASIBLE
    _emit(
        f"instance: {inst.name}\nmin_routes: {res.min_route_count}\n"
        f"explored: {res.explored_count}\n" + formats.write_plan(res.witness_plan) + "\n",
        args.out,
    )
    return EXIT_OK


def _solver_flags(p: argparse.ArgumentParser, max_cost: bool = True) -> None:
    if max_cost:
        p.add_argument("--max-cost", type=float, help="override the instance's maximum route time")
    p.add_argument("--capacity", type=int, help="override the vehicle capacity")
    p.add_argument("--service-time", type=float, default=None, help="time spent per stop (default 0)")
    p.add_argument("--speed", type=float, default=None, help="distance units per time unit (default 1)")
    p.add_argument("--trim-rule", choices=TRIM_RULES, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rssroute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="route an instance")
    p.add_argument("instance")
    _solver_flags(p)
    p.add_argument("--format", choices=["text", "csv", "structured"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cost", help="recompute the costs of a solution file")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--service-time", type=float, default=None)
    p.add_argument("--speed", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("compare", help="solve and compare with a best-known solution")
    p.add_argument("instance")
    p.add_argument("solution")
    _solver_flags(p)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="route count as a function of the time limit")
    p.add_argument("instance")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, default=1.0)
    _solver_flags(p, max_cost=False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("batch", help="compare every entry of a manifest")
    p.add_argument("manifest")
    p.add_argument("--capacity", type=int)
    p.add_argument("--service-time", type=float, default=None)
    p.add_argument("--speed", type=float, default=None)
    p.add_argument("--trim-rule", choices=TRIM_RULES, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("oracle", help="exact minimum route count (at most 8 PODs)")
    p.add_argument("instance")
    _solver_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as e:
        sys.stderr.write(f"infeasible: {e}\n")
        return EXIT_INFEASIBLE
    except (RssError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
