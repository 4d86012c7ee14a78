"""Reading and writing instance, solution and plan files.

Instance files hold one whitespace-separated record per line::

    145 215 0        <- RSS: x y (third value ignored)
    151 264 1100     <- one line per POD: x y demand
    ...
    6000 90          <- vehicle capacity, maximum route time

POD ids are 1..n-1 in file order and the RSS is id 0. Solution files list
POD ids per route using the same numbering, followed by a ``Cost:`` line.
"""
import csv
import io
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .model import Instance, ParseError, Point, Pod, Rss, SizeError

RSS_ID = 0


@dataclass(frozen=True)
class SolutionFile:
    routes: Tuple[Tuple[int, ...], ...]
    declared_cost: float

    @property
    def pod_ids(self) -> List[int]:
        return [p for r in self.routes for p in r]


def _number(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", lineno) from None


def _integer(tok: str, lineno: int, what: str) -> int:
    v = _number(tok, lineno)
    if v != int(v):
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno)
    return int(v)


def parse_instance(text: str, name: str) -> Instance:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if toks:
            rows.append((lineno, toks))
    if len(rows) < 2:
        raise ParseError("expected an RSS line, POD lines and a capacity/time line")
    if len(rows) < 3:
        raise SizeError("instance has no PODs")

    lineno, toks = rows[0]
    if len(toks) != 3:
        raise ParseError(f"RSS line needs 3 fields, got {len(toks)}", lineno)
    rss = Rss(RSS_ID, Point(_number(toks[0], lineno), _number(toks[1], lineno)))
    _number(toks[2], lineno)

    pods = []
    for pod_id, (lineno, toks) in enumerate(rows[1:-1], start=1):
        if len(toks) != 3:
            raise ParseError(f"POD line needs 3 fields, got {len(toks)}", lineno)
        demand = _integer(toks[2], lineno, "demand")
        if demand < 0:
            raise ParseError(f"negative demand {demand}", lineno)
        pods.append(Pod(pod_id, Point(_number(toks[0], lineno), _number(toks[1], lineno)), demand))

    lineno, toks = rows[-1]
    if len(toks) != 2:
        raise ParseError(f"last line needs 2 fields (capacity, max time), got {len(toks)}", lineno)
    capacity = _integer(toks[0], lineno, "capacity")
    max_time = _number(toks[1], lineno)
    if capacity <= 0 or not max_time > 0:
        raise ParseError("capacity and max time must be positive", lineno)
    return Instance(name, (rss,), tuple(pods), capacity, max_time)


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def serialize_instance(instance: Instance) -> str:
    if len(instance.rss_sites) != 1:
        raise ValueError("the instance file format holds exactly one RSS")
    r = instance.rss_sites[0]
    lines = [f"{_fmt(r.location.x)} {_fmt(r.location.y)} 0"]
    for p in sorted(instance.pods, key=lambda p: p.id):
        lines.append(f"{_fmt(p.location.x)} {_fmt(p.location.y)} {p.demand}")
    lines.append(f"{instance.capacity} {_fmt(instance.max_route_time)}")
    return "\n".join(lines) + "\n"


_ROUTE_RE = re.compile(r"^Route\s*#\s*(\d+)\s*:(.*)$", re.IGNORECASE)
_COST_RE = re.compile(r"^Cost\s*:?\s*(\S+)\s*$", re.IGNORECASE)


def parse_solution(text: str) -> SolutionFile:
    routes = []
    cost = None
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        m = _ROUTE_RE.match(line)
        if m:
            ids = []
            for tok in m.group(2).split():
                pid = _integer(tok, lineno, "node id")
                if pid in seen:
                    raise ParseError(f"POD {pid} appears in more than one route", lineno)
                seen.add(pid)
                ids.append(pid)
            routes.append(tuple(ids))
            continue
        m = _COST_RE.match(line)
        if m:
            cost = _number(m.group(1), lineno)
            continue
        raise ParseError(f"unrecognised line {line!r}", lineno)
    if cost is None:
        raise ParseError("missing Cost line")
    return SolutionFile(tuple(routes), cost)


def validate_solution(solution: SolutionFile, instance: Instance) -> None:
    """Raise ParseError unless the solution covers every POD of the instance once."""
    known = set(instance.pod_ids)
    used = solution.pod_ids
    unknown = sorted(set(used) - known)
    if unknown:
        raise ParseError(f"solution references unknown POD id(s) {unknown} for {instance.name}")
    missing = sorted(known - set(used))
    if missing:
        raise ParseError(f"solution misses POD id(s) {missing} for {instance.name}")


def _routes_of(plan) -> list:
    return list(plan.routes) if hasattr(plan, "routes") else list(plan)


def write_plan(plan) -> str:
    """Text form mirroring the solution-file layout; cost rounded to 3 decimals."""
    routes = _routes_of(plan)
    lines = [f"Route #{i}: " + " ".join(str(p) for p in r.pod_sequence) for i, r in enumerate(routes, start=1)]
    total = sum(r.total_time for r in routes)
    lines.append(f"Cost: {total:.3f}")
    return "\n".join(lines)


PLAN_CSV_COLUMNS = ["route", "rss", "pods", "orientation", "demand", "cost"]


def _orientation(route) -> str:
    # "forward": traversal follows chain order from its seed; "reverse" otherwise
    return getattr(route, "orientation", "forward")


def write_plan_csv(plan) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PLAN_CSV_COLUMNS)
    for i, r in enumerate(_routes_of(plan), start=1):
        w.writerow([i, r.rss_id, " ".join(map(str, r.pod_sequence)), _orientation(r),
                    r.total_demand, f"{r.total_time:.3f}"])
    return buf.getvalue()


def plan_to_dict(plan) -> dict:
    routes = _routes_of(plan)
    out = {
        "instance": getattr(plan, "instance_name", None),
        "routes": [
            {
                "route": i,
                "rss": r.rss_id,
                "pods": list(r.pod_sequence),
                "orientation": _orientation(r),
                "demand": r.total_demand,
                "cost": round(r.total_time, 3),
            }
            for i, r in enumerate(routes, start=1)
        ],
        "total_cost": round(sum(r.total_time for r in routes), 3),
    }
    params = getattr(plan, "params_used", None)
    if params is not None:
        out["params"] = {
            "capacity": params.capacity,
            "max_route_time": params.max_route_time,
            "service_time_per_stop": params.service_time_per_stop,
            "speed": params.speed,
        }
    return out


def write_plan_json(plan) -> str:
    return json.dumps(plan_to_dict(plan), indent=2, sort_keys=False) + "\n"


def instance_name_from_path(path: Union[str, Path]) -> str:
    name = Path(path).name
    return name[:-4] if name.endswith(".txt") else name


def read_instance(path: Union[str, Path], name: Optional[str] = None) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(), name or instance_name_from_path(path))


def read_solution(path: Union[str, Path]) -> SolutionFile:
    return parse_solution(Path(path).read_text())


BENCHMARKS = (
    "E-n22-k4", "E-n23-k3", "E-n30-k3", "E-n33-k4", "E-n51-k5",
    "E-n76-k7", "F-n45-k4", "F-n72-k4", "F-n135-k7",
)


def data_path(filename: str) -> Path:
    return Path(str(resources.files("rssroute") / "data" / filename))


def load_benchmark(name: str) -> Tuple[Instance, SolutionFile]:
    """Bundled instance and its best-known solution, e.g. ``load_benchmark("E-n22-k4")``."""
    inst = read_instance(data_path(f"{name}.txt"), name)
    sol = read_solution(data_path(f"opt-{name}.txt"))
    validate_solution(sol, inst)
    return inst, sol
