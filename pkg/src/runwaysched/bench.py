"""Instance generation and benchmark runs with CSV reporting.

Generation follows the experimental protocol: earliest times uniform over
[0, T_E] minutes in integer seconds, windows of length T_W, class counts by
largest-remainder rounding of the configured proportions, scheduled times
equal to the earliest time for takeoffs and five minutes later for
landings. Everything is reproducible from the seed.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InstanceFormatError, RunwaySchedError
from .model import (
    Aircraft,
    Instance,
    OperationTask,
    RunwayMode,
    WakeClass,
    default_separation_model,
)
from .oracle import brute_force_optimum
from .single_runway import solve_single_runway
from .solving import SolverConfig

DEFAULT_PROPORTIONS = (0.10, 0.20, 0.25, 0.15, 0.20, 0.10)

LANDING_LEAD_S = 300  # scheduled landing time sits five minutes past the window start


@dataclass(frozen=True)
class GenSpec:
    count: int
    task_mix: str  # takeoff_only | landing_only | mixed | dual
    t_e: int  # minutes
    t_w: int  # minutes
    class_proportions: tuple[float, ...] = DEFAULT_PROPORTIONS
    seed: int = 0

    def __post_init__(self):
        if self.count < 1:
            raise InstanceFormatError("count must be >= 1")
        if abs(sum(self.class_proportions) - 1.0) > 1e-9:
            raise InstanceFormatError("class proportions must sum to 1")
        if self.task_mix not in ("takeoff_only", "landing_only", "mixed", "dual"):
            raise InstanceFormatError(f"unknown task mix {self.task_mix!r}")
        if self.task_mix != "takeoff_only" and self.t_w < 5:
            raise InstanceFormatError(
                "window length below 5 minutes cannot host scheduled landing times"
            )


def largest_remainder_counts(n: int, proportions: Sequence[float]) -> list[int]:
    """Integer class counts matching the proportions to within one aircraft."""
    exact = [n * p for p in proportions]
    base = [int(x) for x in exact]
    order = sorted(range(len(proportions)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[: n - sum(base)]:
        base[i] += 1
    return base


def generate_instance(spec: GenSpec, model=None) -> Instance:
    """Draw one reproducible instance from the generation settings."""
    model = model or default_separation_model()
    rng = np.random.default_rng(spec.seed)
    n = spec.count
    counts = largest_remainder_counts(n, spec.class_proportions)
    classes = [c + 1 for c, k in enumerate(counts) for _ in range(k)]
    classes = [classes[i] for i in rng.permutation(n)]

    if spec.task_mix == "landing_only":
        tasks = [OperationTask.LANDING] * n
    elif spec.task_mix == "takeoff_only":
        tasks = [OperationTask.TAKEOFF] * n
    else:
        half = n // 2
        pool = [OperationTask.LANDING] * half + [OperationTask.TAKEOFF] * (n - half)
        tasks = [pool[i] for i in rng.permutation(n)]

    earliest = rng.integers(0, spec.t_e * 60 + 1, size=n)
    aircraft = []
    for i in range(n):
        e = int(earliest[i])
        p = e + (LANDING_LEAD_S if tasks[i] is OperationTask.LANDING else 0)
        aircraft.append(
            Aircraft(
                id=i + 1,
                cls=WakeClass(classes[i]),
                task=tasks[i],
                window_min=e,
                window_max=e + spec.t_w * 60,
                scheduled=p,
            )
        )
    mode = RunwayMode.DUAL if spec.task_mix == "dual" else RunwayMode.SINGLE
    return Instance(mode, tuple(aircraft), model)


@dataclass(frozen=True)
class BenchRow:
    spec: GenSpec
    objective: Optional[int]
    wall_time: Optional[float]
    oracle_objective: Optional[int] = None
    gap_pct: Optional[float] = None
    error: Optional[str] = None


def run_benchmark(
    specs: Sequence[GenSpec],
    config: Optional[SolverConfig] = None,
    oracle_cap: int = 0,
) -> list[BenchRow]:
    """Generate, solve, time, and optionally cross-check each spec.

    Wall time wraps only the solve call. A failed solve leaves an error
    string in its row and the run continues.
    """
    from .dual_runway import solve_dual_runway

    config = config or SolverConfig()
    rows = []
    for spec in specs:
        instance = generate_instance(spec)
        try:
            t0 = time.perf_counter()
            if instance.mode is RunwayMode.DUAL:
                solution = solve_dual_runway(instance, config)
            else:
                solution = solve_single_runway(instance, config)
            wall = time.perf_counter() - t0
        except RunwaySchedError as exc:
            rows.append(BenchRow(spec, None, None, error=str(exc)))
            continue
        oracle_obj = None
        gap = None
        if 0 < spec.count <= oracle_cap:
            oracle_obj = brute_force_optimum(instance, cap=oracle_cap).objective
            if oracle_obj > 0:
                gap = 100.0 * (oracle_obj - solution.objective) / oracle_obj
            else:
                gap = 0.0 if solution.objective == 0 else -100.0
        rows.append(BenchRow(spec, solution.objective, wall, oracle_obj, gap))
    return rows


CSV_COLUMNS = [
    "t_w_min",
    "t_e_min",
    "count",
    "mix",
    "objective_s",
    "time_s",
    "oracle_s",
    "gap_pct",
    "seed",
    "error",
]


def report_text(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.spec.t_w,
                row.spec.t_e,
                row.spec.count,
                row.spec.task_mix,
                "" if row.objective is None else row.objective,
                "" if row.wall_time is None else f"{row.wall_time:.4f}",
                "" if row.oracle_objective is None else row.oracle_objective,
                "" if row.gap_pct is None else f"{row.gap_pct:.2f}",
                row.spec.seed,
                row.error or "",
            ]
        )
    return buf.getvalue()


def write_report(rows: Sequence[BenchRow], path: str) -> str:
    """Write the CSV and return a short human-readable summary."""
    if not rows:
        raise InstanceFormatError("no rows to report")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(report_text(rows))
    solved = [r for r in rows if r.objective is not None]
    lines = [f"{len(rows)} rows -> {path}"]
    if solved:
        total_time = sum(r.wall_time for r in solved)
        worst = max(r.wall_time for r in solved)
        lines.append(
            f"{len(solved)} solved, total solve time {total_time:.2f}s, slowest {worst:.2f}s"
        )
    checked = [r for r in solved if r.oracle_objective is not None]
    if checked:
        exact = sum(1 for r in checked if r.objective == r.oracle_objective)
        lines.append(f"oracle checked {len(checked)}, matched {exact}")
    failed = [r for r in rows if r.error]
    if failed:
        lines.append(f"{len(failed)} failures")
    return "\n".join(lines)
