"""Earliest-time scheduling and sequence diagnostics.

The forward pass assigns each aircraft the smallest time compatible with its
(interruption-transformed) window and with every pairwise separation to the
aircraft already placed; tracking the latest time per (class, task) type
makes the all-pairs check exact in O(n * 2 eta).
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import ContractViolationError, InfeasibleOrderError
from .model import (
    Block,
    BlockKind,
    Instance,
    OperationTask,
    RunwayMode,
    Schedule,
    SequenceDiagnostics,
    separation_matrix,
)


def _check_permutation(instance: Instance, order: Sequence[int]) -> np.ndarray:
    arr = np.asarray(list(order), dtype=np.int64)
    n = len(instance.aircraft)
    if arr.shape[0] != n or sorted(arr.tolist()) != list(range(n)):
        raise ContractViolationError("order must be a permutation of all aircraft indices")
    return arr


def forward_schedule(
    instance: Instance, order: Sequence[int], mode: Optional[RunwayMode] = None
) -> Schedule:
    """Componentwise-minimal feasible times for ``order``.

    Raises InfeasibleOrderError (carrying the first violating position) when
    some aircraft cannot meet its window under the separations.
    """
    arr = _check_permutation(instance, order)
    packed = _kernels.pack(instance, mode)
    bad, times, total = _kernels.forward_times(arr, packed)
    if bad >= 0:
        raise InfeasibleOrderError(bad, instance.aircraft[int(arr[bad])].id)
    delays = tuple(
        max(0, int(t) - instance.aircraft[int(a)].scheduled)
        for t, a in zip(times, arr)
    )
    return Schedule(
        order=tuple(int(a) for a in arr),
        times=tuple(int(t) for t in times),
        delays=delays,
        objective=int(total),
    )


def total_delay(schedule: Schedule, instance: Instance) -> int:
    """Sum of positive lateness against the scheduled times."""
    return sum(
        max(0, t - instance.aircraft[a].scheduled)
        for t, a in zip(schedule.times, schedule.order)
    )


def _pairwise_separations(instance: Instance, schedule: Schedule) -> np.ndarray:
    y = separation_matrix(instance.model, instance.mode)
    codes = instance.type_codes()
    seq = [codes[a] for a in schedule.order]
    n = len(seq)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[i, j] = y[seq[i], seq[j]]
    return out


def analyze_sequence(instance: Instance, schedule: Schedule) -> SequenceDiagnostics:
    """Structural diagnostics of a scheduled sequence (1-based positions)."""
    n = len(schedule.order)
    aircraft = [instance.aircraft[a] for a in schedule.order]
    times = schedule.times
    ysep = _pairwise_separations(instance, schedule)

    edges = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if times[j] - times[i] == ysep[i, j]
    )

    breakpoints = tuple(
        i + 1
        for i in range(n - 1)
        if aircraft[i].cls.ordinal < aircraft[i + 1].cls.ordinal
    )

    transitions = tuple(
        i + 1 for i in range(n - 1) if aircraft[i].task is not aircraft[i + 1].task
    )
    mixed = len({a.task for a in aircraft}) == 2

    residents = []
    windows = instance.effective_windows()
    if n > 0:
        start_ref = windows[schedule.order[0]][0][0] if windows[schedule.order[0]] else 0
        if times[0] > start_ref:
            residents.append((1, times[0] - start_ref))
    for i in range(1, n):
        if not mixed:
            slack = times[i] - times[i - 1] - ysep[i - 1, i]
            if slack > 0:
                residents.append((i + 1, int(slack)))
            continue
        # nearest preceding aircraft of each task; min over the ones that exist
        slacks = []
        for task in (OperationTask.LANDING, OperationTask.TAKEOFF):
            mu = next((k for k in range(i - 1, -1, -1) if aircraft[k].task is task), None)
            if mu is not None:
                slacks.append(times[i] - times[mu] - ysep[mu, i])
        if slacks and min(slacks) > 0:
            residents.append((i + 1, int(min(slacks))))

    blocks: tuple = ()
    violations: tuple = ()
    if instance.mode is RunwayMode.DUAL and mixed:
        decomposition = decompose_blocks(instance, schedule)
        blocks = decomposition.blocks
        violations = decomposition.violations

    notes = tuple(sequence_assumption_notes(instance, schedule, edges))
    return SequenceDiagnostics(
        relevance_edges=edges,
        breakpoints=breakpoints,
        resident_points=tuple(residents),
        transitions=transitions,
        blocks=blocks,
        block_violations=violations,
        assumption_notes=notes,
    )


class BlockDecomposition:
    """Blocks of a mixed sequence, or the premise violations that block them."""

    def __init__(self, blocks, violations):
        self.blocks = tuple(blocks)
        self.violations = tuple(violations)

    @property
    def ok(self) -> bool:
        return not self.violations


def decompose_blocks(instance: Instance, schedule: Schedule) -> BlockDecomposition:
    """Cut a mixed dual-runway sequence into task-run blocks.

    Each maximal same-task run after the first closes one block: the block
    ends at the run's last position, starts at the previous run's last
    position (the first block starts at position 1), and its kind is the
    ending task. Consecutive blocks therefore share their boundary aircraft.
    Definitional premises (tight transition, connectivity, single binding
    predecessor of the final aircraft) are checked per block; failures are
    reported as (position, reason) pairs and suppress the block list.
    """
    n = len(schedule.order)
    aircraft = [instance.aircraft[a] for a in schedule.order]
    tasks = [a.task for a in aircraft]
    if n == 0 or len(set(tasks)) < 2:
        return BlockDecomposition((), ())

    times = schedule.times
    ysep = _pairwise_separations(instance, schedule)
    edge_set = {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if times[j] - times[i] == ysep[i, j]
    }
    succ: dict[int, list[int]] = {}
    for i, j in edge_set:
        succ.setdefault(i, []).append(j)

    def path(src: int, dst: int) -> bool:
        if src == dst:
            return True
        stack, seen = [src], {src}
        while stack:
            p = stack.pop()
            for q in succ.get(p, ()):
                if q == dst:
                    return True
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return False

    # maximal same-task runs as (start, end) 0-based inclusive
    runs = []
    start = 0
    for i in range(1, n):
        if tasks[i] is not tasks[i - 1]:
            runs.append((start, i - 1))
            start = i
    runs.append((start, n - 1))

    blocks = []
    violations = []
    for k in range(1, len(runs)):
        i0 = runs[0][0] if k == 1 else runs[k - 1][1]
        i1 = runs[k][1]
        trans = runs[k - 1][1]  # last position before the task switch
        if (trans, trans + 1) not in edge_set:
            violations.append((trans + 1, "loose transition: follower not tight"))
        if not path(i0, i1):
            violations.append((i1 + 1, "no tight path back to block start"))
        preds = [i for i in range(i0, i1) if (i, i1) in edge_set]
        if preds != [i1 - 1]:
            violations.append(
                (i1 + 1, "final aircraft not bound solely by its predecessor")
            )
        kind = (
            BlockKind.T_BLOCK
            if tasks[i1] is OperationTask.TAKEOFF
            else BlockKind.D_BLOCK
        )
        members = list(range(i0, i1 + 1))
        n_land = sum(1 for m in members if tasks[m] is OperationTask.LANDING)
        n_toff = len(members) - n_land
        ratio = (n_toff - 1, n_land - 1) if kind is BlockKind.T_BLOCK else (n_land - 1, n_toff - 1)
        same = [m for m in members if tasks[m] is tasks[i1]]
        increment = None
        if len(same) >= 2:
            i2 = same[-2]
            increment = int(times[i1] - times[i2] - ysep[i2, i1])
        blocks.append(Block(kind, (i0 + 1, i1 + 1), ratio, increment))

    if violations:
        return BlockDecomposition((), violations)
    return BlockDecomposition(blocks, ())


def sequence_assumption_notes(instance, schedule, edges) -> list[str]:
    """Structural expectations checked on output schedules, never enforced.

    Two checks: a third consecutive wide tight gap after two wide ones, and
    (dual mode) an aircraft whose nearest binding predecessor sits more than
    four positions back.
    """
    notes: list[str] = []
    n = len(schedule.order)
    if n == 0:
        return notes
    model = instance.model
    wide = model.same_runway_td + model.same_runway_dt
    times = schedule.times
    adj_tight = []
    ysep = _pairwise_separations(instance, schedule)
    for i in range(n - 1):
        gap = ysep[i, i + 1]
        adj_tight.append(times[i + 1] - times[i] == gap and gap >= wide)
    for i in range(len(adj_tight) - 2):
        if adj_tight[i] and adj_tight[i + 1] and adj_tight[i + 2]:
            notes.append(
                f"three consecutive wide tight gaps starting at position {i + 1}"
            )
    if instance.mode is RunwayMode.DUAL:
        pred = {}
        for i, j in edges:
            pred.setdefault(j, []).append(i)
        for pos in range(2, n + 1):
            binders = pred.get(pos, [])
            if binders and max(binders) < pos - 4:
                notes.append(
                    f"position {pos}: nearest binding predecessor more than 4 back"
                )
    return notes
