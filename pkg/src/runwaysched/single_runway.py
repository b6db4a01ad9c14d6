"""Single-runway solver: incremental insertion with bounded reordering.

Aircraft enter in scheduled-time order; each step evaluates every insertion
slot, then drives the extended sequence to a fixed point of single-aircraft
relocations and monotone-run merges. Screens derived from the local
comparison theory (insertion shift bounds, on-time forward-move rejection,
pure-shift suffix reuse, merge verdicts) cut candidates only when their
premises verifiably hold on the incumbent; disabling pruning must never
change the returned objective.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    ContractViolationError,
    InfeasibleInstanceError,
    PremiseError,
)
from .model import (
    Aircraft,
    Instance,
    OperationTask,
    RunwayMode,
    Schedule,
    SeparationModel,
    WakeClass,
    y_lookup,
)
from .solving import SolverConfig, SolverStats, Solution
from .validation import validate_separation_model

_INF = int(_kernels.INFEASIBLE)


# ---------------------------------------------------------------------------
# ordering and insertion primitives


def sort_by_scheduled(instance: Instance) -> tuple[int, ...]:
    """Aircraft indices in ascending scheduled time, ties by id."""
    if not instance.aircraft:
        raise ContractViolationError("instance has no aircraft")
    return tuple(
        sorted(
            range(len(instance.aircraft)),
            key=lambda i: (instance.aircraft[i].scheduled, instance.aircraft[i].id),
        )
    )


def _subset_schedule(instance: Instance, packed, order: np.ndarray) -> Schedule:
    bad, times, total = _kernels.forward_times(order, packed)
    if bad >= 0:
        raise InfeasibleInstanceError(instance.aircraft[int(order[bad])].id)
    delays = tuple(
        max(0, int(t) - instance.aircraft[int(a)].scheduled)
        for t, a in zip(times, order)
    )
    return Schedule(tuple(int(a) for a in order), tuple(int(t) for t in times), delays, int(total))


def best_insertion(
    instance: Instance,
    prefix: Sequence[int],
    new_aircraft: int,
    config: Optional[SolverConfig] = None,
) -> tuple[Schedule, int]:
    """Cheapest slot for one more aircraft, prefix order untouched.

    Ties go to the earliest slot. Raises InfeasibleInstanceError when no
    slot admits the aircraft.
    """
    config = config or SolverConfig()
    packed = _kernels.pack(instance)
    prefix_arr = np.asarray(list(prefix), dtype=np.int64)
    state = _StepState(instance, packed, config, SolverStats())
    f_prefix = 0
    if len(prefix_arr):
        bad, _, f_prefix = _kernels.forward_times(prefix_arr, packed)
        if bad >= 0:
            raise InfeasibleInstanceError(instance.aircraft[int(prefix_arr[bad])].id)
    slot_f = state.insertion(prefix_arr, new_aircraft, int(f_prefix), 1)
    k = int(np.argmin(slot_f))
    if slot_f[k] >= _INF:
        raise InfeasibleInstanceError(instance.aircraft[new_aircraft].id)
    cand = np.concatenate([prefix_arr[:k], [new_aircraft], prefix_arr[k:]]).astype(np.int64)
    return _subset_schedule(instance, packed, cand), int(slot_f[k])


# ---------------------------------------------------------------------------
# context patterns


@dataclass(frozen=True)
class ContextPattern:
    """(class, task) slots around an insertion point; None near sequence ends."""

    before: tuple[Optional[tuple[int, OperationTask]], Optional[tuple[int, OperationTask]]]
    after: tuple[Optional[tuple[int, OperationTask]], Optional[tuple[int, OperationTask]]]


def build_context_patterns(
    instance: Instance, prefix: Sequence[int], new_aircraft: int
) -> frozenset[ContextPattern]:
    """Deduplicated neighbour contexts realizable from the prefix aircraft.

    Separations depend only on (class, task), so these patterns, not
    aircraft identities, index the reorder search.
    """
    from collections import Counter

    kinds = Counter(
        (instance.aircraft[i].cls.ordinal, instance.aircraft[i].task) for i in prefix
    )

    def pairs():
        yield (None, None)
        for k2 in kinds:
            yield (None, k2)
        for k1 in kinds:
            for k2 in kinds:
                need = Counter([k1, k2])
                if all(kinds[k] >= c for k, c in need.items()):
                    yield (k1, k2)

    out = set()
    for before in pairs():
        for after in pairs():
            need = Counter(k for k in (*before, *after) if k is not None)
            if all(kinds[k] >= c for k, c in need.items()):
                out.add(ContextPattern(before, after))
    return frozenset(out)


@dataclass(frozen=True)
class InsertionCandidate:
    """One slot choice with the admissible bound used to rank or skip it."""

    base: tuple[int, ...]
    position: int
    pattern: ContextPattern
    predicted_bound: int


def enumerate_insertion_candidates(
    instance: Instance, prefix: Sequence[int], new_aircraft: int
) -> list[InsertionCandidate]:
    """Every insertion slot with its context pattern and admissible bound.

    The bound is the prefix objective plus the new aircraft's unavoidable
    delay at the slot, plus (on chained, fully delayed, single-task prefixes
    without window interference) the minimum shift pushed onto each trailing
    aircraft; it never exceeds the realized candidate's objective.
    """
    packed = _kernels.pack(instance)
    state = _StepState(instance, packed, SolverConfig(), SolverStats())
    prefix_arr = np.asarray(list(prefix), dtype=np.int64)
    n0 = len(prefix_arr)
    f_prefix = 0
    if n0:
        bad, times, f_prefix = _kernels.forward_times(prefix_arr, packed)
        if bad >= 0:
            raise InfeasibleInstanceError(instance.aircraft[int(prefix_arr[bad])].id)
    omega = state._omega_slots(prefix_arr, new_aircraft)
    aircraft = instance.aircraft
    out = []
    for k in range(n0 + 1):
        slot_kind = lambda i: (aircraft[int(prefix_arr[i])].cls.ordinal, aircraft[int(prefix_arr[i])].task)
        before = (
            slot_kind(k - 2) if k >= 2 else None,
            slot_kind(k - 1) if k >= 1 else None,
        )
        after = (
            slot_kind(k) if k < n0 else None,
            slot_kind(k + 1) if k + 1 < n0 else None,
        )
        own = 0
        if k > 0:
            prev = int(prefix_arr[k - 1])
            lb = int(times[k - 1]) + int(
                packed.y[packed.typ[prev], packed.typ[new_aircraft]]
            )
            own = max(0, max(lb, int(packed.wlo1[new_aircraft])) - aircraft[new_aircraft].scheduled)
        else:
            own = max(0, int(packed.wlo1[new_aircraft]) - aircraft[new_aircraft].scheduled)
        shift = int(omega[k]) if omega is not None and omega[k] >= 0 else 0
        bound = f_prefix + own + shift * (n0 - k)
        out.append(
            InsertionCandidate(tuple(int(i) for i in prefix_arr), k, ContextPattern(before, after), bound)
        )
    return out


# ---------------------------------------------------------------------------
# closed forms and comparison verdicts


def insertion_shift_bound(
    model: SeparationModel,
    window: Sequence[Optional[Aircraft]],
    inserted: Aircraft,
    mode: RunwayMode = RunwayMode.SINGLE,
) -> int:
    """Minimum extra time pushed onto the aircraft behind an insertion.

    ``window`` lists the four aircraft around the insertion point (two
    before, two after); the new aircraft lands between the middle pair. The
    value is exact when the three middle aircraft share a task, a lower
    bound otherwise; missing edge aircraft degrade the bound to 0.
    """
    if len(window) != 4:
        raise ContractViolationError("window must list four slots (use None at the ends)")
    w1, w2, w3, w4 = window
    if w2 is None or w3 is None:
        return 0

    def sep(a: Optional[Aircraft], b: Optional[Aircraft]) -> Optional[int]:
        if a is None or b is None:
            return None
        return y_lookup(model, mode, a, b)

    cross = model.same_runway_td + model.same_runway_dt
    t2, t3, t5 = w2.task, w3.task, inserted.task
    if t2 is t3 is t5:
        return sep(w2, inserted) + sep(inserted, w3) - sep(w2, w3)
    if t2 is t5:
        terms = [0]
        for v in (sep(w1, w3), sep(w2, w4)):
            if v is not None:
                terms.append(cross - v)
        return min(terms) + sep(w2, inserted)
    if t3 is t5:
        terms = [0]
        for v in (sep(w1, w3), sep(w2, w4)):
            if v is not None:
                terms.append(cross - v)
        return min(terms) + sep(inserted, w3)
    return max(cross - sep(w2, w3), 0)


@dataclass(frozen=True)
class RelocationDelta:
    """Closed-form objective change for one backward relocation.

    ``delta_f`` is F(original) - F(relocated); positive means the move pays.
    ``local_detour`` is the separation saved by closing the vacated slot,
    ``far_detour`` the net change past the reinsertion point, and
    ``moved_shift`` how much later the moved aircraft itself operates.
    """

    delta_f: int
    local_detour: int
    far_detour: int
    moved_shift: int
    m2: int

    def keep_original(self) -> bool:
        """Certifies the move cannot strictly improve the objective."""
        return self.far_detour == 0 and self.local_detour * (self.m2 + 1) <= self.moved_shift


def relocation_delta(
    instance: Instance,
    schedule: Schedule,
    moved_pos: int,
    m2: int,
    m3: int,
    mode: Optional[RunwayMode] = None,
) -> RelocationDelta:
    """Objective change of moving position ``moved_pos`` back past ``m2``
    aircraft (0-based positions; the layout leaves ``m3`` aircraft after the
    reinsertion pair).

    Valid only on fully chained, fully delayed schedules; the relocated
    layout must chain and stay delayed as well, else PremiseError.
    """
    mode = mode or instance.mode
    packed = _kernels.pack(instance, mode)
    order = list(schedule.order)
    n = len(order)
    # layout: ... p0, p1, p2, [m2 aircraft], p3, p4, [m3 aircraft]
    p1 = moved_pos
    p0, p2 = p1 - 1, p1 + 1
    p3 = p1 + 2 + m2
    p4 = p3 + 1
    if p1 < 1 or p4 >= n or n - 1 - p4 != m3:
        raise ContractViolationError("segment sizes do not fit the sequence layout")

    typ = packed.typ
    y = packed.y
    times = np.asarray(schedule.times, dtype=np.int64)
    sched = packed.sched

    def Y(a, b):
        return int(y[typ[order[a]], typ[order[b]]])

    for k in range(1, n):
        if times[k] - times[k - 1] != Y(k - 1, k):
            raise PremiseError(f"position {k} not tight against its leader")
        if times[k] <= sched[order[k]]:
            raise PremiseError(f"position {k} not delayed")
    if times[0] <= sched[order[0]]:
        raise PremiseError("position 0 not delayed")

    d1 = Y(p0, p1) + Y(p1, p2) - Y(p0, p2)
    d2 = d1 + Y(p3, p4) - Y(p3, p1) - Y(p1, p4)

    new_order = (
        order[:p1] + order[p2 : p3 + 1] + [order[p1]] + order[p4:]
    )
    # chained times of the relocated layout, verified against all constraints
    new_times = np.empty(n, dtype=np.int64)
    new_times[0] = times[0]
    for k in range(1, n):
        new_times[k] = new_times[k - 1] + int(
            y[typ[new_order[k - 1]], typ[new_order[k]]]
        )
    for k in range(n):
        a = new_order[k]
        if not (packed.wlo1[a] <= new_times[k] <= packed.whi1[a]) and not (
            packed.wlo2[a] <= new_times[k] <= packed.whi2[a]
        ):
            raise PremiseError("relocated layout leaves a window")
        if new_times[k] <= sched[a]:
            raise PremiseError("relocated layout has an on-time aircraft")
    last = {}
    for k in range(n):
        a = new_order[k]
        for t, s in last.items():
            if new_times[k] - s < y[t, typ[a]]:
                raise PremiseError("relocated layout does not chain")
        last[int(typ[a])] = int(new_times[k])

    moved_new_pos = p1 + 1 + m2 + 1
    shift = int(new_times[moved_new_pos] - times[p1])
    delta_f = -shift + d1 * (m2 + 2) + d2 * (m3 + 1)
    return RelocationDelta(delta_f, int(d1), int(d2), shift, m2)


class MergeVerdict:
    CONCATENATION_BETTER = "concatenation_better"
    MERGE_BETTER = "merge_better"
    EQUAL = "equal"
    CASE_SPECIFIC = "case_specific"


def monotone_merge_compare(
    model: SeparationModel,
    phi1: Sequence[WakeClass],
    phi2: Sequence[WakeClass],
    task: OperationTask,
) -> str:
    """Which of concatenation vs class-sorted merge cannot be worse.

    Callers must ensure the comparison premises (all aircraft delayed, tight
    chains) separately; this only applies the case tables.
    """
    c1 = [c.ordinal for c in phi1]
    c2 = [c.ordinal for c in phi2]
    for name, cs in (("phi1", c1), ("phi2", c2)):
        if any(cs[i] < cs[i + 1] for i in range(len(cs) - 1)):
            raise ContractViolationError(f"{name} is not class-monotonically-decreasing")
    if not c1 or not c2:
        return MergeVerdict.EQUAL
    tail, head = c1[-1], c2[0]
    if tail >= head:
        return MergeVerdict.EQUAL  # concatenation already monotone
    rho2 = model.rho2
    eta = model.eta
    if task is OperationTask.LANDING:
        if tail == rho2 - 1 and head == rho2 and any(c == rho2 for c in c1[:-1]):
            return MergeVerdict.CONCATENATION_BETTER
        return MergeVerdict.MERGE_BETTER
    # takeoff case table
    if (tail, head) == (rho2 - 1, rho2):
        return MergeVerdict.EQUAL
    if (tail, head) == (3, 4) and any(c == 3 for c in c2[1:]):
        return MergeVerdict.MERGE_BETTER
    if (tail, head) == (eta - 1, eta) and any(c == eta for c in c1[:-1]):
        return MergeVerdict.CONCATENATION_BETTER
    if c2[-1] <= 2 and (tail, head) == (2, 3) and any(c == 3 for c in c1[:-1]):
        return MergeVerdict.EQUAL
    return MergeVerdict.CASE_SPECIFIC


def monotone_optimal_check(instance: Instance, order: Sequence[int]) -> bool:
    """Optimality certificate for a class-monotone pure-task order.

    True when the order is single-task, class-nonincreasing, fully delayed
    and tight under its forward schedule, and the adjacent separations never
    shrink along the sequence; such an order needs no search.
    """
    idx = list(order)
    n = len(idx)
    if n <= 1:
        return True
    aircraft = [instance.aircraft[i] for i in idx]
    if len({a.task for a in aircraft}) != 1:
        return False
    classes = [a.cls.ordinal for a in aircraft]
    if any(classes[i] < classes[i + 1] for i in range(n - 1)):
        return False
    packed = _kernels.pack(instance)
    arr = np.asarray(idx, dtype=np.int64)
    bad, times, _ = _kernels.forward_times(arr, packed)
    if bad >= 0:
        return False
    y = packed.y
    typ = packed.typ
    seps = [int(y[typ[idx[k]], typ[idx[k + 1]]]) for k in range(n - 1)]
    if any(times[k + 1] - times[k] != seps[k] for k in range(n - 1)):
        return False
    if any(times[k] <= aircraft[k].scheduled for k in range(n)):
        return False
    return all(seps[k] <= seps[k + 1] for k in range(n - 2))


# ---------------------------------------------------------------------------
# the incremental search engine


class _StepState:
    """Packed arrays plus the premise caches one solve needs.

    ``no_pin`` records that no window lower bound can ever exceed the
    separation floor of any arrangement (common-release style instances with
    unsplit windows); the comparison-based screens are valid only then.
    """

    def __init__(self, instance, packed, config, stats):
        self.instance = instance
        self.packed = packed
        self.config = config
        self.stats = stats
        self.model_structured = validate_separation_model(instance.model).passed
        self.min_y = int(packed.y.min())
        unsplit = bool(np.all(packed.wlo2 == packed.wlo1))
        if len(instance.aircraft):
            lo = int(packed.wlo1.min())
            hi = int(packed.wlo1.max())
            self.no_pin = unsplit and hi <= lo + self.min_y
        else:
            self.no_pin = unsplit

    # -- premises ----------------------------------------------------------

    def chain_profile(self, order: np.ndarray):
        """(times, all_delayed, adjacent_tight) of a feasible order."""
        bad, times, _ = _kernels.forward_times(order, self.packed)
        if bad >= 0:
            return None, False, False
        sched = self.packed.sched
        delayed = all(times[k] > sched[order[k]] for k in range(len(order)))
        typ = self.packed.typ
        y = self.packed.y
        tight = all(
            times[k] - times[k - 1] == y[typ[order[k - 1]], typ[order[k]]]
            for k in range(1, len(order))
        )
        return times, delayed, tight

    # -- insertion ----------------------------------------------------------

    def _omega_slots(self, prefix: np.ndarray, new_idx: int):
        """Per-slot admissible shift bounds, or None when premises fail."""
        cfg = self.config
        if not cfg.effective("insertion_bound"):
            return None
        if not (self.model_structured and self.no_pin):
            return None
        n0 = len(prefix)
        if n0 < 2:
            return None
        times, delayed, tight = self.chain_profile(prefix)
        if times is None or not delayed or not tight:
            return None
        aircraft = self.instance.aircraft
        if len({aircraft[int(i)].task for i in prefix}) != 1:
            return None
        omega = np.full(n0 + 1, -1, dtype=np.int64)
        model = self.instance.model
        new = aircraft[new_idx]
        for k in range(1, n0):
            w1 = aircraft[int(prefix[k - 2])] if k >= 2 else None
            w2 = aircraft[int(prefix[k - 1])]
            w3 = aircraft[int(prefix[k])]
            w4 = aircraft[int(prefix[k + 1])] if k + 1 < n0 else None
            bound = insertion_shift_bound(
                model, (w1, w2, w3, w4), new, self.instance.mode
            )
            omega[k] = max(0, bound)
        return omega

    def insertion(self, prefix: np.ndarray, new_idx: int, f_prefix: int, beam: int):
        omega = self._omega_slots(prefix, new_idx)
        slot_f, pruned = _kernels.insertion_objectives(
            prefix, new_idx, self.packed, omega, f_prefix, beam
        )
        self.stats.candidates_generated += len(slot_f)
        self.stats.candidates_pruned += pruned
        return slot_f

    # -- merge candidates ----------------------------------------------------

    def _monotone_runs(self, order: np.ndarray):
        aircraft = self.instance.aircraft
        runs = []
        start = 0
        for i in range(1, len(order)):
            a, b = aircraft[int(order[i - 1])], aircraft[int(order[i])]
            if a.task is not b.task or a.cls.ordinal < b.cls.ordinal:
                runs.append((start, i - 1))
                start = i
        runs.append((start, len(order) - 1))
        return runs

    def merge_candidates(self, order: np.ndarray, screen_ok: bool):
        """Class-sorted re-merges of adjacent monotone same-task runs."""
        aircraft = self.instance.aircraft
        runs = self._monotone_runs(order)
        cands = []
        use_screen = (
            screen_ok
            and self.config.effective("merge_screen")
            and self.model_structured
            and self.no_pin
        )
        for (s1, e1), (s2, e2) in zip(runs, runs[1:]):
            a_end = aircraft[int(order[e1])]
            b_start = aircraft[int(order[s2])]
            if a_end.task is not b_start.task:
                continue
            if a_end.cls.ordinal >= b_start.cls.ordinal:
                continue
            if use_screen:
                verdict = monotone_merge_compare(
                    self.instance.model,
                    [aircraft[int(order[i])].cls for i in range(s1, e1 + 1)],
                    [aircraft[int(order[i])].cls for i in range(s2, e2 + 1)],
                    a_end.task,
                )
                if verdict == MergeVerdict.CONCATENATION_BETTER:
                    self.stats.candidates_pruned += 1
                    continue
            seg1 = [int(order[i]) for i in range(s1, e1 + 1)]
            seg2 = [int(order[i]) for i in range(s2, e2 + 1)]
            merged = []
            i = j = 0
            while i < len(seg1) and j < len(seg2):
                if aircraft[seg1[i]].cls.ordinal >= aircraft[seg2[j]].cls.ordinal:
                    merged.append(seg1[i])
                    i += 1
                else:
                    merged.append(seg2[j])
                    j += 1
            merged.extend(seg1[i:])
            merged.extend(seg2[j:])
            cand = np.concatenate(
                [order[:s1], np.asarray(merged, dtype=np.int64), order[e2 + 1 :]]
            )
            if not np.array_equal(cand, order):
                cands.append(cand)
        return cands

    # -- fixed point ----------------------------------------------------------

    def fixed_point(self, order: np.ndarray, f: int, lock_start: int = -1):
        """Drive one sequence to a local optimum of moves and merges.

        Only strictly improving steps are taken (ties break toward the
        lexicographically smaller order among the equally cheap improvements
        of one round), so screens that reject non-improving candidates can
        never change the trajectory.
        """
        cfg = self.config
        while True:
            bad, times, _ = _kernels.forward_times(order, self.packed)
            sched = self.packed.sched
            delayed = np.array(
                [times[k] > sched[order[k]] for k in range(len(order))], dtype=bool
            )
            typ = self.packed.typ
            y = self.packed.y
            tight = all(
                times[k] - times[k - 1] == y[typ[order[k - 1]], typ[order[k]]]
                for k in range(1, len(order))
            )
            screen_moves = (
                cfg.effective("nondelayed_screen")
                and self.model_structured
                and self.no_pin
                and tight
            )
            found, mv_order, mv_f, gen, screened = _kernels.best_move(
                order,
                self.packed,
                f,
                delayed,
                screen_moves,
                lock_start if cfg.effective("shift_lock") else -1,
            )
            self.stats.candidates_generated += gen
            self.stats.candidates_pruned += screened

            best_order, best_f, improved = (mv_order, mv_f, True) if found else (order, f, False)
            merges = self.merge_candidates(order, bool(delayed.all()) and tight)
            if merges:
                arr = np.stack(merges)
                fs = _kernels.eval_orders(arr, self.packed)
                self.stats.candidates_generated += len(merges)
                for c in range(len(merges)):
                    fc = int(fs[c])
                    if fc >= f or fc > best_f:
                        continue
                    cand = arr[c]
                    if fc < best_f or (not improved) or _kernels._lex_less(cand, best_order):
                        best_order, best_f, improved = cand.copy(), fc, True
            if not improved:
                return order, f
            order, f = np.ascontiguousarray(best_order, dtype=np.int64), best_f
            lock_start = -1

    def shift_lock_start(self, prefix_times, new_order, slot):
        """Start of a suffix provably safe to keep intact, or -1.

        When the insertion leaves every trailing time untouched, the trailing
        arrangement already survived a fixed point and the extra aircraft only
        adds constraints, so rearranging inside the suffix cannot pay.
        """
        if not self.config.effective("shift_lock"):
            return -1
        if not len(prefix_times) or slot >= len(prefix_times):
            return -1
        bad, new_times, _ = _kernels.forward_times(new_order, self.packed)
        for p in range(slot + 1, len(new_order)):
            if int(new_times[p]) != int(prefix_times[p - 1]):
                return -1
        return slot + 1


def _insert_at(prefix: np.ndarray, k: int, x: int) -> np.ndarray:
    return np.concatenate([prefix[:k], [x], prefix[k:]]).astype(np.int64)


def reorder_and_insert(
    instance: Instance,
    prefix_schedule: Schedule,
    new_aircraft: int,
    f_inc: int,
    config: Optional[SolverConfig] = None,
) -> Schedule:
    """Best extension of an optimal prefix by one aircraft.

    Seeds from the cheapest plain insertion, then iterates relocations,
    pairwise exchanges, and monotone merges to a fixed point; the plain
    insertion incumbent is never lost. Raises InfeasibleInstanceError only
    if no candidate is feasible.
    """
    config = config or SolverConfig()
    packed = _kernels.pack(instance)
    state = _StepState(instance, packed, config, SolverStats())
    prefix_arr = np.asarray(prefix_schedule.order, dtype=np.int64)
    slot_f = state.insertion(prefix_arr, new_aircraft, prefix_schedule.objective, 1)
    k = int(np.argmin(slot_f))
    if slot_f[k] >= _INF:
        raise InfeasibleInstanceError(instance.aircraft[new_aircraft].id)
    seed = _insert_at(prefix_arr, k, new_aircraft)
    lock = state.shift_lock_start(np.asarray(prefix_schedule.times), seed, k)
    order, _ = state.fixed_point(seed, int(slot_f[k]), lock)
    return _subset_schedule(instance, packed, order)


def solve_single_runway(
    instance: Instance, config: Optional[SolverConfig] = None
) -> Solution:
    """Sequence every aircraft of a single-runway instance for minimum delay.

    Aircraft are introduced in scheduled order; a small set of alternative
    incumbents (equally or nearly equally delayed prefixes) is carried
    between steps, since distinct optimal prefixes extend differently.
    """
    config = config or SolverConfig()
    _kernels.set_worker_count(config.workers)
    if not instance.aircraft:
        raise ContractViolationError("instance has no aircraft")
    packed = _kernels.pack(instance)
    stats = SolverStats()
    state = _StepState(instance, packed, config, stats)
    width = config.beam_width(len(instance.aircraft))

    arrival = sort_by_scheduled(instance)
    beam: list[tuple[int, np.ndarray, np.ndarray]] = [
        (0, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
    ]  # (objective, order, times)
    for step, x in enumerate(arrival):
        t0 = time.perf_counter()
        pool: dict[bytes, tuple[int, np.ndarray, int, np.ndarray]] = {}
        for f_m, member, member_times in beam:
            slot_f = state.insertion(member, x, f_m, width)
            for k in range(len(slot_f)):
                fk = int(slot_f[k])
                if fk >= _INF:
                    continue
                cand = _insert_at(member, k, x)
                key = cand.tobytes()
                if key not in pool:
                    pool[key] = (fk, cand, k, member_times)
        if not pool:
            raise InfeasibleInstanceError(instance.aircraft[x].id)
        ranked = sorted(pool.values(), key=lambda e: (e[0], tuple(e[1])))
        survivors: dict[bytes, tuple[int, np.ndarray]] = {}
        for fk, cand, k, member_times in ranked[:width]:
            survivors.setdefault(cand.tobytes(), (fk, cand))
            lock = state.shift_lock_start(member_times, cand, k)
            improved_order, improved_f = state.fixed_point(cand, fk, lock)
            survivors.setdefault(improved_order.tobytes(), (improved_f, improved_order))
        # orders with equal type sequences and equal times extend identically,
        # so only the cheapest of each group can matter later
        grouped: dict[bytes, tuple[int, tuple, np.ndarray, np.ndarray]] = {}
        for f_m, member in survivors.values():
            _, times_m, _ = _kernels.forward_times(member, packed)
            key = packed.typ[member].tobytes() + times_m.tobytes()
            entry = (f_m, tuple(int(v) for v in member), member, times_m)
            if key not in grouped or entry[:2] < grouped[key][:2]:
                grouped[key] = entry
        next_beam = sorted(grouped.values(), key=lambda e: e[:2])[:width]
        beam = [(f_m, member, times_m) for f_m, _, member, times_m in next_beam]
        stats.incumbent_history.append((step + 1, int(beam[0][0])))
        stats.step_wall_times.append(time.perf_counter() - t0)

    best_f, best_order, _ = beam[0]
    schedule = _subset_schedule(instance, packed, best_order)
    return Solution(schedule=schedule, objective=schedule.objective, stats=stats)
