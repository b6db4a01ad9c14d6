"""Invariant suites: randomized checks of the structural guarantees."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import spread_instance
from runwaysched.model import (
    Aircraft,
    Instance,
    OperationTask,
    RunwayMode,
    WakeClass,
    default_separation_model,
    separation_matrix,
)
from runwaysched.scheduling import analyze_sequence, forward_schedule, total_delay
from runwaysched.errors import InfeasibleOrderError

MODEL = default_separation_model()


@st.composite
def small_instances(draw, max_n=6, mode=None):
    n = draw(st.integers(2, max_n))
    mode = mode or draw(st.sampled_from([RunwayMode.SINGLE, RunwayMode.DUAL]))
    aircraft = []
    for i in range(n):
        cls = draw(st.integers(1, 6))
        task = draw(st.sampled_from(list(OperationTask)))
        wmin = draw(st.integers(0, 900))
        length = draw(st.integers(200, 2000))
        sched = draw(st.integers(0, 1200))
        aircraft.append(
            Aircraft(i + 1, WakeClass(cls), task, wmin, wmin + length, sched)
        )
    return Instance(mode, tuple(aircraft), MODEL)


@given(small_instances(), st.randoms(use_true_random=False))
@settings(max_examples=120, deadline=None)
def test_forward_times_satisfy_every_constraint(instance, rnd):
    order = list(range(len(instance.aircraft)))
    rnd.shuffle(order)
    try:
        s = forward_schedule(instance, order)
    except InfeasibleOrderError:
        return
    y = separation_matrix(instance.model, instance.mode)
    codes = instance.type_codes()
    windows = instance.effective_windows()
    n = len(order)
    for i in range(n):
        a = order[i]
        assert any(lo <= s.times[i] <= hi for lo, hi in windows[a])
        for j in range(i + 1, n):
            assert s.times[j] - s.times[i] >= y[codes[a], codes[order[j]]]
    assert list(s.times) == sorted(s.times)
    assert s.objective == total_delay(s, instance)


@given(small_instances(), st.integers(0, 2**31 - 1))
@settings(max_examples=60, deadline=None)
def test_no_perturbation_beats_forward_times(instance, seed):
    order = list(range(len(instance.aircraft)))
    try:
        s = forward_schedule(instance, order)
    except InfeasibleOrderError:
        return
    y = separation_matrix(instance.model, instance.mode)
    codes = instance.type_codes()
    windows = instance.effective_windows()
    rng = np.random.default_rng(seed)
    n = len(order)
    for _ in range(40):
        mask = rng.integers(0, 2, size=n).astype(bool)
        bump = rng.integers(0, 120, size=n) * mask
        cand = [t + int(b) for t, b in zip(s.times, bump)]
        ok = all(
            cand[j] - cand[i] >= y[codes[order[i]], codes[order[j]]]
            for i in range(n)
            for j in range(i + 1, n)
        ) and all(
            any(lo <= cand[k] <= hi for lo, hi in windows[order[k]])
            for k in range(n)
        ) and cand == sorted(cand)
        if ok:
            total = sum(
                max(0, cand[k] - instance.aircraft[order[k]].scheduled)
                for k in range(n)
            )
            assert total >= s.objective


def _open_window_instance(seed, n, tasks):
    rng = np.random.default_rng(seed)
    t0 = MODEL.t0
    aircraft = []
    for i in range(n):
        cls = int(rng.integers(1, 7))
        task = tasks[i % len(tasks)] if isinstance(tasks, list) else tasks
        if tasks == "mix":
            task = (
                OperationTask.LANDING
                if rng.integers(0, 2) == 0
                else OperationTask.TAKEOFF
            )
        aircraft.append(
            Aircraft(i + 1, WakeClass(cls), task, t0, 10**7, int(rng.integers(0, t0)))
        )
    return aircraft


@pytest.mark.parametrize("task", [OperationTask.LANDING, OperationTask.TAKEOFF])
def test_pure_sequences_bind_only_adjacent(task):
    # common floor window: every tight pair must be a neighbour pair
    for seed in range(40):
        aircraft = _open_window_instance(seed, 7, task)
        inst = Instance(RunwayMode.SINGLE, tuple(aircraft), MODEL)
        s = forward_schedule(inst, range(7))
        d = analyze_sequence(inst, s)
        for i, j in d.relevance_edges:
            assert j == i + 1


def test_mixed_cross_task_binds_adjacent():
    for seed in range(60):
        aircraft = _open_window_instance(seed, 7, "mix")
        inst = Instance(RunwayMode.SINGLE, tuple(aircraft), MODEL)
        s = forward_schedule(inst, range(7))
        d = analyze_sequence(inst, s)
        tasks = [inst.aircraft[a].task for a in s.order]
        for i, j in d.relevance_edges:
            if tasks[i - 1] is not tasks[j - 1]:
                assert j == i + 1, (seed, i, j)


def test_breakpoints_count_equals_ascents():
    for seed in range(30):
        inst = spread_instance(seed=600 + seed, n=8, mix="mixed")
        s = forward_schedule(inst, range(8))
        d = analyze_sequence(inst, s)
        classes = [inst.aircraft[a].cls.ordinal for a in s.order]
        ascents = sum(1 for k in range(7) if classes[k] < classes[k + 1])
        assert len(d.breakpoints) == ascents


def test_blocks_cover_sequence_when_premises_hold():
    from runwaysched.scheduling import decompose_blocks

    covered_checked = 0
    for seed in range(150):
        inst = spread_instance(seed=6200 + seed, n=8, mix="dual", mode=RunwayMode.DUAL)
        rng = np.random.default_rng(seed)
        order = [int(v) for v in rng.permutation(8)]
        try:
            s = forward_schedule(inst, order)
        except InfeasibleOrderError:
            continue
        dec = decompose_blocks(inst, s)
        if not dec.ok or not dec.blocks:
            continue
        covered = set()
        for b in dec.blocks:
            covered.update(range(b.span[0], b.span[1] + 1))
        lead = min(p for p, _ in [(b.span[0], b) for b in dec.blocks])
        assert covered == set(range(lead, 9))
        covered_checked += 1
    assert covered_checked > 0


def test_delay_monotone_in_window_floor():
    for seed in range(25):
        inst = spread_instance(seed=700 + seed, n=6, mix="mixed")
        s = forward_schedule(inst, range(6))
        rng = np.random.default_rng(seed)
        k = int(rng.integers(0, 6))
        a = inst.aircraft[k]
        lifted = Instance(
            inst.mode,
            tuple(
                Aircraft(
                    b.id,
                    b.cls,
                    b.task,
                    b.window_min + (400 if i == k else 0),
                    b.window_max + (400 if i == k else 0),
                    b.scheduled,
                )
                for i, b in enumerate(inst.aircraft)
            ),
            inst.model,
        )
        s2 = forward_schedule(lifted, range(6))
        assert s2.objective >= s.objective
