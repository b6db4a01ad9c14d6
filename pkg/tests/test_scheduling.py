import numpy as np
import pytest

from conftest import ac, landings, spread_instance
from runwaysched.errors import ContractViolationError, InfeasibleOrderError
from runwaysched.model import (
    Instance,
    Interruption,
    OperationTask,
    RunwayMode,
    Schedule,
)
from runwaysched.scheduling import (
    analyze_sequence,
    decompose_blocks,
    forward_schedule,
    total_delay,
)


class TestForwardSchedule:
    def test_three_landings(self, model):
        inst = landings("A", "B", "C")
        s = forward_schedule(inst, [0, 1, 2])
        assert s.times == (0, 135, 248)  # second pair bound by the A-C entry
        assert s.objective == 383

    def test_single_aircraft_at_window_start(self, model):
        inst = landings("C", wmin=60, p=60)
        s = forward_schedule(inst, [0])
        assert s.times == (60,)
        assert s.objective == 0

    def test_dual_mixed(self, model):
        inst = Instance(
            RunwayMode.DUAL,
            (ac(1, "A", "landing"), ac(2, "C", "takeoff"), ac(3, "B", "landing")),
            model,
        )
        s = forward_schedule(inst, [0, 1, 2])
        assert s.times == (0, 0, 135)
        assert s.objective == 135

    def test_infeasible_order_names_position(self, model):
        inst = Instance(
            RunwayMode.SINGLE,
            (
                ac(1, "A", "landing", wmin=0, wmax=10),
                ac(2, "F", "landing", wmin=0, wmax=100),
            ),
            model,
        )
        with pytest.raises(InfeasibleOrderError) as err:
            forward_schedule(inst, [0, 1])
        assert err.value.position == 1
        assert err.value.aircraft_id == 2

    def test_requires_permutation(self, model):
        inst = landings("A", "B")
        with pytest.raises(ContractViolationError):
            forward_schedule(inst, [0, 0])

    def test_interruption_snap(self, model):
        inst = Instance(
            RunwayMode.SINGLE,
            (ac(1, "A", "landing", wmin=0, wmax=100),),
            model,
            Interruption(0, 49),
        )
        s = forward_schedule(inst, [0])
        assert s.times == (50,)

    def test_componentwise_minimal(self, model):
        # every feasible time vector dominates the forward times
        inst = spread_instance(seed=7, n=6, mix="mixed")
        order = list(range(6))
        s = forward_schedule(inst, order)
        from runwaysched.model import separation_matrix

        ym = separation_matrix(inst.model, inst.mode)
        codes = inst.type_codes()
        rng = np.random.default_rng(0)
        for _ in range(200):
            bump = rng.integers(0, 50, size=6)
            cand = [t + int(b) for t, b in zip(s.times, bump)]
            feasible = all(
                cand[j] - cand[i] >= ym[codes[order[i]], codes[order[j]]]
                for i in range(6)
                for j in range(i + 1, 6)
            ) and all(
                inst.aircraft[order[k]].window_min
                <= cand[k]
                <= inst.aircraft[order[k]].window_max
                for k in range(6)
            )
            if feasible:
                assert sum(
                    max(0, cand[k] - inst.aircraft[order[k]].scheduled)
                    for k in range(6)
                ) >= s.objective


class TestTotalDelay:
    def test_zero_when_on_time(self, model):
        inst = landings("A", "B")
        s = forward_schedule(inst, [0, 1])
        relaxed = Instance(
            RunwayMode.SINGLE,
            tuple(
                ac(a.id, a.cls.letter, "landing", p=t)
                for a, t in zip(inst.aircraft, s.times)
            ),
            model,
        )
        assert total_delay(s, relaxed) == 0

    def test_sums_positive_parts(self, model):
        inst = landings("A", "B", "C")
        s = forward_schedule(inst, [0, 1, 2])
        assert total_delay(s, inst) == 383

    def test_early_is_free(self, model):
        inst = landings("A", "B", p=200)
        s = forward_schedule(inst, [0, 1])
        assert s.times == (0, 135)
        assert total_delay(s, inst) == 0


class TestDiagnostics:
    def test_breakpoints(self, model):
        inst = landings("C", "B", "D")  # classes 3, 2, 4
        s = forward_schedule(inst, [0, 1, 2])
        d = analyze_sequence(inst, s)
        assert d.breakpoints == (2,)

    def test_relevance_and_resident(self, model):
        inst = Instance(
            RunwayMode.SINGLE,
            (ac(1, "A", "landing"), ac(2, "B", "landing", wmin=140)),
            model,
        )
        s = forward_schedule(inst, [0, 1])
        assert s.times == (0, 140)
        d = analyze_sequence(inst, s)
        assert d.relevance_edges == ()
        assert d.resident_points == ((2, 5),)

        tight = landings("A", "B")
        st = forward_schedule(tight, [0, 1])
        dt = analyze_sequence(tight, st)
        assert (1, 2) in dt.relevance_edges
        assert dt.resident_points == ()

    def test_transitions(self, model):
        inst = Instance(
            RunwayMode.SINGLE,
            (ac(1, "A", "landing"), ac(2, "A", "takeoff"), ac(3, "B", "landing")),
            model,
        )
        s = forward_schedule(inst, [0, 1, 2])
        d = analyze_sequence(inst, s)
        assert d.transitions == (1, 2)

    def test_first_position_resident_time(self, model):
        inst = landings("A", wmin=0, p=0)
        late = Schedule((0,), (25,), (25,), 25)
        d = analyze_sequence(inst, late)
        assert d.resident_points == ((1, 25),)

    def test_path_queries(self, model):
        inst = landings("F", "F", "F")
        s = forward_schedule(inst, [0, 1, 2])
        d = analyze_sequence(inst, s)
        assert d.path_exists(1, 3)
        assert not d.path_exists(3, 1)
        assert d.path_exists(2, 2)


def _dual_instance(aircraft, model):
    return Instance(RunwayMode.DUAL, tuple(aircraft), model)


class TestBlocks:
    def test_degenerate_seed_block(self, model):
        inst = _dual_instance(
            [ac(1, "C", "landing"), ac(2, "C", "takeoff")], model
        )
        s = forward_schedule(inst, [0, 1])
        dec = decompose_blocks(inst, s)
        assert dec.ok
        assert len(dec.blocks) == 1
        b = dec.blocks[0]
        assert b.kind.value == "T_block"
        assert b.span == (1, 2)
        assert b.length_ratio == (0, 0)

    def test_l_t_t_l_spans(self, model):
        # landing window pins the final landing so that it binds only on the
        # last takeoff, giving the chain L1 <- T2 <- T3 <- L4
        inst = _dual_instance(
            [
                ac(1, "C", "landing"),
                ac(2, "C", "takeoff"),
                ac(3, "C", "takeoff", wmin=80),
                ac(4, "C", "landing", wmin=140),
            ],
            model,
        )
        s = forward_schedule(inst, [0, 1, 2, 3])
        assert s.times == (0, 0, 80, 140)
        dec = decompose_blocks(inst, s)
        assert dec.ok, dec.violations
        assert [(b.kind.value, b.span) for b in dec.blocks] == [
            ("T_block", (1, 3)),
            ("D_block", (3, 4)),
        ]
        spans = set()
        for b in dec.blocks:
            spans.update(range(b.span[0], b.span[1] + 1))
        assert spans == {1, 2, 3, 4}

    def test_pure_landing_no_blocks(self, model):
        inst = _dual_instance(
            [ac(1, "A", "landing"), ac(2, "B", "landing")], model
        )
        s = forward_schedule(inst, [0, 1])
        dec = decompose_blocks(inst, s)
        assert dec.blocks == () and dec.ok

    def test_loose_transition_reported(self, model):
        inst = _dual_instance(
            [ac(1, "C", "landing"), ac(2, "C", "takeoff", wmin=500)], model
        )
        s = forward_schedule(inst, [0, 1])
        dec = decompose_blocks(inst, s)
        assert not dec.ok
        assert dec.blocks == ()
        assert any(pos == 1 for pos, _ in dec.violations)
