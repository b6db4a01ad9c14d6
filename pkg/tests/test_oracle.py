import itertools

import pytest

from conftest import ac, landings, rng_sizes, spread_instance
from runwaysched.errors import InfeasibleInstanceError, OracleCapError
from runwaysched.model import Instance, Interruption, RunwayMode
from runwaysched.oracle import brute_force_optimum, dominance_dp_optimum
from runwaysched.scheduling import forward_schedule, total_delay


def _enumerate_min(instance):
    """Reference: schedule every order with the public forward pass."""
    best = None
    for perm in itertools.permutations(range(len(instance.aircraft))):
        try:
            s = forward_schedule(instance, perm)
        except Exception:
            continue
        if best is None or s.objective < best:
            best = s.objective
    return best


class TestBruteForce:
    def test_three_landings(self, model):
        inst = landings("A", "B", "F")
        res = brute_force_optimum(inst)
        assert res.objective == 210
        assert [inst.aircraft[i].cls.letter for i in res.order] == ["F", "B", "A"]
        assert res.explored == 6

    def test_single_aircraft(self, model):
        inst = landings("C", wmin=90, p=30)
        res = brute_force_optimum(inst)
        assert res.objective == 60  # window start minus scheduled

    def test_dual_interleavings(self, model):
        inst = Instance(
            RunwayMode.DUAL,
            (ac(1, "A", "landing"), ac(2, "B", "landing"), ac(3, "C", "takeoff")),
            model,
        )
        res = brute_force_optimum(inst)
        assert res.objective == _enumerate_min(inst) == 90

    def test_cap_refusal(self, model):
        inst = landings(*"ABCDEF")
        with pytest.raises(OracleCapError):
            brute_force_optimum(inst, cap=5)

    def test_all_infeasible(self, model):
        inst = Instance(
            RunwayMode.SINGLE,
            (
                ac(1, "A", "landing", wmin=0, wmax=10),
                ac(2, "A", "landing", wmin=0, wmax=10),
            ),
            model,
        )
        with pytest.raises(InfeasibleInstanceError):
            brute_force_optimum(inst)

    def test_lexicographic_tie_break(self, model):
        inst = landings("C", "C")  # identical aircraft: both orders tie
        res = brute_force_optimum(inst)
        assert res.order == (0, 1)


class TestDominanceDp:
    def test_matches_brute_on_examples(self, model):
        inst = landings("A", "B", "F")
        assert dominance_dp_optimum(inst).objective == 210

    def test_empty_instance(self, model):
        inst = Instance(RunwayMode.SINGLE, (), model)
        assert dominance_dp_optimum(inst).objective == 0

    def test_cap_refusal(self, model):
        inst = landings(*("C" * 17))
        with pytest.raises(OracleCapError):
            dominance_dp_optimum(inst)

    def test_order_reevaluates_to_objective(self, model):
        inst = spread_instance(seed=11, n=7, mix="mixed")
        res = dominance_dp_optimum(inst)
        s = forward_schedule(inst, res.order)
        assert total_delay(s, inst) == res.objective

    @pytest.mark.parametrize("mode", [RunwayMode.SINGLE, RunwayMode.DUAL])
    def test_cross_oracle_random(self, model, mode):
        sizes = rng_sizes(20_24, 40, 2, 8)
        for k, n in enumerate(sizes):
            inst = spread_instance(seed=900 + k, n=n, mix="mixed", mode=mode)
            bf = brute_force_optimum(inst)
            dp = dominance_dp_optimum(inst)
            assert bf.objective == dp.objective, (mode, k, n)

    def test_cross_oracle_with_interruption(self, model):
        base = spread_instance(seed=5, n=6, mix="mixed")
        inst = Instance(
            base.mode, base.aircraft, base.model, Interruption(300, 700)
        )
        assert (
            brute_force_optimum(inst).objective
            == dominance_dp_optimum(inst).objective
        )
