"""Ground-truth solvers for desk-scale instances.

Two independent methods: full permutation enumeration, and a set-based
dynamic program over (placed set, last class per task) states with Pareto
dominance on (last landing time, last takeoff time, accumulated delay).
The dominance key is exact when same-task separations satisfy the strict
triangle inequality and cross-task separations are class-independent, which
the validator checks; both hold for the bundled tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InfeasibleInstanceError, OracleCapError
from .model import Instance, OperationTask

_NONE = -(2**62)


@dataclass(frozen=True)
class OracleResult:
    objective: int
    order: tuple[int, ...]
    explored: int
    method: str


def _infeasible_culprit(instance: Instance) -> int:
    for a, parts in zip(instance.aircraft, instance.effective_windows()):
        if not parts:
            return a.id
    return instance.aircraft[0].id if instance.aircraft else -1


def brute_force_optimum(instance: Instance, cap: int = 10) -> OracleResult:
    """Minimum total delay over every order of the full aircraft set.

    Returns the lexicographically smallest optimal order. Refuses instances
    above ``cap`` aircraft.
    """
    n = len(instance.aircraft)
    if n > cap:
        raise OracleCapError(f"{n} aircraft exceed the brute-force cap {cap}")
    if n == 0:
        return OracleResult(0, (), 1, "brute_force")
    packed = _kernels.pack(instance)
    best_f, best_perm, explored = _kernels.brute_force_search(packed)
    if best_f >= int(_kernels.INFEASIBLE):
        raise InfeasibleInstanceError(_infeasible_culprit(instance))
    return OracleResult(int(best_f), tuple(int(i) for i in best_perm), explored, "brute_force")


def dominance_dp_optimum(instance: Instance, cap: int = 16) -> OracleResult:
    """Set DP optimum; states keyed by (placed set, last class of each task).

    Each frontier entry carries its partial order, so pruning never breaks
    reconstruction; among equal objectives the lexicographically smallest
    full order wins.
    """
    n = len(instance.aircraft)
    if n > cap:
        raise OracleCapError(f"{n} aircraft exceed the dominance-DP cap {cap}")
    if n == 0:
        return OracleResult(0, (), 0, "dominance_dp")

    packed = _kernels.pack(instance)
    typ = packed.typ
    is_landing = np.array(
        [a.task is OperationTask.LANDING for a in instance.aircraft], dtype=bool
    )
    y = packed.y

    # entry: (last landing time, last takeoff time, delay sum, order tuple)
    start = (0, _NONE, _NONE)
    frontiers: dict[tuple[int, int, int], list[tuple]] = {start: [(_NONE, _NONE, 0, ())]}
    by_size: list[list] = [[] for _ in range(n + 1)]
    by_size[0].append(start)
    explored = 0

    for size in range(n):
        for state in by_size[size]:
            mask, lcls, tcls = state
            for s_l, s_t, f, partial in frontiers[state]:
                for x in range(n):
                    bit = 1 << x
                    if mask & bit:
                        continue
                    explored += 1
                    t = int(packed.wlo1[x])
                    if s_l != _NONE:
                        t = max(t, s_l + int(y[lcls, typ[x]]))
                    if s_t != _NONE:
                        t = max(t, s_t + int(y[tcls, typ[x]]))
                    if t > packed.whi1[x]:
                        if t < packed.wlo2[x]:
                            t = int(packed.wlo2[x])
                        if t > packed.whi2[x]:
                            continue
                    nf = f + max(0, t - int(packed.sched[x]))
                    if is_landing[x]:
                        nkey = (mask | bit, int(typ[x]), tcls)
                        ne = (t, s_t, nf, partial + (x,))
                    else:
                        nkey = (mask | bit, lcls, int(typ[x]))
                        ne = (s_l, t, nf, partial + (x,))
                    frontier = frontiers.get(nkey)
                    if frontier is None:
                        frontiers[nkey] = [ne]
                        by_size[size + 1].append(nkey)
                        continue
                    dominated = False
                    keep = []
                    for old in frontier:
                        if old[0] <= ne[0] and old[1] <= ne[1] and old[2] <= ne[2]:
                            dominated = True
                            break
                        if not (ne[0] <= old[0] and ne[1] <= old[1] and ne[2] <= old[2]):
                            keep.append(old)
                    if not dominated:
                        keep.append(ne)
                        frontiers[nkey] = keep

    full = (1 << n) - 1
    finals = [e for state in by_size[n] if state[0] == full for e in frontiers[state]]
    if not finals:
        raise InfeasibleInstanceError(_infeasible_culprit(instance))
    best_f = min(e[2] for e in finals)
    best_order = min(e[3] for e in finals if e[2] == best_f)
    return OracleResult(int(best_f), best_order, explored, "dominance_dp")
