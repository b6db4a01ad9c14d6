"""Structural audit of a separation model.

Every predicate the bundled six-class tables are expected to satisfy is
checked independently and reported; violations never reject the model, since
the solvers stay correct on deviating tables (only pruning strength leans on
the structure). Fractional thresholds (1.5 t0, t0/3, ...) are compared in
exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import SeparationModel


@dataclass(frozen=True)
class PredicateResult:
    id: str
    description: str
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[PredicateResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.results if not r.passed)

    def summary_lines(self) -> list[str]:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.id}: {r.description}")
            for v in r.violations:
                lines.append(f"         {v}")
        return lines


def validate_separation_model(model: SeparationModel) -> ValidationReport:
    eta, t0, delta = model.eta, model.t0, model.delta
    rho1, rho2 = model.rho1, model.rho2
    T = model.landing
    D = model.takeoff
    E = model.exception_set_e
    results: list[PredicateResult] = []

    def check(pid: str, desc: str, violations: list[str]) -> None:
        results.append(PredicateResult(pid, desc, tuple(violations)))

    def t(i, j):  # 1-based accessors
        return T[i - 1][j - 1]

    def d(i, j):
        return D[i - 1][j - 1]

    # --- landing matrix -----------------------------------------------------
    v = [
        f"T[{i}][{i}]={t(i, i)} != 1.5*t0={3 * t0}/2"
        for i in (1, 2)
        if i <= eta and 2 * t(i, i) != 3 * t0
    ]
    check("landing.diagonal.heavy", "T[i][i] = 1.5*t0 for the two heaviest classes", v)

    v = [
        f"T[{i}][{i}]={t(i, i)} != t0+delta={t0 + delta}"
        for i in (rho1, rho2)
        if i <= eta and t(i, i) != t0 + delta
    ]
    check("landing.diagonal.spaced", "T[i][i] = t0 + delta for the two spaced classes", v)

    v = [
        f"T[{i}][{i}]={t(i, i)} != t0={t0}"
        for i in range(1, eta + 1)
        if i not in (1, 2, rho1, rho2) and t(i, i) != t0
    ]
    check("landing.diagonal.base", "remaining diagonal entries equal t0", v)

    v = []
    if delta < 1:
        v.append(f"delta={delta} must be a positive integer")
    if not 8 * delta > t0:
        v.append(f"delta={delta} <= t0/8={t0}/8")
    if not 6 * delta < t0:
        v.append(f"delta={delta} >= t0/6={t0}/6")
    check("landing.delta.range", "t0/8 < delta < t0/6", v)

    v = []
    if eta >= 2 and 2 * t(2, 1) != 3 * t0:
        v.append(f"T[2][1]={t(2, 1)} != 1.5*t0={3 * t0}/2")
    check("landing.below.second", "T[2][1] = 1.5*t0", v)

    v = [
        f"T[{i}][{j}]={t(i, j)} != t0={t0}"
        for i in range(1, eta + 1)
        for j in range(1, i)
        if i != 2 and t(i, j) != t0
    ]
    check("landing.below.base", "below-diagonal entries (outside row 2) equal t0", v)

    v = []
    for i in range(1, eta + 1):
        for k in range(i + 1, eta + 1):
            for j in range(k + 1, eta + 1):
                if t(i, k) > t(i, j):
                    v.append(f"T[{i}][{k}]={t(i, k)} > T[{i}][{j}]={t(i, j)}")
                if t(i, j) > 3 * t0:
                    v.append(f"T[{i}][{j}]={t(i, j)} > 3*t0={3 * t0}")
    check("landing.row.monotone", "rows nondecreasing right of the diagonal, capped at 3*t0", v)

    v = []
    for i in range(1, eta + 1):
        for k in range(i + 1, eta + 1):
            for j in range(k + 1, eta + 1):
                if t(k, j) >= t(i, j):
                    v.append(f"T[{k}][{j}]={t(k, j)} >= T[{i}][{j}]={t(i, j)}")
    check("landing.column.strict", "above-diagonal columns strictly shrink downward", v)

    v = []
    for k in range(1, eta + 1):
        for j in range(k, eta + 1):
            for i in range(j, eta + 1):
                if t(i, k) >= t(i, j) + t(j, k):
                    v.append(
                        f"T[{i}][{k}]={t(i, k)} >= T[{i}][{j}]+T[{j}][{k}]={t(i, j) + t(j, k)}"
                    )
                if t(k, i) >= t(j, i) + t(k, j):
                    v.append(
                        f"T[{k}][{i}]={t(k, i)} >= T[{j}][{i}]+T[{k}][{j}]={t(j, i) + t(k, j)}"
                    )
    check("landing.triangle", "strict triangle inequality through any middle class", v)

    v = []
    for k in range(2, eta + 1):
        if k == rho2:
            if t(k - 1, k) != t0 + delta:
                v.append(f"T[{k - 1}][{k}]={t(k - 1, k)} != t0+delta={t0 + delta}")
        elif 2 * t(k - 1, k) < 3 * t0:
            v.append(f"T[{k - 1}][{k}]={t(k - 1, k)} < 1.5*t0={3 * t0}/2")
    check(
        "landing.superdiagonal",
        "first superdiagonal >= 1.5*t0 except the spaced pair at t0+delta",
        v,
    )

    v = []
    for i in range(2, eta + 1):
        for k in range(i, eta + 1):
            if (i, k) == (rho2, rho2):
                continue
            if t(i - 1, k) - t(i, k) <= 2 * delta:
                v.append(
                    f"T[{i - 1}][{k}]-T[{i}][{k}]={t(i - 1, k) - t(i, k)} <= 2*delta={2 * delta}"
                )
    check("landing.column.drop", "upper-column steps exceed 2*delta", v)

    v = []
    if eta >= 2 and t(1, 2) <= 2 * t0:
        v.append(f"T[1][2]={t(1, 2)} <= 2*t0={2 * t0}")
    if eta >= 3 and 2 * t(2, 3) <= 3 * t0 + 4 * delta:
        v.append(f"T[2][3]={t(2, 3)} <= 1.5*t0+2*delta={(3 * t0 + 4 * delta)}/2")
    check("landing.head.gaps", "leading superdiagonal entries exceed their floors", v)

    v = []
    for h in range(3, eta + 1):
        for j in range(h, eta + 1):
            if 2 * (t(1, j) - t(h, j)) <= t0:
                v.append(f"T[1][{j}]-T[{h}][{j}]={t(1, j) - t(h, j)} <= t0/2={t0}/2")
    check("landing.top.dominance", "row 1 dominates rows 3.. by more than t0/2", v)

    v = []
    for k in range(3, eta + 1):
        for j in range(k + 1, eta + 1):
            diff = t(2, j) - t(k, j)
            if (k, j) in E:
                if not (2 * (diff + delta) >= t0 and 2 * diff < t0):
                    v.append(
                        f"T[2][{j}]-T[{k}][{j}]={diff} outside [t0/2-delta, t0/2) for excepted pair ({k},{j})"
                    )
            elif 2 * diff <= t0:
                v.append(f"T[2][{j}]-T[{k}][{j}]={diff} <= t0/2={t0}/2")
    check("landing.second.exceptions", "row-2 dominance with the excepted near-misses", v)

    # --- takeoff matrix -----------------------------------------------------
    heavy = {1, 2, 3, eta}
    v = [
        f"D[{i}][{i}]={d(i, i)} != 4*t0/3={4 * t0}/3"
        for i in sorted(heavy)
        if 3 * d(i, i) != 4 * t0
    ]
    check("takeoff.diagonal.heavy", "D[i][i] = (1+1/3)*t0 for classes 1,2,3 and the last", v)

    v = [
        f"D[{i}][{i}]={d(i, i)} != t0={t0}"
        for i in range(1, eta + 1)
        if i not in heavy and d(i, i) != t0
    ]
    check("takeoff.diagonal.base", "remaining diagonal entries equal t0", v)

    v = []
    if eta >= 2 and 3 * d(2, 1) != 4 * t0:
        v.append(f"D[2][1]={d(2, 1)} != 4*t0/3={4 * t0}/3")
    check("takeoff.below.second", "D[2][1] = (1+1/3)*t0", v)

    v = [
        f"D[{i}][{j}]={d(i, j)} != t0={t0}"
        for i in range(3, eta + 1)
        for j in range(1, i)
        if d(i, j) != t0
    ]
    check("takeoff.below.base", "below-diagonal entries from row 3 equal t0", v)

    v = []
    for k in range(1, eta + 1):
        for i in range(k, eta + 1):
            for j in range(i, eta + 1):
                if d(k, i) > d(k, j):
                    v.append(f"D[{k}][{i}]={d(k, i)} > D[{k}][{j}]={d(k, j)}")
                if d(k, j) > 3 * t0:
                    v.append(f"D[{k}][{j}]={d(k, j)} > 3*t0={3 * t0}")
    check("takeoff.row.monotone", "rows nondecreasing rightward, capped at 3*t0", v)

    v = []
    for k in range(1, eta + 1):
        for i in range(k, eta + 1):
            for j in range(i, eta + 1):
                if d(i, j) > d(k, j):
                    v.append(f"D[{i}][{j}]={d(i, j)} > D[{k}][{j}]={d(k, j)}")
    check("takeoff.column.monotone", "columns nonincreasing downward", v)

    v = []
    for k in range(1, eta + 1):
        for j in range(k, eta + 1):
            for i in range(j, eta + 1):
                if d(i, k) >= d(i, j) + d(j, k):
                    v.append(
                        f"D[{i}][{k}]={d(i, k)} >= D[{i}][{j}]+D[{j}][{k}]={d(i, j) + d(j, k)}"
                    )
                if d(k, i) >= d(j, i) + d(k, j):
                    v.append(
                        f"D[{k}][{i}]={d(k, i)} >= D[{j}][{i}]+D[{k}][{j}]={d(j, i) + d(k, j)}"
                    )
    check("takeoff.triangle", "strict triangle inequality through any middle class", v)

    v = []
    for k in (1, 2):
        if k + 1 <= eta and 3 * d(k, k + 1) != 3 * d(k, k) + t0:
            v.append(f"D[{k}][{k + 1}]={d(k, k + 1)} != D[{k}][{k}]+t0/3={3 * d(k, k) + t0}/3")
    check("takeoff.superdiagonal.step", "first two superdiagonal steps equal t0/3", v)

    v = []
    for k in (3, rho2 - 1):
        if 1 <= k and k + 1 <= eta and d(k, k + 1) != d(k, k):
            v.append(f"D[{k}][{k + 1}]={d(k, k + 1)} != D[{k}][{k}]={d(k, k)}")
    check("takeoff.superdiagonal.flat", "middle superdiagonal entries stay on the diagonal", v)

    v = []
    if eta >= 3 and 3 * d(1, 3) != 3 * d(2, 3) + t0:
        v.append(f"D[1][3]={d(1, 3)} != D[2][3]+t0/3={3 * d(2, 3) + t0}/3")
    for j in range(4, eta + 1):
        if 3 * (d(1, j) - d(2, j)) != 2 * t0:
            v.append(f"D[1][{j}]-D[2][{j}]={d(1, j) - d(2, j)} != 2*t0/3={2 * t0}/3")
    check("takeoff.top.rows", "row-1 over row-2 gaps: t0/3 at column 3, 2*t0/3 beyond", v)

    v = []
    if eta >= 4 and d(3, eta) != d(4, eta):
        v.append(f"D[3][{eta}]={d(3, eta)} != D[4][{eta}]={d(4, eta)}")
    if 2 <= rho2 - 1 <= eta and d(rho2 - 1, eta) != d(rho2, rho2) + t0:
        v.append(
            f"D[{rho2 - 1}][{eta}]={d(rho2 - 1, eta)} != D[{rho2}][{rho2}]+t0={d(rho2, rho2) + t0}"
        )
    check("takeoff.tail.links", "last-column ties to the rows below", v)

    excluded = {(3, eta), (rho2 - 1, rho2), (rho2 - 2, rho2)}
    v = []
    for k in range(2, eta):
        for j in range(max(k + 1, 3), eta + 1):
            if (k, j) in excluded:
                continue
            if 3 * d(k, j) != 3 * d(k + 1, j) + t0:
                v.append(f"D[{k}][{j}]={d(k, j)} != D[{k + 1}][{j}]+t0/3={3 * d(k + 1, j) + t0}/3")
    check("takeoff.column.step", "upper-column steps equal t0/3 outside the excepted pairs", v)

    # --- cross-task constants -----------------------------------------------
    v = []
    if not (t0 <= model.same_runway_td and 2 * model.same_runway_td < 3 * t0):
        v.append(f"same_runway_td={model.same_runway_td} outside [t0, 1.5*t0)")
    if not (t0 <= model.same_runway_dt and 2 * model.same_runway_dt < 3 * t0):
        v.append(f"same_runway_dt={model.same_runway_dt} outside [t0, 1.5*t0)")
    check("cross.single.bounds", "single-runway transition constants within [t0, 1.5*t0)", v)

    v = []
    if model.dual_dp != t0:
        v.append(f"dual_dp={model.dual_dp} != t0={t0}")
    if model.dual_pd != 0:
        v.append(f"dual_pd={model.dual_pd} != 0")
    check("cross.dual.constants", "dual-runway constants pinned to t0 and 0", v)

    return ValidationReport(tuple(results))
