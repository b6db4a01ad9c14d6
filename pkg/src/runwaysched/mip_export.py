"""LP-format export of the sequencing problem.

One continuous time variable and one delay variable per aircraft, one
binary per unordered pair choosing which aircraft leads, and big-M
disjunctive separation rows. Split windows add one binary per affected
aircraft. The emitted text is deterministic and follows the common
LP-file sections, so standard MIP solvers can consume it directly; the
exporter never solves anything itself.
"""

from __future__ import annotations

from io import StringIO

from .errors import HorizonRequiredError
from .model import Instance, OPEN_END, apply_interruption, separation_matrix


def export_mip(instance: Instance, horizon: int | None = None) -> str:
    """Render the instance as LP-format text.

    ``horizon`` caps effectively unbounded windows; without it such windows
    raise HorizonRequiredError, since no meaningful big-M exists.
    """
    n = len(instance.aircraft)
    windows = [apply_interruption(a, instance.interruption) for a in instance.aircraft]
    tops = []
    for a, parts in zip(instance.aircraft, windows):
        top = parts[-1][1] if parts else a.window_max
        if top >= OPEN_END:
            if horizon is None:
                raise HorizonRequiredError(
                    f"aircraft {a.id} has an unbounded window; pass an explicit horizon"
                )
            top = horizon
        tops.append(top)

    y = separation_matrix(instance.model, instance.mode)
    codes = instance.type_codes()
    big_m = (max(tops) if tops else 0) + (int(y.max()) if n else 0) + 1

    out = StringIO()
    w = out.write
    w("\\ runway sequencing: minimize total delay\n")
    w(f"\\ mode={instance.mode.value} aircraft={n} big_m={big_m}\n")
    w("Minimize\n")
    if n:
        w(" obj: " + " + ".join(f"d_{a.id}" for a in instance.aircraft) + "\n")
    else:
        w(" obj: 0 s_none\n")
    w("Subject To\n")
    for a in instance.aircraft:
        w(f" delay_{a.id}: d_{a.id} - s_{a.id} >= {-a.scheduled}\n")
    binaries = []
    for i in range(n):
        for j in range(i + 1, n):
            ai, aj = instance.aircraft[i], instance.aircraft[j]
            z = f"z_{ai.id}_{aj.id}"
            binaries.append(z)
            yij = int(y[codes[i], codes[j]])
            yji = int(y[codes[j], codes[i]])
            # z = 1 puts aircraft ai first
            w(f" fwd_{ai.id}_{aj.id}: s_{aj.id} - s_{ai.id} - {big_m} {z} >= {yij - big_m}\n")
            w(f" rev_{ai.id}_{aj.id}: s_{ai.id} - s_{aj.id} + {big_m} {z} >= {yji}\n")
    for a, parts in zip(instance.aircraft, windows):
        if len(parts) == 2:
            g = f"g_{a.id}"
            binaries.append(g)
            (lo1, hi1), (lo2, hi2) = parts
            w(f" win1_{a.id}: s_{a.id} - {big_m} {g} <= {hi1}\n")
            w(f" win2_{a.id}: s_{a.id} - {big_m} {g} >= {lo2 - big_m}\n")
    w("Bounds\n")
    for a, parts, top in zip(instance.aircraft, windows, tops):
        lo = parts[0][0] if parts else a.window_min
        w(f" {lo} <= s_{a.id} <= {top}\n")
        w(f" 0 <= d_{a.id} <= {big_m}\n")
    if not n:
        w(" 0 <= s_none <= 0\n")
    if binaries:
        w("Binary\n")
        for b in binaries:
            w(f" {b}\n")
    w("End\n")
    return out.getvalue()
