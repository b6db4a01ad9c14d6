"""Domain types: aircraft, separation model, instances, schedules.

All times are integer seconds. Everything here is immutable after
construction and safe to share between workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import InstanceFormatError, ModelMismatchError

#: Practically unbounded window edge. Kept far away from int64 overflow even
#: after summing many separations.
OPEN_END = 2**53


class OperationTask(Enum):
    LANDING = "landing"
    TAKEOFF = "takeoff"

    @property
    def code(self) -> int:
        return 0 if self is OperationTask.LANDING else 1


class RunwayMode(Enum):
    SINGLE = "single"
    DUAL = "dual"


@dataclass(frozen=True, order=True)
class WakeClass:
    """Wake-impact category, 1 = heaviest. With six classes, A..F map to 1..6."""

    ordinal: int

    def __post_init__(self):
        if self.ordinal < 1:
            raise InstanceFormatError(f"wake class ordinal must be >= 1, got {self.ordinal}")

    @classmethod
    def from_letter(cls, letter: str) -> "WakeClass":
        if len(letter) != 1 or not ("A" <= letter.upper() <= "Z"):
            raise InstanceFormatError(f"bad wake class letter {letter!r}")
        return cls(ord(letter.upper()) - ord("A") + 1)

    @property
    def letter(self) -> str:
        return chr(ord("A") + self.ordinal - 1)


@dataclass(frozen=True)
class Aircraft:
    """One operation to place: either a landing or a takeoff."""

    id: int
    cls: WakeClass
    task: OperationTask
    window_min: int
    window_max: int
    scheduled: int

    def __post_init__(self):
        if self.window_min > self.window_max:
            raise InstanceFormatError(
                f"aircraft {self.id}: window_min {self.window_min} > window_max {self.window_max}"
            )
        if self.scheduled < 0:
            raise InstanceFormatError(f"aircraft {self.id}: scheduled time must be >= 0")


@dataclass(frozen=True)
class Interruption:
    """Closed interval during which no operation may take place."""

    start: int
    end: int

    def __post_init__(self):
        if self.start >= self.end:
            raise InstanceFormatError("interruption start must be < end")


@dataclass(frozen=True)
class SeparationModel:
    """Pairwise minimum separations plus the constants the validator checks.

    ``landing`` and ``takeoff`` are eta x eta tuples of seconds indexed by
    (leading class - 1, trailing class - 1). Cross-task constants:
    ``same_runway_td`` landing->takeoff and ``same_runway_dt``
    takeoff->landing on one runway; ``dual_pd`` landing->takeoff and
    ``dual_dp`` takeoff->landing on closely spaced dual runways.
    """

    eta: int
    t0: int
    delta: int
    rho1: int
    rho2: int
    landing: tuple[tuple[int, ...], ...]
    takeoff: tuple[tuple[int, ...], ...]
    same_runway_td: int
    same_runway_dt: int
    dual_pd: int
    dual_dp: int
    exception_set_e: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.t0 <= 0:
            raise InstanceFormatError("t0 must be positive")
        for name, mat in (("landing", self.landing), ("takeoff", self.takeoff)):
            if len(mat) != self.eta or any(len(row) != self.eta for row in mat):
                raise InstanceFormatError(f"{name} matrix must be exactly {self.eta}x{self.eta}")
            if any(v < self.t0 for row in mat for v in row):
                raise InstanceFormatError(f"{name} matrix entries must be >= t0")
        if self.dual_pd < 0:
            raise InstanceFormatError("dual_pd must be >= 0")
        for name, v in (
            ("same_runway_td", self.same_runway_td),
            ("same_runway_dt", self.same_runway_dt),
            ("dual_dp", self.dual_dp),
        ):
            if v < self.t0:
                raise InstanceFormatError(f"{name} must be >= t0")

    def check_class(self, cls: WakeClass) -> None:
        if not 1 <= cls.ordinal <= self.eta:
            raise ModelMismatchError(
                f"class ordinal {cls.ordinal} outside 1..{self.eta}"
            )

    def landing_array(self) -> np.ndarray:
        return np.asarray(self.landing, dtype=np.int64)

    def takeoff_array(self) -> np.ndarray:
        return np.asarray(self.takeoff, dtype=np.int64)

    def digest(self) -> str:
        """Stable content key used to name catalog cache files."""
        import hashlib

        blob = json.dumps(
            {
                "eta": self.eta,
                "t0": self.t0,
                "landing": self.landing,
                "takeoff": self.takeoff,
                "td": self.same_runway_td,
                "dt": self.same_runway_dt,
                "pd": self.dual_pd,
                "dp": self.dual_dp,
            },
            sort_keys=True,
        ).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


# Bundled defaults: Heathrow landing separations and RECAT-EU based takeoff
# separations, six classes, all in seconds.
_LANDING_TABLE = (
    (90, 135, 158, 158, 158, 180),
    (90, 90, 113, 113, 135, 158),
    (60, 60, 68, 90, 90, 135),
    (60, 60, 60, 60, 68, 113),
    (60, 60, 60, 60, 68, 90),
    (60, 60, 60, 60, 60, 60),
)

_TAKEOFF_TABLE = (
    (80, 100, 120, 140, 160, 180),
    (80, 80, 100, 100, 120, 140),
    (60, 60, 80, 80, 100, 120),
    (60, 60, 60, 60, 60, 120),
    (60, 60, 60, 60, 60, 100),
    (60, 60, 60, 60, 60, 80),
)


def default_separation_model() -> SeparationModel:
    """The bundled six-class model with its documented constants."""
    return SeparationModel(
        eta=6,
        t0=60,
        delta=8,
        rho1=3,
        rho2=5,
        landing=_LANDING_TABLE,
        takeoff=_TAKEOFF_TABLE,
        same_runway_td=75,
        same_runway_dt=60,
        dual_pd=0,
        dual_dp=60,
        exception_set_e=frozenset({(3, 4), (3, 6)}),
    )


def y_lookup(
    model: SeparationModel,
    mode: RunwayMode,
    leading: Aircraft,
    trailing: Aircraft,
) -> int:
    """Minimum separation (seconds) between a leading and a trailing operation."""
    model.check_class(leading.cls)
    model.check_class(trailing.cls)
    lt, tt = leading.task, trailing.task
    if lt is OperationTask.LANDING and tt is OperationTask.LANDING:
        return model.landing[leading.cls.ordinal - 1][trailing.cls.ordinal - 1]
    if lt is OperationTask.TAKEOFF and tt is OperationTask.TAKEOFF:
        return model.takeoff[leading.cls.ordinal - 1][trailing.cls.ordinal - 1]
    if lt is OperationTask.LANDING:  # landing leads a takeoff
        return model.same_runway_td if mode is RunwayMode.SINGLE else model.dual_pd
    # takeoff leads a landing
    return model.same_runway_dt if mode is RunwayMode.SINGLE else model.dual_dp


def separation_matrix(model: SeparationModel, mode: RunwayMode) -> np.ndarray:
    """Dense (2*eta, 2*eta) separation table indexed by type code.

    Type code = task.code * eta + (class ordinal - 1). The solvers and
    kernels work exclusively off this matrix.
    """
    eta = model.eta
    y = np.zeros((2 * eta, 2 * eta), dtype=np.int64)
    y[:eta, :eta] = model.landing_array()
    y[eta:, eta:] = model.takeoff_array()
    if mode is RunwayMode.SINGLE:
        y[:eta, eta:] = model.same_runway_td
        y[eta:, :eta] = model.same_runway_dt
    else:
        y[:eta, eta:] = model.dual_pd
        y[eta:, :eta] = model.dual_dp
    y.setflags(write=False)
    return y


def apply_interruption(
    aircraft: Aircraft, interruption: Optional[Interruption]
) -> tuple[tuple[int, int], ...]:
    """Window of an aircraft after removing the interrupted period.

    The window is first extended by the interruption's length, then the
    blocked interval is cut out. An interruption that begins only after the
    window has closed leaves it untouched. Returns at most two disjoint
    closed integer intervals, earliest first; an empty tuple marks the
    aircraft as unschedulable.
    """
    lo, hi = aircraft.window_min, aircraft.window_max
    if interruption is None or interruption.start > hi:
        return ((lo, hi),)
    ext_hi = hi + (interruption.end - interruption.start)
    parts = []
    left = (lo, min(ext_hi, interruption.start - 1))
    if left[0] <= left[1]:
        parts.append(left)
    right = (max(lo, interruption.end + 1), ext_hi)
    if right[0] <= right[1]:
        parts.append(right)
    return tuple(parts)


@dataclass(frozen=True)
class Instance:
    """A scheduling problem: aircraft, separations, runway mode."""

    mode: RunwayMode
    aircraft: tuple[Aircraft, ...]
    model: SeparationModel
    interruption: Optional[Interruption] = None

    def __post_init__(self):
        ids = [a.id for a in self.aircraft]
        if len(set(ids)) != len(ids):
            raise InstanceFormatError("aircraft ids must be unique")
        for a in self.aircraft:
            self.model.check_class(a.cls)

    def __len__(self) -> int:
        return len(self.aircraft)

    def effective_windows(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-aircraft windows with the interruption already applied."""
        return tuple(apply_interruption(a, self.interruption) for a in self.aircraft)

    def type_codes(self) -> np.ndarray:
        eta = self.model.eta
        codes = np.array(
            [a.task.code * eta + (a.cls.ordinal - 1) for a in self.aircraft],
            dtype=np.int64,
        )
        codes.setflags(write=False)
        return codes

    def restricted(self, task: OperationTask) -> "Instance":
        """Sub-instance keeping only one operation task (same mode and model)."""
        kept = tuple(a for a in self.aircraft if a.task is task)
        return Instance(self.mode, kept, self.model, self.interruption)


@dataclass(frozen=True)
class Schedule:
    """A sequence with its earliest feasible times and the resulting delays.

    ``order`` holds 0-based indices into ``Instance.aircraft``.
    """

    order: tuple[int, ...]
    times: tuple[int, ...]
    delays: tuple[int, ...]
    objective: int

    def __len__(self) -> int:
        return len(self.order)


class BlockKind(Enum):
    T_BLOCK = "T_block"
    D_BLOCK = "D_block"


@dataclass(frozen=True)
class Block:
    """Maximal mixed-task subsequence ending in one task's run.

    ``span`` is a 1-based inclusive position range. ``length_ratio`` is a
    (numerator, denominator) pair; ``time_increment`` is None when the block
    holds fewer than two aircraft of its ending task.
    """

    kind: BlockKind
    span: tuple[int, int]
    length_ratio: tuple[int, int]
    time_increment: Optional[int]


@dataclass(frozen=True)
class SequenceDiagnostics:
    """Structural facts about one scheduled sequence. Positions are 1-based."""

    relevance_edges: tuple[tuple[int, int], ...]
    breakpoints: tuple[int, ...]
    resident_points: tuple[tuple[int, int], ...]
    transitions: tuple[int, ...]
    blocks: tuple[Block, ...]
    block_violations: tuple[tuple[int, str], ...] = ()
    assumption_notes: tuple[str, ...] = ()

    def path_exists(self, src_pos: int, dst_pos: int) -> bool:
        """True when a chain of tight separations links the two positions.

        ``src_pos`` must not exceed ``dst_pos``; every position reaches itself.
        """
        if src_pos == dst_pos:
            return True
        if src_pos > dst_pos:
            return False
        succ: dict[int, list[int]] = {}
        for i, j in self.relevance_edges:
            succ.setdefault(i, []).append(j)
        stack, seen = [src_pos], {src_pos}
        while stack:
            p = stack.pop()
            for q in succ.get(p, ()):
                if q == dst_pos:
                    return True
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return False


# ---------------------------------------------------------------------------
# JSON instance / schedule formats


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InstanceFormatError(msg)


def model_from_dict(data: dict, t0: Optional[int] = None) -> SeparationModel:
    base = default_separation_model()
    eta = int(data.get("eta", base.eta))
    landing = data.get("landing", base.landing if eta == base.eta else None)
    takeoff = data.get("takeoff", base.takeoff if eta == base.eta else None)
    _require(landing is not None and takeoff is not None,
             "separations override with eta != 6 must provide both matrices")
    return SeparationModel(
        eta=eta,
        t0=int(data.get("t0_s", t0 if t0 is not None else base.t0)),
        delta=int(data.get("delta_s", base.delta)),
        rho1=int(data.get("rho1", base.rho1)),
        rho2=int(data.get("rho2", base.rho2)),
        landing=tuple(tuple(int(v) for v in row) for row in landing),
        takeoff=tuple(tuple(int(v) for v in row) for row in takeoff),
        same_runway_td=int(data.get("same_runway_td", base.same_runway_td)),
        same_runway_dt=int(data.get("same_runway_dt", base.same_runway_dt)),
        dual_pd=int(data.get("dual_pd", base.dual_pd)),
        dual_dp=int(data.get("dual_dp", base.dual_dp)),
        exception_set_e=frozenset(
            tuple(p) for p in data.get("exception_set", sorted(base.exception_set_e))
        ),
    )


def instance_from_dict(data: dict) -> Instance:
    _require(isinstance(data, dict), "instance file must hold a JSON object")
    _require("mode" in data, "missing 'mode'")
    _require(data["mode"] in ("single", "dual"), f"bad mode {data.get('mode')!r}")
    mode = RunwayMode(data["mode"])
    t0 = int(data.get("t0_s", 60))
    model = model_from_dict(data.get("separations", {}), t0=t0)
    _require("aircraft" in data and isinstance(data["aircraft"], list), "missing 'aircraft' list")
    aircraft = []
    for row in data["aircraft"]:
        _require(isinstance(row, dict), "each aircraft must be an object")
        for key in ("id", "class", "task", "window_min_s", "window_max_s", "scheduled_s"):
            _require(key in row, f"aircraft missing '{key}'")
        _require(row["task"] in ("landing", "takeoff"), f"bad task {row['task']!r}")
        aircraft.append(
            Aircraft(
                id=int(row["id"]),
                cls=WakeClass.from_letter(str(row["class"])),
                task=OperationTask(row["task"]),
                window_min=int(row["window_min_s"]),
                window_max=int(row["window_max_s"]),
                scheduled=int(row["scheduled_s"]),
            )
        )
    interruption = None
    if data.get("interruption") is not None:
        irr = data["interruption"]
        _require("start_s" in irr and "end_s" in irr, "interruption needs start_s and end_s")
        interruption = Interruption(int(irr["start_s"]), int(irr["end_s"]))
    return Instance(mode, tuple(aircraft), model, interruption)


def instance_to_dict(instance: Instance) -> dict:
    out: dict = {
        "mode": instance.mode.value,
        "t0_s": instance.model.t0,
        "aircraft": [
            {
                "id": a.id,
                "class": a.cls.letter,
                "task": a.task.value,
                "window_min_s": a.window_min,
                "window_max_s": a.window_max,
                "scheduled_s": a.scheduled,
            }
            for a in instance.aircraft
        ],
    }
    if instance.interruption is not None:
        out["interruption"] = {
            "start_s": instance.interruption.start,
            "end_s": instance.interruption.end,
        }
    default = default_separation_model()
    m = instance.model
    if (m.landing, m.takeoff, m.same_runway_td, m.same_runway_dt, m.dual_pd, m.dual_dp, m.eta) != (
        default.landing,
        default.takeoff,
        default.same_runway_td,
        default.same_runway_dt,
        default.dual_pd,
        default.dual_dp,
        default.eta,
    ):
        out["separations"] = {
            "eta": m.eta,
            "t0_s": m.t0,
            "delta_s": m.delta,
            "rho1": m.rho1,
            "rho2": m.rho2,
            "landing": [list(r) for r in m.landing],
            "takeoff": [list(r) for r in m.takeoff],
            "same_runway_td": m.same_runway_td,
            "same_runway_dt": m.same_runway_dt,
            "dual_pd": m.dual_pd,
            "dual_dp": m.dual_dp,
            "exception_set": [list(p) for p in sorted(m.exception_set_e)],
        }
    return out


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


def schedule_to_dict(
    instance: Instance,
    schedule: Schedule,
    diagnostics: Optional[SequenceDiagnostics] = None,
) -> dict:
    out: dict = {
        "order": [instance.aircraft[i].id for i in schedule.order],
        "times_s": list(schedule.times),
        "delays_s": list(schedule.delays),
        "objective_s": schedule.objective,
    }
    if diagnostics is not None:
        out["diagnostics"] = {
            "relevance_edges": [list(e) for e in diagnostics.relevance_edges],
            "breakpoints": list(diagnostics.breakpoints),
            "resident_points": [list(r) for r in diagnostics.resident_points],
            "transitions": list(diagnostics.transitions),
            "blocks": [
                {
                    "kind": b.kind.value,
                    "span": list(b.span),
                    "length_ratio": list(b.length_ratio),
                    "time_increment": b.time_increment,
                }
                for b in diagnostics.blocks
            ],
            "block_violations": [[p, msg] for p, msg in diagnostics.block_violations],
            "assumption_notes": list(diagnostics.assumption_notes),
        }
    return out
