"""Configuration, statistics, and result types shared by both solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .model import Schedule


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the search; defaults give the fastest exact behaviour.

    ``prune`` is the master switch: off, every screen below is ignored and
    all candidates are force-evaluated. The individual toggles exist so the
    soundness of each screen can be tested in isolation.
    """

    prune: bool = True
    insertion_bound: bool = True
    nondelayed_screen: bool = True
    shift_lock: bool = True
    merge_screen: bool = True
    workers: int = 1
    beam: int = 0  # 0 = pick from instance size
    exact_sweep_cap: int = 9

    def effective(self, name: str) -> bool:
        return self.prune and getattr(self, name)

    def beam_width(self, n: int) -> int:
        if self.beam > 0:
            return self.beam
        if n <= 10:
            return 24
        if n <= 16:
            return 12
        if n <= 30:
            return 4
        return 2


@dataclass
class SolverStats:
    candidates_generated: int = 0
    candidates_pruned: int = 0
    incumbent_history: list = field(default_factory=list)
    step_wall_times: list = field(default_factory=list)

    def merge(self, other: "SolverStats") -> None:
        self.candidates_generated += other.candidates_generated
        self.candidates_pruned += other.candidates_pruned
        self.incumbent_history.extend(other.incumbent_history)
        self.step_wall_times.extend(other.step_wall_times)


@dataclass(frozen=True)
class SearchBounds:
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"bounds crossed: {self.lower} > {self.upper}")


@dataclass(frozen=True)
class Solution:
    schedule: Schedule
    objective: int
    stats: SolverStats
    bounds: Optional[SearchBounds] = None
    certificate: bool = False
