import numpy as np
import pytest

from runwaysched import _kernels
from runwaysched.bench import GenSpec, generate_instance
from runwaysched.model import (
    Aircraft,
    Instance,
    OperationTask,
    RunwayMode,
    WakeClass,
    default_separation_model,
)

BIG = 10**9


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    _kernels.warmup()


@pytest.fixture(scope="session")
def model():
    return default_separation_model()


def ac(i, letter, task, wmin=0, wmax=BIG, p=0):
    return Aircraft(
        id=i,
        cls=WakeClass.from_letter(letter),
        task=OperationTask(task),
        window_min=wmin,
        window_max=wmax,
        scheduled=p,
    )


def landings(*letters, model=None, wmin=0, p=0):
    m = model or default_separation_model()
    return Instance(
        RunwayMode.SINGLE,
        tuple(ac(i + 1, c, "landing", wmin=wmin, p=p) for i, c in enumerate(letters)),
        m,
    )


def takeoffs(*letters, model=None, wmin=0, p=0):
    m = model or default_separation_model()
    return Instance(
        RunwayMode.SINGLE,
        tuple(ac(i + 1, c, "takeoff", wmin=wmin, p=p) for i, c in enumerate(letters)),
        m,
    )


def spread_instance(seed, n, mix, mode=RunwayMode.SINGLE, t_e=20, t_w=60):
    """Random instance following the benchmark generation rules."""
    task_mix = {"landing": "landing_only", "takeoff": "takeoff_only"}.get(mix, mix)
    if mode is RunwayMode.DUAL:
        task_mix = "dual"
    spec = GenSpec(count=n, task_mix=task_mix, t_e=t_e, t_w=t_w, seed=seed)
    return generate_instance(spec)


def rng_sizes(seed, count, lo, hi):
    rng = np.random.default_rng(seed)
    return [int(v) for v in rng.integers(lo, hi + 1, size=count)]
