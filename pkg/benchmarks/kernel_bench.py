#!/usr/bin/env python3
"""Compare the jitted kernels against the NumPy fallback.

Runs the same workloads twice in subprocesses, once per backend (selected
with RUNWAYSCHED_NO_NUMBA), checks that results agree bit for bit, and
prints a timing table.

    python benchmarks/kernel_bench.py [--trials N]
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json
import time

import numpy as np

import runwaysched._kernels as kernels
from runwaysched.bench import GenSpec, generate_instance
from runwaysched.single_runway import solve_single_runway
from runwaysched.solving import SolverConfig

trials = int(__import__("sys").argv[1])
kernels.warmup()
out = {"backend": kernels.backend_name(), "timings": {}, "checks": {}}


def timed(name, fn, repeat=trials):
    best = None
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    out["timings"][name] = best
    return value

inst = generate_instance(GenSpec(count=50, task_mix="landing_only", t_e=20, t_w=60, seed=7))
packed = kernels.pack(inst)
order = np.arange(50, dtype=np.int64)

v = timed("forward_pass_n50", lambda: kernels.forward_times(order, packed)[2])
out["checks"]["forward_pass_n50"] = int(v)

rng = np.random.default_rng(0)
orders = np.stack([rng.permutation(50) for _ in range(2000)]).astype(np.int64)
v = timed("batch_eval_2000x50", lambda: int(kernels.eval_orders(orders, packed).min()))
out["checks"]["batch_eval_2000x50"] = v

delayed = np.ones(50, dtype=bool)
f0 = int(kernels.forward_times(order, packed)[2])
v = timed(
    "move_scan_n50",
    lambda: kernels.best_move(order, packed, f0, delayed)[2],
)
out["checks"]["move_scan_n50"] = int(v)

small = generate_instance(GenSpec(count=9, task_mix="mixed", t_e=20, t_w=60, seed=3))
sp = kernels.pack(small)
v = timed("brute_force_9", lambda: kernels.brute_force_search(sp)[0], repeat=max(1, trials // 2))
out["checks"]["brute_force_9"] = int(v)

v = timed(
    "solve_single_n30",
    lambda: solve_single_runway(
        generate_instance(GenSpec(count=30, task_mix="mixed", t_e=20, t_w=60, seed=5)),
        SolverConfig(),
    ).objective,
    repeat=max(1, trials // 2),
)
out["checks"]["solve_single_n30"] = int(v)

print(json.dumps(out))
"""


def run_backend(disable_numba: bool, trials: int) -> dict:
    env = dict(os.environ)
    env["RUNWAYSCHED_NO_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", _WORKER, str(trials)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=3)
    args = parser.parse_args()

    fast = run_backend(disable_numba=False, trials=args.trials)
    slow = run_backend(disable_numba=True, trials=args.trials)
    print(f"backends: {fast['backend']} vs {slow['backend']}\n")
    mismatched = [k for k in fast["checks"] if fast["checks"][k] != slow["checks"][k]]
    if mismatched:
        print("RESULT MISMATCH:", mismatched)
        return 1
    print(f"{'workload':<24}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for key, t_fast in fast["timings"].items():
        t_slow = slow["timings"][key]
        ratio = t_slow / t_fast if t_fast > 0 else float("inf")
        print(f"{key:<24}{t_fast:>11.4f}s{t_slow:>11.4f}s{ratio:>9.1f}x")
    print("\nall workload results identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
