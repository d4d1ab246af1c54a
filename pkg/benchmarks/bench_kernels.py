"""Benchmark the compiled blade-product kernels against the pure fallback.

Two views:
  * microbenchmark - raw wedge/Clifford dense products on full coefficient
    tables at several dimensions, timing fermialg._kernels (if built) next
    to fermialg._kernels_py on identical inputs;
  * end to end - expectation and ordering-map evaluation on random dense
    elements, run in subprocesses once per kernel selection (the selection
    happens at import, driven by FERMIALG_PURE_KERNELS).

Usage: python benchmarks/bench_kernels.py [--repeats N] [--dims 6 8 10]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

_END_TO_END = r"""
import json, random, sys, time
from fermialg import FloatField, Multivector, OrderingContext, kernel_backend, standard_structure
from fermialg.verify import random_multivector

m = int(sys.argv[1])
trials = int(sys.argv[2])
field = FloatField(1e-9)
structure, basis = standard_structure(m)
ctx = OrderingContext(structure, basis, field)
rng = random.Random(99)
elements = [random_multivector(2 * m, field, rng, density=0.5) for _ in range(trials)]
start = time.perf_counter()
for zeta in elements:
    ctx.expectation(zeta)
    ctx.nu(zeta).trace()
elapsed = time.perf_counter() - start
print(json.dumps({"backend": kernel_backend(), "m": m, "trials": trials, "seconds": elapsed}))
"""


def _random_tables(rng, dim):
    n = 1 << dim
    masks = np.arange(n, dtype=np.int64)
    vals = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    return masks, vals.astype(np.complex128)


def micro(dims, repeats):
    from fermialg import _accel, _kernels_py

    impls = [("python", _kernels_py)]
    if _accel.COMPILED:
        from fermialg import _kernels

        impls.insert(0, ("compiled", _kernels))
    else:
        print("note: compiled kernels not built; showing the fallback only")

    rng = np.random.default_rng(7)
    print(f"{'kernel':<16}{'dim':>4}{'backend':>10}{'best (ms)':>12}{'speedup':>9}")
    for dim in dims:
        masks, vals = _random_tables(rng, dim)
        for fn_name in ("wedge_dense", "clifford_dense"):
            timings = {}
            for label, module in impls:
                fn = getattr(module, fn_name)
                timings[label] = min(
                    _time_once(fn, masks, vals, dim) for _ in range(repeats)
                )
            for label, best in timings.items():
                speedup = ""
                if label == "compiled":
                    speedup = f"{timings['python'] / best:8.1f}x"
                print(f"{fn_name:<16}{dim:>4}{label:>10}{best * 1e3:>12.3f}{speedup:>9}")


def _time_once(fn, masks, vals, dim):
    start = time.perf_counter()
    fn(masks, vals, masks, vals, dim)
    return time.perf_counter() - start


def end_to_end(m, trials):
    rows = []
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("FERMIALG_PURE_KERNELS", None)
        if pure:
            env["FERMIALG_PURE_KERNELS"] = "1"
        proc = subprocess.run(
            [sys.executable, "-c", _END_TO_END, str(m), str(trials)],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            print(proc.stderr, file=sys.stderr)
            raise SystemExit(1)
        rows.append(json.loads(proc.stdout))
    print(
        f"\nexpectation + ordering map, M={m}, {trials} random dense elements:"
    )
    for row in rows:
        print(f"  {row['backend']:>9}: {row['seconds']:.3f}s")
    if rows[0]["backend"] != rows[1]["backend"]:
        print(f"  speedup: {rows[1]['seconds'] / rows[0]['seconds']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--dims", type=int, nargs="+", default=[6, 8, 10])
    parser.add_argument("--m", type=int, default=4, help="M for the end-to-end pass")
    parser.add_argument("--trials", type=int, default=300)
    args = parser.parse_args()
    micro(args.dims, args.repeats)
    end_to_end(args.m, args.trials)


if __name__ == "__main__":
    main()
