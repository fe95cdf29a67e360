"""Benchmark the compiled kernels against the pure-Python fallback.

Two layers are timed:

* kernel microbenchmarks - both backend modules are importable side by side,
  so the integer-polynomial primitives are timed directly in-process;
* end-to-end verification checks - run in subprocesses so the import-time
  backend selection (TAU_FORGE_PURE) applies to the whole engine.

Run:  python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeat):
    from tau_forge._kernels import _pykernels as pure

    try:
        from tau_forge._kernels import _ckernels as comp
    except ImportError:
        print("compiled kernels unavailable; build with: pip install -e . --no-build-isolation")
        return

    rng = random.Random(0)
    dense_a = {e: rng.randint(-10**6, 10**6) for e in range(120)}
    dense_b = {e: rng.randint(-10**6, 10**6) for e in range(90)}
    prod = pure.ipoly_mul(dense_a, dense_b)

    cases = [
        ("ipoly_mul (deg 120 x 90)", lambda m: m.ipoly_mul(dense_a, dense_b)),
        ("ipoly_gcd (shared factor)", lambda m: m.ipoly_gcd(prod, dense_a)),
        ("ipoly_lin", lambda m: m.ipoly_lin(dense_a, 3, dense_b, -7)),
        ("ipoly_divexact", lambda m: m.ipoly_divexact(prod, dense_b)),
    ]
    print(f"{'kernel':30s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn in cases:
        tp = _time(lambda: fn(pure), repeat)
        tc = _time(lambda: fn(comp), repeat)
        print(f"{name:30s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.2f}x")


END_TO_END = [
    ("lm --j 3/2 --jprime 1", ["verify", "lm", "--j", "3/2", "--jprime", "1"]),
    ("qliouville.suite", ["verify", "qliouville.suite"]),
    ("kp.m4", ["verify", "kp.m4"]),
    ("toda.random", ["verify", "toda.random"]),
]


def bench_end_to_end(repeat):
    print()
    print(f"{'check':30s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, args in END_TO_END:
        times = {}
        for backend, env_extra in (("pure", {"TAU_FORGE_PURE": "1"}), ("compiled", {})):
            env = dict(os.environ)
            env.pop("TAU_FORGE_PURE", None)
            env.update(env_extra)
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                subprocess.run(
                    [sys.executable, "-m", "tau_forge.cli", *args],
                    check=True,
                    env=env,
                    stdout=subprocess.DEVNULL,
                )
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        print(
            f"{name:30s} {times['pure']:9.2f}s {times['compiled']:9.2f}s "
            f"{times['pure'] / times['compiled']:7.2f}x"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    bench_kernels(args.repeat)
    if not args.skip_end_to_end:
        bench_end_to_end(args.repeat)


if __name__ == "__main__":
    main()
