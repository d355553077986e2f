#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three array kernels on the split primes below a bound, plus a pure
Python per-element baseline, and optionally an end-to-end density experiment
per backend (each in a subprocess so RADSYM_BACKEND takes effect at import).

    python3 benchmarks/bench_kernels.py --bound 2000000 --end-to-end
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from radsym import kernels


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def python_powmod(base, exp, mod):
    return [pow(int(b), int(e), int(m)) for b, e, m in zip(base, exp, mod)]


def bench_kernels(bound: int, l: int) -> None:
    primes = kernels.sieve_primes(bound)
    primes = primes[primes % l == 1]
    exps = (primes - 1) // l
    base = np.full(primes.size, 2, dtype=np.int64)
    print(f"split primes <= {bound}: {primes.size} lanes (l = {l})")

    rows = []
    variants = [("numpy", kernels.powmod_numpy, kernels.unity_roots_numpy,
                 kernels.exponent_lookup_numpy)]
    if kernels.HAVE_NUMBA:
        variants.append(("numba", kernels.powmod_numba, kernels.unity_roots_numba,
                         kernels.exponent_lookup_numba))
        # trigger compilation outside the timed region
        kernels.powmod_numba(base[:8], exps[:8], primes[:8])
        kernels.unity_roots_numba(primes[:8], l)

    roots = kernels.unity_roots_numpy(primes, l)
    col = np.ascontiguousarray(roots[:, 0])
    values = kernels.powmod_numpy(base, exps, primes)
    for name, powmod, unity_roots, lookup in variants:
        rows.append((f"powmod/{name}", timeit(lambda: powmod(base, exps, primes))))
        rows.append((f"unity_roots/{name}", timeit(lambda: unity_roots(primes, l))))
        rows.append((f"exponent_lookup/{name}",
                     timeit(lambda: lookup(values, col, primes, l))))
    rows.append(("powmod/python", timeit(lambda: python_powmod(base, exps, primes), 1)))

    width = max(len(name) for name, _ in rows)
    for name, seconds in rows:
        print(f"  {name:<{width}}  {seconds * 1e3:9.2f} ms")


def bench_end_to_end(bound: int) -> None:
    script = (
        "import time\n"
        "from radsym import normalize_inputs, density_experiment, kernels\n"
        "t0 = time.perf_counter()\n"
        f"rep = density_experiment(normalize_inputs(3, [2, 5]), (0, 0), {bound})\n"
        "dt = time.perf_counter() - t0\n"
        "print(f'{kernels.BACKEND}: {dt:.3f}s  ideals={rep.ideals_scanned} "
        "matches={rep.matches}')\n"
    )
    print(f"density_experiment end to end (bound {bound}):")
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    for backend in backends:
        env = dict(os.environ, RADSYM_BACKEND=backend)
        proc = subprocess.run([sys.executable, "-c", script],
                              capture_output=True, text=True, env=env)
        sys.stdout.write("  " + (proc.stdout or proc.stderr))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=2_000_000)
    parser.add_argument("-l", type=int, default=3)
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args()
    bench_kernels(args.bound, args.l)
    if args.end_to_end:
        bench_end_to_end(args.bound)


if __name__ == "__main__":
    main()
