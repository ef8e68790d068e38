"""Compare the numba and pure-numpy kernel backends.

Kernel timings call both implementations directly in one process.  The
end-to-end timings run the CLI in subprocesses with and without
SDCODES_NO_NUMBA=1, so each backend is exercised exactly as a user would.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--skip-cli]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from sdcodes import _kernels as K
from sdcodes.cli import fixture_path
from sdcodes.gf2core import read_matrix


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def kernel_cases():
    m = read_matrix(fixture_path("c38_342.txt"))
    rows = K.as_words(m.rows)
    cols = []
    for j in range(m.n):
        col = 0
        for i, r in enumerate(m.rows):
            if (r >> j) & 1:
                col |= 1 << i
        cols.append(col)
    cols = K.as_words(cols)
    off = np.uint64(1)
    return [
        ("span_words   [38,19] 2^19", lambda: K._span_words_np(rows, off), lambda: K._span_words_nb(rows, off)),
        ("weight_hist  [38,19] 2^19", lambda: K._weight_hist_np(rows, off, 38), lambda: K._weight_hist_nb(rows, off, 38)),
        ("min_weight   [38,19] 2^19", lambda: K._min_weight_np(rows, np.uint64(0), -1),
         lambda: K._min_weight_nb(rows, np.uint64(0), -1)),
        ("coset BFS    2^19 syndromes", lambda: K._coset_leaders_np(cols, 19), lambda: K._coset_leaders_nb(cols, 19)),
    ]


def run_cli(args: list[str], numba: bool) -> float:
    env = dict(os.environ)
    if numba:
        env.pop("SDCODES_NO_NUMBA", None)
    else:
        env["SDCODES_NO_NUMBA"] = "1"
    t = time.perf_counter()
    subprocess.run([sys.executable, "-m", "sdcodes", *args], env=env, check=True, capture_output=True)
    return time.perf_counter() - t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-cli", action="store_true")
    args = ap.parse_args()

    print(f"backend in this process: {K.BACKEND}")
    if not K.HAVE_NUMBA:
        print("numba unavailable or disabled; only the numpy path can be timed")
        return
    print(f"{'kernel':30s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, f_np, f_nb in kernel_cases():
        f_nb()  # compile outside the timing
        assert np.array_equal(np.asarray(f_np()), np.asarray(f_nb()))
        t_np, t_nb = best_of(f_np, args.repeat), best_of(f_nb, args.repeat)
        print(f"{name:30s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")

    if args.skip_cli:
        return
    print()
    print(f"{'end to end (subprocess)':30s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    jobs = [
        ("analyze c38_342", ["analyze", "fixtures/c38_342.txt"]),
        ("classify n=16", ["classify", "16"]),
    ]
    for name, cli_args in jobs:
        run_cli(cli_args, True)  # warm the numba cache
        t_np = min(run_cli(cli_args, False) for _ in range(args.repeat))
        t_nb = min(run_cli(cli_args, True) for _ in range(args.repeat))
        print(f"{name:30s} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
