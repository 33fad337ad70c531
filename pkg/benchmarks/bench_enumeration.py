"""Benchmark the rule-space sweep: numba kernel vs pure-numpy fallback.

Usage: python benchmarks/bench_enumeration.py [--workers N]

Times every quota of each listed space with both implementations and
prints the speedup. The numba timings exclude the one-off JIT compile
(first call warms the kernel).
"""

import argparse
import time

from qmvote import _kernels
from qmvote.verifier import survivors_anonymous, survivors_full

CASES = [
    ("full n=2", lambda q, use_numba, workers: survivors_full(2, q, use_numba=use_numba, workers=workers), range(3)),
    ("anonymous n=4", lambda q, use_numba, workers: survivors_anonymous(4, q, use_numba=use_numba, workers=workers), range(5)),
    ("anonymous n=5", lambda q, use_numba, workers: survivors_anonymous(5, q, use_numba=use_numba, workers=workers), range(6)),
]


def time_case(runner, quotas, use_numba, workers):
    start = time.perf_counter()
    for q in quotas:
        runner(q, use_numba, workers)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path will run")

    print(f"{'case':<16}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for name, runner, quotas in CASES:
        numpy_s = time_case(runner, quotas, False, args.workers)
        if _kernels.HAVE_NUMBA:
            runner(0, True, args.workers)  # warm the jit
            numba_s = time_case(runner, quotas, True, args.workers)
            print(f"{name:<16}{numpy_s:>11.3f}s{numba_s:>11.3f}s{numpy_s / numba_s:>9.1f}x")
        else:
            print(f"{name:<16}{numpy_s:>11.3f}s{'-':>12}{'-':>10}")

    # results must agree regardless of path
    if _kernels.HAVE_NUMBA:
        for q in range(6):
            a = survivors_anonymous(5, q, use_numba=True, workers=args.workers)
            b = survivors_anonymous(5, q, use_numba=False, workers=args.workers)
            assert a == b, f"paths disagree at q={q}"
        print("paths agree on every n=5 quota")


if __name__ == "__main__":
    main()
