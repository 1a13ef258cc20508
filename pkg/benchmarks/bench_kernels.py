"""Time the compiled zero-sum kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row reports the best wall time per backend and the speedup.  The
two backends are also checked for identical results on every case.
"""
import argparse
import time

from orderscope import _kernels
from orderscope.abelian import parse_group

CASES = [
    ("max_zero_sum_free", "12"),
    ("max_zero_sum_free", "3,3"),
    ("max_zero_sum_free", "2,2,2"),
    ("max_zero_sum_free", "2,4"),
    ("max_zero_sum_free", "4,4"),
    ("max_zero_sum_free", "2,2,2,2"),
    ("max_zero_sum_free", "3,6"),
    ("max_zero_sum_free", "5,5"),
    ("zero_sum_free_sequences", "3,3"),
    ("zero_sum_free_sequences", "7"),
    ("zero_sum_free_sequences", "2,2,2,2"),
]


def run(backend, name, group):
    G = parse_group(group)
    add, neg, n = G.addition_table, G.negation_table, G.order
    if name == "max_zero_sum_free":
        return backend.max_zero_sum_free(add, neg, n)[0]
    return len(backend.zero_sum_free_sequences(add, neg, n, 5))


def best_time(backend, name, group, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = run(backend, name, group)
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    cy, py = _kernels.compiled_backend, _kernels.python_backend
    if cy is None:
        print("compiled backend not built; only the Python timings are shown")
    print(f"{'kernel':<26}{'group':<8}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, group in CASES:
        tp, rp = best_time(py, name, group, args.repeat)
        if cy is None:
            print(f"{name:<26}{group:<8}{tp:>10.4f}{'-':>10}{'-':>9}")
            continue
        tc, rc = best_time(cy, name, group, args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}({group}): {rp} != {rc}")
        print(f"{name:<26}{group:<8}{tp:>10.4f}{tc:>10.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
