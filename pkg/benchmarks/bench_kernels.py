"""Compare the compiled and pure-Python kernels on exhaustive rank scans.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from drinfeld_semifields import constructions as C
from drinfeld_semifields import kernels
from drinfeld_semifields.codes import expand_matrix


def _cases():
    yield "recipe q=2 n=3 (63 words)", C.recipe_tau_n(2, 3, (1, 1, 1), nuclear=False).code
    yield "worked example (80 words)", C.worked_example(nuclear=False).code
    yield "two_term q=2 r=3 (63 words)", C.two_term(2, 3, 1, 1, (1, 1, 1), nuclear=False).code
    rng = np.random.default_rng(0)
    yield "random 8x8 over F_2, k=12", rng.integers(0, 2, (12, 8, 8)), 2
    yield "random 6x6 over F_3, k=8", rng.integers(0, 3, (8, 6, 6)), 3


def _stack(case):
    if len(case) == 3:
        _, basis, p = case
        return np.ascontiguousarray(basis, dtype=np.int64), p
    code = case[1]
    return np.ascontiguousarray(expand_matrix(code.F, code.fq_span()), dtype=np.int64), code.p


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = kernels.backends()
    print(f"available backends: {', '.join(impls)}  (import selected {kernels.BACKEND})")
    header = f"{'case':32s}" + "".join(f"{name:>12s}" for name in impls) + "   speedup"
    print(header)
    for case in _cases():
        basis, p = _stack(case)
        row = {}
        results = set()
        for name, impl in impls.items():
            row[name] = best_of(lambda: impl.gray_scan(basis, p, 0), args.repeat)
            mr, deficient, _, scanned = impl.gray_scan(basis, p, 0)
            results.add((mr, deficient, scanned))
        assert len(results) == 1, f"backends disagree on {case[0]}: {results}"
        line = f"{case[0]:32s}" + "".join(f"{row[n] * 1e3:10.2f}ms" for n in impls)
        if "compiled" in row:
            line += f"   {row['python'] / row['compiled']:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
