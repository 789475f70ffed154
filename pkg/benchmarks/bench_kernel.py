"""Compare the compiled truth-table kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

from glc import kernel
from glc.generator import generate
from glc.reducer import normalize
from glc.semantics import compile_normal, frame_variables, space_of


def workload(bits: int, count: int = 20):
    """Programs for generated normal forms, evaluated over `bits` variables
    (the unused ones only widen the table)."""
    out = []
    seed = 0
    while len(out) < count:
        n = normalize(generate(seed, 20, 3, True))
        seed += 1
        pairs, depth = space_of([n])
        if len(pairs) * depth > bits:
            continue
        index = {v: j for j, v in enumerate(frame_variables(pairs, depth))}
        out.append((compile_normal(n, index), bits))
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernel.truth_table_compiled is None:
        print("compiled kernel not built; only the fallback is available")
    print(f"{'bits':>4}  {'python ms':>10}  {'compiled ms':>11}  {'speedup':>7}")
    for bits in (8, 12, 16, 20):
        progs = workload(bits)
        for prog, nv in progs:
            if kernel.truth_table_compiled is not None:
                assert kernel.truth_table_compiled(prog, nv) == kernel.truth_table_py(prog, nv)
        py = min(timeit.repeat(lambda: [kernel.truth_table_py(p, n) for p, n in progs],
                               number=1, repeat=args.repeat)) * 1000
        if kernel.truth_table_compiled is None:
            print(f"{bits:>4}  {py:>10.2f}  {'-':>11}  {'-':>7}")
            continue
        c = min(timeit.repeat(lambda: [kernel.truth_table_compiled(p, n) for p, n in progs],
                              number=1, repeat=args.repeat)) * 1000
        print(f"{bits:>4}  {py:>10.2f}  {c:>11.2f}  {py / c:>6.1f}x")


if __name__ == "__main__":
    main()
