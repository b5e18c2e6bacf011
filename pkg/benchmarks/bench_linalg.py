"""Compare the compiled and pure-Python elimination kernels.

Run with ``python3 benchmarks/bench_linalg.py``.  Each workload is timed on
both backends and the outputs are checked to be identical.
"""

from __future__ import annotations

import argparse
import random
import timeit

from cybiv import linalg
from cybiv.sections import section_basis, weight_space
from cybiv.threefold import ThreefoldSpec


def random_rows(seed: int, n: int, m: int, density: float = 0.3):
    rng = random.Random(seed)
    return [{j: rng.randint(-9, 9) or 1 for j in range(m) if rng.random() < density} for _ in range(n)]


def workloads():
    small = [random_rows(seed, 12, 12) for seed in range(300)]
    yield "rref 300 x (12x12)", lambda: [linalg.rref_int(r) for r in small]
    # entries outgrow 64 bits here, so the compiled kernel hands over to Python
    rows = random_rows(1, 80, 90)
    yield "rref 80x90", lambda: linalg.rref_int(rows)

    def sections():
        weight_space.cache_clear()
        return [b.q for b in section_basis(ThreefoldSpec(3, -1), 8)]

    yield "sections W3 n=8", sections


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = linalg.available_backends()
    before = linalg.backend()
    print(f"backends: {', '.join(backends)}")
    try:
        for name, fn in workloads():
            results, times = {}, {}
            for b in backends:
                linalg.set_backend(b)
                results[b] = fn()
                times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            first = next(iter(results.values()))
            same = all(r == first for r in results.values())
            line = ", ".join(f"{b} {t * 1e3:.1f} ms" for b, t in times.items())
            if "compiled" in times:
                line += f", speedup {times['python'] / times['compiled']:.1f}x"
            print(f"{name}: {line}; outputs identical: {same}")
    finally:
        linalg.set_backend(before)
        weight_space.cache_clear()


if __name__ == "__main__":
    main()
