"""Compare the compiled and pure Python row-reduction kernels.

    python benchmarks/bench_rref.py [--repeat N]

Workloads: sparse random 0/+-1 matrices (close to the monomial constraint
systems), a dense case whose entries outgrow int64 so the compiled kernel
hands over to the big-integer one, and the systems the multiplier-ideal
code actually reduces for (y^3+x^5)/x.
"""

import argparse
import random
import timeit

from merogerm import linalg, multiplier
from merogerm.parser import parse_germ
from merogerm.resolution import log_resolution


def random_matrix(rng, rows, cols, density=0.4, span=5):
    return [
        [rng.randint(-span, span) if rng.random() < density else 0 for _ in range(cols)]
        for _ in range(rows)
    ]


def captured_systems():
    """Record every (rows, ncols) passed to the kernel while computing ideals."""
    seen = []
    orig = linalg.rref_int

    def spy(rows, ncols, backend=None):
        seen.append(([list(r) for r in rows], ncols))
        return orig(rows, ncols, backend)

    linalg.rref_int = spy
    try:
        germ = parse_germ("(y^3+x^5)/x")
        res = log_resolution(germ)
        multiplier._CACHE.clear()
        for lam in ("2/3", "11/12", "1", "23/12", "2"):
            multiplier.multiplier_ideal(res, lam, 12, check_stability=False).generators
    finally:
        linalg.rref_int = orig
    return seen


def overflows(systems):
    from merogerm import _rref_c

    n = 0
    for r, c in systems:
        try:
            _rref_c.rref_int(r, c)
        except OverflowError:
            n += 1
    return n


def bench(label, systems, repeat):
    results = {}
    for backend in ("python", "cython"):
        if backend == "cython" and linalg._fast is None:
            print(f"{label:<28} {backend:>7}: not built")
            continue
        t = min(timeit.repeat(
            lambda: [linalg.rref_int(r, n, backend) for r, n in systems], number=1, repeat=repeat
        ))
        results[backend] = t
        print(f"{label:<28} {backend:>7}: {t * 1e3:9.2f} ms")
    if len(results) == 2:
        print(f"{label:<28} speedup: {results['python'] / results['cython']:.1f}x"
              f"  (int64 overflow in {overflows(systems)}/{len(systems)})")
    # both kernels must agree
    if linalg._fast is not None:
        for r, n in systems:
            assert linalg.rref_int(r, n, "python") == linalg.rref_int(r, n, "cython")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"default backend: {linalg.BACKEND}")
    for size, density in ((20, 0.15), (40, 0.1), (80, 0.05), (160, 0.03)):
        systems = [(random_matrix(rng, size, size + 10, density, 1), size + 10) for _ in range(5)]
        bench(f"sparse {size}x{size + 10} (x5)", systems, args.repeat)
    systems = [(random_matrix(rng, 20, 30), 30) for _ in range(5)]
    bench("dense 20x30 (x5)", systems, args.repeat)
    systems = captured_systems()
    bench(f"multiplier systems ({len(systems)})", systems, args.repeat)


if __name__ == "__main__":
    main()
