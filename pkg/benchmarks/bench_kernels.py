"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Both kernels run on the same inputs and their outputs are compared before
any timing is reported.
"""
import argparse
import random
import sys
import time
from itertools import combinations

from immaculate import _pykernels
from immaculate.linalg import elementary_divisors

try:
    from immaculate import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def boundary_rows(n_vertices, dim, rng, density=0.35):
    """Sparse boundary matrix of a random pure complex, as row dicts."""
    faces = [f for f in combinations(range(n_vertices), dim + 1) if rng.random() < density]
    lower = sorted({g for f in faces for g in combinations(f, dim)})
    index = {g: i for i, g in enumerate(lower)}
    rows = []
    for f in faces:
        row = {}
        for k in range(len(f)):
            row[index[f[:k] + f[k + 1:]]] = -1 if k % 2 else 1
        rows.append(row)
    return rows, len(lower)


def random_digraph(n, p, rng):
    out = []
    for i in range(n):
        m = 0
        for j in range(n):
            if i != j and rng.random() < p:
                m |= 1 << j
        out.append(m)
    return out


def divisors(count, rest):
    """Elementary divisors after unit elimination: ``count`` ones plus those of the rest."""
    cols = sorted({c for r in rest for c in r})
    dense = [[r.get(c, 0) for c in cols] for r in rest]
    tail = elementary_divisors(dense) if cols and dense else ()
    return sorted((1,) * count + tuple(tail))


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run: pip install -e . --no-build-isolation", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    cases = []
    for nv, d in [(12, 2), (14, 3), (16, 3)]:
        rows, ncols = boundary_rows(nv, d, rng)
        cases.append((f"unit_eliminate {len(rows)}x{ncols}", "unit_eliminate", (rows, ncols)))
    for n, p, length in [(40, 0.5, 5), (80, 0.35, 5), (130, 0.25, 5)]:
        out = random_digraph(n, p, rng)
        cases.append((f"extend_sequences n={n} len={length}", "extend_sequences", (out, 0, length)))

    print(f"{'case':<36}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for label, name, data in cases:
        def call(mod):
            if name == "unit_eliminate":
                rows, ncols = data
                return mod.unit_eliminate([dict(r) for r in rows], ncols)
            return sorted(tuple(s) for s in mod.extend_sequences(*data))

        tp, rp = best_of(lambda: call(_pykernels), args.repeat)
        tc, rc = best_of(lambda: call(_ckernels), args.repeat)
        same = divisors(*rp) == divisors(*rc) if name == "unit_eliminate" else rp == rc
        if not same:
            raise SystemExit(f"{label}: kernels disagree")
        print(f"{label:<36}{tp * 1e3:>14.2f}{tc * 1e3:>14.2f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
