"""Time the numba kernels against the pure-numpy fallback.

For a sample of parents on one enumeration level, both backends compute
the one-point extensions and their canonical codes; results must match.

    python3 benchmarks/bench_kernels.py --level 4 --sample 60
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from mhgalg import kernels
from mhgalg.enumeration import enumerate_codes
from mhgalg.metric import from_code
from mhgalg.params import ParameterSequence


def run(backend, parents, p):
    out = []
    t0 = time.perf_counter()
    for D in parents:
        rows = backend.extension_rows(D, p.allowed_table, p.delta)
        out.append(backend.canon_batch(D, rows) if len(rows) else rows)
    return time.perf_counter() - t0, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, default=4, help="parents are the types of this size")
    ap.add_argument("--sample", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if kernels.numba_impl is None:
        raise SystemExit("numba is not available (or disabled by MHGALG_DISABLE_NUMBA)")
    p = ParameterSequence(3, 1, 3, 10, 11)
    codes = enumerate_codes(p, args.level)
    rng = random.Random(args.seed)
    chosen = rng.sample(codes, min(args.sample, len(codes)))
    parents = [np.ascontiguousarray(from_code(c).matrix) for c in chosen]

    run(kernels.numba_impl, parents[:1], p)  # JIT warm-up
    t_numba, a = run(kernels.numba_impl, parents, p)
    t_numpy, b = run(kernels.numpy_impl, parents, p)
    same = all(np.array_equal(x, y) for x, y in zip(a, b))
    n_rows = sum(len(x) for x in a)
    print(f"parents={len(parents)} (size {args.level}) extensions={n_rows}")
    print(f"numba  {t_numba:8.3f}s")
    print(f"numpy  {t_numpy:8.3f}s")
    print(f"speedup {t_numpy / max(t_numba, 1e-9):.1f}x  identical={same}")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
