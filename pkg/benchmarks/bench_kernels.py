#!/usr/bin/env python3
"""Benchmark the two kernel backends against each other.

The straightening/Gram kernel ships twice: a Cython extension (``_kernel_c``)
and a pure-Python twin (``_kernel_py``) with the same interface.  This script
times the hot paths of both on identical inputs:

  * ``gram``      -- contravariant Gram matrix of a full candidate block
  * ``rank_int``  -- fraction-free rank of that (integer) Gram matrix
  * ``mul_mono``  -- enveloping-algebra straightening of a word product

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py [--degree 3] [--repeat 3]

A fresh kernel is built for every repetition so memo tables never carry
over between timings; the best of the repeats is reported.
"""

import argparse
import time

from affine_basis import affine, kernels
from affine_basis.cartan import build_c2
from affine_basis.pbw import GEN_C2, HighestWeightSpec, VermaModule


def load_backends():
    backends = {}
    from affine_basis import _kernel_py

    backends["python"] = _kernel_py
    try:
        from affine_basis import _kernel_c

        backends["c"] = _kernel_c
    except ImportError:
        pass
    return backends


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=3,
                    help="degree of the Gram block to time (default 3)")
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per workload; best is kept (default 3)")
    args = ap.parse_args(argv)

    table = build_c2()
    spec = HighestWeightSpec(0, 1, 0)
    module = VermaModule(spec, gens=GEN_C2)
    monos = module.pbw_monomials(args.degree, (1, 0))

    # straightening workload: negative modes pushed through positive ones
    # (the out-of-order direction, so every adjacent pair must be swapped)
    left = tuple(
        sorted(
            (affine.encode(m, b) for m in (-1, -2) for b in (0, 1, 2)),
            reverse=True,
        )
    )
    right = tuple(
        sorted(
            (affine.encode(m, b) for m in (1, 2) for b in (9, 8, 5)),
            reverse=True,
        )
    )

    backends = load_backends()
    print("available backends: %s (default: %s)"
          % (", ".join(backends), kernels.BACKEND))
    print("Gram block: %d monomials at degree %d\n" % (len(monos), args.degree))

    results = {}
    for name, impl in backends.items():
        def make_verma():
            return impl.VermaKernel(
                table.bracket, table.form, table.sigma,
                spec.weight[1], spec.weight[0], spec.level,
            )

        gram_holder = {}

        def run_gram():
            gram_holder["m"] = make_verma().gram(monos)

        t_gram = best_of(args.repeat, run_gram)
        int_gram = [[int(x) for x in row] for row in gram_holder["m"]]
        t_rank = best_of(args.repeat, lambda: impl.rank_int(int_gram))
        t_mul = best_of(
            args.repeat,
            lambda: impl.UKernel(table.bracket, table.form).mul_mono(left, right),
        )
        results[name] = {
            "gram %dx%d" % (len(monos), len(monos)): t_gram,
            "rank_int of that Gram": t_rank,
            "mul_mono %d*%d factors" % (len(left), len(right)): t_mul,
        }

    workloads = list(next(iter(results.values())))
    header = "%-26s" % "workload" + "".join("%12s" % n for n in results)
    if len(results) == 2:
        header += "%10s" % "speedup"
    print(header)
    print("-" * len(header))
    for wl in workloads:
        row = "%-26s" % wl + "".join("%11.4fs" % results[n][wl] for n in results)
        if len(results) == 2:
            py, cc = results["python"][wl], results["c"][wl]
            row += "%9.1fx" % (py / cc if cc else float("inf"))
        print(row)


if __name__ == "__main__":
    main()
