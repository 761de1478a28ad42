"""Time the numba and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per workload: best wall time of each backend and the ratio.
The first numba call (JIT compile or cache load) is excluded.
"""

import argparse
import time

import numpy as np

from loopflag import kernels
from loopflag.affine import extended_cartan_matrix
from loopflag.rootsys import build_root_system
from loopflag.weyl import affine_weyl_group, enumerate_by_length


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def inversion_workload(family, rank, max_length):
    rs = build_root_system(family, rank)
    g = affine_weyl_group(rs)
    elems = [w for layer in enumerate_by_length(rs, max_length).values() for w in layer]
    Ms = np.stack([w.finite for w in elems])
    lams = np.stack([w.translation for w in elems])
    label = f"inversion_counts {rs.label} L<={max_length} ({len(elems)} elements)"
    return label, (lambda: kernels.inversion_counts_numba(Ms, lams, g.roots, g.posf)), (
        lambda: kernels.inversion_counts_numpy(Ms, lams, g.roots, g.posf)
    )


def automorphism_workload(family, rank):
    A = np.array(extended_cartan_matrix(build_root_system(family, rank)), dtype=np.int64)
    label = f"diagram_automorphisms {family}{rank}"
    return label, (lambda: kernels.diagram_automorphisms_numba(A)), (lambda: kernels.diagram_automorphisms_numpy(A))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    workloads = [
        inversion_workload("A", 2, 14),
        inversion_workload("C", 2, 14),
        inversion_workload("B", 3, 8),
        automorphism_workload("A", 8),
        automorphism_workload("D", 8),
        automorphism_workload("A", 14),
    ]
    print(f"backend selected at import: {kernels.BACKEND}")
    print(f"{'workload':<58} {'numba':>10} {'numpy':>10} {'ratio':>7}")
    for label, fast, slow in workloads:
        fast()  # compile / load cache
        tn = best_of(fast, args.repeat)
        tp = best_of(slow, args.repeat)
        print(f"{label:<58} {tn * 1e3:>8.2f}ms {tp * 1e3:>8.2f}ms {tp / tn:>6.1f}x")


if __name__ == "__main__":
    main()
