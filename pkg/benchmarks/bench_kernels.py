"""Compare the compiled F_p row-reduction kernel with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints per-kernel timings on random matrices, then an end-to-end timing of
the truncated L(M) check on the cusp instance under each backend.  Results
of the two backends are compared for equality before timing.
"""
import argparse
import pathlib
import sys
import timeit

import numpy as np

from gradecone import _kernels_py, linalg
from gradecone.koszul import check_LM_homology_vanishing
from gradecone.local import LocalInstance

P = 32003
ROOT = pathlib.Path(__file__).resolve().parents[1]


def random_matrix(rng, rows, cols, density):
    A = rng.integers(0, P, size=(rows, cols), dtype=np.int64)
    A[rng.random((rows, cols)) > density] = 0
    return A


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not linalg.compiled_available():
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    from gradecone import _kernels

    rng = np.random.default_rng(0)
    print(f"{'kernel':<8} {'shape':>10} {'density':>8} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for rows, cols, density in [(20, 30, 0.3), (60, 80, 0.2), (150, 200, 0.1), (300, 300, 0.05)]:
        A = random_matrix(rng, rows, cols, density)
        R1, piv1 = _kernels_py.rref_mod_p(A, P)
        R2, piv2 = _kernels.rref_mod_p(A, P)
        assert list(piv1) == list(piv2) and np.array_equal(np.asarray(R1), np.asarray(R2))
        assert _kernels_py.rank_mod_p(A, P) == _kernels.rank_mod_p(A, P) == len(piv1)
        for name in ("rref", "rank"):
            fpy = getattr(_kernels_py, f"{name}_mod_p")
            fc = getattr(_kernels, f"{name}_mod_p")
            tp = best(lambda: fpy(A, P), args.repeat) * 1e3
            tc = best(lambda: fc(A, P), args.repeat) * 1e3
            print(f"{name:<8} {f'{rows}x{cols}':>10} {density:>8.2f} {tp:>10.2f} {tc:>12.2f} {tp / tc:>7.1f}x")

    inst_path = ROOT / "instances" / "cusp.json"
    timings = {}
    for backend in ("python", "compiled"):
        linalg.use_backend(backend)
        run = lambda: check_LM_homology_vanishing(LocalInstance.from_file(inst_path),
                                                 [LocalInstance.from_file(inst_path).ring.parse("y")],
                                                 cutoff=15)
        timings[backend] = best(run, max(1, args.repeat // 2)) * 1e3
    linalg.use_backend("compiled")
    print(f"\nL(M) check on cusp, cutoff 15: python {timings['python']:.1f} ms, "
          f"compiled {timings['compiled']:.1f} ms ({timings['python'] / timings['compiled']:.1f}x)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
