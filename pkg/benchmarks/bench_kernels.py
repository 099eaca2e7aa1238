"""Compare the numba kernels with the pure numpy/Python fallback.

    python3 benchmarks/bench_kernels.py --type B --rank 4 --repeat 3
"""

import argparse
import time

import numpy as np

from borel_orbits import _kernels
from borel_orbits.root_system import build_root_system
from borel_orbits.weyl import enumerate_W


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="B")
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--subset-size", type=int, default=18,
                    help="vertices of the random conflict graph")
    args = ap.parse_args()

    print(f"active backend: {_kernels.backend()}")
    rs = build_root_system(args.type, args.rank)
    ws = enumerate_W(rs)
    invs = np.stack([w.inv_perm for w in ws])
    lens = np.array([w.length for w in ws], dtype=np.int64)
    call = (invs, lens, rs.simple_idx, rs.simple_refl, rs.positive)

    _kernels.bruhat_matrix(*call)  # compile outside the timing
    t_fast, a = best_of(lambda: _kernels.bruhat_matrix(*call), args.repeat)
    t_ref, b = best_of(lambda: _kernels.bruhat_matrix_reference(*call), args.repeat)
    assert np.array_equal(a, b)
    print(f"bruhat_matrix {rs.name} ({len(ws)}^2 pairs): "
          f"active {t_fast:.3f}s  fallback {t_ref:.3f}s  speedup {t_ref / t_fast:.1f}x")

    rng = np.random.default_rng(0)
    k = args.subset_size
    adj = np.triu(rng.random((k, k)) < 0.25, 1)
    adj = adj | adj.T
    conflict = np.array([sum(1 << j for j in range(k) if adj[i, j]) for i in range(k)],
                        dtype=np.int64)
    _kernels.orthogonal_subsets(conflict)
    t_fast, a = best_of(lambda: _kernels.orthogonal_subsets(conflict), args.repeat)
    t_ref, b = best_of(lambda: _kernels.orthogonal_subsets_dfs_py(conflict), args.repeat)
    assert sorted(a.tolist()) == sorted(b.tolist())
    print(f"conflict-free subsets (k={k}, {len(a)} found): "
          f"active {t_fast:.4f}s  fallback {t_ref:.4f}s  speedup {t_ref / t_fast:.1f}x")


if __name__ == "__main__":
    main()
