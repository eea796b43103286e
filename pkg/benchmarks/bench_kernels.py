"""Time the numba kernels against their pure numpy/python twins.

Run:  python benchmarks/bench_kernels.py
The SEMIREG_PURE_NUMPY=1 flag (see semireg._kernels) affects the package's
default; this script always times both paths explicitly.
"""

import time

import numpy as np

from semireg import _kernels
from semireg.graphs import Graph


def timed(fn, *args, repeat=5):
    fn(*args)  # warm-up (includes JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def random_regularish_graph(rng, n, deg):
    edges = set()
    for v in range(n):
        while sum(1 for e in edges if v in e) < deg:
            w = int(rng.integers(n))
            if w != v:
                edges.add((min(v, w), max(v, w)))
    return Graph(n, edges)


def main():
    rng = np.random.default_rng(0)
    n = 4000
    perm = rng.permutation(n).astype(np.int64)
    semi = np.roll(np.arange(n, dtype=np.int64), 1)
    gens = np.stack(
        [rng.permutation(n).astype(np.int64) for _ in range(4)]
    )
    g = random_regularish_graph(rng, 1500, 6)
    heads = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    seed_mask = np.zeros(g.n, dtype=np.uint8)
    seed_mask[:10] = 1

    # a circulant with its rotation/reflection, for the arc-orbit kernel
    m = 1500
    circ = Graph(m, [(v, (v + d) % m) for v in range(m) for d in (1, 2, 3)])
    circ_heads = np.repeat(np.arange(m, dtype=np.int64), np.diff(circ.indptr))
    circ_gens = np.stack(
        [
            (np.arange(m, dtype=np.int64) + 1) % m,
            (-np.arange(m, dtype=np.int64)) % m,
        ]
    )

    cases = [
        ("point_cycle_lengths", (perm,)),
        ("is_semiregular_images", (semi,)),
        ("orbit_mask", (gens, 0)),
        ("density_closure_mask", (g.indptr, g.indices, seed_mask, 0)),
        ("triangle_witness", (g.indptr, g.indices)),
        ("arc_orbit_size", (circ.indptr, circ.indices, circ_heads, circ_gens, 0)),
    ]

    backends = ["numpy"]
    try:
        _kernels.implementations("numba")
        backends.append("numba")
    except RuntimeError:
        print("numba backend unavailable; timing the numpy path only")

    print(f"{'kernel':28s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}")
    for name, args in cases:
        times = {}
        for b in backends:
            impl = _kernels.implementations(b)[name]
            times[b] = timed(impl, *args)
        row = f"{name:28s}" + "".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        if len(backends) == 2 and times["numba"] > 0:
            row += f"{times['numpy'] / times['numba']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
