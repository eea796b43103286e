"""Hot inner loops, compiled with numba when available.

Every kernel has a pure numpy/python twin with the same signature. The active
backend is chosen at import time:

* default: numba ``@njit`` (cached) when numba imports cleanly;
* ``SEMIREG_PURE_NUMPY=1`` in the environment forces the fallback path.

``benchmarks/bench_kernels.py`` times both paths side by side.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_PURE = os.environ.get("SEMIREG_PURE_NUMPY", "0") not in ("", "0")


def _point_cycle_lengths_py(images):
    """Length of the cycle through each point, as an int64 array."""
    n = images.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for start in range(n):
        if out[start] != 0:
            continue
        length = 1
        j = images[start]
        while j != start:
            length += 1
            j = images[j]
        j = start
        for _ in range(length):
            out[j] = length
            j = images[j]
    return out


def _is_semiregular_py(images):
    """True iff all cycles (fixed points included) share one length."""
    n = images.shape[0]
    seen = np.zeros(n, dtype=np.uint8)
    target = 0
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = 1
        length = 1
        j = images[start]
        while j != start:
            seen[j] = 1
            length += 1
            j = images[j]
        if target == 0:
            target = length
        elif length != target:
            return False
    return True


def _orbit_mask_py(gens, start):
    """Boolean mask of the orbit of ``start`` under the rows of ``gens``."""
    k, n = gens.shape
    mask = np.zeros(n, dtype=np.uint8)
    stack = np.empty(n, dtype=np.int64)
    mask[start] = 1
    stack[0] = start
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for i in range(k):
            w = gens[i, v]
            if not mask[w]:
                mask[w] = 1
                stack[top] = w
                top += 1
    return mask


def _density_closure_py(indptr, indices, seed_mask, lifo):
    """Close ``seed_mask`` under "two neighbours inside" and return the mask.

    ``lifo`` switches the worklist from queue to stack; the closure itself is
    order-independent, the switch exists so tests can confirm that.
    """
    n = indptr.shape[0] - 1
    in_s = seed_mask.copy()
    count = np.zeros(n, dtype=np.int64)
    work = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if in_s[v]:
            work[tail] = v
            tail += 1
    while head < tail:
        if lifo:
            tail -= 1
            v = work[tail]
        else:
            v = work[head]
            head += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if not in_s[w]:
                count[w] += 1
                if count[w] >= 2:
                    in_s[w] = 1
                    if lifo:
                        work[tail] = w
                        tail += 1
                    else:
                        work[tail] = w
                        tail += 1
    return in_s


def _triangle_witness_py(indptr, indices):
    """First triangle (u < v < w) in lexicographic order, else (-1,-1,-1)."""
    n = indptr.shape[0] - 1
    out = np.full(3, -1, dtype=np.int64)
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v <= u:
                continue
            i = indptr[u]
            j = indptr[v]
            iend = indptr[u + 1]
            jend = indptr[v + 1]
            while i < iend and j < jend:
                a = indices[i]
                b = indices[j]
                if a <= v:
                    i += 1
                elif b <= v:
                    j += 1
                elif a == b:
                    out[0] = u
                    out[1] = v
                    out[2] = a
                    return out
                elif a < b:
                    i += 1
                else:
                    j += 1
    return out


def _arc_orbit_size_py(indptr, indices, heads, gens, e0):
    """Size of the orbit of directed edge ``e0`` under the generator rows.

    Directed edges are indexed by their position in ``indices``; ``heads[e]``
    is the tail vertex of edge ``e``.
    """
    k = gens.shape[0]
    ne = indices.shape[0]
    visited = np.zeros(ne, dtype=np.uint8)
    stack = np.empty(ne, dtype=np.int64)
    visited[e0] = 1
    stack[0] = e0
    top = 1
    size = 1
    while top > 0:
        top -= 1
        e = stack[top]
        u = heads[e]
        w = indices[e]
        for i in range(k):
            u2 = gens[i, u]
            w2 = gens[i, w]
            lo = indptr[u2]
            hi = indptr[u2 + 1]
            while lo < hi:
                mid = (lo + hi) // 2
                if indices[mid] < w2:
                    lo = mid + 1
                else:
                    hi = mid
            e2 = lo
            if not visited[e2]:
                visited[e2] = 1
                stack[top] = e2
                top += 1
                size += 1
    return size


_PY_IMPLS = {
    "point_cycle_lengths": _point_cycle_lengths_py,
    "is_semiregular_images": _is_semiregular_py,
    "orbit_mask": _orbit_mask_py,
    "density_closure_mask": _density_closure_py,
    "triangle_witness": _triangle_witness_py,
    "arc_orbit_size": _arc_orbit_size_py,
}

BACKEND = "numpy"
_NUMBA_IMPLS = {}

if not _FORCE_PURE:
    try:
        from numba import njit

        for _name, _fn in _PY_IMPLS.items():
            _NUMBA_IMPLS[_name] = njit(cache=True)(_fn)
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _NUMBA_IMPLS = {}

_ACTIVE = _NUMBA_IMPLS if BACKEND == "numba" else _PY_IMPLS

point_cycle_lengths = _ACTIVE["point_cycle_lengths"]
is_semiregular_images = _ACTIVE["is_semiregular_images"]
orbit_mask = _ACTIVE["orbit_mask"]
density_closure_mask = _ACTIVE["density_closure_mask"]
triangle_witness = _ACTIVE["triangle_witness"]
arc_orbit_size = _ACTIVE["arc_orbit_size"]


def implementations(backend):
    """Return the kernel dict for ``backend`` in {"numba", "numpy"}."""
    if backend == "numpy":
        return dict(_PY_IMPLS)
    if backend == "numba":
        if not _NUMBA_IMPLS:
            raise RuntimeError("numba backend unavailable")
        return dict(_NUMBA_IMPLS)
    raise ValueError(f"unknown backend {backend!r}")
