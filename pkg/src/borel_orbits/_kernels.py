"""Hot inner loops.

Every kernel is written once as plain Python over numpy arrays. When numba is
importable and ``BOREL_ORBITS_DISABLE_NUMBA`` is unset, the same source is
compiled with ``numba.njit``; otherwise the Python body (or a vectorised numpy
variant) runs directly. Both paths must return identical results, which the
test-suite checks.

Conventions shared by all kernels: a Weyl group element is handed over as the
*inverse* root permutation ``inv`` (``inv[k]`` is the index of ``w^{-1}`` applied
to root ``k``), ``positive`` is a boolean mask over root indices, ``simple_idx``
lists the simple root indices in Delta order and ``simple_refl[i]`` is the root
permutation of the i-th simple reflection.
"""

from __future__ import annotations

import os

import numpy as np

FLAG = "BOREL_ORBITS_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def bruhat_leq_py(u_inv, w_inv, lu, lw, simple_idx, simple_refl, positive):
    # Lifting property: if s w < w then u <= w iff (s u < u ? s u <= s w : u <= s w).
    r = simple_idx.shape[0]
    u = u_inv
    w = w_inv
    while True:
        if lu > lw:
            return False
        if lw == 0:
            return lu == 0
        i = 0
        while i < r:
            if not positive[w[simple_idx[i]]]:
                break
            i += 1
        refl = simple_refl[i]
        w = w[refl]
        lw -= 1
        if not positive[u[simple_idx[i]]]:
            u = u[refl]
            lu -= 1


def _bruhat_matrix_body(invs, lens, simple_idx, simple_refl, positive, leq_fn):
    k = invs.shape[0]
    out = np.zeros((k, k), dtype=np.bool_)
    for a in range(k):
        for b in range(k):
            if a == b:
                out[a, b] = True
            elif lens[a] < lens[b]:
                out[a, b] = leq_fn(invs[a], invs[b], lens[a], lens[b],
                                   simple_idx, simple_refl, positive)
    return out


def orthogonal_subsets_sweep(conflict):
    """Bitmasks of all subsets of ``range(k)`` containing no conflicting pair.

    ``conflict[i]`` is the bitmask of indices that may not share a subset with
    ``i``. One vectorised pass over all ``2^k`` masks, so only for small ``k``.
    """
    k = conflict.shape[0]
    masks = np.arange(1 << k, dtype=np.int64)
    ok = np.ones(masks.shape[0], dtype=np.bool_)
    for i in range(k):
        has_i = ((masks >> i) & 1).astype(np.bool_)
        ok &= ~(has_i & ((masks & conflict[i]) != 0))
    return masks[ok]


def dfs_pass_py(conflict, out, fill):
    # iterative depth-first search over conflict-free subsets, increasing indices
    k = conflict.shape[0]
    mask_s = np.zeros(k + 1, dtype=np.int64)
    forb_s = np.zeros(k + 1, dtype=np.int64)
    next_s = np.zeros(k + 1, dtype=np.int64)
    one = np.int64(1)
    count = 0
    if fill:
        out[count] = 0
    count += 1
    d = 0
    while d >= 0:
        i = next_s[d]
        while i < k and (forb_s[d] >> i) & 1:
            i += 1
        if i >= k:
            d -= 1
            continue
        next_s[d] = i + 1
        d += 1
        mask_s[d] = mask_s[d - 1] | (one << i)
        forb_s[d] = forb_s[d - 1] | conflict[i]
        next_s[d] = i + 1
        if fill:
            out[count] = mask_s[d]
        count += 1
    return count


def orthogonal_subsets_dfs_py(conflict):
    n = dfs_pass_py(conflict, np.zeros(1, dtype=np.int64), False)
    out = np.empty(n, dtype=np.int64)
    dfs_pass_py(conflict, out, True)
    return out


def inversion_counts_py(perms, positive):
    # perms[a, k]: image index of root k under element a
    return np.sum(positive[np.newaxis, :] & ~positive[perms], axis=1).astype(np.int64)


def inversion_counts_loop(perms, positive):
    k, n = perms.shape
    out = np.zeros(k, dtype=np.int64)
    for a in range(k):
        c = 0
        for j in range(n):
            if positive[j] and not positive[perms[a, j]]:
                c += 1
        out[a] = c
    return out


if USE_NUMBA:
    _leq_nb = numba.njit(cache=True)(bruhat_leq_py)
    _dfs_nb = numba.njit(cache=True)(dfs_pass_py)
    _counts_nb = numba.njit(cache=True)(inversion_counts_loop)

    @numba.njit(cache=True)
    def _matrix_nb(invs, lens, simple_idx, simple_refl, positive):
        k = invs.shape[0]
        out = np.zeros((k, k), dtype=np.bool_)
        for a in range(k):
            for b in range(k):
                if a == b:
                    out[a, b] = True
                elif lens[a] < lens[b]:
                    out[a, b] = _leq_nb(invs[a], invs[b], lens[a], lens[b],
                                        simple_idx, simple_refl, positive)
        return out

    @numba.njit(cache=True)
    def _subsets_nb(conflict):
        n = _dfs_nb(conflict, np.zeros(1, dtype=np.int64), False)
        out = np.empty(n, dtype=np.int64)
        _dfs_nb(conflict, out, True)
        return out

    def bruhat_leq(u_inv, w_inv, lu, lw, simple_idx, simple_refl, positive):
        return bool(_leq_nb(u_inv, w_inv, lu, lw, simple_idx, simple_refl, positive))

    def bruhat_matrix(invs, lens, simple_idx, simple_refl, positive):
        return _matrix_nb(invs, lens, simple_idx, simple_refl, positive)

    def orthogonal_subsets(conflict):
        return _subsets_nb(np.ascontiguousarray(conflict, dtype=np.int64))

    def inversion_counts(perms, positive):
        return _counts_nb(perms, positive)
else:
    def bruhat_leq(u_inv, w_inv, lu, lw, simple_idx, simple_refl, positive):
        return bool(bruhat_leq_py(u_inv, w_inv, lu, lw, simple_idx, simple_refl, positive))

    def bruhat_matrix(invs, lens, simple_idx, simple_refl, positive):
        return _bruhat_matrix_body(invs, lens, simple_idx, simple_refl, positive,
                                   bruhat_leq_py)

    def orthogonal_subsets(conflict):
        conflict = np.ascontiguousarray(conflict, dtype=np.int64)
        if conflict.shape[0] <= 16:
            return orthogonal_subsets_sweep(conflict)
        return orthogonal_subsets_dfs_py(conflict)

    inversion_counts = inversion_counts_py


def bruhat_matrix_reference(invs, lens, simple_idx, simple_refl, positive):
    """Uncompiled path, kept callable regardless of the flag (tests, benchmark)."""
    return _bruhat_matrix_body(invs, lens, simple_idx, simple_refl, positive, bruhat_leq_py)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
