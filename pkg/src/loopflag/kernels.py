"""Integer hot loops, each in a numba and a numpy flavour.

``inversion_count`` and ``diagram_automorphisms`` dispatch to the backend
chosen in :mod:`loopflag._backend`; the ``*_numba`` / ``*_numpy`` names are
always importable so the two paths can be compared directly.  Without numba
installed the ``*_numba`` functions run as plain Python.
"""

import numpy as np

from ._backend import BACKEND, njit

# ---------------------------------------------------------------------------
# affine inversions
#
# An affine Weyl element is (M, lam): M an integer matrix of the finite Weyl
# group in epsilon coordinates, lam a coroot-lattice translation.  It sends the
# affine root (n, alpha) to (n - lam . M alpha, M alpha).  A positive affine
# root is (n, alpha) with n > 0, or n == 0 and alpha > 0; alpha > 0 is decided
# by the sign of posf . alpha.  Imaginary roots (alpha = 0) are never inverted.
# ---------------------------------------------------------------------------


@njit(cache=True)
def inversion_count_numba(M, lam, roots, posf):
    R, d = roots.shape
    shifts = np.empty(R, dtype=np.int64)
    img_pos = np.empty(R, dtype=np.bool_)
    src_pos = np.empty(R, dtype=np.bool_)
    bound = 0
    for r in range(R):
        c = 0
        p = 0
        s = 0
        for a in range(d):
            img = 0
            for b in range(d):
                img += M[a, b] * roots[r, b]
            c += lam[a] * img
            p += posf[a] * img
            s += posf[a] * roots[r, a]
        shifts[r] = c
        img_pos[r] = p > 0
        src_pos[r] = s > 0
        if abs(c) > bound:
            bound = abs(c)
    total = 0
    for r in range(R):
        start = 0 if src_pos[r] else 1
        for n in range(start, bound + 2):
            m = n - shifts[r]
            if m < 0 or (m == 0 and not img_pos[r]):
                total += 1
    return total


def inversion_count_numpy(M, lam, roots, posf):
    img = roots @ M.T
    shifts = img @ lam
    img_pos = img @ posf > 0
    src_pos = roots @ posf > 0
    bound = int(np.abs(shifts).max()) if len(shifts) else 0
    n = np.arange(bound + 2)[None, :]
    start = np.where(src_pos, 0, 1)[:, None]
    m = n - shifts[:, None]
    neg = (m < 0) | ((m == 0) & ~img_pos[:, None])
    return int(np.count_nonzero(neg & (n >= start)))


@njit(cache=True)
def inversion_counts_numba(Ms, lams, roots, posf):
    out = np.empty(Ms.shape[0], dtype=np.int64)
    for k in range(Ms.shape[0]):
        out[k] = inversion_count_numba(Ms[k], lams[k], roots, posf)
    return out


def inversion_counts_numpy(Ms, lams, roots, posf, chunk=4096):
    out = np.empty(len(Ms), dtype=np.int64)
    src_pos = roots @ posf > 0
    start = np.where(src_pos, 0, 1)
    for lo in range(0, len(Ms), chunk):
        Mc, lc = Ms[lo:lo + chunk], lams[lo:lo + chunk]
        img = np.einsum("kab,rb->kra", Mc, roots)
        shifts = np.einsum("kra,ka->kr", img, lc)
        img_pos = img @ posf > 0
        bound = int(np.abs(shifts).max()) if shifts.size else 0
        n = np.arange(bound + 2)[None, None, :]
        m = n - shifts[:, :, None]
        neg = (m < 0) | ((m == 0) & ~img_pos[:, :, None])
        neg &= n >= start[None, :, None]
        out[lo:lo + chunk] = neg.sum(axis=(1, 2))
    return out


# ---------------------------------------------------------------------------
# permutations preserving a square integer matrix (diagram automorphisms)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _backtrack(A, out, fill):
    N = A.shape[0]
    perm = np.full(N, -1, dtype=np.int64)
    used = np.zeros(N, dtype=np.bool_)
    cand = np.zeros(N + 1, dtype=np.int64)
    count = 0
    k = 0
    while k >= 0:
        if k == N:
            if fill:
                out[count, :] = perm
            count += 1
            k -= 1
            used[perm[k]] = False
            cand[k] = perm[k] + 1
            perm[k] = -1
            continue
        placed = False
        v = cand[k]
        while v < N:
            ok = not used[v] and A[v, v] == A[k, k]
            if ok:
                for j in range(k):
                    if A[perm[j], v] != A[j, k] or A[v, perm[j]] != A[k, j]:
                        ok = False
                        break
            if ok:
                perm[k] = v
                used[v] = True
                cand[k + 1] = 0
                k += 1
                placed = True
                break
            v += 1
        if not placed:
            cand[k] = 0
            k -= 1
            if k >= 0:
                used[perm[k]] = False
                cand[k] = perm[k] + 1
                perm[k] = -1
    return count


def diagram_automorphisms_numba(A):
    A = np.ascontiguousarray(A, dtype=np.int64)
    dummy = np.zeros((1, A.shape[0]), dtype=np.int64)
    count = _backtrack(A, dummy, False)
    out = np.zeros((count, A.shape[0]), dtype=np.int64)
    _backtrack(A, out, True)
    return out


def diagram_automorphisms_numpy(A):
    """Breadth-first extension of partial permutations, one node per step."""
    A = np.asarray(A, dtype=np.int64)
    N = A.shape[0]
    partial = np.zeros((1, 0), dtype=np.int64)
    for k in range(N):
        m = len(partial)
        rows = np.repeat(partial, N, axis=0)
        v = np.tile(np.arange(N), m)
        keep = (rows != v[:, None]).all(axis=1) & (A[v, v] == A[k, k])
        if k:
            keep &= (A[rows, v[:, None]] == A[:k, k][None, :]).all(axis=1)
            keep &= (A[v[:, None], rows] == A[k, :k][None, :]).all(axis=1)
        partial = np.hstack([rows[keep], v[keep][:, None]])
    return partial


if BACKEND == "numba":
    inversion_count = inversion_count_numba
    inversion_counts = inversion_counts_numba
    diagram_automorphisms = diagram_automorphisms_numba
else:
    inversion_count = inversion_count_numpy
    inversion_counts = inversion_counts_numpy
    diagram_automorphisms = diagram_automorphisms_numpy
