"""Exact rational linear algebra on numpy object arrays.

numpy's ``@`` works on ``dtype=object`` arrays of :class:`fractions.Fraction`,
so only elimination-based routines (inverse, solve, rank) live here.
"""

from fractions import Fraction

import numpy as np

from .errors import LoopflagError


def frac_array(data) -> np.ndarray:
    """Convert nested numbers to an object array of Fractions."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for idx, x in enumerate(flat):
        flat[idx] = Fraction(x)
    return flat.reshape(arr.shape)


def identity(n: int) -> np.ndarray:
    return frac_array(np.eye(n, dtype=np.int64))


def zeros(*shape: int) -> np.ndarray:
    return frac_array(np.zeros(shape, dtype=np.int64))


def _row_reduce(m: np.ndarray):
    """Return (reduced copy, pivot columns) via Gauss-Jordan elimination."""
    a = m.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(_row_reduce(frac_array(m))[1])


def inverse(m: np.ndarray) -> np.ndarray:
    m = frac_array(m)
    n, k = m.shape
    if n != k:
        raise LoopflagError(f"cannot invert a {n}x{k} matrix")
    reduced, pivots = _row_reduce(np.hstack([m, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise LoopflagError("matrix is singular")
    return reduced[:, n:]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` exactly for square nonsingular ``a``."""
    return inverse(a) @ frac_array(b)


def is_zero(m: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(m).reshape(-1))


def fmt(x) -> str:
    """Render an exact rational as ``p`` or ``p/q``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
