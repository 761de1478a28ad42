"""ADHM data ``(A, B, C, D)`` with ``[A, B] + CD = 0`` and its Hecke transform.

All matrices are object arrays of :class:`~fractions.Fraction`; ``A`` and ``B``
are ``k x k``, ``C`` is ``k x n`` and ``D`` is ``n x k``.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .errors import LoopflagError

MAX_RETRIES = 64


@dataclass(frozen=True, eq=False)
class MonadData:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        arrs = {name: exact.frac_array(getattr(self, name)) for name in "ABCD"}
        a, b, c, d = (arrs[x] for x in "ABCD")
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise LoopflagError(f"A must be square; got shape {a.shape}")
        k = a.shape[0]
        if b.shape != (k, k):
            raise LoopflagError(f"B must be {k}x{k}; got {b.shape}")
        if c.ndim != 2 or c.shape[0] != k:
            raise LoopflagError(f"C must have {k} rows; got shape {c.shape}")
        n = c.shape[1]
        if d.shape != (n, k):
            raise LoopflagError(f"D must be {n}x{k}; got {d.shape}")
        for name, arr in arrs.items():
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def k(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.C.shape[1]

    def equals(self, other: "MonadData") -> bool:
        return all(np.array_equal(getattr(self, x), getattr(other, x)) for x in "ABCD")

    def residual(self) -> np.ndarray:
        return self.A.dot(self.B) - self.B.dot(self.A) + self.C.dot(self.D)

    def to_dict(self) -> dict:
        return {x: [[exact.fmt(v) for v in row] for row in getattr(self, x)] for x in "ABCD"}


def validate(m: MonadData) -> bool:
    """``[A, B] + CD = 0`` exactly."""
    return exact.is_zero(m.residual())


def _inverse_A(m: MonadData) -> np.ndarray:
    try:
        return exact.inverse(m.A)
    except LoopflagError:
        raise LoopflagError("A is singular: the bundle is not trivial along z = 0") from None


def gl_action(g, m: MonadData) -> MonadData:
    """``g . (A, B, C, D) = (g A g^-1, g B g^-1, g C, D g^-1)``."""
    g = exact.frac_array(g)
    gi = exact.inverse(g)
    return MonadData(g.dot(m.A).dot(gi), g.dot(m.B).dot(gi), g.dot(m.C), m.D.dot(gi))


def hecke_monad(m: MonadData) -> MonadData:
    """Rotate the columns of ``C`` and rows of ``D``, correcting ``B`` so the constraint survives."""
    ai = _inverse_A(m)
    c1 = m.C[:, :1]
    d1 = m.D[:1, :]
    b = m.B - c1.dot(d1).dot(ai)
    c = np.hstack([m.C[:, 1:], m.A.dot(c1)])
    d = np.vstack([m.D[1:, :], d1.dot(ai)])
    return MonadData(m.A, b, c, d)


def hecke_iterate(m: MonadData, times: int) -> MonadData:
    for _ in range(times):
        m = hecke_monad(m)
    return m


def hecke_order_check(m: MonadData) -> bool:
    """The ``n``-fold transform equals the action of ``g = A``."""
    return hecke_iterate(m, m.n).equals(gl_action(m.A, m))


def random_monad(k: int, n: int, seed: int, bound: int = 5) -> MonadData:
    """A deterministic random solution of the constraint with ``A`` invertible.

    Built in an eigenbasis of ``A``: with ``A = diag(a)`` (distinct, nonzero)
    the constraint reads ``(a_i - a_j) B_ij = -(CD)_ij``, solvable for ``B``
    whenever ``CD`` has zero diagonal.  Each row of ``C`` is drawn orthogonal
    to the matching column of ``D``; the result is then moved by a random
    invertible ``g``.  This works for every ``k >= 1``, ``n >= 2``.
    """
    if k < 1 or n < 2:
        raise LoopflagError(f"need k >= 1 and n >= 2; got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        pool = [v for v in range(-bound - k, bound + k + 1) if v]
        a = [Fraction(int(v)) for v in rng.choice(pool, size=k, replace=False)]
        d = exact.frac_array(rng.integers(-bound, bound + 1, size=(n, k)))
        c = exact.zeros(k, n)
        for i in range(k):
            col = d[:, i]
            row = exact.frac_array(rng.integers(-bound, bound + 1, size=n))
            nz = next((t for t in range(n) if col[t] != 0), None)
            if nz is not None:
                # remove the component along col so that row . col = 0
                row[nz] -= sum(row[t] * col[t] for t in range(n)) / col[nz]
            c[i, :] = row
        cd = c.dot(d)
        b = exact.frac_array(rng.integers(-bound, bound + 1, size=(k, k)))
        for i in range(k):
            for j in range(k):
                if i != j:
                    b[i, j] = -cd[i, j] / (a[i] - a[j])
        g = exact.frac_array(rng.integers(-bound, bound + 1, size=(k, k)))
        if exact.rank(g) < k or (k > 1 and exact.is_zero(cd)):
            continue
        base = MonadData(exact.frac_array(np.diag(a)), b, c, d)
        m = gl_action(g, base)
        if validate(m):
            return m
    raise LoopflagError(f"could not draw a valid monad for k={k}, n={n} after {MAX_RETRIES} attempts")
