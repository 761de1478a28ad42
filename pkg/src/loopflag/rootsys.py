"""Classical finite root systems in standard epsilon coordinates.

Roots are integer tuples in the ambient space (``rank + 1`` coordinates for
type A, ``rank`` otherwise).  Weights (fundamental weights, rho) are tuples of
:class:`~fractions.Fraction`.  The ambient dot product is the raw pairing;
:func:`killing_pair` rescales it to the Killing form of the simple Lie algebra.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from . import exact
from .errors import LoopflagError

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}

Vector = tuple


def dot(v: Sequence, w: Sequence):
    return sum(a * b for a, b in zip(v, w))


def _unit(d: int, i: int, scale: int = 1) -> tuple:
    return tuple(scale if k == i else 0 for k in range(d))


def _sub(v, w) -> tuple:
    return tuple(a - b for a, b in zip(v, w))


def _add(v, w) -> tuple:
    return tuple(a + b for a, b in zip(v, w))


def _scale(c, v) -> tuple:
    return tuple(c * a for a in v)


def simple_roots_for(family: str, rank: int) -> tuple:
    """Simple roots of the classical family in epsilon coordinates."""
    if family == "A":
        d = rank + 1
        return tuple(_sub(_unit(d, i), _unit(d, i + 1)) for i in range(rank))
    d = rank
    chain = [_sub(_unit(d, i), _unit(d, i + 1)) for i in range(rank - 1)]
    if family == "B":
        last = _unit(d, d - 1)
    elif family == "C":
        last = _unit(d, d - 1, 2)
    else:
        last = _add(_unit(d, d - 2), _unit(d, d - 1))
    return tuple(chain + [last])


def reflect(v: Sequence, alpha: Sequence) -> tuple:
    """Reflection of ``v`` in the hyperplane orthogonal to ``alpha``."""
    num, sq = 2 * dot(v, alpha), dot(alpha, alpha)
    if all(isinstance(x, int) for x in v) and num % sq == 0:
        c = num // sq
        return tuple(a - c * b for a, b in zip(v, alpha))
    c = Fraction(num, sq)
    out = tuple(a - c * b for a, b in zip(v, alpha))
    if all(Fraction(x).denominator == 1 for x in out):
        return tuple(int(x) for x in out)
    return out


def positive_roots_by_reflection(simple_roots: Sequence[tuple], expand) -> list:
    """Close the simple roots under simple reflections; keep the positive ones.

    ``expand`` maps a root to its simple-root coefficients (used for the sign).
    """
    seen = set(simple_roots) | {_scale(-1, a) for a in simple_roots}
    frontier = list(seen)
    while frontier:
        nxt = []
        for beta in frontier:
            for a in simple_roots:
                img = reflect(beta, a)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    coords = {r: expand(r) for r in seen}
    return sorted(
        (r for r in seen if all(c >= 0 for c in coords[r])),
        key=lambda r: (sum(coords[r]), coords[r]),
    )


def positive_roots_by_saturation(cartan: Sequence[Sequence[int]]) -> list:
    """Positive roots in simple-root coordinates from the Cartan matrix alone.

    Height-ascending: for a root ``beta`` and simple ``alpha_i`` the
    ``alpha_i``-string through ``beta`` has ``p - q = <beta, alpha_i^vee>``;
    ``beta + alpha_i`` is a root exactly when ``q > 0``.
    Uses ``cartan[i][k] = <alpha_i^vee, alpha_k>``.
    """
    r = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(r):
                pairing = sum(beta[k] * cartan[i][k] for k in range(r))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                q = p - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return sorted(roots, key=lambda b: (sum(b), b))


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    simple_roots: tuple
    cartan_matrix: tuple
    positive_roots: tuple
    theta: tuple
    fundamental_weights: tuple
    rho: tuple
    killing_scale: Fraction
    comarks: tuple
    h_vee: int
    _coeffs: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.simple_roots[0])

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def roots(self) -> tuple:
        """All roots: positive ones followed by their negatives."""
        return self.positive_roots + tuple(_scale(-1, a) for a in self.positive_roots)

    def coefficients(self, v: Sequence) -> tuple:
        """Integer simple-root expansion of a root-lattice vector."""
        key = tuple(v)
        hit = self._coeffs.get(key)
        if hit is not None:
            return hit
        if len(key) != self.dim:
            raise LoopflagError(f"vector has {len(key)} coordinates, {self.label} needs {self.dim}")
        gram_inv = self._coeffs.get("__gram_inv__")
        rhs = exact.frac_array([dot(a, key) for a in self.simple_roots])
        c = gram_inv @ rhs
        if any(x.denominator != 1 for x in c):
            raise LoopflagError(f"{key} is not in the root lattice of {self.label}")
        # epsilon-space vectors off the root span (type A) would still solve the
        # Gram system; reject them by reconstructing.
        back = tuple(sum(int(ci) * a[k] for ci, a in zip(c, self.simple_roots)) for k in range(self.dim))
        if back != tuple(key):
            raise LoopflagError(f"{key} is not in the root lattice of {self.label}")
        out = tuple(int(x) for x in c)
        self._coeffs[key] = out
        return out

    def height(self, v: Sequence) -> int:
        return sum(self.coefficients(v))

    def is_root(self, v: Sequence) -> bool:
        v = tuple(v)
        return v in self._coeffs.get("__root_set__")

    def is_positive(self, v: Sequence) -> bool:
        return self.height(v) > 0 if any(v) else False

    def coroot(self, alpha: Sequence) -> tuple:
        """``2 alpha / (alpha, alpha)`` in ambient coordinates (integral here)."""
        c = Fraction(2, dot(alpha, alpha))
        return tuple(int(c * a) for a in alpha)

    def normalized_pair(self, v: Sequence, w: Sequence) -> Fraction:
        """Pairing scaled so that the highest root has square length 2."""
        return Fraction(2 * dot(v, w), dot(self.theta, self.theta))

    def name(self, v: Sequence) -> str:
        """Human-readable simple-root expansion, e.g. ``alpha_1+2alpha_2``."""
        if not any(v):
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients(v), start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}alpha_{i}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def positive_functional(self) -> tuple:
        """Integer vector ``f`` with ``f . alpha > 0`` exactly for positive roots."""
        den = lcm(*(Fraction(x).denominator for x in self.rho))
        return tuple(int(2 * den * x) for x in self.rho)


def _validate(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise LoopflagError(f"family must be one of {', '.join(FAMILIES)}; got {family!r}")
    if not isinstance(rank, (int, np.integer)) or rank < MIN_RANK[family]:
        raise LoopflagError(f"type {family} requires rank >= {MIN_RANK[family]}; got {rank!r}")


def build_root_system(family: str, rank: int) -> RootSystem:
    """Build the classical root system ``family``/``rank``.

    Cached: equal inputs return the identical object.
    """
    family = str(family).upper()
    _validate(family, rank)
    return _build(family, int(rank))


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    simple = simple_roots_for(family, rank)
    r = rank

    # Kac convention: cartan[i][j] = <alpha_i^vee, alpha_j>.
    cartan = tuple(
        tuple(int(Fraction(2 * dot(simple[i], simple[j]), dot(simple[i], simple[i]))) for j in range(r))
        for i in range(r)
    )
    gram = exact.frac_array([[dot(a, b) for b in simple] for a in simple])
    coeffs: dict = {"__gram_inv__": exact.inverse(gram)}

    def expand(v):
        rhs = exact.frac_array([dot(a, v) for a in simple])
        return tuple(int(x) for x in coeffs["__gram_inv__"] @ rhs)

    positive = tuple(positive_roots_by_reflection(simple, expand))
    theta = positive[-1]  # sorted by height, and the highest root is unique

    # lambda_i = sum_k x_k alpha_k with <lambda_i, alpha_j^vee> = delta_ij.
    k_mat = exact.frac_array([[Fraction(2 * dot(simple[k], simple[j]), dot(simple[j], simple[j])) for j in range(r)]
                              for k in range(r)])
    x = exact.inverse(k_mat)
    fund = tuple(
        tuple(sum(x[i, k] * simple[k][c] for k in range(r)) for c in range(len(simple[0])))
        for i in range(r)
    )
    rho = tuple(sum(lam[c] for lam in fund) for c in range(len(simple[0])))

    theta_sq = dot(theta, theta)
    comarks = tuple(int(Fraction(2 * dot(theta, lam), theta_sq)) for lam in fund)
    h_vee = 1 + sum(comarks)
    # theta-normalised pairing is dot * 2/theta_sq; Killing form divides it by 2 h_vee.
    killing_scale = Fraction(1, theta_sq * h_vee)

    rs = RootSystem(
        family=family,
        rank=rank,
        simple_roots=simple,
        cartan_matrix=cartan,
        positive_roots=positive,
        theta=theta,
        fundamental_weights=fund,
        rho=rho,
        killing_scale=killing_scale,
        comarks=comarks,
        h_vee=h_vee,
        _coeffs=coeffs,
    )
    coeffs["__root_set__"] = frozenset(rs.roots)
    return rs


def killing_pair(rs: RootSystem, v: Sequence, w: Sequence) -> Fraction:
    """Killing-form pairing of two weights of ``rs``."""
    if len(v) != rs.dim or len(w) != rs.dim:
        raise LoopflagError(f"{rs.label} weights have {rs.dim} coordinates; got {len(v)} and {len(w)}")
    return Fraction(dot(v, w)) * rs.killing_scale


def comarks_and_dual_coxeter(rs: RootSystem) -> tuple:
    return list(rs.comarks), rs.h_vee


def strange_identity(rs: RootSystem) -> Fraction:
    """``2<rho, theta> + <theta, theta>`` in the Killing normalisation."""
    return 2 * killing_pair(rs, rs.rho, rs.theta) + killing_pair(rs, rs.theta, rs.theta)
