"""Affine Weyl group ``W_aff = W x| coroot lattice`` in epsilon coordinates.

An element is a pair ``(M, lam)`` acting as ``t_lam . w``: ``M`` is the
signed-permutation matrix of ``w`` (orthogonal, integral) and ``lam`` an
integer coroot-lattice vector.  Because ``M`` is orthogonal it acts on roots
and coroots alike, so the product is simply
``(M1, l1)(M2, l2) = (M1 M2, l1 + M1 l2)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from . import kernels
from .affine import Crossing, chi_affine, classify_parabolic, IMPROPER
from .errors import LoopflagError, ResourceLimitError
from .rootsys import RootSystem, dot

MAX_LENGTH = 40
MAX_ELEMENTS = 400_000


class AffineRoot(tuple):
    """Real affine root ``n delta + alpha`` stored as ``(n, alpha)``."""

    __slots__ = ()

    def __new__(cls, n: int, alpha):
        return super().__new__(cls, (int(n), tuple(int(a) for a in alpha)))

    @property
    def n(self) -> int:
        return self[0]

    @property
    def alpha(self) -> tuple:
        return self[1]

    def __repr__(self) -> str:
        return f"AffineRoot({self.n}, {self.alpha})"


@dataclass(frozen=True, eq=False)
class AffineWeylElement:
    finite: np.ndarray
    translation: np.ndarray
    group: "AffineWeylGroup" = field(repr=False)

    def key(self) -> tuple:
        return (self.finite.tobytes(), self.translation.tobytes())

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, AffineWeylElement) and self.key() == other.key()

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return self.group.element(self.finite @ other.finite, self.translation + self.finite @ other.translation)

    def inverse(self) -> "AffineWeylElement":
        mt = self.finite.T
        return self.group.element(mt, -(mt @ self.translation))

    def is_identity(self) -> bool:
        return self == self.group.identity


class AffineWeylGroup:
    """Generators and root data for one root system; holds the BFS cache."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        d = rs.dim
        self.roots = np.array(rs.roots, dtype=np.int64)
        self.posf = np.array(rs.positive_functional(), dtype=np.int64)
        self.identity = self.element(np.eye(d, dtype=np.int64), np.zeros(d, dtype=np.int64))
        gens = [self.element(_reflection_matrix(rs.theta), np.array(rs.coroot(rs.theta), dtype=np.int64))]
        gens += [self.element(_reflection_matrix(a), np.zeros(d, dtype=np.int64)) for a in rs.simple_roots]
        self.generators = tuple(gens)
        self.simple_affine_roots = (AffineRoot(1, tuple(-x for x in rs.theta)),) + tuple(
            AffineRoot(0, a) for a in rs.simple_roots
        )
        self._levels: list = [[(self.identity, ())]]
        self._seen: set = {self.identity}

    def element(self, finite, translation) -> AffineWeylElement:
        m = np.ascontiguousarray(finite, dtype=np.int64)
        t = np.ascontiguousarray(translation, dtype=np.int64)
        m.setflags(write=False)
        t.setflags(write=False)
        return AffineWeylElement(m, t, self)

    def word(self, indices) -> AffineWeylElement:
        """Product ``sigma_{i1} sigma_{i2} ...`` of simple reflections."""
        w = self.identity
        for i in indices:
            w = w * self.generators[i]
        return w

    def is_positive(self, r: AffineRoot) -> bool:
        if r.n != 0:
            return r.n > 0
        return dot(self.posf, r.alpha) > 0

    def levels(self, max_length: int) -> list:
        """BFS layers ``[(element, reduced word), ...]`` for lengths ``0..max_length``."""
        if max_length < 0:
            raise LoopflagError("length bound must be non-negative")
        if max_length > MAX_LENGTH:
            raise ResourceLimitError(f"length bound {max_length} exceeds the hard cap {MAX_LENGTH}")
        while len(self._levels) <= max_length:
            prev = self._levels[-2] if len(self._levels) > 1 else []
            prev_set = {w for w, _ in prev}
            layer = []
            for w, word in self._levels[-1]:
                for i, s in enumerate(self.generators):
                    u = w * s
                    # w*s has length l(w) +- 1; anything already seen sits at l(w) - 1
                    if u in self._seen or u in prev_set:
                        continue
                    self._seen.add(u)
                    layer.append((u, word + (i,)))
            if len(self._seen) > MAX_ELEMENTS:
                raise ResourceLimitError(f"enumeration exceeded {MAX_ELEMENTS} elements at length {len(self._levels)}")
            self._levels.append(layer)
        return self._levels[: max_length + 1]


def _reflection_matrix(alpha) -> np.ndarray:
    a = np.array(alpha, dtype=np.int64)
    sq = int(a @ a)
    m = np.eye(len(a), dtype=np.int64) * sq - 2 * np.outer(a, a)
    if (m % sq).any():
        raise LoopflagError(f"reflection in {alpha} is not integral")
    return m // sq


@lru_cache(maxsize=None)
def affine_weyl_group(rs: RootSystem) -> AffineWeylGroup:
    return AffineWeylGroup(rs)


def act(w: AffineWeylElement, r: AffineRoot) -> AffineRoot:
    img = w.finite @ np.array(r.alpha, dtype=np.int64)
    return AffineRoot(r.n - int(w.translation @ img), img)


def length(w: AffineWeylElement) -> int:
    """Number of positive affine roots sent to negative ones."""
    g = w.group
    return int(kernels.inversion_count(w.finite, w.translation, g.roots, g.posf))


def inversion_set(w: AffineWeylElement) -> frozenset:
    """``{beta > 0 : w(beta) < 0}`` as a set of :class:`AffineRoot`."""
    g = w.group
    img = g.roots @ w.finite.T
    shifts = img @ w.translation
    out = set()
    for alpha, c, im in zip(g.roots, shifts, img):
        start = 0 if dot(g.posf, alpha) > 0 else 1
        im_pos = dot(g.posf, im) > 0
        for n in range(start, abs(int(c)) + 2):
            m = n - int(c)
            if m < 0 or (m == 0 and not im_pos):
                out.add(AffineRoot(n, alpha))
    return frozenset(out)


def enumerate_by_length(rs: RootSystem, max_length: int) -> dict:
    """``{length: [elements]}`` for every element of length ``<= max_length``."""
    levels = affine_weyl_group(rs).levels(max_length)
    return {k: [w for w, _ in layer] for k, layer in enumerate(levels)}


def reduced_words(rs: RootSystem, max_length: int) -> dict:
    """One reduced word (BFS-first, generator indices) per element."""
    levels = affine_weyl_group(rs).levels(max_length)
    return {w: word for layer in levels for w, word in layer}


def _require_proper(c: Crossing, rs: RootSystem) -> None:
    if classify_parabolic(c, rs).klass == IMPROPER:
        raise LoopflagError("the all-uncrossed crossing has an infinite Levi Weyl group; no Hasse diagram")


def is_hasse(w: AffineWeylElement, c: Crossing) -> bool:
    """Minimal in ``w W_P``: ``w`` keeps every uncrossed simple root positive."""
    g = w.group
    return all(g.is_positive(act(w, g.simple_affine_roots[i])) for i in c.uncrossed)


def hasse_elements(rs: RootSystem, c: Crossing, max_length: int) -> list:
    _require_proper(c, rs)
    return [w for layer in enumerate_by_length(rs, max_length).values() for w in layer if is_hasse(w, c)]


def levi_weyl_group(rs: RootSystem, c: Crossing) -> list:
    """The finite group ``W_P`` generated by the uncrossed simple reflections."""
    _require_proper(c, rs)
    g = affine_weyl_group(rs)
    gens = [g.generators[i] for i in c.uncrossed]
    elems = [g.identity]
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = w * s
                if u not in seen:
                    seen.add(u)
                    elems.append(u)
                    nxt.append(u)
        if len(seen) > MAX_ELEMENTS:
            raise ResourceLimitError("Levi Weyl group closure did not terminate")
        frontier = nxt
    return elems


def coset_factorization(w: AffineWeylElement, c: Crossing, levi: Optional[list] = None) -> tuple:
    """Split ``w = w1 w2`` with ``w1`` minimal in ``w W_P`` and ``w2`` in ``W_P``."""
    levi = levi if levi is not None else levi_weyl_group(w.group.rs, c)
    coset = [(length(w * u), w * u) for u in levi]
    best = min(l for l, _ in coset)
    minima = [u for l, u in coset if l == best]
    if len(minima) != 1:
        raise LoopflagError(f"coset has {len(minima)} minimal-length elements")
    w1 = minima[0]
    return w1, w1.inverse() * w


def inversions_in_unipotent(w: AffineWeylElement, c: Crossing) -> bool:
    """Every inversion of ``w`` has positive chi (lies in the unipotent radical)."""
    rs = w.group.rs
    return all(chi_affine(c, rs, r.n, r.alpha) > 0 for r in inversion_set(w))


def stratum_data(w: AffineWeylElement) -> dict:
    """Birkhoff stratum codimension and transverse cell dimension (both the length)."""
    ell = length(w)
    return {"codimension": ell, "cell_dimension": ell}


def translation_part(w: AffineWeylElement) -> tuple:
    return tuple(int(x) for x in w.translation)


def coroot_pairing(lam, alpha) -> Fraction:
    return Fraction(dot(lam, alpha))
