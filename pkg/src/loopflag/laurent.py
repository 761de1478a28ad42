"""Matrices of Laurent polynomials, outer automorphisms and periodic windows.

A :class:`LaurentMatrix` stores ``sum_e C_e w^e`` where ``w = z^(1/m)`` and
``m`` is the root order.  Coefficients are ``n x n`` object arrays whose
entries may be :class:`~fractions.Fraction` or sympy expressions; only ring
operations are used, so symbolic and rational data share one code path.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .affine import Crossing, classify_parabolic, graded_component
from .autgrp import DiagramAutomorphism
from .errors import LoopflagError
from .rootsys import RootSystem

KINDS = ("flip_sl2", "shift_sln", "slip_so2n", "perm_so", "perm_so_shifted")


def _is_zero(x) -> bool:
    expand = getattr(x, "expand", None)
    if expand is not None:
        x = expand()
    return x == 0


def _clean(coeffs: Mapping[int, np.ndarray]) -> dict:
    out = {}
    for e, c in coeffs.items():
        if not all(_is_zero(x) for x in c.reshape(-1)):
            c = c.copy()
            c.setflags(write=False)
            out[int(e)] = c
    return out


def _obj(data) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise LoopflagError(f"coefficients must be square matrices; got shape {arr.shape}")
    flat = arr.reshape(-1)
    for k, x in enumerate(flat):
        if isinstance(x, (int, np.integer)):
            flat[k] = Fraction(int(x))
    return arr


class LaurentMatrix:
    """Immutable ``n x n`` Laurent-polynomial matrix in ``w = z^(1/m)``."""

    __slots__ = ("size", "root_order", "coeffs")

    def __init__(self, size: int, coeffs: Mapping[int, np.ndarray], root_order: int = 1):
        if root_order < 1:
            raise LoopflagError(f"root order must be positive; got {root_order}")
        for c in coeffs.values():
            if c.shape != (size, size):
                raise LoopflagError(f"coefficient of shape {c.shape} in a {size}x{size} matrix")
        self.size = size
        self.root_order = root_order
        self.coeffs = _clean(coeffs)

    # construction -------------------------------------------------------

    @classmethod
    def from_z(cls, coeffs: Mapping[int, Sequence], size: int = None) -> "LaurentMatrix":
        """Build from ``{power of z: coefficient matrix}``."""
        arrs = {int(e): _obj(c) for e, c in coeffs.items()}
        if size is None:
            if not arrs:
                raise LoopflagError("size is required for an empty coefficient map")
            size = next(iter(arrs.values())).shape[0]
        return cls(size, arrs, 1)

    @classmethod
    def zero(cls, size: int) -> "LaurentMatrix":
        return cls(size, {}, 1)

    @classmethod
    def identity(cls, size: int) -> "LaurentMatrix":
        return cls(size, {0: _obj(np.eye(size, dtype=np.int64))}, 1)

    # arithmetic ---------------------------------------------------------

    def with_root_order(self, m: int) -> "LaurentMatrix":
        if m % self.root_order:
            raise LoopflagError(f"cannot rewrite root order {self.root_order} as {m}")
        f = m // self.root_order
        return LaurentMatrix(self.size, {e * f: c for e, c in self.coeffs.items()}, m)

    def _align(self, other: "LaurentMatrix"):
        if self.size != other.size:
            raise LoopflagError(f"size mismatch: {self.size} vs {other.size}")
        m = lcm(self.root_order, other.root_order)
        return self.with_root_order(m), other.with_root_order(m), m

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        a, b, m = self._align(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return LaurentMatrix(self.size, out, m)

    def __neg__(self) -> "LaurentMatrix":
        return LaurentMatrix(self.size, {e: -c for e, c in self.coeffs.items()}, self.root_order)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self + (-other)

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        a, b, m = self._align(other)
        out: dict = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                p = c1.dot(c2)
                out[e1 + e2] = out[e1 + e2] + p if e1 + e2 in out else p
        return LaurentMatrix(self.size, out, m)

    def scale(self, s) -> "LaurentMatrix":
        return LaurentMatrix(self.size, {e: c * s for e, c in self.coeffs.items()}, self.root_order)

    def bracket(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self * other - other * self

    def map_entries(self, f) -> "LaurentMatrix":
        out = {}
        for e, c in self.coeffs.items():
            d = np.empty_like(c)
            flat, src = d.reshape(-1), c.reshape(-1)
            for k, x in enumerate(src):
                flat[k] = f(x)
            out[e] = d
        return LaurentMatrix(self.size, out, self.root_order)

    # inspection ---------------------------------------------------------

    def is_integer_powered(self) -> bool:
        return all(e % self.root_order == 0 for e in self.coeffs)

    def to_z(self) -> "LaurentMatrix":
        """Re-express in integer powers of ``z``; fails loudly on fractional powers."""
        if not self.is_integer_powered():
            bad = sorted(Fraction(e, self.root_order) for e in self.coeffs if e % self.root_order)
            raise AssertionError(f"fractional powers of z survived: {bad}")
        m = self.root_order
        return LaurentMatrix(self.size, {e // m: c for e, c in self.coeffs.items()}, 1)

    def z_coefficient(self, k: int) -> np.ndarray:
        """Matrix coefficient of ``z^k`` (zero if absent)."""
        g = self.to_z()
        c = g.coeffs.get(k)
        return c if c is not None else _obj(np.zeros((self.size, self.size), dtype=np.int64))

    def z_powers(self) -> list:
        return sorted(self.to_z().coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except LoopflagError:
            return False

    __hash__ = None

    def __repr__(self) -> str:
        terms = ", ".join(f"w^{e}: {c.tolist()}" for e, c in sorted(self.coeffs.items()))
        return f"LaurentMatrix(size={self.size}, m={self.root_order}, {{{terms}}})"


def _monomial(size: int, entries: Mapping[tuple, tuple], m: int) -> LaurentMatrix:
    """Matrix with ``entries[(row, col)] = (coefficient, w-exponent)``."""
    coeffs: dict = {}
    for (r, c), (val, e) in entries.items():
        arr = coeffs.setdefault(e, _obj(np.zeros((size, size), dtype=np.int64)))
        arr[r, c] = Fraction(val)
    return LaurentMatrix(size, coeffs, m)


def monomial_inverse(x: LaurentMatrix) -> LaurentMatrix:
    """Inverse of a matrix with exactly one monomial entry per row and column."""
    entries = {}
    for e, c in x.coeffs.items():
        for r, col in zip(*np.nonzero(np.vectorize(lambda v: not _is_zero(v), otypes=[bool])(c))):
            if (r, col) in entries:
                raise LoopflagError("entry is not a monomial")
            entries[(int(r), int(col))] = (c[r, col], e)
    rows = sorted(r for r, _ in entries)
    cols = sorted(c for _, c in entries)
    if rows != list(range(x.size)) or cols != list(range(x.size)):
        raise LoopflagError("not a monomial matrix")
    inv = {(c, r): (1 / Fraction(v), -e) for (r, c), (v, e) in entries.items()}
    return _monomial(x.size, inv, x.root_order)


def conjugator(kind: str, size: int) -> LaurentMatrix:
    """The matrix realising each outer automorphism in the defining representation."""
    if kind == "flip_sl2":
        if size != 2:
            raise LoopflagError("flip_sl2 acts on 2x2 loops")
        return _monomial(2, {(0, 1): (1, -1), (1, 0): (1, 1)}, 2)
    if kind == "shift_sln":
        if size < 2:
            raise LoopflagError("shift_sln needs size >= 2")
        ent = {(0, size - 1): (1, 1 - size)}
        ent.update({(i + 1, i): (1, 1) for i in range(size - 1)})
        return _monomial(size, ent, size)
    if kind == "slip_so2n":
        if size % 2 or size < 2:
            raise LoopflagError("slip_so2n acts on even sizes")
        n = size // 2
        # same orientation as the flip: w^-1 above the diagonal keeps the upper-triangular Borel
        ent = {(i, i + n): (1, -1) for i in range(n)}
        ent.update({(i + n, i): (1, 1) for i in range(n)})
        return _monomial(size, ent, 2)
    if kind == "perm_so":
        if size % 2 or size < 4:
            raise LoopflagError("perm_so acts on even sizes >= 4")
        n = size // 2
        perm = list(range(size))
        perm[n - 1], perm[n] = perm[n], perm[n - 1]
        return _monomial(size, {(perm[c], c): (1, 0) for c in range(size)}, 1)
    if kind == "perm_so_shifted":
        if size < 3:
            raise LoopflagError("perm_so_shifted needs size >= 3")
        ent = {(i, i): (1, 0) for i in range(1, size - 1)}
        ent.update({(0, size - 1): (1, -1), (size - 1, 0): (1, 1)})
        return _monomial(size, ent, 1)
    raise LoopflagError(f"unknown automorphism {kind!r}; expected one of {', '.join(KINDS)}")


def conjugate_outer(g: LaurentMatrix, kind: str, inverse: bool = False) -> LaurentMatrix:
    """``X g X^-1`` (or ``X^-1 g X``), returned in integer powers of ``z``."""
    if not g.is_integer_powered():
        raise LoopflagError("conjugate_outer expects integer powers of z")
    x = conjugator(kind, g.size)
    xi = monomial_inverse(x)
    if inverse:
        x, xi = xi, x
    return _monomial_conjugate(_monomial_entries(x), g, _monomial_entries(xi), x.root_order).to_z()


def _monomial_entries(x: LaurentMatrix) -> dict:
    """``{row: (col, coefficient, w-exponent)}`` of a monomial matrix."""
    out = {}
    for e, c in x.coeffs.items():
        for r, col in zip(*np.nonzero(np.vectorize(lambda v: not _is_zero(v), otypes=[bool])(c))):
            out[int(r)] = (int(col), c[r, col], e)
    return out


def _monomial_conjugate(x: dict, g: LaurentMatrix, xi: dict, m: int) -> LaurentMatrix:
    """``X g Y`` for monomial ``X`` and ``Y``: a signed, scaled permutation of entries."""
    g = g.with_root_order(m)
    n = g.size
    # column b of Y has its single entry in row rows_of_col[b]
    rows_of_col = {col: (r, v, e) for r, (col, v, e) in xi.items()}
    out: dict = {}
    for k, c in g.coeffs.items():
        for a in range(n):
            ca, va, ea = x[a]
            for b in range(n):
                rb, vb, eb = rows_of_col[b]
                entry = c[ca, rb]
                if _is_zero(entry):
                    continue
                e = ea + k + eb
                arr = out.get(e)
                if arr is None:
                    arr = out[e] = _obj(np.zeros((n, n), dtype=np.int64))
                arr[a, b] = arr[a, b] + va * entry * vb
    return LaurentMatrix(n, out, m)


def induced_node_permutation(kind: str, rank: int) -> DiagramAutomorphism:
    """How each conjugation permutes the extended nodes ``0..rank``."""
    nodes = list(range(rank + 1))
    if kind == "flip_sl2":
        perm = [1, 0]
    elif kind == "shift_sln":
        perm = [(k + 1) % (rank + 1) for k in nodes]
    elif kind == "slip_so2n":
        perm = [rank - k for k in nodes]
    elif kind == "perm_so":
        perm = nodes[:]
        perm[rank - 1], perm[rank] = rank, rank - 1
    elif kind == "perm_so_shifted":
        perm = nodes[:]
        perm[0], perm[1] = 1, 0
    else:
        raise LoopflagError(f"unknown automorphism {kind!r}")
    return DiagramAutomorphism(tuple(perm))


# ---------------------------------------------------------------------------
# periodic windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixWindow:
    """Blocks ``[i, j]`` (``lo <= i, j <= hi``) of the periodic infinite matrix."""

    block_size: int
    lo: int
    hi: int
    blocks: dict

    def scalar_entry(self, a: int, b: int):
        """Entry ``(a, b)`` with ``a = n i + p`` and ``b = n j + q``."""
        n = self.block_size
        i, p = divmod(a, n)
        j, q = divmod(b, n)
        if not (self.lo <= i <= self.hi and self.lo <= j <= self.hi):
            raise LoopflagError(f"entry ({a}, {b}) lies outside the window")
        return self.blocks[(i, j)][p, q]

    def scalar_range(self) -> range:
        return range(self.block_size * self.lo, self.block_size * (self.hi + 1))

    def is_periodic(self) -> bool:
        return all(
            all(_is_zero(x - y) for x, y in zip(self.blocks[(i, j)].reshape(-1), self.blocks[(i + 1, j + 1)].reshape(-1)))
            for i in range(self.lo, self.hi)
            for j in range(self.lo, self.hi)
        )


def window(g: LaurentMatrix, lo: int, hi: int) -> MatrixWindow:
    """Blocks of the infinite matrix of ``g`` acting on ``C^n[z, 1/z]``.

    Basis vector ``n i + p`` is ``e_p z^i`` and ``g`` acts on row vectors, so
    ``e_p z^i`` goes to ``sum_q (C_k)_pq e_q z^(i+k)`` and block ``[i, j]`` holds
    ``C_{j - i}``.  In this convention the cyclic shift conjugation is a unit
    index translation.
    """
    if lo > hi:
        raise LoopflagError(f"empty window [{lo}, {hi}]")
    g = g.to_z()
    blocks = {(i, j): g.z_coefficient(j - i) for i in range(lo, hi + 1) for j in range(lo, hi + 1)}
    return MatrixWindow(g.size, lo, hi, blocks)


# ---------------------------------------------------------------------------
# root data of the defining representations
# ---------------------------------------------------------------------------


def matrix_size(rs: RootSystem) -> int:
    return {"A": rs.rank + 1, "B": 2 * rs.rank + 1, "C": 2 * rs.rank, "D": 2 * rs.rank}[rs.family]


def basis_weights(rs: RootSystem) -> list:
    """Torus weight of each standard basis vector, in the epsilon coordinates of ``rs``."""
    d, n = rs.dim, rs.rank

    def eps(k, s=1):
        return tuple(s if t == k else 0 for t in range(d))

    if rs.family == "A":
        return [eps(a) for a in range(n + 1)]
    if rs.family in ("C", "D"):
        return [eps(a) if a < n else eps(2 * n - 1 - a, -1) for a in range(2 * n)]
    zero = tuple(0 for _ in range(d))
    return [eps(a) if a < n else (zero if a == n else eps(2 * n - a, -1)) for a in range(2 * n + 1)]


def entry_weight(rs: RootSystem, a: int, b: int) -> tuple:
    wts = basis_weights(rs)
    return tuple(x - y for x, y in zip(wts[a], wts[b]))


def parabolic_membership(g: LaurentMatrix, rs: RootSystem, c: Crossing) -> bool:
    """Whether every z-coefficient of ``g`` lies in the parabolic of ``c``."""
    size = matrix_size(rs)
    if g.size != size:
        raise LoopflagError(f"{rs.label} acts on {size}x{size} matrices; got {g.size}x{g.size}")
    p = classify_parabolic(c, rs)
    g = g.to_z()
    for k, coeff in g.coeffs.items():
        piece = graded_component(p, rs, k)
        for a in range(size):
            for b in range(size):
                if _is_zero(coeff[a, b]):
                    continue
                if a == b:
                    if not piece.cartan:
                        return False
                    continue
                wt = entry_weight(rs, a, b)
                if not any(wt) or wt not in piece.roots:
                    return False
    return True


def symmetry_check(g: LaurentMatrix, family: str) -> bool:
    """Entrywise Lie-algebra symmetry of ``so`` or ``sp`` for every coefficient."""
    size = g.size
    if family in ("so_even", "sp") and size % 2:
        raise LoopflagError(f"{family} needs an even size; got {size}")
    if family == "so_odd" and size % 2 == 0:
        raise LoopflagError(f"so_odd needs an odd size; got {size}")
    if family not in ("so_even", "so_odd", "sp"):
        raise LoopflagError(f"unknown family {family!r}")
    n = size // 2
    last = size - 1
    for m in g.to_z().coeffs.values():
        for a in range(size):
            for b in range(size):
                if family == "sp":
                    # block relations: diagonal blocks anti-mirror, off-diagonal blocks mirror
                    same_half = (a < n) == (b < n)
                    mirror = m[last - b, last - a]
                    ok = _is_zero(m[a, b] + mirror) if same_half else _is_zero(m[a, b] - mirror)
                else:
                    ok = _is_zero(m[a, b] + m[last - b, last - a])
                if not ok:
                    return False
    return True


# ---------------------------------------------------------------------------
# the SL(2) worked example
# ---------------------------------------------------------------------------


def generic_element(symbols_by_level: Mapping[int, Sequence], pattern: Mapping[int, Sequence]) -> LaurentMatrix:
    """Fill the ``1`` slots of each level's 0/1 pattern with the given symbols, row-major."""
    coeffs = {}
    for k, mask in pattern.items():
        mask = np.array(mask)
        arr = np.zeros(mask.shape, dtype=object)
        arr[:] = Fraction(0)
        syms = iter(symbols_by_level[k])
        for (r, c), on in np.ndenumerate(mask):
            if on:
                arr[r, c] = next(syms)
        coeffs[k] = arr
    return LaurentMatrix(mask.shape[0], coeffs, 1)


def flip_demo(levels: int = 3) -> dict:
    """Apply the flip to generic Borel and maximal-parabolic loops in ``sl(2)``."""
    import sympy

    from .rootsys import build_root_system

    if levels < 1:
        raise LoopflagError("need at least one level")
    rs = build_root_system("A", 1)
    full = [[1, 1], [1, 1]]
    pattern_borel = {0: [[1, 1], [0, 1]], **{k: full for k in range(1, levels)}}
    pattern_p1 = {k: full for k in range(levels)}

    def symbols(pattern, stem):
        count = sum(int(np.sum(pattern[k])) for k in pattern)
        flat = iter(sympy.symbols(f"{stem}0:{count}"))
        return {k: [next(flat) for _ in range(int(np.sum(pattern[k])))] for k in sorted(pattern)}

    borel = generic_element(symbols(pattern_borel, "b"), pattern_borel)
    p1 = generic_element(symbols(pattern_p1, "p"), pattern_p1)
    c_borel = Crossing((1, 1))
    c_p1 = Crossing((1, 0))
    c_p2 = Crossing((0, 1))
    flipped_borel = conjugate_outer(borel, "flip_sl2")
    flipped_p1 = conjugate_outer(p1, "flip_sl2")
    return {
        "levels": levels,
        "borel_in_borel": parabolic_membership(borel, rs, c_borel),
        "flip_borel_in_borel": parabolic_membership(flipped_borel, rs, c_borel),
        "p1_in_p1": parabolic_membership(p1, rs, c_p1),
        "flip_p1_in_p2": parabolic_membership(flipped_p1, rs, c_p2),
        "flip_p1_in_p1": parabolic_membership(flipped_p1, rs, c_p1),
        "flipped_borel": flipped_borel,
        "flipped_p1": flipped_p1,
    }
