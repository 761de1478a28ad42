"""Index bookkeeping for the nested sheaf sequences ``E^{i,j}`` over the line.

``E^{i,j}`` holds sections with a pole of order ``i`` at the origin whose
leading term lies in the ``j``-th space of a flag.  Each classical family has
its own label set for ``j``; crossings on the extended diagram decide which
labels are deleted (periodically in ``i``).

Families: ``gl`` (alias ``sl``) of rank ``n``, ``so_even`` (rank ``2n``),
``so_odd`` (rank ``2n+1``) and ``sp`` (rank ``2n``).  For ``so_even`` the
labels ``n`` and ``2n`` come in two flavours, tagged ``sign = +1 / -1``.
"""

from dataclasses import dataclass
from typing import Optional

from .affine import Crossing
from .errors import LoopflagError

FAMILIES = ("gl", "so_even", "so_odd", "sp")
_ALIASES = {"sl": "gl", "gl": "gl", "so_even": "so_even", "so_odd": "so_odd", "sp": "sp"}
# loop-algebra root system realised by each family
ROOT_FAMILY = {"gl": "A", "so_even": "D", "so_odd": "B", "sp": "C"}


def normalize_family(family: str) -> str:
    key = str(family).lower().replace("-", "_")
    if key not in _ALIASES:
        raise LoopflagError(f"unknown family {family!r}; expected one of gl, sl, so_even, so_odd, sp")
    return _ALIASES[key]


def bundle_rank(family: str, n: int) -> int:
    family = normalize_family(family)
    return {"gl": n, "so_even": 2 * n, "so_odd": 2 * n + 1, "sp": 2 * n}[family]


def root_rank(family: str, n: int) -> int:
    """Rank of the finite root system whose extended diagram indexes crossings."""
    return n - 1 if normalize_family(family) == "gl" else n


def _check_n(family: str, n: int) -> None:
    least = 2 if family in ("gl", "so_even") else 1
    if not isinstance(n, int) or n < least:
        raise LoopflagError(f"{family} needs n >= {least}; got {n!r}")


@dataclass(frozen=True, order=True)
class SheafIndex:
    i: int
    j: int
    sign: Optional[int] = None

    def label(self) -> tuple:
        return (self.j, self.sign)

    def __str__(self) -> str:
        tag = "" if self.sign is None else (",+" if self.sign > 0 else ",-")
        return f"E^{{{self.i},{self.j}{tag}}}"


def labels(family: str, n: int) -> list:
    """Labels ``(j, sign)`` in sequence order within one period."""
    family = normalize_family(family)
    _check_n(family, n)
    if family == "so_even":
        return (
            [(j, None) for j in range(1, n)]
            + [(n, 1), (n, -1)]
            + [(j, None) for j in range(n + 1, 2 * n)]
            + [(2 * n, 1), (2 * n, -1)]
        )
    return [(j, None) for j in range(1, bundle_rank(family, n) + 1)]


def validate_index(family: str, n: int, idx: SheafIndex) -> None:
    if idx.label() not in labels(family, n):
        raise LoopflagError(f"{idx} is not a valid label for {normalize_family(family)} with n={n}")


def sheaf_degree(family: str, n: int, idx: SheafIndex) -> int:
    """Degree ``r (i - 1) + j`` with ``r`` the bundle rank."""
    validate_index(family, n, idx)
    return bundle_rank(family, n) * (idx.i - 1) + idx.j


def _deleted_by_node(family: str, n: int, node: int) -> set:
    """Labels removed when ``node`` of the extended diagram is left uncrossed."""
    if family == "gl":
        return {(n if node == 0 else node, None)}
    if family == "sp":
        if node == 0:
            return {(2 * n, None)}
        if node == n:
            return {(n, None)}
        return {(node, None), (2 * n - node, None)}
    if family == "so_odd":
        if node == 0:
            return {(2 * n + 1, None)}
        return {(node, None), (2 * n + 1 - node, None)}
    # so_even: the two forks (nodes n-1, n) and (nodes 1, 0)
    forks = {n: (n, 1), n - 1: (n, -1), 0: (2 * n, 1), 1: (2 * n, -1)}
    if node in forks:
        return {forks[node]}
    return {(node, None), (2 * n - node, None)}


@dataclass(frozen=True)
class SequenceSpec:
    family: str
    n: int
    surviving_labels: tuple
    source_crossing: Crossing


def sequence_spec(family: str, n: int, c: Crossing) -> SequenceSpec:
    """Surviving labels for the parabolic of crossing ``c``."""
    family = normalize_family(family)
    _check_n(family, n)
    if family == "so_even" and n < 4:
        raise LoopflagError("so_even crossings need n >= 4 (type D)")
    if family in ("so_odd", "sp") and n < 2:
        raise LoopflagError(f"{family} crossings need n >= 2")
    r = root_rank(family, n)
    if c.rank != r:
        raise LoopflagError(f"{family} with n={n} has {r + 1} extended nodes; crossing has {len(c.values)}")
    deleted = set()
    for node in c.uncrossed:
        deleted |= _deleted_by_node(family, n, node)
    if family == "so_even":
        # E^{n-1}, E^{n+1} exist only alongside both half-dimensional spaces; same at the top fork
        if not (c.values[n - 1] and c.values[n]):
            deleted |= {(n - 1, None), (n + 1, None)}
        if not (c.values[0] and c.values[1]):
            deleted |= {(1, None), (2 * n - 1, None)}
    survivors = tuple(lab for lab in labels(family, n) if lab not in deleted)
    return SequenceSpec(family, n, survivors, c)


def quotient_sizes(spec: SequenceSpec) -> tuple:
    """Lengths of the skyscraper quotients between consecutive survivors (GL only)."""
    if spec.family != "gl":
        raise LoopflagError("quotient sizes are defined for the gl family")
    js = [j for j, _ in spec.surviving_labels]
    if not js:
        raise LoopflagError("no surviving sheaves")
    return tuple(b - a for a, b in zip(js, js[1:])) + (spec.n + js[0] - js[-1],)


def hecke_index_shift(family: str, n: int, idx: SheafIndex) -> SheafIndex:
    """Relabelling induced by the rotation/slip Hecke transform of each family."""
    family = normalize_family(family)
    validate_index(family, n, idx)
    i, j, s = idx.i, idx.j, idx.sign
    if family == "gl":
        return SheafIndex(i, j + 1) if j < n else SheafIndex(i + 1, 1)
    if family == "sp":
        return SheafIndex(i, j + n) if j <= n else SheafIndex(i + 1, j - n)
    if family == "so_odd":
        if j == 2 * n + 1:
            return SheafIndex(i + 1, 1)
        if j == 1:
            return SheafIndex(i - 1, 2 * n + 1)
        return idx
    return SheafIndex(i, j + n, s) if j < n or (j == n and s is not None) else SheafIndex(i + 1, j - n, s)


def hecke_index_unshift(family: str, n: int, idx: SheafIndex) -> SheafIndex:
    """Inverse of :func:`hecke_index_shift`."""
    family = normalize_family(family)
    validate_index(family, n, idx)
    i, j, s = idx.i, idx.j, idx.sign
    if family == "gl":
        return SheafIndex(i, j - 1) if j > 1 else SheafIndex(i - 1, n)
    if family == "so_odd":
        return hecke_index_shift(family, n, idx)
    if j > n:
        return SheafIndex(i, j - n, s)
    return SheafIndex(i - 1, j + n, s)


def swap_middle(n: int, idx: SheafIndex) -> SheafIndex:
    """``so_even``: exchange the two half-dimensional labels ``(n, +)`` and ``(n, -)``."""
    validate_index("so_even", n, idx)
    return SheafIndex(idx.i, idx.j, -idx.sign) if idx.j == n else idx


def swap_top(n: int, idx: SheafIndex) -> SheafIndex:
    """``so_even``: exchange ``(2n, +)`` and ``(2n, -)``."""
    validate_index("so_even", n, idx)
    return SheafIndex(idx.i, idx.j, -idx.sign) if idx.j == 2 * n else idx


def basis_exponents(rank: int, idx: SheafIndex) -> tuple:
    """z-exponents of the local basis: ``-i`` on the first ``j`` vectors, ``1 - i`` after."""
    return tuple(-idx.i if b <= idx.j else 1 - idx.i for b in range(1, rank + 1))


def quad_form_valuations(n: int, idx: SheafIndex, family: str = "so_even") -> tuple:
    """Valuation of the induced pairing on each hyperbolic pair ``(a, rank + 1 - a)``, ``a = 1..n``.

    Takes the plain position ``j`` of the local basis, so ``j = n`` and
    ``j = 2n`` stand for the ``+`` flavour of the half-dimensional labels.
    """
    family = normalize_family(family)
    if family not in ("so_even", "so_odd"):
        raise LoopflagError("quadratic-form valuations are defined for the orthogonal families")
    if idx.sign is not None:
        raise LoopflagError(f"{idx} carries a conformal structure only; no quadratic-form valuations")
    _check_n(family, n)
    rank = bundle_rank(family, n)
    if not 1 <= idx.j <= rank:
        raise LoopflagError(f"label {idx.j} is outside 1..{rank}")
    e = basis_exponents(rank, idx)
    return tuple(e[a - 1] + e[rank - a] for a in range(1, n + 1))
