"""Formal degrees of based maps into loop-group flag manifolds.

For a crossing with uncrossed node set ``D0`` the Levi fundamental weights are
``hat l_i = l_i - sum_{j crossed} n_ij l_j`` (``i`` in ``D0``), and the formal
degree of a map with multi-degree ``k`` is ``4 sum_{j crossed} (1 + N_j) k_j``
with ``N_j = sum_{i in D0} n_ij``.

Pairing ``hat l_i`` with ``alpha_j^vee`` gives the closed form used here:
``hat l_i = sum_{k in D0} x_k alpha_k`` where ``x`` inverts the Levi Cartan
block, so ``n_ij = -sum_k x_k <alpha_k, alpha_j^vee>``.  Only Cartan integers
enter, so the same routine serves finite and affine diagrams.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .affine import Crossing, classify_parabolic, extended_cartan_matrix, IMPROPER
from .errors import LoopflagError
from .rootsys import RootSystem


@dataclass(frozen=True)
class MultiDegree:
    """Degrees ``k_j`` indexed by the crossed nodes of ``crossing``."""

    crossing: Crossing
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.crossing.crossed):
            raise LoopflagError(
                f"crossing {self.crossing} has {len(self.crossing.crossed)} crossed nodes; got {len(self.values)} degrees"
            )
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def as_dict(self) -> dict:
        return dict(zip(self.crossing.crossed, self.values))


@dataclass(frozen=True)
class LeviConstants:
    delta0: tuple
    crossed: tuple
    n: dict  # (i, j) -> Fraction
    N: dict  # j -> Fraction


def _projection_constants(cartan: Sequence[Sequence[int]], labels: Sequence[int], delta0) -> LeviConstants:
    """``n_ij`` and ``N_j`` from a Cartan matrix ``cartan[a][b] = <alpha_a^vee, alpha_b>``."""
    pos = {lab: p for p, lab in enumerate(labels)}
    d0 = tuple(sorted(set(delta0)))
    bad = [i for i in d0 if i not in pos]
    if bad:
        raise LoopflagError(f"nodes {bad} are not among {tuple(labels)}")
    crossed = tuple(j for j in labels if j not in d0)
    n: dict = {}
    if d0:
        # levi[m][k] = <alpha_k, alpha_m^vee>, m, k in D0
        levi = exact.frac_array([[cartan[pos[m]][pos[k]] for k in d0] for m in d0])
        x = exact.inverse(levi)  # column i holds the alpha-coordinates of hat l_i
        for a, i in enumerate(d0):
            for j in crossed:
                n[(i, j)] = -sum((x[b, a] * cartan[pos[j]][pos[k]] for b, k in enumerate(d0)), Fraction(0))
    N = {j: sum((n[(i, j)] for i in d0), Fraction(0)) for j in crossed}
    return LeviConstants(delta0=d0, crossed=crossed, n=n, N=N)


def levi_constants(rs: RootSystem, delta0) -> LeviConstants:
    """Projection constants for a finite parabolic; nodes are numbered ``1..rank``."""
    return _projection_constants(rs.cartan_matrix, range(1, rs.rank + 1), delta0)


def affine_levi_constants(rs: RootSystem, c: Crossing) -> LeviConstants:
    """Projection constants on the extended diagram with ``D0`` the uncrossed nodes."""
    if classify_parabolic(c, rs).klass == IMPROPER:
        raise LoopflagError("the all-uncrossed crossing has no finite Levi factor")
    return _projection_constants(extended_cartan_matrix(rs), range(rs.rank + 1), c.uncrossed)


def affine_node_constants(rs: RootSystem) -> tuple:
    """``(n_i0 for i = 1..rank, N_0)`` for the maximal parabolic crossing only node 0."""
    consts = affine_levi_constants(rs, Crossing.from_crossed(rs.rank, [0]))
    n_i0 = [consts.n[(i, 0)] for i in range(1, rs.rank + 1)]
    return n_i0, consts.N[0]


def formal_degree(rs: RootSystem, c: Crossing, k) -> int:
    """``4 sum_{j crossed} (1 + N_j) k_j``."""
    if not isinstance(k, MultiDegree):
        k = MultiDegree(c, tuple(k))
    elif k.crossing != c:
        raise LoopflagError(f"multi-degree is indexed by {k.crossing}, not {c}")
    consts = affine_levi_constants(rs, c)
    d = 4 * sum(((1 + consts.N[j]) * kj for j, kj in k.as_dict().items()), Fraction(0))
    if d.denominator != 1:
        raise AssertionError(f"formal degree {d} is not an integer")
    return int(d)


def instanton_dimension(rs: RootSystem, k: int) -> int:
    """``4 h^vee k``, the dimension of framed charge-``k`` instantons."""
    if k < 0:
        raise LoopflagError(f"instanton charge must be non-negative; got {k}")
    return 4 * rs.h_vee * k


def charges(k: int, j: Sequence[int]) -> tuple:
    """``(k + j_1, k + j_1 + j_2, ..., k + sum j, k)``."""
    out, acc = [], k
    for step in j:
        acc += step
        out.append(acc)
    return tuple(out) + (k,)


def hecke_degree_action(n: int, k: Sequence[int]) -> tuple:
    """Cyclic shift ``(k_1, ..., k_n) -> (k_n, k_1, ..., k_{n-1})``."""
    if n < 2:
        raise LoopflagError(f"need n >= 2; got {n}")
    if len(k) != n:
        raise LoopflagError(f"expected {n} degrees; got {len(k)}")
    k = tuple(k)
    return (k[-1],) + k[:-1]
