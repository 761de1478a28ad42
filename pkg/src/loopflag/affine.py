"""Crossings on the extended diagram and the parabolics they determine.

A crossing assigns 0 or 1 to each node of the extended Dynkin diagram (node 0
is the affine root ``delta - theta``).  Extended Z-linearly it gives a grading
``chi`` on affine roots ``n delta + alpha``; the parabolic subalgebra is the
sum of the root spaces with ``chi >= 0`` plus the Cartan part.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LoopflagError
from .rootsys import RootSystem

STANDARD = "standard"
EXOTIC = "exotic"
IMPROPER = "improper"


@dataclass(frozen=True)
class Crossing:
    """0/1 values on the extended nodes ``0..rank`` (1 = crossed)."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise LoopflagError("a crossing needs at least one node")
        if any(v not in (0, 1) for v in self.values):
            raise LoopflagError(f"crossing values must be 0 or 1; got {self.values}")

    @classmethod
    def from_crossed(cls, rank: int, crossed: Iterable[int]) -> "Crossing":
        crossed = set(crossed)
        bad = [i for i in crossed if not 0 <= i <= rank]
        if bad:
            raise LoopflagError(f"nodes {sorted(bad)} are outside the extended node set 0..{rank}")
        return cls(tuple(1 if i in crossed else 0 for i in range(rank + 1)))

    @classmethod
    def all_for(cls, rank: int) -> list:
        """Every crossing on ``rank + 1`` nodes, in binary order."""
        return [cls(tuple((m >> i) & 1 for i in range(rank + 1))) for m in range(2 ** (rank + 1))]

    @property
    def rank(self) -> int:
        return len(self.values) - 1

    @property
    def crossed(self) -> tuple:
        return tuple(i for i, v in enumerate(self.values) if v)

    @property
    def uncrossed(self) -> tuple:
        return tuple(i for i, v in enumerate(self.values) if not v)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.crossed)) + "}"


def _check(c: Crossing, rs: RootSystem) -> None:
    if c.rank != rs.rank:
        raise LoopflagError(f"crossing has {len(c.values)} nodes but {rs.label} has {rs.rank + 1} extended nodes")


def chi_finite(c: Crossing, rs: RootSystem, alpha: Sequence[int]) -> int:
    """chi on a finite root-lattice vector via its simple-root expansion."""
    if not any(alpha):
        return 0
    return sum(v * k for v, k in zip(c.values[1:], rs.coefficients(alpha)))


def chi_delta(c: Crossing, rs: RootSystem) -> int:
    """chi(delta) = chi(alpha_0) + chi(theta)."""
    return c.values[0] + chi_finite(c, rs, rs.theta)


def chi_affine(c: Crossing, rs: RootSystem, n: int, alpha: Sequence[int]) -> int:
    """chi(n delta + alpha)."""
    _check(c, rs)
    # coefficients() rejects vectors outside the root lattice
    return n * chi_delta(c, rs) + chi_finite(c, rs, tuple(alpha))


@dataclass(frozen=True)
class AffineParabolic:
    crossing: Crossing
    klass: str
    delta_chi: tuple
    finite_parabolic_roots: frozenset
    q_chi_roots: frozenset


@dataclass(frozen=True)
class GradedPiece:
    """Root data of the ``z^n`` piece of a parabolic.

    ``cartan`` records whether ``z^n`` times the Cartan subalgebra is included.
    """

    roots: frozenset
    cartan: bool


def classify_parabolic(c: Crossing, rs: RootSystem) -> AffineParabolic:
    _check(c, rs)
    if not any(c.values):
        klass = IMPROPER
    elif c.values[0] == 1:
        klass = STANDARD
    else:
        klass = EXOTIC
    chi_theta = chi_finite(c, rs, rs.theta)
    finite = frozenset(a for a in rs.roots if chi_finite(c, rs, a) >= 0)
    # level -1 is non-negative only when chi(alpha_0) = 0 and chi(alpha) = chi(theta)
    if c.values[0] == 0:
        q = frozenset(a for a in rs.roots if chi_finite(c, rs, a) == chi_theta)
    else:
        q = frozenset()
    return AffineParabolic(
        crossing=c,
        klass=klass,
        delta_chi=c.uncrossed,
        finite_parabolic_roots=finite,
        q_chi_roots=q,
    )


def graded_component(p: AffineParabolic, rs: RootSystem, n: int) -> GradedPiece:
    """Brute-force ``{alpha : chi(n delta + alpha) >= 0}`` over all roots and 0."""
    c = p.crossing
    roots = frozenset(a for a in rs.roots if chi_affine(c, rs, n, a) >= 0)
    return GradedPiece(roots=roots, cartan=n * chi_delta(c, rs) >= 0)


def graded_component_closed_form(p: AffineParabolic, rs: RootSystem, n: int) -> GradedPiece:
    """The same piece read off from the level-by-level case analysis."""
    if p.klass == IMPROPER:
        return GradedPiece(frozenset(rs.roots), True)
    if n <= -2:
        return GradedPiece(frozenset(), False)
    if n == -1:
        return GradedPiece(p.q_chi_roots, False)
    if n == 0:
        return GradedPiece(p.finite_parabolic_roots, True)
    return GradedPiece(frozenset(rs.roots), True)


def in_unipotent(c: Crossing, rs: RootSystem, n: int, alpha: Sequence[int]) -> bool:
    """Whether the affine root ``n delta + alpha`` belongs to the unipotent radical."""
    return chi_affine(c, rs, n, alpha) > 0


def extended_simple_roots(rs: RootSystem) -> tuple:
    """Finite parts of ``alpha_0, ..., alpha_r``; ``alpha_0 = delta - theta`` contributes ``-theta``."""
    return (tuple(-x for x in rs.theta),) + rs.simple_roots


def extended_cartan_matrix(rs: RootSystem) -> tuple:
    """``a[i][j] = <alpha_i^vee, alpha_j>`` over the extended nodes ``0..rank``."""
    simple = extended_simple_roots(rs)
    dot = lambda v, w: sum(a * b for a, b in zip(v, w))  # noqa: E731
    return tuple(
        tuple(2 * dot(a, b) // dot(a, a) for b in simple)
        for a in simple
    )
