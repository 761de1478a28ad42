"""Symmetries of extended Dynkin diagrams and their action on crossings."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .affine import Crossing, extended_cartan_matrix
from .errors import LoopflagError
from .rootsys import RootSystem


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Node permutation: node ``i`` is sent to ``perm[i]``."""

    perm: tuple

    @classmethod
    def identity(cls, n_nodes: int) -> "DiagramAutomorphism":
        return cls(tuple(range(n_nodes)))

    def __mul__(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """Composition: ``(self * other)(i) = self(other(i))``."""
        return DiagramAutomorphism(tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return DiagramAutomorphism(tuple(inv))

    def preserves(self, cartan) -> bool:
        p = self.perm
        n = len(p)
        return all(cartan[p[i]][p[j]] == cartan[i][j] for i in range(n) for j in range(n))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.perm)) + ")"


def automorphism_group(rs: RootSystem) -> list:
    """All node permutations preserving the extended Cartan matrix, identity first."""
    found = kernels.diagram_automorphisms(np.array(extended_cartan_matrix(rs), dtype=np.int64))
    return [DiagramAutomorphism(tuple(int(x) for x in row)) for row in found]


def is_exceptional(rs: RootSystem) -> bool:
    """D4: the extended diagram is a 4-star with the full S4 of symmetries."""
    return rs.family == "D" and rs.rank == 4


def act_on_crossing(sigma: DiagramAutomorphism, c: Crossing) -> Crossing:
    """``(sigma . c)(sigma(i)) = c(i)``."""
    if len(sigma.perm) != len(c.values):
        raise LoopflagError(f"automorphism on {len(sigma.perm)} nodes cannot act on a crossing of {len(c.values)} nodes")
    out = [0] * len(c.values)
    for i, v in enumerate(c.values):
        out[sigma.perm[i]] = v
    return Crossing(tuple(out))


def standardizable(rs: RootSystem, c: Crossing) -> Optional[DiagramAutomorphism]:
    """An automorphism moving ``c`` to a crossing through node 0, or None."""
    if not any(c.values):
        raise LoopflagError("the all-uncrossed crossing is the whole loop algebra; nothing to standardize")
    for sigma in automorphism_group(rs):
        if act_on_crossing(sigma, c).values[0] == 1:
            return sigma
    return None


def d_type_criterion(rs: RootSystem, c: Crossing) -> bool:
    """Standardizable iff the uncrossed set misses one of alpha_0, alpha_1, alpha_{n-1}, alpha_n."""
    n = rs.rank
    special = {0, 1, n - 1, n}
    return not special <= set(c.uncrossed)
