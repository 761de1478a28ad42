from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from loopflag import LoopflagError
from loopflag.affine import Crossing, classify_parabolic, graded_component
from loopflag.autgrp import act_on_crossing
from loopflag.laurent import (
    LaurentMatrix,
    conjugate_outer,
    conjugator,
    entry_weight,
    flip_demo,
    induced_node_permutation,
    matrix_size,
    monomial_inverse,
    parabolic_membership,
    symmetry_check,
    window,
)
from loopflag.rootsys import build_root_system

LEVELS = range(-1, 3)


def random_member(rs, c, rng, symmetric_family=None):
    """Random loop in the parabolic of ``c``: fill every allowed slot at levels -1..2."""
    size = matrix_size(rs)
    p = classify_parabolic(c, rs)
    coeffs = {}
    for k in LEVELS:
        piece = graded_component(p, rs, k)
        m = np.zeros((size, size), dtype=object)
        m[:] = Fraction(0)
        for a in range(size):
            for b in range(size):
                allowed = piece.cartan if a == b else entry_weight(rs, a, b) in piece.roots
                if allowed:
                    m[a, b] = Fraction(int(rng.integers(-4, 5)))
        if symmetric_family is not None:
            m = project(m, symmetric_family)
        coeffs[k] = m
    return LaurentMatrix.from_z(coeffs, size)


def project(m, family):
    """Average ``m`` with its image under the form's adjoint so the result is in the Lie algebra."""
    size = m.shape[0]
    last, n = size - 1, size // 2
    out = np.empty_like(m)
    for a in range(size):
        for b in range(size):
            s = 1 if family != "sp" or (a < n) == (b < n) else -1
            out[a, b] = (m[a, b] - s * m[last - b, last - a]) / 2
    return out


CASES = [
    ("A", 1, "flip_sl2"),
    ("A", 2, "shift_sln"),
    ("A", 3, "shift_sln"),
    ("D", 4, "slip_so2n"),
    ("D", 5, "slip_so2n"),
    ("D", 4, "perm_so"),
    ("D", 5, "perm_so"),
    ("D", 4, "perm_so_shifted"),
    ("D", 5, "perm_so_shifted"),
    ("C", 2, "slip_so2n"),
    ("C", 3, "slip_so2n"),
    ("B", 3, "perm_so_shifted"),
    ("B", 2, "perm_so_shifted"),
]


@pytest.mark.parametrize("family,rank,kind", CASES)
def test_conjugation_moves_parabolics_along_the_node_map(family, rank, kind):
    rs = build_root_system(family, rank)
    sigma = induced_node_permutation(kind, rank)
    rng = np.random.default_rng(rank)
    for c in Crossing.all_for(rank)[1:]:
        target = act_on_crossing(sigma, c)
        g = random_member(rs, c, rng)
        assert parabolic_membership(g, rs, c)
        h = conjugate_outer(g, kind)
        assert parabolic_membership(h, rs, target), c
        assert conjugate_outer(h, kind, inverse=True) == g


@pytest.mark.parametrize("family,rank,kind", CASES)
def test_node_map_is_a_diagram_automorphism(family, rank, kind):
    from loopflag.affine import extended_cartan_matrix

    sigma = induced_node_permutation(kind, rank)
    assert sigma.preserves(extended_cartan_matrix(build_root_system(family, rank)))


@pytest.mark.parametrize("family,rank,kind", CASES)
def test_conjugation_respects_brackets(family, rank, kind):
    rs = build_root_system(family, rank)
    rng = np.random.default_rng(100 + rank)
    full = Crossing((0,) * (rank + 1))
    samples = [random_member(rs, full, rng) for _ in range(20)]
    for g, h in zip(samples[::2], samples[1::2]):
        lhs = conjugate_outer(g.bracket(h), kind)
        rhs = conjugate_outer(g, kind).bracket(conjugate_outer(h, kind))
        assert lhs == rhs


@pytest.mark.parametrize(
    "family,rank,kind,sym",
    [("D", 4, "slip_so2n", "so_even"), ("D", 4, "perm_so", "so_even"), ("D", 5, "perm_so_shifted", "so_even"),
     ("C", 3, "slip_so2n", "sp"), ("B", 3, "perm_so_shifted", "so_odd")],
)
def test_conjugation_preserves_the_form(family, rank, kind, sym):
    rs = build_root_system(family, rank)
    rng = np.random.default_rng(7)
    full = Crossing((0,) * (rank + 1))
    for _ in range(5):
        g = random_member(rs, full, rng, symmetric_family=sym)
        assert symmetry_check(g, sym)
        assert symmetry_check(conjugate_outer(g, kind), sym)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shift_n_times_is_the_identity(n):
    rs = build_root_system("A", n - 1)
    g = random_member(rs, Crossing((0,) * n), np.random.default_rng(n))
    h = g
    for _ in range(n):
        h = conjugate_outer(h, "shift_sln")
    assert h == g


def test_flip_worked_example():
    out = flip_demo(levels=3)
    assert out["borel_in_borel"] and out["flip_borel_in_borel"]
    assert out["p1_in_p1"] and out["flip_p1_in_p2"]
    assert not out["flip_p1_in_p1"]
    assert out["flipped_p1"].z_powers()[0] == -1


def test_flip_on_symbols_directly():
    a, b, c, d = sympy.symbols("a b c d")
    g = LaurentMatrix.from_z({0: [[a, b], [0, -a]], 1: [[c, d], [d, c]]})
    h = conjugate_outer(g, "flip_sl2")
    assert h.z_coefficient(0)[0, 0] == -a
    assert h.z_coefficient(0)[1, 1] == a
    assert h.z_coefficient(1)[1, 0] == b
    assert h.z_coefficient(0)[0, 1] == d


def test_membership_examples():
    rs = build_root_system("A", 1)
    borel = LaurentMatrix.from_z({0: [[1, 2], [0, -1]], 1: [[3, 4], [5, 6]]})
    assert parabolic_membership(borel, rs, Crossing((1, 1)))
    pole_up = LaurentMatrix.from_z({-1: [[0, 1], [0, 0]]})
    assert parabolic_membership(pole_up, rs, Crossing((0, 1)))
    pole_down = LaurentMatrix.from_z({-1: [[1, 0], [1, 1]]})
    for c in (Crossing((1, 0)), Crossing((0, 1)), Crossing((1, 1))):
        assert not parabolic_membership(pole_down, rs, c)
    with pytest.raises(LoopflagError):
        parabolic_membership(LaurentMatrix.identity(3), rs, Crossing((1, 1)))


def test_symmetry_examples():
    e12 = np.zeros((4, 4), dtype=np.int64)
    e12[0, 1] = 1
    both = e12.copy()
    both[2, 3] = -1
    assert symmetry_check(LaurentMatrix.zero(4), "so_even")
    assert symmetry_check(LaurentMatrix.from_z({0: both}), "so_even")
    assert not symmetry_check(LaurentMatrix.from_z({0: e12}), "so_even")
    with pytest.raises(LoopflagError):
        symmetry_check(LaurentMatrix.zero(3), "sp")
    with pytest.raises(LoopflagError):
        symmetry_check(LaurentMatrix.zero(4), "so_odd")
    with pytest.raises(LoopflagError):
        symmetry_check(LaurentMatrix.zero(4), "gl")


def test_window_examples():
    m0 = [[1, 2], [3, 4]]
    w = window(LaurentMatrix.from_z({0: m0}), -1, 1)
    for (i, j), blk in w.blocks.items():
        assert (blk.tolist() == m0) == (i == j)
        if i != j:
            assert not blk.any()
    w = window(LaurentMatrix.from_z({1: m0}), 0, 1)
    nonzero = [key for key, blk in w.blocks.items() if blk.any()]
    # row-vector action: e_p z^i goes to level i + 1, so block [i, j] is C_{j - i}
    assert nonzero == [(0, 1)]
    assert w.scalar_entry(1, 2) == 3
    with pytest.raises(LoopflagError):
        window(LaurentMatrix.identity(2), 2, 1)
    with pytest.raises(LoopflagError):
        w.scalar_entry(0, 9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shift_is_a_unit_translation_of_the_window(n):
    rs = build_root_system("A", n - 1)
    g = random_member(rs, Crossing((0,) * n), np.random.default_rng(3 * n))
    wg = window(g, -4, 4)
    wh = window(conjugate_outer(g, "shift_sln"), -4, 4)
    wi = window(conjugate_outer(g, "shift_sln", inverse=True), -4, 4)
    assert wg.is_periodic() and wh.is_periodic()
    inner = range(n * -3, n * 3)
    for a in inner:
        for b in inner:
            assert wh.scalar_entry(a, b) == wg.scalar_entry(a - 1, b - 1)
            assert wi.scalar_entry(a, b) == wg.scalar_entry(a + 1, b + 1)


def test_window_product_is_matrix_product():
    rng = np.random.default_rng(5)
    rs = build_root_system("A", 1)
    g = random_member(rs, Crossing((0, 0)), rng)
    h = random_member(rs, Crossing((0, 0)), rng)
    wide, inner = 8, 2
    wg, wh, wgh = window(g, -wide, wide), window(h, -wide, wide), window(g * h, -wide, wide)
    span = wg.scalar_range()
    for a in range(2 * -inner, 2 * inner):
        for b in range(2 * -inner, 2 * inner):
            assert wgh.scalar_entry(a, b) == sum(wg.scalar_entry(a, t) * wh.scalar_entry(t, b) for t in span)


def test_laurent_arithmetic_and_errors():
    x = conjugator("shift_sln", 3)
    assert x.root_order == 3
    assert (x * monomial_inverse(x)).to_z() == LaurentMatrix.identity(3)
    with pytest.raises(AssertionError):
        x.to_z()
    with pytest.raises(LoopflagError):
        conjugate_outer(x, "shift_sln")
    with pytest.raises(LoopflagError):
        conjugator("twist", 2)
    with pytest.raises(LoopflagError):
        conjugator("flip_sl2", 3)
    with pytest.raises(LoopflagError):
        LaurentMatrix.identity(2) + LaurentMatrix.identity(3)
    with pytest.raises(LoopflagError):
        monomial_inverse(LaurentMatrix.from_z({0: [[1, 1], [0, 1]]}))
    assert (LaurentMatrix.identity(2) - LaurentMatrix.identity(2)).is_zero()


small_mats = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(lambda v: [v[:2], v[2:]])
laurent2 = st.dictionaries(st.integers(-2, 2), small_mats, max_size=3).map(lambda d: LaurentMatrix.from_z(d, 2))


@settings(max_examples=40)
@given(laurent2, laurent2, laurent2)
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f.bracket(g) == -(g.bracket(f))
    assert f.bracket(g.bracket(h)) + g.bracket(h.bracket(f)) + h.bracket(f.bracket(g)) == LaurentMatrix.zero(2)


@settings(max_examples=40)
@given(laurent2, laurent2)
def test_flip_is_an_algebra_automorphism(f, g):
    assert conjugate_outer(f * g, "flip_sl2") == conjugate_outer(f, "flip_sl2") * conjugate_outer(g, "flip_sl2")
    assert conjugate_outer(conjugate_outer(f, "flip_sl2"), "flip_sl2") == f


@pytest.mark.parametrize("n", [2, 3, 5])
def test_shift_conjugator_power_is_the_identity(n):
    x = conjugator("shift_sln", n)
    p = x
    for _ in range(n - 1):
        p = p * x
    assert p.to_z() == LaurentMatrix.identity(n)
