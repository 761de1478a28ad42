import os
import subprocess
import sys

import numpy as np
import pytest

from loopflag import kernels
from loopflag.affine import extended_cartan_matrix
from loopflag.rootsys import build_root_system
from loopflag.weyl import affine_weyl_group, enumerate_by_length


def stacked(rs, L):
    elems = [w for layer in enumerate_by_length(rs, L).values() for w in layer]
    Ms = np.stack([w.finite for w in elems])
    lams = np.stack([w.translation for w in elems])
    return elems, Ms, lams


@pytest.mark.parametrize("family,rank,L", [("A", 2, 7), ("C", 2, 7), ("B", 3, 5), ("D", 4, 4)])
def test_inversion_kernels_agree(family, rank, L):
    rs = build_root_system(family, rank)
    g = affine_weyl_group(rs)
    elems, Ms, lams = stacked(rs, L)
    a = kernels.inversion_counts_numba(Ms, lams, g.roots, g.posf)
    b = kernels.inversion_counts_numpy(Ms, lams, g.roots, g.posf, chunk=17)
    assert np.array_equal(a, b)
    for w, n in zip(elems[:50], a):
        assert kernels.inversion_count_numba(w.finite, w.translation, g.roots, g.posf) == n
        assert kernels.inversion_count_numpy(w.finite, w.translation, g.roots, g.posf) == n


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 5), ("B", 4), ("C", 6), ("D", 4), ("D", 7)])
def test_automorphism_kernels_agree(family, rank):
    A = np.array(extended_cartan_matrix(build_root_system(family, rank)), dtype=np.int64)
    a = {tuple(r) for r in kernels.diagram_automorphisms_numba(A)}
    b = {tuple(r) for r in kernels.diagram_automorphisms_numpy(A)}
    assert a == b
    assert tuple(range(rank + 1)) in a


def test_empty_batch():
    rs = build_root_system("A", 1)
    g = affine_weyl_group(rs)
    Ms = np.zeros((0, 2, 2), dtype=np.int64)
    lams = np.zeros((0, 2), dtype=np.int64)
    assert kernels.inversion_counts_numpy(Ms, lams, g.roots, g.posf).shape == (0,)


def backend_under(value):
    env = dict(os.environ, LOOPFLAG_KERNELS=value)
    code = "import loopflag; from loopflag import kernels; print(loopflag.BACKEND, kernels.inversion_count.__name__)"
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=False)


def test_env_flag_selects_numpy():
    proc = backend_under("numpy")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == ["numpy", "inversion_count_numpy"]


def test_env_flag_selects_numba():
    pytest.importorskip("numba")
    proc = backend_under("numba")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == ["numba", "inversion_count_numba"]


def test_env_flag_rejects_unknown_values():
    proc = backend_under("cuda")
    assert proc.returncode != 0
    assert "LOOPFLAG_KERNELS" in proc.stderr


def test_numpy_backend_runs_the_library():
    env = dict(os.environ, LOOPFLAG_KERNELS="numpy")
    code = (
        "from loopflag.rootsys import build_root_system\n"
        "from loopflag.weyl import enumerate_by_length\n"
        "from loopflag.autgrp import automorphism_group\n"
        "print([len(v) for v in enumerate_by_length(build_root_system('C', 2), 5).values()],"
        " len(automorphism_group(build_root_system('D', 4))))"
    )
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "[1, 3, 5, 8, 11, 13] 24"
