import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhgalg import kernels
from mhgalg.kernels import _numpy

from conftest import MAIN, metric_spaces, relabelled

needs_numba = pytest.mark.skipif(kernels.numba_impl is None, reason="numba unavailable")


@needs_numba
@settings(max_examples=200, deadline=None)
@given(metric_spaces(max_n=6, max_d=4))
def test_backends_agree_on_canonical_form(A):
    D = np.ascontiguousarray(A.matrix)
    assert (kernels.numba_impl.refine_colors(D) == _numpy.refine_colors(D)).all()
    assert (kernels.numba_impl.canonical_entries(D) == _numpy.canonical_entries(D)).all()


@needs_numba
@settings(max_examples=60, deadline=None)
@given(metric_spaces(max_n=5, max_d=3))
def test_backends_agree_on_extensions(A):
    D = np.ascontiguousarray(A.matrix)
    T = MAIN.allowed_table
    ra = _numpy.extension_rows(D, T, 3)
    rb = kernels.numba_impl.extension_rows(D, T, 3)
    assert ra.shape == rb.shape and (ra == rb).all()
    assert (_numpy.canon_batch(D, ra) == kernels.numba_impl.canon_batch(D, rb)).all()


@pytest.mark.parametrize("impl", ["numpy", "numba"])
@settings(max_examples=80, deadline=None)
@given(data=relabelled(max_n=6, max_d=4))
def test_canonical_entries_ignore_labelling(impl, data):
    mod = _numpy if impl == "numpy" else kernels.numba_impl
    if mod is None:
        pytest.skip("numba unavailable")
    A, perm = data
    D = np.ascontiguousarray(A.matrix)
    p = np.asarray(perm, dtype=np.int64)
    assert (mod.canonical_entries(D[np.ix_(p, p)]) == mod.canonical_entries(D)).all()


def test_refined_colours_are_an_isometry_invariant():
    D = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], dtype=np.int64)
    cols = kernels.refine_colors(D)
    assert cols[0] == cols[2] != cols[1]


@settings(max_examples=40, deadline=None)
@given(metric_spaces(max_n=4, max_d=3))
def test_extension_rows_match_brute_force(A):
    D = np.ascontiguousarray(A.matrix)
    T = MAIN.allowed_table
    expected = [
        r for r in itertools.product(range(1, 4), repeat=A.n)
        if all(T[D[i, j], r[i], r[j]] for i, j in itertools.combinations(range(A.n), 2))
    ]
    got = [tuple(r) for r in kernels.extension_rows(D, T, 3)]
    assert got == expected


def test_env_flag_forces_numpy():
    env = dict(os.environ, MHGALG_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import mhgalg.kernels as k; print(k.USE_NUMBA, k.impl.__name__)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["False", "mhgalg.kernels._numpy"]


def test_numpy_path_reproduces_small_profile():
    env = dict(os.environ, MHGALG_DISABLE_NUMBA="1")
    code = (
        "from mhgalg.params import ParameterSequence as P;"
        "from mhgalg.enumeration import profile;"
        "print(list(profile(P(3,1,3,10,11), 5)))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[1, 1, 3, 9, 48, 363]"
