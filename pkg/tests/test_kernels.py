"""The compiled kernels and the Python fallback must agree everywhere."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from braidcrypt import _kernels_py, kernels

_ckernels = pytest.importorskip("braidcrypt._ckernels")

perms = st.integers(2, 9).flatmap(lambda n: st.permutations(range(n)).map(tuple))
perm_pairs = st.integers(2, 9).flatmap(
    lambda n: st.tuples(st.permutations(range(n)).map(tuple), st.permutations(range(n)).map(tuple))
)
letter_lists = st.integers(2, 9).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from((i, -i))), max_size=40).map(tuple),
    )
)


@given(perms)
def test_unary(p):
    for name in ("inverse", "tau", "inversions"):
        assert getattr(_ckernels, name)(p) == getattr(_kernels_py, name)(p)


@given(perm_pairs)
def test_binary(pq):
    p, q = pq
    for name in ("compose", "meet", "slide"):
        assert getattr(_ckernels, name)(p, q) == getattr(_kernels_py, name)(p, q)


@given(letter_lists)
def test_normal_form(nw):
    n, letters = nw
    assert _ckernels.word_factors(n, letters) == _kernels_py.word_factors(n, letters)
    assert _ckernels.left_normal_form(n, letters) == _kernels_py.left_normal_form(n, letters)


@given(st.integers(2, 7).flatmap(lambda n: st.lists(st.permutations(range(n)).map(tuple), max_size=8)))
def test_normalize(factors):
    assert _ckernels.normalize(factors) == _kernels_py.normalize(factors)


@given(perm_pairs)
def test_slide_left_weights(pq):
    u, v = pq
    ku = _kernels_py
    if ku.inversions(ku.compose(u, v)) != ku.inversions(u) + ku.inversions(v):
        return  # not a positive product of the two
    a, b = ku.slide(u, v)
    assert ku.compose(a, b) == ku.compose(u, v)
    assert ku.inversions(a) + ku.inversions(b) == ku.inversions(u) + ku.inversions(v)
    n = len(u)
    complement = ku.compose(ku.inverse(a), tuple(range(n - 1, -1, -1)))
    assert ku.meet(complement, b) == tuple(range(n))


def test_backend_choice():
    forced = os.environ.get("BRAIDCRYPT_PURE", "") not in ("", "0")
    assert kernels.BACKEND == ("python" if forced else "cython")


def test_env_forces_fallback():
    code = "from braidcrypt import kernels, left_normal_form, BraidWord; print(kernels.BACKEND, left_normal_form(BraidWord(4,(1,-3,2))).serial)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={**os.environ, "BRAIDCRYPT_PURE": "1"},
        capture_output=True,
        text=True,
        check=True,
    ).stdout.strip()
    assert out == "python B4: D^-1 | 3 4 2 1 | 3 1 2 4"
