from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from drinfeld_semifields import kernels
from drinfeld_semifields.kernels import _gray_py

BACKENDS = kernels.backends()
compiled_only = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")


@st.composite
def stacks(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    k = draw(st.integers(1, 5))
    R = draw(st.integers(1, 4))
    Cc = draw(st.integers(1, 4))
    seed = draw(st.integers(0, 10 ** 6))
    rng = np.random.default_rng(seed)
    return p, rng.integers(0, p, (k, R, Cc))


def brute_scan(basis, p):
    """Ranks of all nonzero combinations in plain Python."""
    k = len(basis)
    ranks = []
    for t in range(1, p ** k):
        c = [(t // p ** i) % p for i in range(k)]
        W = sum(ci * B for ci, B in zip(c, basis)) % p
        ranks.append(oracles.fp_rank(W.tolist(), p))
    return ranks


@given(stacks())
def test_python_scan_matches_brute_force(data):
    p, basis = data
    ranks = brute_scan(basis, p)
    mr, defi, wit, scanned = _gray_py.gray_scan(basis, p, 0)
    full = min(basis.shape[1:])
    assert mr == min(ranks)
    assert defi == sum(r < full for r in ranks)
    assert scanned == len(ranks)
    W = np.tensordot(wit, basis, axes=1) % p
    assert oracles.fp_rank(W.tolist(), p) == mr


@compiled_only
@given(stacks(), st.integers(0, 4))
def test_backends_agree(data, stop):
    p, basis = data
    py = _gray_py.gray_scan(basis, p, stop)
    cc = BACKENDS["compiled"].gray_scan(basis, p, stop)
    assert py[0] == cc[0] and py[1] == cc[1] and py[3] == cc[3]
    if py[2] is not None:
        for w in (py[2], cc[2]):
            W = np.tensordot(w, basis, axes=1) % p
            assert oracles.fp_rank(W.tolist(), p) == py[0]


@compiled_only
@given(stacks())
def test_rank_backends_agree(data):
    p, basis = data
    M = basis.reshape(-1, basis.shape[-1])
    assert BACKENDS["compiled"].rank_mod_p(M, p) == _gray_py.rank_mod_p(M, p) == oracles.fp_rank(M.tolist(), p)


def test_early_stop():
    basis = np.array([np.eye(3, dtype=np.int64), np.diag([1, 1, 0])])
    for impl in BACKENDS.values():
        mr, _, wit, scanned = impl.gray_scan(basis, 2, 3)
        assert mr < 3 and scanned <= 3


def test_backend_forced_by_environment():
    env = dict(os.environ, DRINFELD_SEMIFIELDS_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "from drinfeld_semifields import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_default_backend():
    expected = "compiled" if "compiled" in BACKENDS and os.environ.get("DRINFELD_SEMIFIELDS_BACKEND") != "python" else "python"
    assert kernels.BACKEND == expected
