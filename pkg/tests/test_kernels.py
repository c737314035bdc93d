import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qvac import _kernels
from qvac.quadrature import gauss_legendre

cython = pytest.importorskip("qvac._ckernels")


@given(st.integers(1, 40), st.integers(1, 300), st.floats(0.0, 500.0), st.booleans(),
       st.integers(0, 2 ** 32 - 1))
def test_backends_agree(n_w, n_p, w_max, use_sin, seed):
    rng = np.random.default_rng(seed)
    x, _ = gauss_legendre(16)
    omegas = np.sort(rng.uniform(0, w_max, n_w))
    halves = np.repeat(rng.uniform(1e-3, 0.5, 3), n_p)[: n_p]
    mids = np.cumsum(2 * halves) - halves
    a = rng.normal(size=(n_p, x.size))
    py = _kernels.get_backend("python").panel_trig_sum(omegas, mids, halves, x, a, use_sin)
    cy = _kernels.get_backend("cython").panel_trig_sum(omegas, mids, halves, x, a, use_sin)
    scale = np.sum(np.abs(a))
    assert np.allclose(cy, py, rtol=0, atol=1e-13 * scale)


def test_env_selects_pure_python():
    code = "import qvac; print(qvac.BACKEND)"
    env = dict(os.environ, QVAC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.get_backend("fortran")
