import os
import subprocess
import sys

import numpy as np
import pytest

from defect_forge.numerics import _kernels_py as pure
from defect_forge.numerics import kernels
from defect_forge.numerics.expsum import ExpSum

compiled = kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _packed(src):
    return ExpSum.parse(src).pack()


SOURCES = ["exp(z) - 1", "(z^2 + 1/3)*exp(z^2 - 2*z) + z*exp(5*z) - 7", "exp(40*z) + exp(-40*z) + z^9"]


@needs_compiled
@pytest.mark.parametrize("src", SOURCES)
def test_eval_agrees(src):
    E, C, Dd = _packed(src)
    rng = np.random.default_rng(0)
    z = rng.normal(size=500) * 20 + 1j * rng.normal(size=500) * 20
    a = compiled.eval_expsum(z, E, C, Dd)
    b = pure.eval_expsum(z, E, C, Dd)
    assert np.allclose(a[2], b[2], rtol=1e-13, atol=1e-12)
    assert np.allclose(a[0], b[0], rtol=1e-10, atol=1e-12)
    assert np.allclose(a[1], b[1], rtol=1e-10, atol=1e-12)


@needs_compiled
def test_phase_kernels_agree():
    rng = np.random.default_rng(1)
    w = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    s = rng.normal(size=1000)
    assert np.allclose(compiled.arg_steps(w), pure.arg_steps(w), atol=1e-14)
    ta, wa = compiled.winding(w)
    tb, wb = pure.winding(w)
    assert abs(ta - tb) < 1e-9 and abs(wa - wb) < 1e-14
    w[3] = 0
    la, lb = compiled.log_abs(w, s), pure.log_abs(w, s)
    assert np.isneginf(la[3]) and np.isneginf(lb[3])
    assert np.allclose(la[np.isfinite(la)], lb[np.isfinite(lb)], rtol=1e-14)


def test_pure_switch():
    env = dict(os.environ, DEFECT_FORGE_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from defect_forge.numerics import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
    assert (kernels.BACKEND == "cython") == (kernels.compiled is not None)
