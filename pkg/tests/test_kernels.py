"""Compiled kernels and the numpy fallback must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from sffbound import _backend, _kernels_py

try:
    from sffbound import _kernels
except ImportError:  # pragma: no cover - extension not built
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def _reference_sums(e, w, om):
    ph = np.exp(-1j * np.outer(om, e))
    return np.array([ph @ (w * e**k) for k in range(3)])


def test_python_thermal_sums_reference(rng):
    e = rng.normal(size=50)
    w = rng.uniform(0.1, 1, size=50)
    om = np.linspace(-5, 5, 37)
    assert np.allclose(_kernels_py.thermal_sums(e, w, om), _reference_sums(e, w, om), rtol=1e-12, atol=1e-12)


@needs_ext
def test_thermal_sums_agree(rng):
    e = rng.normal(size=300)
    w = rng.uniform(0, 1, size=300)
    om = np.linspace(-40, 40, 501)
    a = _kernels.thermal_sums(e, w, om)
    b = _kernels_py.thermal_sums(e, w, om)
    assert a.shape == b.shape == (3, 501)
    assert np.max(np.abs(a - b)) < 1e-11 * np.max(np.abs(b))


@needs_ext
def test_laguerre_tables_agree():
    z = np.array([0.0, -3.0, 2 + 5j, -10j])
    a = _kernels.laguerre_table(40, 6, z)
    b = _kernels_py.laguerre_table(40, 6, z)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)


def test_backend_flag():
    assert _backend.BACKEND in ("compiled", "python")
    if _kernels is not None and os.environ.get("SFFBOUND_PURE_PYTHON", "") in ("", "0"):
        assert _backend.BACKEND == "compiled"


def test_pure_python_switch():
    env = dict(os.environ, SFFBOUND_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import sffbound; print(sffbound.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
