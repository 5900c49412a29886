"""Compiled extension and numpy fallback must agree numerically."""

import numpy as np
import pytest

from pwhankel import _kernels_py

_fastcore = pytest.importorskip(
    "pwhankel._fastcore", reason="compiled core not built"
)


@pytest.fixture()
def sample(rng):
    n_nodes = 400
    r = 0.0625
    angles = rng.uniform(-0.4, 0.4, size=n_nodes)
    radii = rng.uniform(1 - 2 * r, 1.0, size=n_nodes)
    x = np.ascontiguousarray(radii * np.cos(angles))
    y = np.ascontiguousarray(radii * np.sin(angles))
    sqw = np.ascontiguousarray(rng.uniform(0.001, 0.01, size=n_nodes))
    centers = np.array([[2.0 - r, 0.0], [0.0, 2.0 - r]])
    return x, y, sqw, centers, r


def test_psi_eval_matches(rng):
    t = np.ascontiguousarray(rng.uniform(0.0, 1.3, size=20_000))
    a = _kernels_py.psi_eval(t, 0.5, 1.0)
    b = _fastcore.psi_eval(t, 0.5, 1.0)
    np.testing.assert_allclose(a, b, rtol=1e-15, atol=0)


def test_phi_hat_sum_matches(sample):
    x, y, sqw, centers, r = sample
    a = _kernels_py.phi_hat_sum(x, y, centers, r, 0.5, 1.0)
    b = _fastcore.phi_hat_sum(x, y, centers, r, 0.5, 1.0)
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=0)


def test_hankel_matrix_matches(sample):
    x, y, sqw, centers, r = sample
    a = _kernels_py.hankel_matrix(x, y, sqw, x, y, sqw, centers, r, 0.5, 1.0)
    b = _fastcore.hankel_matrix(x, y, sqw, x, y, sqw, centers, r, 0.5, 1.0)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("n,power", [(4, 1), (16, 1), (5, 1), (8, 2)])
def test_phase_sector_matches(n, power):
    s = np.linspace(0.01, 40.0, 500)
    a = _kernels_py.phase_sector_lp(s, n, 2.0 - (2.0 / n) ** 2, power, 16, 8.0)
    b = _fastcore.phase_sector_lp(s, n, 2.0 - (2.0 / n) ** 2, power, 16, 8.0)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-13)


def test_backend_selection_env(tmp_path):
    import subprocess
    import sys

    code = "import pwhankel; print(pwhankel.backend_name())"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PWHANKEL_PURE": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
