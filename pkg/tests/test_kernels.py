"""Integrator kernel backends: compiled vs pure numpy."""

import os
import subprocess
import sys

import numpy as np
import pytest

from conftest import random_hermitian
from ffscale import TimeGrid, evolve
from ffscale.kernels import BACKEND
from ffscale import _kernels_py


def _sample_problem(seed: int, dim: int, n_steps: int):
    """Half-step sampled Hamiltonian stack plus a normalized start state."""
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, dim)
    b = random_hermitian(rng, dim)
    ts = np.linspace(0.0, 1.0, 2 * n_steps + 1)
    hs = a[np.newaxis] + np.sin(ts)[:, np.newaxis, np.newaxis] * b[np.newaxis]
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return np.ascontiguousarray(hs), psi


def test_backend_reported():
    assert BACKEND in ("c", "python")


@pytest.mark.parametrize("seed,dim", [(0, 2), (1, 3), (2, 6)])
def test_compiled_matches_python(seed, dim):
    compiled = pytest.importorskip("ffscale._kernels")
    n = 40
    hs, psi = _sample_problem(seed, dim, n)
    dt = 1.0 / n
    psi_c = psi.copy()
    psi_p = psi.copy()
    out_c = np.empty((n, dim), dtype=complex)
    out_p = np.empty((n, dim), dtype=complex)
    compiled.rk4_chunk(hs, psi_c, dt, out_c)
    _kernels_py.rk4_chunk(hs, psi_p, dt, out_p)
    assert np.max(np.abs(out_c - out_p)) <= 1e-12
    assert np.max(np.abs(psi_c - psi_p)) <= 1e-12


def test_chunk_size_invariance():
    # chunking only batches the sampling; the step arithmetic is identical
    ham = lambda t: np.cos(t) * np.diag([1.0, -1.0]) + np.sin(0.7 * t) * np.array([[0, 1], [1, 0]])
    grid = TimeGrid(0.0, 1.0, 1000)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    a = evolve(ham, psi0, grid, chunk_steps=17)
    b = evolve(ham, psi0, grid, chunk_steps=4096)
    assert np.array_equal(a, b)


def test_env_override_forces_python_backend():
    env = dict(os.environ, FFSCALE_KERNEL="python")
    code = "import ffscale, sys; sys.exit(0 if ffscale.KERNEL_BACKEND == 'python' else 1)"
    proc = subprocess.run([sys.executable, "-c", code], env=env)
    assert proc.returncode == 0


def test_env_override_rejects_unknown_backend():
    env = dict(os.environ, FFSCALE_KERNEL="fortran")
    code = "import ffscale"
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode != 0
