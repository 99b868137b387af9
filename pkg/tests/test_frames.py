"""Measurement frames: construction, validation, derivative couplings."""

import numpy as np
import pytest

from conftest import random_unitary
from ffscale import (
    finite_difference_frame,
    frame_from_columns,
    rotating_frame,
    standard_frame,
)


def test_standard_frame_identity_basis():
    frame = standard_frame(3)
    assert frame.labels == (0, 1, 2)
    assert not frame.time_dependent
    assert np.array_equal(frame.basis(0.7), np.eye(3, dtype=complex))
    assert frame.basis(np.array([0.0, 1.0, 2.0])).shape == (3, 3, 3)
    assert np.array_equal(frame.coupling_matrix(0.3), np.zeros((3, 3)))
    frame.validate(np.linspace(0.0, 1.0, 5))


def test_frame_from_columns_validation():
    u = random_unitary(np.random.default_rng(2), 4)
    frame = frame_from_columns(u, labels=("a", "b", "c", "d"))
    frame.validate([0.0, 0.5])
    skewed = u.copy()
    skewed[:, 0] *= 1.01
    with pytest.raises(ValueError):
        frame_from_columns(skewed).validate([0.0])


def test_rotating_frame_matches_analytic_rotation():
    # generator [[0, w], [-w, 0]] spins the columns by angle w t
    w = 0.8
    gen = w * np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    frame = rotating_frame(np.eye(2, dtype=complex), gen)
    assert frame.time_dependent
    for t in (0.0, 0.4, 1.7):
        c, s = np.cos(w * t), np.sin(w * t)
        expected = np.array([[c, s], [-s, c]], dtype=complex)
        assert np.allclose(frame.basis(t), expected, atol=1e-12)
    frame.validate(np.linspace(0.0, 2.0, 7))


@pytest.mark.parametrize("seed,dim", [(1, 2), (5, 3), (9, 5)])
def test_rotating_frame_coupling_vs_finite_difference(seed, dim):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    gen = 0.5 * (a - a.conj().T)  # anti-Hermitian
    cols0 = random_unitary(rng, dim)
    frame = rotating_frame(cols0, gen)
    fd = finite_difference_frame(frame.basis, frame.labels)
    for t in (0.1, 0.9, 2.3):
        g_exact = frame.coupling_matrix(t)
        g_fd = fd.coupling_matrix(t)
        assert np.allclose(g_exact, g_fd, atol=1e-6)
        # derivative coupling of an orthonormal family is anti-Hermitian
        assert np.max(np.abs(g_exact + g_exact.conj().T)) <= 1e-12


def test_rotating_frame_rejects_non_antihermitian_generator():
    with pytest.raises(ValueError):
        rotating_frame(np.eye(2, dtype=complex), np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))


def test_frame_label_count_must_match():
    with pytest.raises(ValueError):
        frame_from_columns(np.eye(3, dtype=complex), labels=("x", "y"))
