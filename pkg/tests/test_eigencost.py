"""Spectral-data driving-norm evaluator."""

import numpy as np
import pytest

from conftest import random_hermitian
from ffscale import (
    ModulationParams,
    PhaseProfile,
    Rescaling,
    eigen_energies,
    eigenbasis_norm_sq,
    eigendecompose,
    fast_forward_norm_sq,
    finite_difference_frame,
    general_eigenbasis_norm_sq,
    linear_rescaling,
    magnetization_reversal,
    modulated_phase,
)


def test_reduces_to_two_level_closed_form():
    sched = magnetization_reversal(5.0, 0.1, 10.0)
    r = linear_rescaling(10.0, 1.0)
    phases = modulated_phase(ModulationParams.from_winding(5.0, 0.1, 10.0, 1.0, k=4))

    energies = lambda u: eigen_energies(sched)(u)

    def dh_elements(u):
        # dH/ds = omega' Z in the instantaneous eigenbasis:
        # diagonal omega' cos(theta), off-diagonal -omega' sin(theta)
        u = np.asarray(u, dtype=float)
        w, g = sched.omega(u), sched.gamma(u)
        wp = np.asarray(sched.domega_ds(u), dtype=float)
        hyp = np.hypot(w, g)
        cos_t, sin_t = w / hyp, g / hyp
        out = np.zeros(np.shape(u) + (2, 2), dtype=complex)
        out[..., 0, 0] = wp * cos_t
        out[..., 1, 1] = -wp * cos_t
        out[..., 0, 1] = -wp * sin_t
        out[..., 1, 0] = -wp * sin_t
        return out

    ts = np.linspace(0.0, 1.0, 41)
    general = general_eigenbasis_norm_sq(energies, dh_elements, phases, r, ts)
    closed = eigenbasis_norm_sq(sched, r, phases, ts)
    assert np.max(np.abs(general - closed) / closed) <= 1e-10


def test_equal_phases_leave_matching_term_only():
    sched = magnetization_reversal(5.0, 0.1, 10.0)
    r = linear_rescaling(10.0, 1.0)
    # same phase on both levels -> f_m - f_n = 0 kills the coupling term
    same = PhaseProfile.from_functions(
        ("E+", "E-"),
        lambda t: np.repeat(np.asarray(t, float)[..., np.newaxis], 2, axis=-1),
        lambda t: np.ones(np.shape(np.asarray(t)) + (2,)),
    )
    energies = eigen_energies(sched)
    dh = lambda u: np.ones(np.shape(np.asarray(u, float)) + (2, 2), dtype=complex)
    t = 0.3
    got = general_eigenbasis_norm_sq(energies, dh, same, r, t)
    e = energies(r.s(t))
    expected = float(np.sum((1.0 - r.ds_dt(t) * e) ** 2))
    assert got == pytest.approx(expected, rel=1e-12)


def _four_level_problem(seed: int):
    """Smooth nondegenerate 4-dim family with its spectral data."""
    rng = np.random.default_rng(seed)
    a = np.diag([0.0, 2.0, 4.0, 6.0]) + 0.3 * random_hermitian(rng, 4)
    b = 0.2 * random_hermitian(rng, 4)

    def ham(u):
        u = np.asarray(u, dtype=float)
        return a + u[..., np.newaxis, np.newaxis] * b

    def energies(u):
        if np.ndim(u) == 0:
            return eigendecompose(ham(u))[0]
        return np.stack([eigendecompose(ham(x))[0] for x in np.asarray(u, float)])

    def dh_elements(u):
        if np.ndim(u) == 0:
            v = eigendecompose(ham(u))[1]
            return v.conj().T @ b @ v
        return np.stack([dh_elements(x) for x in np.asarray(u, float)])

    return ham, energies, dh_elements


def test_matches_engine_through_instantaneous_eigenframe():
    seed = 6
    ham, energies, dh_elements = _four_level_problem(seed)
    r = linear_rescaling(2.0, 1.0)
    labels = ("e0", "e1", "e2", "e3")
    frame = finite_difference_frame(lambda t: eigendecompose(ham(r.s(t)))[1], labels)

    rng = np.random.default_rng(seed + 1)
    amps = rng.uniform(-1.5, 1.5, size=4)
    phases = PhaseProfile.from_functions(
        labels,
        lambda t: amps * np.sin(np.asarray(t, float))[..., np.newaxis],
        lambda t: amps * np.cos(np.asarray(t, float))[..., np.newaxis],
    )

    for t in (0.2, 0.5, 0.85):
        spectral = general_eigenbasis_norm_sq(energies, dh_elements, phases, r, t)
        engine = fast_forward_norm_sq(ham, r, frame, phases, t)
        assert spectral == pytest.approx(engine, rel=1e-5)


def test_degenerate_spectrum_rejected():
    r = linear_rescaling(1.0, 1.0)
    phases = PhaseProfile.zero(("a", "b"))
    energies = lambda u: np.array([1.0, 1.0 + 1e-14])
    dh = lambda u: np.zeros((2, 2), dtype=complex)
    with pytest.raises(ValueError):
        general_eigenbasis_norm_sq(energies, dh, phases, r, 0.5)


def test_level_count_mismatch_rejected():
    r = linear_rescaling(1.0, 1.0)
    phases = PhaseProfile.zero(("a", "b", "c"))
    energies = lambda u: np.array([0.0, 1.0])
    dh = lambda u: np.zeros((2, 2), dtype=complex)
    with pytest.raises(ValueError):
        general_eigenbasis_norm_sq(energies, dh, phases, r, 0.5)
