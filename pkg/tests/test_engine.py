"""Fast-forward engine: Hamiltonian assembly, norms, phases, costs."""

import numpy as np
import pytest

from conftest import random_hermitian, random_unitary
from ffscale import (
    CumulativeIntegral,
    PhaseProfile,
    Rescaling,
    TimeGrid,
    composite_simpson,
    cost_report,
    fast_forward_hamiltonian,
    fast_forward_norm,
    fast_forward_norm_sq,
    frame_from_columns,
    hs_norm,
    hs_norm_sq,
    instantaneous_cost,
    linear_rescaling,
    optimal_phase,
    phase_unitary,
    probability_invariance_deviation,
    rotating_frame,
    simplest_fast_forward,
    standard_frame,
    total_cost,
    variance_norm,
)
from ffscale.two_level import hamiltonian_fn, magnetization_reversal, pauli_z_frame


def _smooth_hamiltonian(seed: int, dim: int):
    """H(u) = A + u B + sin(u) C with fixed Hermitian pieces."""
    rng = np.random.default_rng(seed)
    a, b, c = (random_hermitian(rng, dim) for _ in range(3))

    def ham(u):
        u = np.asarray(u, dtype=float)
        return (
            a
            + u[..., np.newaxis, np.newaxis] * b
            + np.sin(u)[..., np.newaxis, np.newaxis] * c
        )

    return ham


def _seeded_phases(seed: int, labels):
    rng = np.random.default_rng(seed)
    amps = rng.uniform(-2.0, 2.0, size=len(labels))
    freqs = rng.uniform(0.5, 3.0, size=len(labels))

    def value(t):
        t = np.asarray(t, dtype=float)[..., np.newaxis]
        return amps * np.sin(freqs * t)

    def rate(t):
        t = np.asarray(t, dtype=float)[..., np.newaxis]
        return amps * freqs * np.cos(freqs * t)

    return PhaseProfile.from_functions(tuple(labels), value, rate)


def _build_phase_unitary(frame, phases, t):
    """Independent route: sum_k e^{i f_k} |k><k| from raw columns."""
    cols = frame.basis(t)
    f = phases.value(t)
    u = np.zeros((frame.dim, frame.dim), dtype=complex)
    for k in range(frame.dim):
        u += np.exp(1j * f[k]) * np.outer(cols[:, k], cols[:, k].conj())
    return u


def test_phase_unitary_examples():
    frame = pauli_z_frame()
    phases = _seeded_phases(3, frame.labels)
    for t in (0.0, 0.7):
        u = phase_unitary(frame, phases, t)
        assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-14)
        f = phases.value(t)
        assert np.allclose(u, np.diag(np.exp(1j * f)), atol=1e-14)
    batched = phase_unitary(frame, phases, np.array([0.0, 0.7]))
    assert batched.shape == (2, 2, 2)


def test_simplest_fast_forward_is_sped_up_hamiltonian():
    ham = _smooth_hamiltonian(0, 3)
    r = linear_rescaling(2.0, 1.0)
    ff = simplest_fast_forward(ham, r)
    for t in (0.0, 0.3, 1.0):
        assert np.allclose(ff(t), 2.0 * ham(2.0 * t), atol=1e-14)


def test_zero_phase_standard_frame_reduces_to_simplest():
    ham = _smooth_hamiltonian(1, 4)
    r = linear_rescaling(3.0, 1.0)
    frame = standard_frame(4)
    phases = PhaseProfile.zero(frame.labels)
    ff = simplest_fast_forward(ham, r)
    for t in (0.1, 0.8):
        built = fast_forward_hamiltonian(ham, r, frame, phases, t)
        assert np.allclose(built, ff(t), atol=1e-12)


@pytest.mark.parametrize("seed,dim", [(2, 2), (3, 4), (4, 6)])
def test_hamiltonian_matches_derivative_identity(seed, dim):
    # independent oracle: (ds/dt) U_f H U_f^+ + i (dU_f/dt) U_f^+ with the
    # unitary differentiated by central differences
    rng = np.random.default_rng(seed)
    ham = _smooth_hamiltonian(seed, dim)
    r = linear_rescaling(2.0, 1.0)
    gen_raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    frame = rotating_frame(random_unitary(rng, dim), 0.5 * (gen_raw - gen_raw.conj().T))
    phases = _seeded_phases(seed + 10, frame.labels)

    step = 1e-6
    for t in (0.2, 0.55, 0.9):
        u0 = _build_phase_unitary(frame, phases, t)
        du = (_build_phase_unitary(frame, phases, t + step) - _build_phase_unitary(frame, phases, t - step)) / (
            2 * step
        )
        oracle = r.ds_dt(t) * u0 @ ham(r.s(t)) @ u0.conj().T + 1j * du @ u0.conj().T
        built = fast_forward_hamiltonian(ham, r, frame, phases, t)
        assert np.max(np.abs(built - built.conj().T)) <= 1e-12
        assert np.max(np.abs(built - oracle)) <= 1e-6


@pytest.mark.parametrize("seed,dim", [(5, 2), (6, 3), (7, 5), (8, 8)])
def test_norm_formula_matches_built_matrix(seed, dim):
    rng = np.random.default_rng(seed)
    ham = _smooth_hamiltonian(seed, dim)
    r = linear_rescaling(4.0, 1.0)
    if dim % 2:
        frame = frame_from_columns(random_unitary(rng, dim))
    else:
        gen_raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        frame = rotating_frame(random_unitary(rng, dim), 0.5 * (gen_raw - gen_raw.conj().T))
    phases = _seeded_phases(seed + 20, frame.labels)
    ts = np.linspace(0.05, 0.95, 7)
    direct = hs_norm_sq(np.stack([fast_forward_hamiltonian(ham, r, frame, phases, t) for t in ts]))
    formula = fast_forward_norm_sq(ham, r, frame, phases, ts)
    assert np.max(np.abs(formula - direct) / direct) <= 1e-8
    assert np.allclose(fast_forward_norm(ham, r, frame, phases, ts) ** 2, formula, rtol=1e-12)


def test_optimal_phase_cancels_matching_term():
    # with matched rates the residual equals the diagonal-variance norm
    seed, dim = 12, 5
    ham = _smooth_hamiltonian(seed, dim)
    r = linear_rescaling(2.0, 1.0)
    frame = frame_from_columns(random_unitary(np.random.default_rng(seed), dim))
    grid = TimeGrid(0.0, 1.0, 2000)
    phases = optimal_phase(ham, r, frame, grid)
    for t in (0.25, 0.5, 0.75):
        resid = fast_forward_norm_sq(ham, r, frame, phases, t)
        var = variance_norm(ham(r.s(t)), frame.basis(t), float(r.ds_dt(t)))
        assert resid == pytest.approx(var, rel=1e-10)


def test_optimal_phase_never_beats_zero_phase():
    seed, dim = 13, 4
    ham = _smooth_hamiltonian(seed, dim)
    r = linear_rescaling(2.0, 1.0)
    frame = frame_from_columns(random_unitary(np.random.default_rng(seed), dim))
    phases = optimal_phase(ham, r, frame, TimeGrid(0.0, 1.0, 1000))
    zero = PhaseProfile.zero(frame.labels)
    ts = np.linspace(0.1, 0.9, 9)
    assert np.all(
        fast_forward_norm_sq(ham, r, frame, phases, ts)
        <= fast_forward_norm_sq(ham, r, frame, zero, ts) + 1e-10
    )


def test_optimal_phase_rejects_time_dependent_frame():
    rng = np.random.default_rng(14)
    gen_raw = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    frame = rotating_frame(random_unitary(rng, 3), 0.5 * (gen_raw - gen_raw.conj().T))
    with pytest.raises(ValueError):
        optimal_phase(_smooth_hamiltonian(14, 3), linear_rescaling(2.0, 1.0), frame, TimeGrid(0.0, 1.0, 100))


def test_variance_norm_two_level_value():
    # H = w Z + g X in the Z basis: both diagonal variances equal g^2
    w, g, dsdt = 1.7, 0.4, 3.0
    h = np.array([[w, g], [g, -w]], dtype=complex)
    assert variance_norm(h, np.eye(2, dtype=complex), dsdt) == pytest.approx(dsdt**2 * 2 * g * g, rel=1e-12)


def test_instantaneous_cost():
    assert instantaneous_cost(3.0, 6.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        instantaneous_cost(1.0, 0.0)


class TestCompositeSimpson:
    def test_exact_for_cubics(self):
        xs = np.linspace(0.0, 1.0, 11)
        assert composite_simpson(xs**3, xs[1] - xs[0]) == pytest.approx(0.25, abs=1e-14)

    def test_sine_integral(self):
        xs = np.linspace(0.0, np.pi, 513)
        assert composite_simpson(np.sin(xs), xs[1] - xs[0]) == pytest.approx(2.0, abs=1e-9)

    def test_rejects_odd_interval_count(self):
        with pytest.raises(ValueError):
            composite_simpson(np.ones(4), 0.1)


def test_total_cost_of_simplest_scaling_is_one():
    sched = magnetization_reversal(5.0, 0.1, 10.0)
    ham = hamiltonian_fn(sched)
    r = linear_rescaling(10.0, 1.0)
    ff_norm_fn = lambda t: hs_norm(simplest_fast_forward(ham, r)(t))
    orig_norm_fn = lambda u: hs_norm(ham(u))
    c = total_cost(ff_norm_fn, orig_norm_fn, TimeGrid(0.0, 1.0, 2000), TimeGrid(0.0, 10.0, 2000))
    assert c == pytest.approx(1.0, abs=1e-9)


def test_cost_report_excludes_vanishing_norm():
    # ||H(u)|| = sqrt(2) |1 - u| hits zero at the end of the window
    r = linear_rescaling(1.0, 1.0)
    grid = TimeGrid(0.0, 1.0, 100)
    ff = lambda t: np.sqrt(2.0) * np.abs(1.0 - np.asarray(t))
    orig = lambda u: np.sqrt(2.0) * np.abs(1.0 - np.asarray(u))
    report = cost_report(ff, orig, r, grid)
    assert report.excluded.sum() == 1
    assert bool(report.excluded[-1])
    assert np.isnan(report.delta_c[-1])
    assert np.all(np.isfinite(report.delta_c[:-1]))
    assert report.total == pytest.approx(1.0, abs=1e-9)
    assert report.total_std == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(report.delta_c_std, 1.0)


def test_common_phase_shift_is_a_gauge_transformation():
    # shifting every rate by a constant subtracts c * identity from H_FF and
    # leaves measurement statistics untouched
    sched = magnetization_reversal(5.0, 0.1, 10.0)
    ham = hamiltonian_fn(sched)
    r = linear_rescaling(10.0, 1.0)
    frame = pauli_z_frame()
    phases = optimal_phase(ham, r, frame, TimeGrid(0.0, 1.0, 2000))
    shifted = phases.with_common_rate_shift(2.5)
    for t in (0.2, 0.8):
        a = fast_forward_hamiltonian(ham, r, frame, phases, t)
        b = fast_forward_hamiltonian(ham, r, frame, shifted, t)
        assert np.allclose(b, a - 2.5 * np.eye(2), atol=1e-10)

    psi0 = np.array([1.0, 0.0], dtype=complex)
    grid = TimeGrid(0.0, 1.0, 4000)
    dev = probability_invariance_deviation(ham, r, frame, shifted, psi0, grid)
    assert dev <= 1e-8


def test_label_mismatch_rejected():
    ham = _smooth_hamiltonian(0, 2)
    r = linear_rescaling(2.0, 1.0)
    frame = pauli_z_frame()
    wrong = PhaseProfile.zero(("a", "b"))
    with pytest.raises(ValueError):
        fast_forward_hamiltonian(ham, r, frame, wrong, 0.5)


def test_cumulative_integral_feeds_phase_values():
    # the optimal profile's value column equals the quadrature of its rate
    sched = magnetization_reversal(5.0, 0.1, 10.0)
    ham = hamiltonian_fn(sched)
    r = linear_rescaling(10.0, 1.0)
    phases = optimal_phase(ham, r, pauli_z_frame(), TimeGrid(0.0, 1.0, 2000))
    check = CumulativeIntegral(lambda t: phases.rate(t), 0.0, 1.0)
    ts = np.linspace(0.0, 1.0, 11)
    assert np.max(np.abs(phases.value(ts) - check(ts))) <= 1e-9
