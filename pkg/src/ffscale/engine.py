"""Fast-forward Hamiltonian construction and energy-cost functionals.

Given original dynamics ``H(s)``, a rescaling ``s(t)``, a measurement frame
``|sigma(t)>`` and a phase profile ``f_sigma(t)``, the fast-forward state is
``|Psi_FF(t)> = U_f(t) |Psi(s(t))>`` with
``U_f = sum_sigma exp(i f_sigma) |sigma><sigma|``, and the driving
Hamiltonian follows as

    H_FF = (ds/dt) U_f H(s) U_f^dag + i (dU_f/dt) U_f^dag.

Everything here is evaluated element-wise in the frame basis: with
``M_sigma,sigma' = <sigma|H(s)|sigma'>``, ``G_sigma,sigma' = <sigma|d/dt sigma'>``
and phase differences ``Df = f_sigma - f_sigma'``, the frame-basis matrix of
``H_FF`` has diagonal ``(ds/dt) M_ss - df_sigma/dt`` and off-diagonal
``(ds/dt) e^{i Df} M + i (1 - e^{i Df}) G``.  The squared Hilbert-Schmidt
norm of ``H_FF`` is accumulated from the same ingredients without building
the matrix.

Energy costs are Hilbert-Schmidt norm ratios: the instantaneous cost is
``|H_FF(t)| / |H(s(t))|`` and the total cost integrates both norms over
their respective intervals.  The baseline ("standard") cost of plain
rescaling is ``|ds/dt|`` instantaneously and 1 in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .evolution import TimeGrid, evolve, sample_operator, trajectory_probabilities
from .frames import MeasurementFrame
from .phases import PhaseProfile
from .rescaling import Rescaling


def _require_matching(frame: MeasurementFrame, phases: PhaseProfile) -> None:
    if tuple(frame.labels) != tuple(phases.labels):
        raise ValueError("frame and phase profile carry different labels")


def _sample_h(hamiltonian: Callable, s) -> np.ndarray:
    s_arr = np.asarray(s, dtype=float)
    if s_arr.ndim == 0:
        h = np.asarray(hamiltonian(float(s_arr)), dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("hamiltonian callable must return a square matrix")
        return h
    return sample_operator(hamiltonian, s_arr)


def simplest_fast_forward(hamiltonian: Callable, rescaling: Rescaling) -> Callable:
    """Scaled Hamiltonian ``(ds/dt) H(s(t))`` of plain time rescaling."""

    def ff(t):
        dsdt = np.asarray(rescaling.ds_dt(t), dtype=float)
        h = _sample_h(hamiltonian, rescaling.s(t))
        return dsdt[..., np.newaxis, np.newaxis] * h

    return ff


def phase_unitary(frame: MeasurementFrame, phases: PhaseProfile, t) -> np.ndarray:
    """The frame-diagonal unitary ``sum_sigma e^{i f_sigma} |sigma><sigma|``."""
    _require_matching(frame, phases)
    c = np.asarray(frame.basis(t), dtype=complex)
    f = np.asarray(phases.value(t), dtype=float)
    return np.einsum("...as,...s,...bs->...ab", c, np.exp(1j * f), np.conj(c))


def _dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def _frame_pieces(hamiltonian, rescaling, frame, phases, t):
    _require_matching(frame, phases)
    t_arr = np.asarray(t, dtype=float)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    c = np.asarray(frame.basis(t_arr), dtype=complex)
    h = _sample_h(hamiltonian, rescaling.s(t_arr))
    h_frame = _dagger(c) @ h @ c
    g = frame.coupling_matrix(t_arr)
    f = np.asarray(phases.value(t_arr), dtype=float)
    rates = np.asarray(phases.rate(t_arr), dtype=float)
    return dsdt, c, h_frame, g, f, rates


def fast_forward_hamiltonian(
    hamiltonian: Callable,
    rescaling: Rescaling,
    frame: MeasurementFrame,
    phases: PhaseProfile,
    t,
) -> np.ndarray:
    """Hermitian generator of the fast-forwarded dynamics at time(s) ``t``."""
    dsdt, c, h_frame, g, f, rates = _frame_pieces(hamiltonian, rescaling, frame, phases, t)
    df = f[..., :, np.newaxis] - f[..., np.newaxis, :]
    phase = np.exp(1j * df)
    m = dsdt[..., np.newaxis, np.newaxis] * phase * h_frame + 1j * (1.0 - phase) * g
    diag = np.einsum("...ss->...s", h_frame).real
    np.einsum("...ss->...s", m)[...] = dsdt[..., np.newaxis] * diag - rates
    return c @ m @ _dagger(c)


def fast_forward_fn(
    hamiltonian: Callable,
    rescaling: Rescaling,
    frame: MeasurementFrame,
    phases: PhaseProfile,
) -> Callable:
    """Time callable suitable for :func:`ffscale.evolution.evolve`."""

    def ff(t):
        return fast_forward_hamiltonian(hamiltonian, rescaling, frame, phases, t)

    return ff


def fast_forward_norm_sq(
    hamiltonian: Callable,
    rescaling: Rescaling,
    frame: MeasurementFrame,
    phases: PhaseProfile,
    t,
):
    """Squared Hilbert-Schmidt norm of the fast-forward Hamiltonian.

    Evaluated directly from frame-basis matrix elements:
    the diagonal contributes ``(df_sigma/dt - (ds/dt) <sigma|H|sigma>)^2``
    and each ordered pair ``sigma != sigma'`` contributes
    ``|i (1 - e^{-i Df}) <sigma|d/dt sigma'> - (ds/dt) <sigma|H|sigma'>|^2``.
    """
    dsdt, _, h_frame, g, f, rates = _frame_pieces(hamiltonian, rescaling, frame, phases, t)
    diag = np.einsum("...ss->...s", h_frame).real
    diag_term = np.sum((rates - dsdt[..., np.newaxis] * diag) ** 2, axis=-1)
    df = f[..., :, np.newaxis] - f[..., np.newaxis, :]
    x = 1j * (1.0 - np.exp(-1j * df)) * g - dsdt[..., np.newaxis, np.newaxis] * h_frame
    np.einsum("...ss->...s", x)[...] = 0.0
    off_term = np.sum(np.abs(x) ** 2, axis=(-2, -1))
    out = diag_term + off_term
    return float(out) if np.ndim(out) == 0 else out


def fast_forward_norm(hamiltonian, rescaling, frame, phases, t):
    return np.sqrt(fast_forward_norm_sq(hamiltonian, rescaling, frame, phases, t))


def optimal_phase(
    hamiltonian: Callable,
    rescaling: Rescaling,
    frame: MeasurementFrame,
    grid: TimeGrid,
    cells: int | None = None,
) -> PhaseProfile:
    """Cost-minimizing phases for a time-independent frame.

    The first-order conditions fix the rates to
    ``df_sigma/dt = (ds/dt) <sigma|H(s)|sigma>``; the phases themselves are
    accumulated by cumulative quadrature from ``f_sigma(0) = 0``.  For
    time-dependent frames no such closed-form optimum is available, so they
    are rejected.
    """
    if frame.time_dependent:
        raise ValueError(
            "optimal_phase requires a time-independent frame; "
            "time-dependent bases have no closed-form optimum here"
        )
    c = np.asarray(frame.basis(float(grid.t_start)), dtype=complex)

    def rate(t):
        t_arr = np.asarray(t, dtype=float)
        dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
        h = _sample_h(hamiltonian, rescaling.s(t_arr))
        diag = np.einsum("as,...ab,bs->...s", np.conj(c), h, c).real
        return dsdt[..., np.newaxis] * diag

    return PhaseProfile.from_rate(
        frame.labels, rate, t_end=grid.t_end, t_start=grid.t_start,
        cells=cells if cells is not None else grid.n_steps,
    )


def variance_norm(h_matrix: np.ndarray, basis_columns: np.ndarray, ds_dt: float) -> float:
    """Residual squared norm at optimal phases for a time-independent frame.

    Equals ``(ds/dt)^2 sum_sigma (<sigma|H^2|sigma> - <sigma|H|sigma>^2)``,
    the summed per-state energy variance.
    """
    h = np.asarray(h_matrix, dtype=complex)
    c = np.asarray(basis_columns, dtype=complex)
    first = np.einsum("as,ab,bs->s", np.conj(c), h, c).real
    second = np.einsum("as,ab,bq,qs->s", np.conj(c), h, h, c).real
    return float(ds_dt**2 * np.sum(second - first**2))


def instantaneous_cost(ff_norm, orig_norm):
    """Ratio ``|H_FF| / |H|`` of driving norm to original norm."""
    ff_arr = np.asarray(ff_norm, dtype=float)
    orig_arr = np.asarray(orig_norm, dtype=float)
    if np.any(orig_arr <= 0.0):
        raise ValueError("original norm must be positive where the cost is evaluated")
    out = ff_arr / orig_arr
    return float(out) if out.ndim == 0 else out


def composite_simpson(values: np.ndarray, spacing: float) -> float:
    """Composite Simpson rule over a uniform grid with an even interval count."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.shape[0] < 3:
        raise ValueError("need a 1-D array with at least 3 samples")
    n = values.shape[0] - 1
    if n % 2 != 0:
        raise ValueError("composite Simpson requires an even number of intervals")
    acc = values[0] + values[-1] + 4.0 * np.sum(values[1:-1:2]) + 2.0 * np.sum(values[2:-1:2])
    return float(acc * spacing / 3.0)


def total_cost(
    ff_norm_fn: Callable,
    orig_norm_fn: Callable,
    ff_grid: TimeGrid,
    orig_grid: TimeGrid,
) -> float:
    """Integrated norm ratio ``int |H_FF| dt / int |H| dt``.

    Both integrals use composite Simpson on their own uniform grids; keeping
    the two step counts equal makes exact ratios (such as plain rescaling
    giving 1) hold to rounding rather than to quadrature error.
    """
    ff_vals = np.asarray(ff_norm_fn(ff_grid.points()), dtype=float)
    orig_vals = np.asarray(orig_norm_fn(orig_grid.points()), dtype=float)
    denom = composite_simpson(orig_vals, orig_grid.spacing)
    if denom <= 0.0:
        raise ValueError("original dynamics has vanishing integrated norm")
    return composite_simpson(ff_vals, ff_grid.spacing) / denom


@dataclass(frozen=True)
class CostReport:
    """Sampled instantaneous costs and integrated totals for one protocol."""

    grid: TimeGrid
    delta_c: np.ndarray
    delta_c_std: np.ndarray
    total: float
    total_std: float
    ff_norms: np.ndarray
    orig_norms: np.ndarray
    excluded: np.ndarray


def cost_report(
    ff_norm_fn: Callable,
    orig_norm_fn: Callable,
    rescaling: Rescaling,
    grid: TimeGrid,
) -> CostReport:
    """Evaluate instantaneous and total costs on ``grid``.

    ``ff_norm_fn`` maps fast-forward time to ``|H_FF(t)|``; ``orig_norm_fn``
    maps original time to ``|H(u)|``.  Grid points where the original norm
    vanishes are flagged in ``excluded`` and carry NaN in ``delta_c`` rather
    than an interpolated value.
    """
    t = grid.points()
    dsdt = np.asarray(rescaling.ds_dt(t), dtype=float)
    ff_vals = np.asarray(ff_norm_fn(t), dtype=float)
    orig_at_s = np.asarray(orig_norm_fn(rescaling.s(t)), dtype=float)
    if np.any(ff_vals < 0.0) or np.any(orig_at_s < 0.0):
        raise ValueError("norms must be nonnegative")
    excluded = orig_at_s <= 1e-14 * max(np.max(orig_at_s), 1e-300)
    delta_c = np.full_like(ff_vals, np.nan)
    np.divide(ff_vals, orig_at_s, out=delta_c, where=~excluded)
    orig_grid = TimeGrid(0.0, rescaling.T, grid.n_steps)
    denom = composite_simpson(
        np.asarray(orig_norm_fn(orig_grid.points()), dtype=float), orig_grid.spacing
    )
    if denom <= 0.0:
        raise ValueError("original dynamics has vanishing integrated norm")
    total = composite_simpson(ff_vals, grid.spacing) / denom
    total_std = composite_simpson(np.abs(dsdt) * orig_at_s, grid.spacing) / denom
    return CostReport(
        grid=grid,
        delta_c=delta_c,
        delta_c_std=np.abs(dsdt),
        total=total,
        total_std=total_std,
        ff_norms=ff_vals,
        orig_norms=orig_at_s,
        excluded=excluded,
    )


def probability_invariance_deviation(
    hamiltonian: Callable,
    rescaling: Rescaling,
    frame: MeasurementFrame,
    phases: PhaseProfile,
    initial: np.ndarray,
    grid: TimeGrid,
    *,
    chunk_steps: int = 4096,
    driving: Callable | None = None,
) -> float:
    """Largest deviation between fast-forward and original frame probabilities.

    Propagates the original dynamics on ``[0, T]`` and the fast-forward
    dynamics on ``[0, T_FF]`` (equal step counts), then compares
    ``|<sigma(t)|Psi_FF(t)>|^2`` against ``|<sigma(t)|Psi(s(t))>|^2`` at
    every node.  When the rescaled nodes ``s(t_j)`` do not land on the
    original grid (nonlinear rescalings), the original-time states are
    obtained by integrating the reparametrized equation
    ``i dpsi/dt = (ds/dt) H(s(t)) psi``, which is the same dynamics.

    ``driving`` overrides the generically constructed fast-forward
    Hamiltonian with a closed-form callable (it must represent the same
    frame and phases, e.g. a model-specific expression).
    """
    _require_matching(frame, phases)
    t = grid.points()
    orig_grid = TimeGrid(0.0, rescaling.T, grid.n_steps)
    s_nodes = np.asarray(rescaling.s(t), dtype=float)
    index = s_nodes / orig_grid.spacing
    aligned = np.max(np.abs(index - np.rint(index))) * orig_grid.spacing <= 1e-9 * max(
        1.0, rescaling.T
    )
    if aligned:
        states_orig = evolve(hamiltonian, initial, orig_grid, chunk_steps=chunk_steps)
        orig_at_s = states_orig[np.rint(index).astype(int)]
    else:
        orig_at_s = evolve(
            simplest_fast_forward(hamiltonian, rescaling), initial, grid,
            chunk_steps=chunk_steps,
        )
    if driving is None:
        driving = fast_forward_fn(hamiltonian, rescaling, frame, phases)
    ff_states = evolve(driving, initial, grid, chunk_steps=chunk_steps)
    p_orig = trajectory_probabilities(orig_at_s, frame, t)
    p_ff = trajectory_probabilities(ff_states, frame, t)
    return float(np.max(np.abs(p_ff - p_orig)))
