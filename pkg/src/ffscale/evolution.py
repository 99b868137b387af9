"""Schrodinger propagation on uniform time grids (hbar = 1).

The integrator is classical fixed-step RK4.  The Hamiltonian callable is
sampled on the half-step lattice in bounded chunks, so arbitrarily fine
grids never materialize the full sample array at once.  A vectorized
callable (mapping an array of times to a stack of matrices) is used
directly; scalar-only callables are sampled point by point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels


class NormDriftError(RuntimeError):
    """Raised when the propagated state norm drifts beyond tolerance."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid with ``n_steps`` intervals on ``[t_start, t_end]``."""

    t_start: float
    t_end: float
    n_steps: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.t_start) or not np.isfinite(self.t_end):
            raise ValueError("grid endpoints must be finite")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError("n_steps must be a positive integer")

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps

    def points(self) -> np.ndarray:
        """Grid nodes, consistent with the sampling used by ``evolve``."""
        return self.t_start + np.arange(self.n_steps + 1) * self.spacing

    def half_points(self) -> np.ndarray:
        return self.t_start + np.arange(2 * self.n_steps + 1) * (0.5 * self.spacing)

    def refined(self, factor: int = 2) -> "TimeGrid":
        return TimeGrid(self.t_start, self.t_end, self.n_steps * factor)

    @classmethod
    def with_density(
        cls, t_start: float, t_end: float, steps_per_unit: int = 10_000
    ) -> "TimeGrid":
        """Grid with the default density of 10^4 steps per unit time."""
        n = max(1, round((t_end - t_start) * steps_per_unit))
        return cls(t_start, t_end, n)


def sample_operator(
    op: Callable, times: Sequence[float] | np.ndarray, dim: int | None = None
) -> np.ndarray:
    """Sample ``op`` at ``times`` into a C-contiguous ``(n, d, d)`` stack."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1:
        raise ValueError("times must be one-dimensional")
    batch = None
    try:
        candidate = np.asarray(op(times), dtype=complex)
        if candidate.ndim == 3 and candidate.shape[0] == times.shape[0]:
            batch = candidate
    except Exception:
        batch = None
    if batch is None:
        first = np.asarray(op(float(times[0])), dtype=complex)
        if first.ndim != 2 or first.shape[0] != first.shape[1]:
            raise ValueError("operator callable must return square matrices")
        batch = np.empty(times.shape + first.shape, dtype=complex)
        batch[0] = first
        for k in range(1, times.shape[0]):
            batch[k] = np.asarray(op(float(times[k])), dtype=complex)
    if batch.shape[-1] != batch.shape[-2]:
        raise ValueError("operator callable must return square matrices")
    if dim is not None and batch.shape[-1] != dim:
        raise ValueError(
            f"operator dimension {batch.shape[-1]} does not match state dimension {dim}"
        )
    return np.ascontiguousarray(batch)


def evolve(
    hamiltonian: Callable,
    initial: np.ndarray,
    grid: TimeGrid,
    *,
    chunk_steps: int = 4096,
    norm_tol: float = 1e-9,
) -> np.ndarray:
    """Propagate ``initial`` through ``grid`` under ``hamiltonian``.

    Parameters
    ----------
    hamiltonian : callable
        Maps time to a Hermitian ``(d, d)`` array; may also accept an array
        of times and return ``(n, d, d)``.
    initial : ndarray
        Normalized state vector of length ``d``.
    grid : TimeGrid
        Integration grid; one RK4 step per interval.
    chunk_steps : int
        Number of steps whose Hamiltonian samples are held at once.
    norm_tol : float
        Maximum allowed deviation of ``|psi|^2`` from 1 along the whole
        trajectory.  Exceeding it raises :class:`NormDriftError`; the fix is
        a finer grid.

    Returns
    -------
    ndarray
        Stack ``(n_steps + 1, d)`` of states at the grid nodes.
    """
    psi = np.array(initial, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("initial state must be a vector")
    norm0 = float(np.vdot(psi, psi).real)
    if abs(norm0 - 1.0) > norm_tol:
        raise ValueError(f"initial state is not normalized: |psi|^2 = {norm0!r}")
    if chunk_steps < 1:
        raise ValueError("chunk_steps must be positive")

    d = psi.shape[0]
    n = grid.n_steps
    dt = grid.spacing
    half = 0.5 * dt
    states = np.empty((n + 1, d), dtype=complex)
    states[0] = psi

    for start in range(0, n, chunk_steps):
        m = min(chunk_steps, n - start)
        ts = grid.t_start + np.arange(2 * start, 2 * (start + m) + 1) * half
        h_samples = sample_operator(hamiltonian, ts, dim=d)
        kernels.rk4_chunk(h_samples, psi, dt, states[start + 1 : start + m + 1])

    drift = float(np.max(np.abs(np.einsum("ka,ka->k", np.conj(states), states).real - 1.0)))
    if drift > norm_tol:
        raise NormDriftError(
            f"norm drift {drift:.3e} exceeds {norm_tol:.1e}; refine the time grid"
        )
    return states


def measurement_probabilities(
    state: np.ndarray, frame, t: float, *, norm_tol: float = 1e-9
) -> np.ndarray:
    """Probabilities of finding ``state`` in each frame basis state at ``t``."""
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1:
        raise ValueError("state must be a vector")
    norm = float(np.vdot(state, state).real)
    if abs(norm - 1.0) > norm_tol:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm!r}")
    basis = np.asarray(frame.basis(float(t)), dtype=complex)
    amplitudes = np.conj(basis).T @ state
    return np.abs(amplitudes) ** 2


def trajectory_probabilities(states: np.ndarray, frame, times: np.ndarray) -> np.ndarray:
    """Frame-basis probabilities along a trajectory, ``(n, d)``."""
    states = np.asarray(states, dtype=complex)
    times = np.asarray(times, dtype=float)
    basis = np.asarray(frame.basis(times), dtype=complex)
    if basis.ndim == 2:
        amplitudes = states @ np.conj(basis)
    else:
        amplitudes = np.einsum("kas,ka->ks", np.conj(basis), states)
    return np.abs(amplitudes) ** 2
