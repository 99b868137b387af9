"""Measurement frames: the orthonormal bases that define the observables.

A frame is the family ``|sigma(t)>`` of basis states in which measurement
probabilities must be preserved.  It is represented by a callable returning
the basis vectors as matrix columns, plus (for time-dependent frames) the
coupling matrix ``G(t)`` with entries ``<sigma(t)| d/dt |sigma'(t)>``, which
is anti-Hermitian for an orthonormal family.  ``coupling=None`` declares the
frame time-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .operators import require_square


@dataclass(frozen=True)
class MeasurementFrame:
    dim: int
    labels: tuple
    basis: Callable
    coupling: Callable | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("frame dimension must be positive")
        if len(self.labels) != self.dim:
            raise ValueError("one label per basis state is required")
        if len(set(self.labels)) != self.dim:
            raise ValueError("frame labels must be distinct")

    @property
    def time_dependent(self) -> bool:
        return self.coupling is not None

    def coupling_matrix(self, t) -> np.ndarray:
        if self.coupling is None:
            shape = np.shape(t) + (self.dim, self.dim)
            return np.zeros(shape, dtype=complex)
        return np.asarray(self.coupling(t), dtype=complex)

    def validate(
        self, times: Sequence[float], ortho_tol: float = 1e-10, anti_tol: float = 1e-8
    ) -> None:
        """Check orthonormality and coupling anti-Hermiticity on a time grid."""
        eye = np.eye(self.dim)
        for t in times:
            c = np.asarray(self.basis(float(t)), dtype=complex)
            defect = np.max(np.abs(np.conj(c).T @ c - eye))
            if defect > ortho_tol:
                raise ValueError(f"frame basis not orthonormal at t={t}: defect {defect:.3e}")
            g = self.coupling_matrix(float(t))
            anti = np.max(np.abs(g + np.conj(g).T))
            if anti > anti_tol:
                raise ValueError(f"frame coupling not anti-Hermitian at t={t}: {anti:.3e}")


def standard_frame(dim: int, labels: Sequence | None = None) -> MeasurementFrame:
    """Time-independent computational basis."""
    if labels is None:
        labels = tuple(range(dim))
    eye = np.eye(dim, dtype=complex)

    def basis(t):
        shape = np.shape(t) + (dim, dim)
        return np.broadcast_to(eye, shape)

    return MeasurementFrame(dim=dim, labels=tuple(labels), basis=basis)


def frame_from_columns(columns: np.ndarray, labels: Sequence | None = None) -> MeasurementFrame:
    """Time-independent frame from a fixed unitary matrix of basis columns."""
    c = require_square(np.asarray(columns, dtype=complex))
    dim = c.shape[-1]
    defect = np.max(np.abs(np.conj(c).T @ c - np.eye(dim)))
    if defect > 1e-10:
        raise ValueError(f"columns are not orthonormal: defect {defect:.3e}")
    if labels is None:
        labels = tuple(range(dim))

    def basis(t):
        shape = np.shape(t) + (dim, dim)
        return np.broadcast_to(c, shape)

    return MeasurementFrame(dim=dim, labels=tuple(labels), basis=basis)


def rotating_frame(
    columns0: np.ndarray, generator: np.ndarray, labels: Sequence | None = None
) -> MeasurementFrame:
    """Frame rotated by a constant anti-Hermitian generator.

    The basis columns are ``C(t) = expm(t A) C0`` and the coupling follows
    analytically as ``G(t) = C(t)^dag A C(t)``.
    """
    c0 = require_square(np.asarray(columns0, dtype=complex))
    a = require_square(np.asarray(generator, dtype=complex))
    dim = c0.shape[-1]
    if a.shape != c0.shape:
        raise ValueError("generator and columns must share one dimension")
    anti = np.max(np.abs(a + np.conj(a).T))
    if anti > 1e-10:
        raise ValueError(f"generator must be anti-Hermitian: defect {anti:.3e}")
    defect = np.max(np.abs(np.conj(c0).T @ c0 - np.eye(dim)))
    if defect > 1e-10:
        raise ValueError(f"columns are not orthonormal: defect {defect:.3e}")
    # A = -i K with K Hermitian, so expm(t A) = V exp(-i t w) V^dag.
    w, v = np.linalg.eigh(1j * a)

    def _rotation(t):
        t = np.asarray(t, dtype=float)
        phases = np.exp(-1j * np.multiply.outer(t, w))
        return np.einsum("ab,...b,cb->...ac", v, phases, np.conj(v))

    def basis(t):
        return _rotation(t) @ c0

    def coupling(t):
        c = basis(t)
        return np.swapaxes(np.conj(c), -1, -2) @ a @ c

    if labels is None:
        labels = tuple(range(dim))
    return MeasurementFrame(dim=dim, labels=tuple(labels), basis=basis, coupling=coupling)


def finite_difference_frame(
    basis_fn: Callable, labels: Sequence, step: float = 1e-6
) -> MeasurementFrame:
    """Wrap a basis callable with a central-difference coupling.

    Intended for cross-checks against frames carrying analytic couplings;
    accuracy is limited by the difference step.
    """
    probe = np.asarray(basis_fn(0.0), dtype=complex)
    dim = probe.shape[-1]

    def coupling(t):
        t = np.asarray(t, dtype=float)
        fwd = np.asarray(basis_fn(t + step), dtype=complex)
        bwd = np.asarray(basis_fn(t - step), dtype=complex)
        dc = (fwd - bwd) / (2.0 * step)
        c = np.asarray(basis_fn(t), dtype=complex)
        return np.swapaxes(np.conj(c), -1, -2) @ dc

    return MeasurementFrame(dim=dim, labels=tuple(labels), basis=basis_fn, coupling=coupling)
