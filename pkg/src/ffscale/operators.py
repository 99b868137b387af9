"""Dense operator algebra for small quantum systems.

Operators are plain complex numpy arrays.  Hermiticity is the load-bearing
invariant: every cost functional downstream is a Hilbert-Schmidt norm of a
Hermitian matrix, so the entry points validate it instead of trusting the
caller.  All functions accept stacked input ``(..., d, d)`` and broadcast
over the leading axes.
"""

from __future__ import annotations

import numpy as np

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


def require_square(op: np.ndarray) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.ndim < 2 or op.shape[-1] != op.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    return op


def hermiticity_defect(op: np.ndarray) -> float:
    """Largest entry-wise deviation of ``op`` from its conjugate transpose."""
    op = require_square(op)
    return float(np.max(np.abs(op - np.conj(np.swapaxes(op, -1, -2)))))


def is_hermitian(op: np.ndarray, tol: float = 1e-12) -> bool:
    return hermiticity_defect(op) <= tol


def require_hermitian(op: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    op = require_square(op)
    defect = hermiticity_defect(op)
    if defect > tol:
        raise ValueError(
            f"matrix is not Hermitian: max |A - A^dag| = {defect:.3e} exceeds {tol:.1e}"
        )
    return op


def hs_norm_sq(op: np.ndarray, tol: float = 1e-12) -> np.ndarray | float:
    """Squared Hilbert-Schmidt norm ``tr(A^2)`` of a Hermitian matrix.

    For Hermitian ``A`` this equals the sum of squared moduli of the entries,
    which is how it is evaluated here.  Input may be stacked ``(..., d, d)``;
    the result drops the trailing two axes.
    """
    op = require_hermitian(op, tol=tol)
    out = np.sum(np.abs(op) ** 2, axis=(-2, -1))
    return float(out) if out.ndim == 0 else out


def hs_norm(op: np.ndarray, tol: float = 1e-12) -> np.ndarray | float:
    """Hilbert-Schmidt norm ``sqrt(tr(A^2))`` of a Hermitian matrix."""
    return np.sqrt(hs_norm_sq(op, tol=tol))


def eigendecompose(op: np.ndarray, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors in
    the columns of ``v``.  Each column is phase-fixed so that its
    largest-modulus component is real and positive, which makes the
    decomposition deterministic up to degeneracies.
    """
    op = require_hermitian(op, tol=tol)
    if op.ndim != 2:
        raise ValueError("eigendecompose expects a single matrix, not a stack")
    w, v = np.linalg.eigh(op)
    idx = np.argmax(np.abs(v), axis=0)
    anchors = v[idx, np.arange(v.shape[1])]
    phases = anchors / np.abs(anchors)
    v = v * np.conj(phases)[np.newaxis, :]
    return w, v


def site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-spin operator at tensor factor ``site`` of ``n_sites``.

    Site 0 is the leftmost tensor factor (most significant bit of the
    computational-basis index).
    """
    op = require_square(op)
    if op.shape != (2, 2):
        raise ValueError("site_operator embeds 2x2 operators only")
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} spins")
    left = np.eye(2**site, dtype=complex)
    right = np.eye(2 ** (n_sites - site - 1), dtype=complex)
    return np.kron(left, np.kron(op, right))
