"""Driving-norm evaluator in a general instantaneous eigenbasis.

For a nondegenerate spectrum the eigenvector coupling can be eliminated in
favor of matrix elements of ``dH/ds``:

    |H_FF|^2 = sum_n (df_n/dt - (ds/dt) E_n)^2
             + 2 (ds/dt)^2 sum_{m != n} |<m|dH/ds|n> / (E_n - E_m)|^2
                                        [1 - cos(f_m - f_n)].

This is an evaluator only: it scores a given phase profile, it does not
search for one.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .phases import PhaseProfile
from .rescaling import Rescaling


def general_eigenbasis_norm_sq(
    energies: Callable,
    dh_elements: Callable,
    phases: PhaseProfile,
    rescaling: Rescaling,
    t,
    gap_tol: float = 1e-12,
):
    """Squared driving norm from spectral data.

    Parameters
    ----------
    energies : callable
        Maps original time ``u`` to the eigenvalues ``(..., L)`` in the
        label order of ``phases``.
    dh_elements : callable
        Maps original time ``u`` to the matrix ``(..., L, L)`` with entries
        ``<m(u)| dH/ds |n(u)>`` at row ``m``, column ``n``.
    phases : PhaseProfile
        Phase profile whose labels index the eigenstates.
    rescaling, t
        Rescaling map and fast-forward evaluation time(s).
    gap_tol : float
        Any eigenvalue pair closer than this is treated as degenerate and
        rejected, since the coupling formula divides by the gap.
    """
    t_arr = np.asarray(t, dtype=float)
    u = rescaling.s(t_arr)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    e = np.asarray(energies(u), dtype=float)
    n_levels = e.shape[-1]
    if n_levels != phases.n_labels:
        raise ValueError("energies and phase profile disagree on the level count")
    rates = np.asarray(phases.rate(t_arr), dtype=float)
    f = np.asarray(phases.value(t_arr), dtype=float)
    matching = np.sum((rates - dsdt[..., np.newaxis] * e) ** 2, axis=-1)

    gaps = e[..., np.newaxis, :] - e[..., :, np.newaxis]  # [m, n] -> E_n - E_m
    off = ~np.eye(n_levels, dtype=bool)
    min_gap = np.min(np.abs(gaps[..., off]))
    if min_gap < gap_tol:
        raise ValueError(
            f"spectrum (near-)degenerate: min gap {min_gap:.3e} below {gap_tol:.1e}"
        )
    m = np.asarray(dh_elements(u), dtype=complex)
    if m.shape[-2:] != (n_levels, n_levels):
        raise ValueError("dh_elements must return an (L, L) matrix per time")
    weight = np.zeros_like(gaps)
    np.divide(1.0, gaps, out=weight, where=off)
    amp = np.abs(m) ** 2 * weight**2
    df = f[..., :, np.newaxis] - f[..., np.newaxis, :]  # [m, n] -> f_m - f_n
    term = amp * (1.0 - np.cos(df))
    term = np.where(off, term, 0.0)
    out = matching + 2.0 * dsdt**2 * np.sum(term, axis=(-2, -1))
    return float(out) if np.ndim(out) == 0 else out
