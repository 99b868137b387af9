"""Two-level model: a spin in a rotating field.

Original dynamics ``H(s) = omega(s) Z + gamma(s) X``.  Two frames are
worked out in closed form:

* the Z eigenbasis (time-independent), whose optimal phases have rates
  ``+/- (ds/dt) omega(s)`` and leave the driving
  ``(ds/dt) gamma(s) [cos(Df) X - sin(Df) Y]``;
* the instantaneous energy eigenbasis (time-dependent), where the squared
  driving norm splits into a phase-matching part and a coupling part
  ``4 (dtheta/dt)^2 (1 - cos Df)`` with
  ``dtheta/dt = (ds/dt)(gamma omega' - omega gamma') / (2 (omega^2 + gamma^2))``.

The magnetization-reversal schedule sweeps ``omega`` linearly through zero
at constant ``gamma``.  For it, phase modulation by a factor ``(1 + delta)``
can park the accumulated phase difference at a multiple of ``2 pi`` exactly
when the gap is crossed, suppressing the driving cost there; the required
``delta`` has a closed form through the inverse-hyperbolic antiderivative of
the level splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .frames import MeasurementFrame, standard_frame
from .operators import PAULI_X, PAULI_Y, PAULI_Z
from .phases import PhaseProfile
from .rescaling import Rescaling, linear_rescaling


@dataclass(frozen=True)
class TwoLevelSchedule:
    """Field schedule in original time, with derivatives where available."""

    omega: Callable
    gamma: Callable
    domega_ds: Callable | None = None
    dgamma_ds: Callable | None = None


def magnetization_reversal(omega0: float, gamma0: float, T: float) -> TwoLevelSchedule:
    """Linear sweep ``omega(s) = omega0 (1 - 2 s / T)`` at constant ``gamma0``."""
    if T <= 0:
        raise ValueError("T must be positive")

    def omega(u):
        return omega0 * (1.0 - 2.0 * np.asarray(u, dtype=float) / T)

    def gamma(u):
        return np.full_like(np.asarray(u, dtype=float), gamma0)

    def domega(u):
        return np.full_like(np.asarray(u, dtype=float), -2.0 * omega0 / T)

    def dgamma(u):
        return np.zeros_like(np.asarray(u, dtype=float))

    return TwoLevelSchedule(omega=omega, gamma=gamma, domega_ds=domega, dgamma_ds=dgamma)


def two_level_hamiltonian(schedule: TwoLevelSchedule, u) -> np.ndarray:
    """``omega(u) Z + gamma(u) X`` in original time, vectorized over ``u``."""
    w = np.asarray(schedule.omega(u), dtype=float)
    g = np.asarray(schedule.gamma(u), dtype=float)
    return w[..., np.newaxis, np.newaxis] * PAULI_Z + g[..., np.newaxis, np.newaxis] * PAULI_X


def hamiltonian_fn(schedule: TwoLevelSchedule) -> Callable:
    return lambda u: two_level_hamiltonian(schedule, u)


def original_norm(schedule: TwoLevelSchedule, u):
    """``|H(u)| = sqrt(2 (omega^2 + gamma^2))``."""
    w = np.asarray(schedule.omega(u), dtype=float)
    g = np.asarray(schedule.gamma(u), dtype=float)
    return np.sqrt(2.0 * (w**2 + g**2))


def pauli_z_frame() -> MeasurementFrame:
    """Computational frame labeled by the Z eigenvalue."""
    return standard_frame(2, labels=(1, -1))


def optimal_pauli_z_phase(
    schedule: TwoLevelSchedule, rescaling: Rescaling, cells: int = 4096
) -> PhaseProfile:
    """Optimal phases in the Z frame: rates ``+/- (ds/dt) omega(s(t))``."""

    def rate(t):
        t_arr = np.asarray(t, dtype=float)
        base = np.asarray(rescaling.ds_dt(t_arr), dtype=float) * np.asarray(
            schedule.omega(rescaling.s(t_arr)), dtype=float
        )
        return np.stack([base, -base], axis=-1)

    return PhaseProfile.from_rate((1, -1), rate, t_end=rescaling.T_FF, cells=cells)


def two_level_optimal_ff(
    schedule: TwoLevelSchedule,
    rescaling: Rescaling,
    t,
    phases: PhaseProfile | None = None,
) -> np.ndarray:
    """Optimal-phase driving ``(ds/dt) gamma(s) [cos(Df) X - sin(Df) Y]``.

    ``Df`` is the accumulated phase difference ``f_+ - f_-``; by default the
    optimal Z-frame phases anchored at zero are used.
    """
    if phases is None:
        phases = optimal_pauli_z_phase(schedule, rescaling)
    t_arr = np.asarray(t, dtype=float)
    f = np.asarray(phases.value(t_arr), dtype=float)
    df = f[..., 0] - f[..., 1]
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    g = np.asarray(schedule.gamma(rescaling.s(t_arr)), dtype=float)
    amp = (dsdt * g)[..., np.newaxis, np.newaxis]
    return amp * (
        np.cos(df)[..., np.newaxis, np.newaxis] * PAULI_X
        - np.sin(df)[..., np.newaxis, np.newaxis] * PAULI_Y
    )


def two_level_optimal_norm(schedule: TwoLevelSchedule, rescaling: Rescaling, t):
    """``|H_FF| = sqrt(2) |ds/dt| |gamma(s)|`` at optimal Z-frame phases."""
    dsdt = np.asarray(rescaling.ds_dt(t), dtype=float)
    g = np.asarray(schedule.gamma(rescaling.s(t)), dtype=float)
    return np.sqrt(2.0) * np.abs(dsdt * g)


def two_level_optimal_cost(schedule: TwoLevelSchedule, rescaling: Rescaling, t):
    """Instantaneous cost ``|ds/dt| sqrt(gamma^2 / (omega^2 + gamma^2))``."""
    t_arr = np.asarray(t, dtype=float)
    s = rescaling.s(t_arr)
    w = np.asarray(schedule.omega(s), dtype=float)
    g = np.asarray(schedule.gamma(s), dtype=float)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    return np.abs(dsdt) * np.sqrt(g**2 / (w**2 + g**2))


def _angle_pieces(schedule: TwoLevelSchedule, rescaling: Rescaling, t_arr: np.ndarray):
    s = np.asarray(rescaling.s(t_arr), dtype=float)
    w = np.asarray(schedule.omega(s), dtype=float)
    g = np.asarray(schedule.gamma(s), dtype=float)
    e_sq = w**2 + g**2
    if np.any(e_sq == 0.0):
        raise ValueError("energy gap closes (omega = gamma = 0); eigenframe undefined")
    return s, w, g, e_sq


def eigenframe_coupling_rate(schedule: TwoLevelSchedule, rescaling: Rescaling, t):
    """Coupling ``<E+| d/dt |E->`` between the instantaneous eigenvectors.

    With the mixing angle ``theta = atan2(gamma, omega)`` and the eigenvector
    parametrization used in :func:`energy_eigenframe`, this equals
    ``(ds/dt) (gamma omega' - omega gamma') / (2 (omega^2 + gamma^2))``
    and is real.
    """
    if schedule.domega_ds is None or schedule.dgamma_ds is None:
        raise ValueError("schedule derivatives are required for the eigenframe")
    t_arr = np.asarray(t, dtype=float)
    s, w, g, e_sq = _angle_pieces(schedule, rescaling, t_arr)
    dw = np.asarray(schedule.domega_ds(s), dtype=float)
    dg = np.asarray(schedule.dgamma_ds(s), dtype=float)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    return dsdt * (g * dw - w * dg) / (2.0 * e_sq)


def energy_eigenframe(schedule: TwoLevelSchedule, rescaling: Rescaling) -> MeasurementFrame:
    """Instantaneous eigenbasis ``|E+>, |E->`` of the two-level Hamiltonian.

    Eigenvectors are parametrized by the mixing angle,
    ``|E+> = (cos(theta/2), sin(theta/2))`` and
    ``|E-> = (-sin(theta/2), cos(theta/2))``, which is continuous along any
    schedule that keeps the gap open.  The coupling matrix is real
    antisymmetric with ``<E+| d/dt |E->`` given by
    :func:`eigenframe_coupling_rate`.
    """

    def basis(t):
        t_arr = np.asarray(t, dtype=float)
        _, w, g, _ = _angle_pieces(schedule, rescaling, t_arr)
        theta = np.arctan2(g, w)
        c = np.cos(0.5 * theta)
        si = np.sin(0.5 * theta)
        cols = np.empty(t_arr.shape + (2, 2), dtype=complex)
        cols[..., 0, 0] = c
        cols[..., 1, 0] = si
        cols[..., 0, 1] = -si
        cols[..., 1, 1] = c
        return cols

    def coupling(t):
        t_arr = np.asarray(t, dtype=float)
        rate = eigenframe_coupling_rate(schedule, rescaling, t_arr)
        m = np.zeros(t_arr.shape + (2, 2), dtype=complex)
        m[..., 0, 1] = rate
        m[..., 1, 0] = -rate
        return m

    return MeasurementFrame(dim=2, labels=("E+", "E-"), basis=basis, coupling=coupling)


def eigen_energies(schedule: TwoLevelSchedule) -> Callable:
    """Eigenvalues ``(+E, -E)`` with ``E = sqrt(omega^2 + gamma^2)``, per label order."""

    def energies(u):
        w = np.asarray(schedule.omega(u), dtype=float)
        g = np.asarray(schedule.gamma(u), dtype=float)
        e = np.sqrt(w**2 + g**2)
        return np.stack([e, -e], axis=-1)

    return energies


def eigenbasis_norm_sq(
    schedule: TwoLevelSchedule, rescaling: Rescaling, phases: PhaseProfile, t
):
    """Squared driving norm in the energy eigenframe.

    ``sum_± (df_±/dt - (ds/dt) E_±)^2 + 4 (dtheta/dt)^2 (1 - cos(f_+ - f_-))``.
    """
    t_arr = np.asarray(t, dtype=float)
    _, w, g, e_sq = _angle_pieces(schedule, rescaling, t_arr)
    e = np.sqrt(e_sq)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    rates = np.asarray(phases.rate(t_arr), dtype=float)
    f = np.asarray(phases.value(t_arr), dtype=float)
    df = f[..., 0] - f[..., 1]
    matching = (rates[..., 0] - dsdt * e) ** 2 + (rates[..., 1] + dsdt * e) ** 2
    coupling = eigenframe_coupling_rate(schedule, rescaling, t_arr)
    out = matching + 4.0 * coupling**2 * (1.0 - np.cos(df))
    return float(out) if np.ndim(out) == 0 else out


def eigenbasis_cost_envelope(schedule: TwoLevelSchedule, rescaling: Rescaling, t):
    """Upper envelope ``2 sqrt(2) |<E+|d/dt E->| / |H(s)|`` of the coupling cost."""
    t_arr = np.asarray(t, dtype=float)
    coupling = eigenframe_coupling_rate(schedule, rescaling, t_arr)
    return 2.0 * np.sqrt(2.0) * np.abs(coupling) / original_norm(
        schedule, rescaling.s(t_arr)
    )


@dataclass(frozen=True)
class ModulationParams:
    """Modulated eigenframe phases for the magnetization-reversal schedule."""

    omega0: float
    gamma0: float
    T: float
    T_FF: float
    delta: float
    k: int | None = None

    def __post_init__(self) -> None:
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be positive")
        if self.T <= 0 or self.T_FF <= 0:
            raise ValueError("durations must be positive")
        if not abs(self.delta) < 0.1:
            raise ValueError(
                f"modulation delta = {self.delta!r} out of the perturbative range (|delta| < 0.1)"
            )

    @classmethod
    def from_winding(
        cls, omega0: float, gamma0: float, T: float, T_FF: float, k: int = 4
    ) -> "ModulationParams":
        """Choose ``delta`` so the gap-crossing phase difference is ``2 pi k``."""
        delta = modulation_delta(omega0, gamma0, T, k)
        return cls(omega0=omega0, gamma0=gamma0, T=T, T_FF=T_FF, delta=delta, k=k)

    @classmethod
    def unmodulated(
        cls, omega0: float, gamma0: float, T: float, T_FF: float
    ) -> "ModulationParams":
        return cls(omega0=omega0, gamma0=gamma0, T=T, T_FF=T_FF, delta=0.0)


def modulation_delta(omega0: float, gamma0: float, T: float, k: int) -> float:
    """Modulation strength parking the half-time phase difference at ``2 pi k``.

    The phase difference accumulated up to the gap crossing at optimal
    eigenframe rates is ``T [omega0 sqrt(omega0^2 + gamma0^2)
    + gamma0^2 ln((omega0 + sqrt(omega0^2 + gamma0^2)) / gamma0)] / (2 omega0)``;
    scaling the rates by ``1 + delta`` with

        delta = 4 pi omega0 k / (T [. . .]) - 1

    lands it exactly on the requested winding.
    """
    if gamma0 <= 0:
        raise ValueError("gamma0 must be positive")
    if omega0 <= 0:
        raise ValueError("omega0 must be positive")
    if T <= 0:
        raise ValueError("T must be positive")
    if int(k) != k or k < 1:
        raise ValueError("winding number k must be a positive integer")
    root = np.hypot(omega0, gamma0)
    bracket = omega0 * root + gamma0**2 * np.log((omega0 + root) / gamma0)
    return float(4.0 * np.pi * omega0 * k / (T * bracket) - 1.0)


def modulated_phase(params: ModulationParams) -> PhaseProfile:
    """Eigenframe phases with rates ``+/- (1 + delta) (ds/dt) E(s(t))``.

    Specific to the magnetization-reversal schedule under linear rescaling;
    the values use the closed-form antiderivative
    ``int sqrt(u^2 + gamma0^2) du = [u sqrt(u^2 + gamma0^2)
    + gamma0^2 asinh(u / gamma0)] / 2``.
    """
    w0, g0 = params.omega0, params.gamma0
    speed = params.T / params.T_FF
    scale = (1.0 + params.delta) * speed
    slope = 2.0 * w0 / params.T_FF  # du/dt along the sweep

    def _splitting(t):
        u = w0 * (1.0 - 2.0 * np.asarray(t, dtype=float) / params.T_FF)
        return np.hypot(u, g0)

    def _antiderivative(u):
        return 0.5 * (u * np.hypot(u, g0) + g0**2 * np.arcsinh(u / g0))

    def value(t):
        t_arr = np.asarray(t, dtype=float)
        u = w0 * (1.0 - 2.0 * t_arr / params.T_FF)
        accumulated = (_antiderivative(w0) - _antiderivative(u)) / slope
        f = scale * accumulated
        return np.stack([f, -f], axis=-1)

    def rate(t):
        base = scale * _splitting(t)
        return np.stack([base, -base], axis=-1)

    return PhaseProfile.from_functions(("E+", "E-"), value, rate)
