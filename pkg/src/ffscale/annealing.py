"""Quantum annealing of an Ising problem Hamiltonian.

Original dynamics ``H(u) = lambda(u) H_P + (1 - lambda(u)) V`` with

    H_P = -1/2 sum_{i != j} J_ij Z_i Z_j - sum_i h_i Z_i,
    V   = -Gamma sum_i X_i.

Everything cost-related has a closed form because Pauli strings are
Hilbert-Schmidt orthogonal:

    |H(u)|^2 = 2^N [lambda^2 (sum_{i<j} J_ij^2 + sum_i h_i^2)
                    + N (1 - lambda)^2 Gamma^2].

In the computational frame the phases with rates
``df_sigma/dt = -(ds/dt) lambda(s) sum_i h_i sigma_i`` cancel the
longitudinal-field contribution, leaving

    |H_FF|^2 = 2^N (ds/dt)^2 [lambda^2 sum_{i<j} J_ij^2
                              + N (1 - lambda)^2 Gamma^2]

with the explicit driving

    H_FF = -(ds/dt) lambda sum_{i<j} J_ij Z_i Z_j
           - (ds/dt)(1 - lambda) Gamma sum_i [cos(phi_i) X_i + sin(phi_i) Y_i],
    phi_i = 2 h_i int_0^s lambda.

Spin ``i`` lives on tensor factor ``i`` counted from the left, and
``sigma_i = +1`` corresponds to bit 0 of the basis index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .frames import MeasurementFrame, standard_frame
from .operators import PAULI_X, PAULI_Y, PAULI_Z, site_operator
from .phases import CumulativeIntegral, PhaseProfile
from .rescaling import Rescaling

MAX_SPINS = 12  # dense-matrix cap: 2^12 = 4096


def spin_configurations(n: int) -> np.ndarray:
    """All ``(2^n, n)`` spin assignments ``sigma_i in {+1, -1}`` in index order."""
    if n < 1:
        raise ValueError("need at least one spin")
    idx = np.arange(2**n)[:, np.newaxis]
    bits = (idx >> (n - 1 - np.arange(n))) & 1
    return 1 - 2 * bits


@dataclass(frozen=True, eq=False)
class IsingInstance:
    """Problem couplings, transverse field and annealing schedule.

    ``lam`` maps original time ``u in [0, T]`` to the schedule value, with
    ``lam(0) = 0`` and ``lam(T) = 1``.  ``lam_integral`` is its
    antiderivative when available in closed form; otherwise it is filled by
    cumulative quadrature on first use.
    """

    n: int
    J: np.ndarray
    h: np.ndarray
    gamma: float
    T: float
    lam: Callable
    lam_integral: Callable | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one spin")
        J = np.asarray(self.J, dtype=float)
        h = np.asarray(self.h, dtype=float)
        if J.shape != (self.n, self.n):
            raise ValueError(f"J must have shape ({self.n}, {self.n})")
        if h.shape != (self.n,):
            raise ValueError(f"h must have shape ({self.n},)")
        if np.max(np.abs(J - J.T)) > 1e-12:
            raise ValueError("J must be symmetric")
        if np.max(np.abs(np.diag(J))) > 0.0:
            raise ValueError("J must have zero diagonal")
        if self.T <= 0:
            raise ValueError("T must be positive")
        if abs(float(self.lam(0.0))) > 1e-12 or abs(float(self.lam(self.T)) - 1.0) > 1e-12:
            raise ValueError("schedule must run from lam(0) = 0 to lam(T) = 1")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "h", h)

    @property
    def dim(self) -> int:
        return 2**self.n

    def coupling_sq_sum(self) -> float:
        """``sum_{i<j} J_ij^2``."""
        return float(np.sum(np.triu(self.J, k=1) ** 2))

    def field_sq_sum(self) -> float:
        return float(np.sum(self.h**2))

    def schedule_integral(self) -> Callable:
        """Antiderivative ``Lambda(u) = int_0^u lam`` (closed form or quadrature)."""
        if self.lam_integral is not None:
            return self.lam_integral
        if "lam_integral" not in self._cache:
            self._cache["lam_integral"] = CumulativeIntegral(
                lambda u: np.asarray(self.lam(u), dtype=float), 0.0, self.T, cells=8192
            )
        return self._cache["lam_integral"]


def linear_schedule(T: float) -> tuple[Callable, Callable]:
    """The straight-line schedule ``lam(u) = u / T`` and its antiderivative."""

    def lam(u):
        return np.asarray(u, dtype=float) / T

    def lam_integral(u):
        u_arr = np.asarray(u, dtype=float)
        return u_arr**2 / (2.0 * T)

    return lam, lam_integral


def random_instance(n: int, gamma: float, seed: int, T: float) -> IsingInstance:
    """Seeded instance with couplings and fields uniform on ``[-1, 1]``."""
    rng = np.random.default_rng(seed)
    J = np.zeros((n, n))
    upper = np.triu_indices(n, k=1)
    J[upper] = rng.uniform(-1.0, 1.0, size=len(upper[0]))
    J = J + J.T
    h = rng.uniform(-1.0, 1.0, size=n)
    lam, lam_integral = linear_schedule(T)
    return IsingInstance(n=n, J=J, h=h, gamma=gamma, T=T, lam=lam, lam_integral=lam_integral)


def _require_dense_ok(n: int) -> None:
    if n > MAX_SPINS:
        raise ValueError(
            f"{n} spins exceeds the dense-matrix cap of {MAX_SPINS} (dim 4096)"
        )


def _dense_parts(inst: IsingInstance) -> dict:
    """Cached dense pieces: problem diagonal, driver, and per-site X/Y."""
    if "dense" not in inst._cache:
        _require_dense_ok(inst.n)
        spins = spin_configurations(inst.n).astype(float)
        # -1/2 sum_{i!=j} J_ij s_i s_j = -sum_{i<j} J_ij s_i s_j on the diagonal
        problem_diag = -0.5 * np.einsum("ki,ij,kj->k", spins, inst.J, spins) - spins @ inst.h
        xs = [site_operator(PAULI_X, i, inst.n) for i in range(inst.n)]
        ys = [site_operator(PAULI_Y, i, inst.n) for i in range(inst.n)]
        driver = -inst.gamma * np.sum(xs, axis=0)
        zz_diag = -0.5 * np.einsum("ki,ij,kj->k", spins, inst.J, spins)
        inst._cache["dense"] = {
            "spins": spins,
            "problem_diag": problem_diag,
            "zz_diag": zz_diag,
            "xs": np.array(xs),
            "ys": np.array(ys),
            "driver": driver,
        }
    return inst._cache["dense"]


def qa_hamiltonian(inst: IsingInstance, u) -> np.ndarray:
    """Dense annealing Hamiltonian at original time(s) ``u``."""
    parts = _dense_parts(inst)
    lam = np.asarray(inst.lam(u), dtype=float)
    problem = np.zeros((inst.dim, inst.dim), dtype=complex)
    np.fill_diagonal(problem, parts["problem_diag"])
    return (
        lam[..., np.newaxis, np.newaxis] * problem
        + (1.0 - lam)[..., np.newaxis, np.newaxis] * parts["driver"]
    )


def qa_hamiltonian_fn(inst: IsingInstance) -> Callable:
    return lambda u: qa_hamiltonian(inst, u)


def qa_norm_sq(inst: IsingInstance, u):
    """Closed-form ``|H(u)|^2``."""
    lam = np.asarray(inst.lam(u), dtype=float)
    strength = inst.coupling_sq_sum() + inst.field_sq_sum()
    out = inst.dim * (
        lam**2 * strength + inst.n * (1.0 - lam) ** 2 * inst.gamma**2
    )
    return float(out) if np.ndim(out) == 0 else out


def qa_norm(inst: IsingInstance, u):
    return np.sqrt(qa_norm_sq(inst, u))


def computational_frame(inst_or_n) -> MeasurementFrame:
    """Computational frame labeled by spin configurations."""
    n = inst_or_n.n if isinstance(inst_or_n, IsingInstance) else int(inst_or_n)
    _require_dense_ok(n)
    labels = tuple(tuple(int(s) for s in row) for row in spin_configurations(n))
    return standard_frame(2**n, labels=labels)


def suboptimal_phase(inst: IsingInstance, rescaling: Rescaling) -> PhaseProfile:
    """Phases cancelling the longitudinal-field part of the driving norm.

    Rates ``df_sigma/dt = -(ds/dt) lambda(s) sum_i h_i sigma_i``; values
    follow without quadrature as ``-Lambda(s(t)) sum_i h_i sigma_i``.  This
    optimizes only the field term (the problem couplings are untouched), so
    it is suboptimal but already removes every single-site diagonal.
    """
    moments = spin_configurations(inst.n).astype(float) @ inst.h
    schedule_integral = inst.schedule_integral()

    def value(t):
        t_arr = np.asarray(t, dtype=float)
        acc = np.asarray(schedule_integral(rescaling.s(t_arr)), dtype=float)
        return -acc[..., np.newaxis] * moments

    def rate(t):
        t_arr = np.asarray(t, dtype=float)
        dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
        lam = np.asarray(inst.lam(rescaling.s(t_arr)), dtype=float)
        return -(dsdt * lam)[..., np.newaxis] * moments

    labels = tuple(tuple(int(s) for s in row) for row in spin_configurations(inst.n))
    return PhaseProfile.from_functions(labels, value, rate)


def suboptimal_ff(inst: IsingInstance, rescaling: Rescaling, t) -> np.ndarray:
    """Driving Hamiltonian at the field-cancelling phases.

    ``-(ds/dt) lambda ZZ - (ds/dt)(1 - lambda) Gamma
    sum_i [cos(phi_i) X_i + sin(phi_i) Y_i]`` with
    ``phi_i = 2 h_i Lambda(s(t))``.
    """
    parts = _dense_parts(inst)
    t_arr = np.asarray(t, dtype=float)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    s = np.asarray(rescaling.s(t_arr), dtype=float)
    lam = np.asarray(inst.lam(s), dtype=float)
    acc = np.asarray(inst.schedule_integral()(s), dtype=float)
    out = np.zeros(t_arr.shape + (inst.dim, inst.dim), dtype=complex)
    diag_view = np.einsum("...aa->...a", out)
    # zz_diag already carries the -1/2 sum J ZZ sign; only the rate scales it.
    diag_view[...] = (dsdt * lam)[..., np.newaxis] * parts["zz_diag"]
    amp = -(dsdt * (1.0 - lam) * inst.gamma)
    for i in range(inst.n):
        phi = 2.0 * inst.h[i] * acc
        out += (amp * np.cos(phi))[..., np.newaxis, np.newaxis] * parts["xs"][i]
        out += (amp * np.sin(phi))[..., np.newaxis, np.newaxis] * parts["ys"][i]
    return out


def suboptimal_ff_fn(inst: IsingInstance, rescaling: Rescaling) -> Callable:
    return lambda t: suboptimal_ff(inst, rescaling, t)


def suboptimal_norm_sq(inst: IsingInstance, rescaling: Rescaling, t):
    """Closed-form ``|H_FF|^2`` at the field-cancelling phases."""
    t_arr = np.asarray(t, dtype=float)
    dsdt = np.asarray(rescaling.ds_dt(t_arr), dtype=float)
    lam = np.asarray(inst.lam(rescaling.s(t_arr)), dtype=float)
    out = inst.dim * dsdt**2 * (
        lam**2 * inst.coupling_sq_sum()
        + inst.n * (1.0 - lam) ** 2 * inst.gamma**2
    )
    return float(out) if np.ndim(out) == 0 else out


def suboptimal_norm(inst: IsingInstance, rescaling: Rescaling, t):
    return np.sqrt(suboptimal_norm_sq(inst, rescaling, t))


def suboptimal_cost(inst: IsingInstance, rescaling: Rescaling, t):
    """Instantaneous cost ratio of the field-cancelling scheme."""
    t_arr = np.asarray(t, dtype=float)
    s = rescaling.s(t_arr)
    return suboptimal_norm(inst, rescaling, t_arr) / qa_norm(inst, s)
