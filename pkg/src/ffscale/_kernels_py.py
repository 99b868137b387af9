"""Pure-numpy reference implementation of the propagation kernel.

Semantics must match ``_kernels.pyx`` exactly: classical RK4 for
``i dpsi/dt = H(t) psi`` with the Hamiltonian pre-sampled on the half-step
lattice.  ``psi`` is advanced in place and each post-step state is written
into ``out``.
"""

from __future__ import annotations

import numpy as np


def rk4_chunk(h_samples: np.ndarray, psi: np.ndarray, dt: float, out: np.ndarray) -> None:
    m = out.shape[0]
    if h_samples.shape[0] != 2 * m + 1:
        raise ValueError("h_samples must hold 2*m + 1 half-step samples")
    half = 0.5 * dt
    sixth = dt / 6.0
    for j in range(m):
        h0 = h_samples[2 * j]
        hm = h_samples[2 * j + 1]
        h1 = h_samples[2 * j + 2]
        k1 = -1j * (h0 @ psi)
        k2 = -1j * (hm @ (psi + half * k1))
        k3 = -1j * (hm @ (psi + half * k2))
        k4 = -1j * (h1 @ (psi + dt * k3))
        psi += sixth * (k1 + 2.0 * (k2 + k3) + k4)
        out[j] = psi
