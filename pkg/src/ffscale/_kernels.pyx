# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 propagation kernel.

Same contract as ``_kernels_py.rk4_chunk``: advance ``psi`` through ``m``
classical RK4 steps of ``i dpsi/dt = H(t) psi`` using Hamiltonian samples on
the half-step lattice, recording each post-step state in ``out``.
"""

import numpy as np

cdef double complex MINUS_I = -1j


cdef void _apply_minus_ih(double complex[:, :, ::1] h, Py_ssize_t k,
                          double complex[::1] x, double complex[::1] out) noexcept nogil:
    # out = -i * h[k] @ x
    cdef Py_ssize_t d = x.shape[0]
    cdef Py_ssize_t a, b
    cdef double complex acc
    for a in range(d):
        acc = 0
        for b in range(d):
            acc = acc + h[k, a, b] * x[b]
        out[a] = MINUS_I * acc


def rk4_chunk(double complex[:, :, ::1] h_samples, double complex[::1] psi,
              double dt, double complex[:, ::1] out):
    cdef Py_ssize_t m = out.shape[0]
    cdef Py_ssize_t d = psi.shape[0]
    if h_samples.shape[0] != 2 * m + 1:
        raise ValueError("h_samples must hold 2*m + 1 half-step samples")
    if h_samples.shape[1] != d or h_samples.shape[2] != d or out.shape[1] != d:
        raise ValueError("dimension mismatch between h_samples, psi and out")

    scratch = np.empty((5, d), dtype=np.complex128)
    cdef double complex[:, ::1] sc = scratch
    cdef double complex[::1] k1 = sc[0]
    cdef double complex[::1] k2 = sc[1]
    cdef double complex[::1] k3 = sc[2]
    cdef double complex[::1] k4 = sc[3]
    cdef double complex[::1] tmp = sc[4]
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef Py_ssize_t j, a

    with nogil:
        for j in range(m):
            _apply_minus_ih(h_samples, 2 * j, psi, k1)
            for a in range(d):
                tmp[a] = psi[a] + half * k1[a]
            _apply_minus_ih(h_samples, 2 * j + 1, tmp, k2)
            for a in range(d):
                tmp[a] = psi[a] + half * k2[a]
            _apply_minus_ih(h_samples, 2 * j + 1, tmp, k3)
            for a in range(d):
                tmp[a] = psi[a] + dt * k3[a]
            _apply_minus_ih(h_samples, 2 * j + 2, tmp, k4)
            for a in range(d):
                psi[a] = psi[a] + sixth * (k1[a] + 2.0 * (k2[a] + k3[a]) + k4[a])
                out[j, a] = psi[a]
