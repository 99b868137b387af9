"""Time rescaling maps between original and fast-forwarded duration.

A rescaling carries the monotone map ``s(t)`` from fast-forward time
``t in [0, T_FF]`` to original time ``s in [0, T]`` together with its rate
``ds/dt``.  Rewinding and pausing (``ds/dt <= 0``) are out of scope here, so
strict positivity is part of the contract and is probed at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Rescaling:
    T: float
    T_FF: float
    s: Callable
    ds_dt: Callable

    def __post_init__(self) -> None:
        if self.T <= 0 or self.T_FF <= 0:
            raise ValueError("durations must be positive")
        tol = 1e-12 * max(1.0, abs(self.T))
        s0 = float(self.s(0.0))
        s1 = float(self.s(self.T_FF))
        if abs(s0) > tol:
            raise ValueError(f"s(0) = {s0!r}, expected 0")
        if abs(s1 - self.T) > tol:
            raise ValueError(f"s(T_FF) = {s1!r}, expected T = {self.T!r}")
        probe = np.linspace(0.0, self.T_FF, 65)
        rates = np.asarray(self.ds_dt(probe), dtype=float)
        if np.any(rates <= 0.0):
            raise ValueError("ds/dt must be strictly positive (no rewinding or pausing)")
        # Consistency of the supplied rate with the map itself.
        eps = 1e-5 * self.T_FF
        inner = probe[1:-1]
        fd = (np.asarray(self.s(inner + eps)) - np.asarray(self.s(inner - eps))) / (2 * eps)
        if np.max(np.abs(fd - np.asarray(self.ds_dt(inner)))) > 1e-6 * max(1.0, self.T / self.T_FF):
            raise ValueError("ds_dt is inconsistent with s on the probe grid")

    @property
    def speedup(self) -> float:
        return self.T / self.T_FF


def linear_rescaling(T: float, T_FF: float) -> Rescaling:
    """Uniform speed-up ``s(t) = (T / T_FF) t``."""
    ratio = T / T_FF
    return Rescaling(
        T=T,
        T_FF=T_FF,
        s=lambda t: ratio * np.asarray(t, dtype=float),
        ds_dt=lambda t: np.full_like(np.asarray(t, dtype=float), ratio),
    )
