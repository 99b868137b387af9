"""Phase profiles attached to measurement frames.

A phase profile holds one real function ``f_sigma(t)`` per frame label,
anchored at ``f_sigma(0) = 0``, together with its rate ``df_sigma/dt``.
Profiles built from a rate alone accumulate the integral with a cumulative
per-cell Simpson table; off-table evaluation uses cubic Hermite pieces with
the exact rate at the cell edges, so the achievable accuracy is fourth order
in the cell width throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


class CumulativeIntegral:
    """Antiderivative ``F(t) = int_{t0}^{t} g`` of a (vector-valued) rate.

    ``rate`` must be vectorized: for an array of times of shape ``(n,)`` it
    returns ``(n,)`` or ``(n, L)``.
    """

    def __init__(self, rate: Callable, t_start: float, t_end: float, cells: int = 4096):
        if t_end <= t_start:
            raise ValueError("t_end must exceed t_start")
        if cells < 1:
            raise ValueError("cells must be positive")
        self.rate = rate
        self.t_start = float(t_start)
        self.t_end = float(t_end)
        ts = np.linspace(self.t_start, self.t_end, cells + 1)
        mid = 0.5 * (ts[:-1] + ts[1:])
        g_nodes = np.asarray(rate(ts), dtype=float)
        g_mid = np.asarray(rate(mid), dtype=float)
        tail = g_nodes.shape[1:]
        h = np.diff(ts).reshape((cells,) + (1,) * len(tail))
        increments = (h / 6.0) * (g_nodes[:-1] + 4.0 * g_mid + g_nodes[1:])
        table = np.concatenate(
            [np.zeros((1,) + tail), np.cumsum(increments, axis=0)], axis=0
        )
        self._ts = ts
        self._table = table
        self._tail = tail

    def __call__(self, t):
        t_in = np.asarray(t, dtype=float)
        scalar = t_in.ndim == 0
        tq = np.atleast_1d(t_in).ravel()
        idx = np.clip(np.searchsorted(self._ts, tq, side="right") - 1, 0, len(self._ts) - 2)
        t0 = self._ts[idx]
        t1 = self._ts[idx + 1]
        h = t1 - t0
        x = (tq - t0) / h
        g0 = np.asarray(self.rate(t0), dtype=float)
        g1 = np.asarray(self.rate(t1), dtype=float)
        expand = (slice(None),) + (np.newaxis,) * len(self._tail)
        xs = x[expand]
        hs = h[expand]
        h00 = (1.0 + 2.0 * xs) * (1.0 - xs) ** 2
        h10 = xs * (1.0 - xs) ** 2
        h01 = xs**2 * (3.0 - 2.0 * xs)
        h11 = xs**2 * (xs - 1.0)
        val = h00 * self._table[idx] + hs * h10 * g0 + h01 * self._table[idx + 1] + hs * h11 * g1
        val = val.reshape(t_in.shape + self._tail) if not scalar else val[0]
        return val


@dataclass(frozen=True)
class PhaseProfile:
    """Per-label phases ``f_sigma`` and their rates on the fast-forward interval."""

    labels: tuple
    value: Callable
    rate: Callable

    def __post_init__(self) -> None:
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("phase labels must be distinct")
        v0 = np.asarray(self.value(0.0), dtype=float)
        if v0.shape != (len(self.labels),):
            raise ValueError(
                f"value(0) has shape {v0.shape}, expected ({len(self.labels)},)"
            )
        if np.max(np.abs(v0)) > 1e-12:
            raise ValueError("phases must vanish at t = 0")

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @classmethod
    def zero(cls, labels: Sequence) -> "PhaseProfile":
        labels = tuple(labels)
        n = len(labels)

        def value(t):
            return np.zeros(np.shape(t) + (n,))

        return cls(labels=labels, value=value, rate=value)

    @classmethod
    def from_rate(
        cls,
        labels: Sequence,
        rate: Callable,
        t_end: float,
        t_start: float = 0.0,
        cells: int = 4096,
    ) -> "PhaseProfile":
        """Accumulate phases from their rate, anchored at zero."""
        integral = CumulativeIntegral(rate, t_start, t_end, cells=cells)
        return cls(labels=tuple(labels), value=integral, rate=rate)

    @classmethod
    def from_functions(cls, labels: Sequence, value: Callable, rate: Callable) -> "PhaseProfile":
        return cls(labels=tuple(labels), value=value, rate=rate)

    def with_common_rate_shift(self, shift: float) -> "PhaseProfile":
        """Add the same linear phase ``shift * t`` to every label (gauge move)."""
        base_value, base_rate = self.value, self.rate

        def value(t):
            t_arr = np.asarray(t, dtype=float)
            return np.asarray(base_value(t)) + shift * t_arr[..., np.newaxis]

        def rate(t):
            return np.asarray(base_rate(t)) + shift

        return PhaseProfile(labels=self.labels, value=value, rate=rate)
