"""Compare the compiled RK4 kernel against the pure-numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--steps N]

Times both backends on identical propagation problems and reports the
speedup plus the worst state deviation between them.  The deviation should
sit at rounding level; anything larger means the backends diverged.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ffscale import _kernels_py

try:
    from ffscale import _kernels as _compiled
except ImportError:
    _compiled = None


def _problem(seed: int, dim: int, steps: int):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    a = 0.5 * (a + a.conj().T)
    b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    b = 0.5 * (b + b.conj().T)
    ts = np.linspace(0.0, 1.0, 2 * steps + 1)
    hs = np.ascontiguousarray(a[np.newaxis] + np.sin(3.0 * ts)[:, np.newaxis, np.newaxis] * b)
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return hs, psi


def _run(kernel, hs, psi0, dt):
    steps = (hs.shape[0] - 1) // 2
    psi = psi0.copy()
    out = np.empty((steps, psi.size), dtype=complex)
    t0 = time.perf_counter()
    kernel.rk4_chunk(hs, psi, dt, out)
    return time.perf_counter() - t0, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=100_000, help="RK4 steps per case")
    args = parser.parse_args()

    print(f"{'dim':>4} {'steps':>8} {'python':>10} {'compiled':>10} {'speedup':>8} {'max dev':>10}")
    for seed, dim in ((0, 2), (1, 4), (2, 8), (3, 16)):
        hs, psi = _problem(seed, dim, args.steps)
        dt = 1.0 / args.steps
        t_py, out_py = _run(_kernels_py, hs, psi, dt)
        if _compiled is None:
            print(f"{dim:>4} {args.steps:>8} {t_py:>9.3f}s {'absent':>10} {'-':>8} {'-':>10}")
            continue
        t_c, out_c = _run(_compiled, hs, psi, dt)
        dev = float(np.max(np.abs(out_py - out_c)))
        print(
            f"{dim:>4} {args.steps:>8} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x {dev:>10.2e}"
        )
    if _compiled is None:
        print("compiled extension not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
