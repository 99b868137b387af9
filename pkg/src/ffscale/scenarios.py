"""Scenario execution: configs to figure datasets.

A scenario fixes a model, a phase scheme and a rescaling, then either
samples the instantaneous cost ratio across the fast-forward interval or
integrates total costs across a parameter sweep.  All sampled quantities
come from the closed-form norm expressions of the models (the generic
engine path cross-checks them in the test suite), so scenario runs are
pure deterministic numpy evaluations.

Set ``FFSCALE_THREADS`` to an integer to evaluate sweep traces in a thread
pool; unset means sequential.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import numpy as np

from . import annealing, two_level
from .config import OPT_TOKEN, ConfigError, ScenarioConfig, parse_config
from .datasets import FigureDataset
from .engine import composite_simpson
from .evolution import TimeGrid
from .rescaling import linear_rescaling

PRESETS = {
    "fig1-left": "instantaneous eigenframe cost across the reversal, three gap sizes",
    "fig1-right": "total eigenframe cost against the minimum gap",
    "fig2": "gap-crossing cost with and without winding-matched modulation",
    "fig3": "modulation robustness: cost traces across a band of delta values",
}

PRESET_GROUPS = {"fig1": ("fig1-left", "fig1-right")}


def preset_config(name: str) -> ScenarioConfig:
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS) + sorted(PRESET_GROUPS))
        raise ConfigError(f"unknown preset {name!r}; available: {known}")
    text = (resources.files("ffscale") / "presets" / f"{name}.cfg").read_text("utf-8")
    return parse_config(text, source=f"preset:{name}")


def _thread_count() -> int:
    raw = os.environ.get("FFSCALE_THREADS")
    if raw is None or not raw.strip():
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ConfigError(f"FFSCALE_THREADS={raw!r} is not an integer") from None
    if count < 1:
        raise ConfigError("FFSCALE_THREADS must be at least 1")
    return count


def _map_traces(fn, items):
    threads = _thread_count()
    if threads == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _format_value(value: float) -> str:
    return f"{value:g}"


def _resolve_delta(cfg: ScenarioConfig) -> float:
    if cfg.delta is not None:
        return cfg.delta
    return two_level.modulation_delta(cfg.omega0, cfg.gamma0, cfg.T, cfg.k)


def _sweep_bindings(cfg: ScenarioConfig) -> list[tuple[str, float]]:
    """Resolve the sweep into (axis-value label, numeric value) pairs."""
    if cfg.sweep_axis == "none":
        return [("", float("nan"))]
    if cfg.sweep_range is not None:
        lo, hi, count = cfg.sweep_range
        samples = list(np.linspace(lo, hi, count))
        opt = two_level.modulation_delta(cfg.omega0, cfg.gamma0, cfg.T, cfg.k)
        if opt not in samples:
            samples.append(opt)
        values = samples
    else:
        values = [
            two_level.modulation_delta(cfg.omega0, cfg.gamma0, cfg.T, cfg.k)
            if value == OPT_TOKEN
            else value
            for value in cfg.sweep_values
        ]
    seen: list[float] = []
    for value in values:
        if value not in seen:
            seen.append(value)
    return [(_format_value(value), value) for value in seen]


def _norm_functions(cfg: ScenarioConfig, binding: tuple[str, float]):
    """Closed-form norm callables for one trace.

    Returns ``(ff_norm_fn(t), orig_norm_fn(u))`` mapping fast-forward and
    original time to Hilbert-Schmidt norms.
    """
    _, value = binding
    rescaling = linear_rescaling(cfg.T, cfg.T_FF)

    if cfg.model == "ising_annealing":
        inst = annealing.random_instance(cfg.spins, cfg.ising_gamma, cfg.seed, cfg.T)

        def orig_norm(u):
            return annealing.qa_norm(inst, u)

        if cfg.phase_mode == "none":
            def ff_norm(t):
                dsdt = np.abs(np.asarray(rescaling.ds_dt(t), dtype=float))
                return dsdt * annealing.qa_norm(inst, rescaling.s(t))
        else:
            def ff_norm(t):
                return annealing.suboptimal_norm(inst, rescaling, t)
        return ff_norm, orig_norm

    gamma0 = value if cfg.sweep_axis == "gamma0" else cfg.gamma0
    if gamma0 is None or gamma0 <= 0:
        raise ConfigError(f"schedule.gamma0 must be positive, got {gamma0!r}")
    schedule = two_level.magnetization_reversal(cfg.omega0, gamma0, cfg.T)

    def orig_norm(u):
        return two_level.original_norm(schedule, u)

    if cfg.phase_mode == "none":
        def ff_norm(t):
            dsdt = np.abs(np.asarray(rescaling.ds_dt(t), dtype=float))
            return dsdt * two_level.original_norm(schedule, rescaling.s(t))
        return ff_norm, orig_norm

    if cfg.model == "two_level_z_basis":
        def ff_norm(t):
            return two_level.two_level_optimal_norm(schedule, rescaling, t)
        return ff_norm, orig_norm

    # Eigenbasis model: phase-matched (delta = 0) or winding-modulated.
    if cfg.phase_mode == "optimal":
        delta = 0.0
    elif cfg.sweep_axis == "delta":
        delta = value
    else:
        delta = _resolve_delta(cfg)
    params = two_level.ModulationParams(
        omega0=cfg.omega0, gamma0=gamma0, T=cfg.T, T_FF=cfg.T_FF, delta=delta
    )
    phases = two_level.modulated_phase(params)

    def ff_norm(t):
        return np.sqrt(two_level.eigenbasis_norm_sq(schedule, rescaling, phases, t))

    return ff_norm, orig_norm


def _axis_column_suffix(cfg: ScenarioConfig, label: str) -> str:
    return f"[{cfg.sweep_axis}={label}]" if label else ""


def _instantaneous_dataset(cfg: ScenarioConfig) -> FigureDataset:
    rescaling = linear_rescaling(cfg.T, cfg.T_FF)
    grid = TimeGrid(0.0, cfg.T_FF, cfg.steps)
    t = grid.points()
    std = np.abs(np.asarray(rescaling.ds_dt(t), dtype=float))
    bindings = _sweep_bindings(cfg)

    def one_trace(binding):
        ff_norm_fn, orig_norm_fn = _norm_functions(cfg, binding)
        ff_vals = np.asarray(ff_norm_fn(t), dtype=float)
        orig_vals = np.asarray(orig_norm_fn(rescaling.s(t)), dtype=float)
        if np.any(orig_vals <= 0.0):
            raise ConfigError(
                "original norm vanishes on the grid; instantaneous cost undefined"
            )
        delta_c = ff_vals / orig_vals
        return ff_vals, orig_vals, delta_c

    traces = _map_traces(one_trace, bindings)
    columns: dict[str, np.ndarray] = {"t": t, "dC_std": std}
    for binding, (ff_vals, orig_vals, delta_c) in zip(bindings, traces):
        suffix = _axis_column_suffix(cfg, binding[0])
        columns[f"dC{suffix}"] = delta_c
        columns[f"ratio{suffix}"] = delta_c / std
        columns[f"ff_norm{suffix}"] = ff_vals
        columns[f"orig_norm{suffix}"] = orig_vals
    return FigureDataset(columns=columns)


def _total_dataset(cfg: ScenarioConfig) -> FigureDataset:
    rescaling = linear_rescaling(cfg.T, cfg.T_FF)
    ff_grid = TimeGrid(0.0, cfg.T_FF, cfg.steps)
    orig_grid = TimeGrid(0.0, cfg.T, cfg.steps)
    t = ff_grid.points()
    bindings = _sweep_bindings(cfg)
    if cfg.sweep_axis == "none":
        raise ConfigError("output.quantity = total requires a parameter sweep")

    def one_row(binding):
        ff_norm_fn, orig_norm_fn = _norm_functions(cfg, binding)
        ff_int = composite_simpson(np.asarray(ff_norm_fn(t), dtype=float), ff_grid.spacing)
        orig_int = composite_simpson(
            np.asarray(orig_norm_fn(orig_grid.points()), dtype=float), orig_grid.spacing
        )
        if orig_int <= 0.0:
            raise ConfigError("original dynamics has vanishing integrated norm")
        dsdt = np.abs(np.asarray(rescaling.ds_dt(t), dtype=float))
        std_int = composite_simpson(
            dsdt * np.asarray(orig_norm_fn(rescaling.s(t)), dtype=float), ff_grid.spacing
        )
        return ff_int / orig_int, std_int / orig_int, ff_int, orig_int

    rows = _map_traces(one_row, bindings)
    values = np.array([value for _, value in bindings], dtype=float)
    totals = np.array([row[0] for row in rows])
    totals_std = np.array([row[1] for row in rows])
    ff_ints = np.array([row[2] for row in rows])
    orig_ints = np.array([row[3] for row in rows])
    columns: dict[str, np.ndarray] = {cfg.sweep_axis: values}
    if cfg.sweep_axis == "gamma0":
        columns["gap"] = 2.0 * values
    columns["C"] = totals
    columns["C_std"] = totals_std
    columns["ratio"] = totals / totals_std
    columns["ff_integral"] = ff_ints
    columns["orig_integral"] = orig_ints
    return FigureDataset(columns=columns)


def run_scenario(cfg: ScenarioConfig) -> FigureDataset:
    """Execute one scenario configuration into a dataset."""
    if cfg.quantity == "total":
        return _total_dataset(cfg)
    return _instantaneous_dataset(cfg)


def sweep_delta(cfg: ScenarioConfig) -> FigureDataset:
    """Cost traces across a band of modulation strengths plus the matched one.

    Requires ``sweep.range`` on the delta axis; the winding-matched delta is
    appended as the last trace when the sampled band does not already
    contain it.
    """
    if cfg.sweep_axis != "delta" or cfg.sweep_range is None:
        raise ConfigError("sweep_delta requires sweep.axis = delta with sweep.range")
    return _instantaneous_dataset(cfg)
