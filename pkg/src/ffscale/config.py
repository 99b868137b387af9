"""Flat key-value scenario configuration.

One ``dotted.key = value`` pair per line; ``#`` starts a comment; blank
lines are ignored.  Unknown keys, duplicate keys, missing required keys and
malformed values are all rejected with the offending key and line named.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path


class ConfigError(ValueError):
    """Configuration file rejected; the message carries key and line context."""


MODELS = ("two_level_z_basis", "two_level_eigenbasis", "ising_annealing")
PHASE_MODES = ("none", "optimal", "suboptimal", "modulated")
SWEEP_AXES = ("none", "gamma0", "delta")
QUANTITIES = ("instantaneous", "total")

_KNOWN_KEYS = {
    "model",
    "schedule.omega0",
    "schedule.gamma0",
    "ising.spins",
    "ising.gamma",
    "ising.seed",
    "rescaling.T",
    "rescaling.T_FF",
    "rescaling.shape",
    "phase.mode",
    "phase.k",
    "phase.delta",
    "grid.steps",
    "sweep.axis",
    "sweep.values",
    "sweep.range",
    "output.path",
    "output.quantity",
}

MIN_GRID_STEPS = 1000

# Sentinel sweep value: resolved to the winding-matched modulation delta.
OPT_TOKEN = "opt"


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    T: float
    T_FF: float
    steps: int
    out_path: str
    quantity: str = "instantaneous"
    shape: str = "linear"
    omega0: float | None = None
    gamma0: float | None = None
    spins: int | None = None
    ising_gamma: float | None = None
    seed: int | None = None
    phase_mode: str = "none"
    k: int = 4
    delta: float | None = None
    sweep_axis: str = "none"
    sweep_values: tuple = ()
    sweep_range: tuple | None = None  # (lo, hi, count)

    def replace(self, **kwargs) -> "ScenarioConfig":
        from dataclasses import replace

        return replace(self, **kwargs)


def _parse_pairs(text: str, source: str) -> dict[str, tuple[str, int]]:
    pairs: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in pairs:
            first = pairs[key][1]
            raise ConfigError(
                f"{source}:{lineno}: duplicate key {key!r} (first set on line {first})"
            )
        pairs[key] = (value, lineno)
    return pairs


class _Reader:
    def __init__(self, pairs: dict[str, tuple[str, int]], source: str):
        self.pairs = pairs
        self.source = source
        self.used: set[str] = set()

    def _raw(self, key: str):
        self.used.add(key)
        return self.pairs.get(key)

    def get(self, key: str, default=None):
        item = self._raw(key)
        return item[0] if item is not None else default

    def require(self, key: str) -> str:
        item = self._raw(key)
        if item is None:
            raise ConfigError(f"{self.source}: missing required key {key!r}")
        return item[0]

    def _context(self, key: str) -> str:
        item = self.pairs.get(key)
        return f"{self.source}:{item[1]}" if item is not None else self.source

    def typed(self, key: str, kind, default=None, required: bool = False):
        raw = self.require(key) if required else self.get(key)
        if raw is None:
            return default
        try:
            if kind is int:
                return int(raw)
            if kind is float:
                return float(raw)
            return raw
        except ValueError:
            raise ConfigError(
                f"{self._context(key)}: value {raw!r} for {key!r} is not a valid {kind.__name__}"
            ) from None

    def choice(self, key: str, options, default=None, required: bool = False):
        raw = self.require(key) if required else self.get(key)
        if raw is None:
            return default
        if raw not in options:
            raise ConfigError(
                f"{self._context(key)}: {key!r} must be one of {', '.join(options)}; got {raw!r}"
            )
        return raw

    def reject_unused(self) -> None:
        stray = set(self.pairs) - self.used
        if stray:
            key = sorted(stray)[0]
            raise ConfigError(
                f"{self._context(key)}: key {key!r} does not apply to this scenario"
            )


def parse_config(text: str, source: str = "<config>") -> ScenarioConfig:
    pairs = _parse_pairs(text, source)
    r = _Reader(pairs, source)

    model = r.choice("model", MODELS, required=True)
    T = r.typed("rescaling.T", float, required=True)
    T_FF = r.typed("rescaling.T_FF", float, required=True)
    shape = r.choice("rescaling.shape", ("linear",), default="linear")
    if T <= 0 or T_FF <= 0:
        raise ConfigError(f"{source}: durations must be positive (T={T}, T_FF={T_FF})")
    steps = r.typed("grid.steps", int, default=10_000)
    if steps < MIN_GRID_STEPS:
        raise ConfigError(
            f"{r._context('grid.steps')}: grid.steps = {steps} below the minimum of {MIN_GRID_STEPS}"
        )
    if steps % 2 != 0:
        raise ConfigError(
            f"{r._context('grid.steps')}: grid.steps must be even for Simpson quadrature"
        )
    out_path = r.require("output.path")
    quantity = r.choice("output.quantity", QUANTITIES, default="instantaneous")

    sweep_axis = r.choice("sweep.axis", SWEEP_AXES, default="none")
    sweep_values: tuple = ()
    sweep_range = None
    raw_values = r.get("sweep.values")
    raw_range = r.get("sweep.range")
    if sweep_axis == "none":
        if raw_values is not None or raw_range is not None:
            raise ConfigError(f"{source}: sweep values given but sweep.axis is 'none'")
    else:
        if (raw_values is None) == (raw_range is None):
            raise ConfigError(
                f"{source}: sweep.axis = {sweep_axis!r} needs exactly one of "
                "sweep.values or sweep.range"
            )
        if raw_values is not None:
            items = [item.strip() for item in raw_values.split(",")]
            if not any(items):
                raise ConfigError(f"{r._context('sweep.values')}: sweep.values is empty")
            parsed = []
            for item in items:
                if not item:
                    raise ConfigError(
                        f"{r._context('sweep.values')}: empty entry in sweep.values"
                    )
                if item == OPT_TOKEN:
                    if sweep_axis != "delta":
                        raise ConfigError(
                            f"{r._context('sweep.values')}: '{OPT_TOKEN}' only applies to the delta axis"
                        )
                    parsed.append(OPT_TOKEN)
                    continue
                try:
                    value = float(item)
                except ValueError:
                    raise ConfigError(
                        f"{r._context('sweep.values')}: {item!r} is not a number"
                    ) from None
                if not math.isfinite(value):
                    raise ConfigError(
                        f"{r._context('sweep.values')}: {item!r} is not finite"
                    )
                parsed.append(value)
            sweep_values = tuple(parsed)
        else:
            parts = raw_range.split(":")
            if len(parts) != 3:
                raise ConfigError(
                    f"{r._context('sweep.range')}: expected 'lo:hi:count', got {raw_range!r}"
                )
            try:
                lo, hi = float(parts[0]), float(parts[1])
                count = int(parts[2])
            except ValueError:
                raise ConfigError(
                    f"{r._context('sweep.range')}: expected 'lo:hi:count', got {raw_range!r}"
                ) from None
            if count < 1:
                raise ConfigError(f"{r._context('sweep.range')}: count must be positive")
            if hi < lo:
                raise ConfigError(f"{r._context('sweep.range')}: hi must not be below lo")
            sweep_range = (lo, hi, count)

    phase_mode = r.choice("phase.mode", PHASE_MODES, default="none")
    allowed_modes = {
        "two_level_z_basis": ("none", "optimal"),
        "two_level_eigenbasis": ("none", "optimal", "modulated"),
        "ising_annealing": ("none", "suboptimal"),
    }[model]
    if phase_mode not in allowed_modes:
        raise ConfigError(
            f"{r._context('phase.mode')}: phase.mode {phase_mode!r} does not apply to "
            f"model {model!r} (allowed: {', '.join(allowed_modes)})"
        )

    # winding keys mean nothing outside modulated runs; leave them unconsumed
    # there so reject_unused flags them
    k = 4
    delta = None
    if phase_mode == "modulated":
        k = r.typed("phase.k", int, default=4)
        delta = r.typed("phase.delta", float)
        if k < 1:
            raise ConfigError(f"{r._context('phase.k')}: phase.k must be a positive integer")
        if sweep_axis == "delta" and delta is not None:
            raise ConfigError(
                f"{source}: phase.delta must be omitted when sweeping over delta"
            )

    omega0 = gamma0 = None
    spins = seed = None
    ising_gamma = None
    if model in ("two_level_z_basis", "two_level_eigenbasis"):
        omega0 = r.typed("schedule.omega0", float, required=True)
        gamma0 = r.typed("schedule.gamma0", float)
        if sweep_axis == "gamma0":
            if gamma0 is not None:
                raise ConfigError(
                    f"{source}: schedule.gamma0 must be omitted when sweeping over gamma0"
                )
        elif gamma0 is None:
            raise ConfigError(f"{source}: missing required key 'schedule.gamma0'")
    else:
        spins = r.typed("ising.spins", int, required=True)
        ising_gamma = r.typed("ising.gamma", float, required=True)
        seed = r.typed("ising.seed", int, default=0)
        if spins < 1:
            raise ConfigError(f"{r._context('ising.spins')}: ising.spins must be positive")
        if sweep_axis != "none":
            raise ConfigError(
                f"{source}: sweep.axis = {sweep_axis!r} does not apply to model {model!r}"
            )

    if sweep_axis == "delta" and phase_mode != "modulated":
        raise ConfigError(
            f"{source}: sweeping over delta requires phase.mode = modulated"
        )

    r.reject_unused()
    return ScenarioConfig(
        model=model,
        T=T,
        T_FF=T_FF,
        steps=steps,
        out_path=out_path,
        quantity=quantity,
        shape=shape,
        omega0=omega0,
        gamma0=gamma0,
        spins=spins,
        ising_gamma=ising_gamma,
        seed=seed,
        phase_mode=phase_mode,
        k=k,
        delta=delta,
        sweep_axis=sweep_axis,
        sweep_values=sweep_values,
        sweep_range=sweep_range,
    )


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text, source=str(path))
