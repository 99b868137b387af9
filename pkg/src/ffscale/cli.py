"""Command-line interface.

    ffscale run <config> [--out PATH] [--steps N] [--seed S]
    ffscale preset <name> [--out PATH] [--steps N] [--seed S]
    ffscale list-presets

``run`` executes a scenario config file; ``preset`` executes a bundled
scenario (``fig1`` expands to both ``fig1-left`` and ``fig1-right``, with
``--out`` then naming a directory).  Exit status is 0 on success and 2 for
configuration or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import MIN_GRID_STEPS, ConfigError, ScenarioConfig, load_config
from .datasets import emit_csv
from .scenarios import PRESET_GROUPS, PRESETS, preset_config, run_scenario


def _apply_overrides(cfg: ScenarioConfig, args) -> ScenarioConfig:
    if args.steps is not None:
        if args.steps < MIN_GRID_STEPS:
            raise ConfigError(
                f"--steps {args.steps} below the minimum of {MIN_GRID_STEPS}"
            )
        if args.steps % 2 != 0:
            raise ConfigError("--steps must be even for Simpson quadrature")
        cfg = cfg.replace(steps=args.steps)
    if args.seed is not None:
        if cfg.model != "ising_annealing":
            raise ConfigError(f"--seed does not apply to model {cfg.model!r}")
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _execute(cfg: ScenarioConfig, out_path: Path) -> Path:
    dataset = run_scenario(cfg)
    return emit_csv(dataset, out_path)


def _cmd_run(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    out = Path(args.out) if args.out is not None else Path(cfg.out_path)
    written = _execute(cfg, out)
    print(written)
    return 0


def _cmd_preset(args) -> int:
    name = args.name
    if name in PRESET_GROUPS:
        members = PRESET_GROUPS[name]
        out_dir = Path(args.out) if args.out is not None else Path(".")
        if out_dir.exists() and not out_dir.is_dir():
            raise ConfigError(
                f"--out must name a directory for preset group {name!r}"
            )
        out_dir.mkdir(parents=True, exist_ok=True)
        for member in members:
            cfg = _apply_overrides(preset_config(member), args)
            written = _execute(cfg, out_dir / cfg.out_path)
            print(written)
        return 0
    cfg = _apply_overrides(preset_config(name), args)
    out = Path(args.out) if args.out is not None else Path(cfg.out_path)
    written = _execute(cfg, out)
    print(written)
    return 0


def _cmd_list_presets(_args) -> int:
    for name in sorted(PRESETS):
        print(f"{name:<12} {PRESETS[name]}")
    for name, members in sorted(PRESET_GROUPS.items()):
        print(f"{name:<12} runs {' and '.join(members)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffscale",
        description="Fast-forward scaling scenarios: costs, traces and CSV datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="output CSV path (directory for preset groups)")
        p.add_argument("--steps", type=int, help="override the time-grid step count")
        p.add_argument("--seed", type=int, help="override the Ising instance seed")

    p_run = sub.add_parser("run", help="execute a scenario config file")
    p_run.add_argument("config", help="path to a key-value scenario config")
    add_common(p_run)
    p_run.set_defaults(fn=_cmd_run)

    p_preset = sub.add_parser("preset", help="execute a bundled scenario")
    p_preset.add_argument(
        "name", help="preset name (see list-presets); 'fig1' runs both halves"
    )
    add_common(p_preset)
    p_preset.set_defaults(fn=_cmd_preset)

    p_list = sub.add_parser("list-presets", help="list bundled scenarios")
    p_list.set_defaults(fn=_cmd_list_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
