"""Command-line interface: solve, oracle, sweep, compare, gen.

Configuration precedence is flags over JSON config file over built-in
defaults, and the effective configuration is echoed into every output
artifact.  Exit codes: 0 success, 2 input parse error, 3 solver failure,
4 capacity exceeded, 5 output I/O failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import copy
import json
import os
import sys
import tempfile
from importlib import resources
from pathlib import Path

from .dynamics import DynamicsConfig
from .errors import CapacityError, ConfigError, DivergenceError, GraphParseError
from .experiments import (
    SweepSpec,
    compare_modes,
    comparison_to_dict,
    reference_graph,
    run_sweep,
    solve,
    sweep_to_csv,
)
from .integrate import IntegratorConfig
from .ising import (
    MaxCutInstance,
    brute_force_ground_state,
    ising_from_maxcut,
    parse_graph,
    random_instance,
    serialize_graph,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_CAPACITY = 4
EXIT_IO = 5
EXIT_USAGE = 64

_SIGMA_GRID = [0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0, 2.0]


def _defaults() -> dict:
    return {
        "graph": None,
        "dynamics": {
            "sigma": 1.0,
            "kappa_s": 0.75,
            "mode": "distributed",
            "injection_variant": "subharmonic",
            "injection_phase": 0.0,
            "injection_detuning": 0.0,
            "noise_amplitude": 0.0,
            "natural_freqs": None,
        },
        "integrator": {"dt": 0.01, "t_end": 50.0, "record_every": 10, "seed": 0},
        "lock": {"threshold": 0.9, "hold_samples": 50},
        "sweep": {
            "parameter": "sigma",
            "values": list(_SIGMA_GRID),
            "seeds": list(range(10)),
        },
        "compare": {"seeds": list(range(50))},
        "solve": {"attempts": 20},
    }


# the solve command alone defaults to a short noisy anneal; noise breaks the
# symmetric saddle of uniform initial phases
_SOLVE_OVERRIDES = {
    "dynamics": {"noise_amplitude": 0.01},
    "integrator": {"t_end": 20.0},
}


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file (graphs, reference configs)."""
    return Path(resources.files("oimsim") / "data" / name)


def _merge(base: dict, override: dict, crumb: str = "") -> dict:
    """Recursive merge rejecting keys absent from the base layout."""
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{crumb}.{key}" if crumb else key
        if key not in base:
            raise ConfigError(f"unknown config key {where!r}")
        if isinstance(base[key], dict) and not isinstance(value, dict):
            raise ConfigError(f"config key {where!r} must be an object")
        if isinstance(base[key], dict):
            out[key] = _merge(base[key], value, where)
        else:
            out[key] = copy.deepcopy(value)
    return out


def load_effective_config(
    config_path: str | None, command_overrides: dict | None = None
) -> tuple[dict, Path | None]:
    """Defaults, then command-specific defaults, then the JSON file."""
    cfg = _defaults()
    if command_overrides:
        cfg = _merge(cfg, command_overrides)
    config_dir = None
    if config_path is not None:
        path = Path(config_path)
        try:
            raw = json.loads(path.read_text())
        except OSError as err:
            raise ConfigError(f"cannot read config {config_path}: {err}") from err
        except json.JSONDecodeError as err:
            raise ConfigError(f"invalid JSON in {config_path}: {err}") from err
        if not isinstance(raw, dict):
            raise ConfigError(f"config {config_path} must be a JSON object")
        cfg = _merge(cfg, raw)
        config_dir = path.parent
    return cfg, config_dir


def _build_dynamics(cfg: dict) -> DynamicsConfig:
    try:
        return DynamicsConfig(**cfg["dynamics"])
    except (TypeError, ValueError) as err:
        raise ConfigError(f"invalid dynamics config: {err}") from err


def _build_integrator(cfg: dict) -> IntegratorConfig:
    try:
        return IntegratorConfig(**cfg["integrator"])
    except (TypeError, ValueError) as err:
        raise ConfigError(f"invalid integrator config: {err}") from err


def _lock_params(cfg: dict) -> tuple[float, int]:
    lock = cfg["lock"]
    return float(lock["threshold"]), int(lock["hold_samples"])


def _load_graph_file(path: str | Path) -> MaxCutInstance:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise GraphParseError(f"cannot read graph {path}: {err}", 0) from err
    return parse_graph(text)


def _resolve_config_graph(cfg: dict, config_dir: Path | None) -> MaxCutInstance:
    """Graph named by the config, resolved relative to the config file;
    null selects the built-in 10-oscillator reference instance."""
    name = cfg["graph"]
    if name is None:
        return reference_graph()
    path = Path(name)
    if not path.is_absolute() and config_dir is not None:
        path = config_dir / path
    return _load_graph_file(path)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _threads(value: int) -> int:
    return os.cpu_count() or 1 if value == 0 else value


def _slice_config(cfg: dict, *sections: str) -> dict:
    """The parts of the effective config a command actually consumed."""
    return {k: copy.deepcopy(cfg[k]) for k in ("graph", *sections)}


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad usage; we reserve 2 for input
    parse errors and use 64 for usage problems."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", default=None,
                        help="JSON run configuration (default: built-in defaults)")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the base integrator seed (default: from config)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads, 0 = auto")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress informational messages on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="oimsim",
        description="Phase-domain oscillator Ising machine simulator and max-cut solver.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a max-cut instance",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("graph", help="edge-list graph file")
    p.add_argument("--attempts", type=int, default=None,
                   help="seeded attempts to take the best of (default: 20)")
    _common_flags(p)

    p = sub.add_parser("oracle", help="exact brute-force answer for small instances",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("graph", help="edge-list graph file")
    _common_flags(p)

    p = sub.add_parser("sweep", help="run a parameter sweep, write CSV",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("config", help="JSON sweep configuration")
    p.add_argument("out", help="output CSV path")
    _common_flags(p)

    p = sub.add_parser("compare", help="paired distributed vs centralized study, write JSON",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("config", help="JSON comparison configuration")
    p.add_argument("out", help="output JSON path")
    _common_flags(p)

    p = sub.add_parser("gen", help="generate a seeded random instance",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("out", help="output graph path")
    p.add_argument("--n", type=int, default=10, help="vertex count")
    p.add_argument("--density", type=float, default=1.0, help="edge probability in (0, 1]")
    p.add_argument("--weights", choices=("pm1", "uniform"), default="pm1",
                   help="weight distribution")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--quiet", action="store_true",
                   help="suppress informational messages on stderr")
    return parser


def _info(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def cmd_solve(args) -> int:
    if args.attempts is not None and args.attempts < 1:
        print("oimsim solve: error: --attempts must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    cfg, _ = load_effective_config(args.config, _SOLVE_OVERRIDES)
    if args.attempts is not None:
        cfg["solve"]["attempts"] = args.attempts
    if args.seed is not None:
        cfg["integrator"]["seed"] = args.seed
    cfg["graph"] = str(args.graph)
    g = _load_graph_file(args.graph)
    dyn = _build_dynamics(cfg)
    icfg = _build_integrator(cfg)
    threshold, hold = _lock_params(cfg)
    try:
        result = solve(
            g, cfg["solve"]["attempts"], dyn, icfg,
            threshold=threshold, hold_samples=hold, threads=_threads(args.threads),
        )
    except DivergenceError as err:
        print(f"oimsim solve: all attempts diverged: {err}", file=sys.stderr)
        return EXIT_SOLVER
    _print_json({
        "cut": result.cut,
        "energy": result.energy,
        "spins": [int(s) for s in result.spins.spins],
        "attempts": result.attempts,
        "lock_fraction": result.lock_fraction,
        "config": _slice_config(cfg, "dynamics", "integrator", "lock", "solve"),
    })
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph_file(args.graph)
    inst = ising_from_maxcut(g)
    _, energy, degeneracy = brute_force_ground_state(inst)
    _print_json({
        "max_cut": (g.total_weight - energy) / 2.0,
        "ground_energy": energy,
        "degeneracy": degeneracy,
        "graph": str(args.graph),
    })
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg, config_dir = load_effective_config(args.config)
    if args.seed is not None:
        cfg["integrator"]["seed"] = args.seed
    g = _resolve_config_graph(cfg, config_dir)
    spec = SweepSpec(
        parameter=cfg["sweep"]["parameter"],
        values=tuple(cfg["sweep"]["values"]),
        seeds=tuple(cfg["sweep"]["seeds"]),
        base_dynamics=_build_dynamics(cfg),
        base_integrator=_build_integrator(cfg),
        instance=ising_from_maxcut(g),
    )
    threshold, hold = _lock_params(cfg)
    rows = run_sweep(spec, threshold=threshold, hold_samples=hold,
                     threads=_threads(args.threads))
    echo = _slice_config(cfg, "dynamics", "integrator", "lock", "sweep")
    text = sweep_to_csv(spec.parameter, rows,
                        config_comment=json.dumps(echo, sort_keys=True))
    _atomic_write(Path(args.out), text)
    _info(args, f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg, config_dir = load_effective_config(args.config)
    if args.seed is not None:
        cfg["integrator"]["seed"] = args.seed
    g = _resolve_config_graph(cfg, config_dir)
    threshold, hold = _lock_params(cfg)
    summary = compare_modes(
        ising_from_maxcut(g),
        _build_dynamics(cfg),
        _build_integrator(cfg),
        seeds=cfg["compare"]["seeds"],
        threshold=threshold,
        hold_samples=hold,
        threads=_threads(args.threads),
    )
    doc = comparison_to_dict(summary)
    doc["config"] = _slice_config(cfg, "dynamics", "integrator", "lock", "compare")
    _atomic_write(Path(args.out), json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _info(args, f"wrote comparison to {args.out}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n < 2 or not (0.0 < args.density <= 1.0):
        print("oimsim gen: error: need n >= 2 and density in (0, 1]", file=sys.stderr)
        return EXIT_USAGE
    g = random_instance(args.n, args.density, args.weights, args.seed)
    _atomic_write(Path(args.out), serialize_graph(g))
    _info(args, f"wrote {args.n} vertices, {len(g.edges)} edges to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except CapacityError as err:
        print(f"oimsim {args.command}: error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as err:
        # covers GraphParseError, ConfigError, and re-validated numeric bounds
        print(f"oimsim {args.command}: error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(f"oimsim {args.command}: I/O error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
