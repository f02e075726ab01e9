"""Command line: ``longpaths {er,rgg,sweep,verify,dump} [--key value ...]``.

Every ``ExperimentConfig`` field is a flag (underscores become dashes) and
overrides the optional ``--config`` file. Exit codes: 0 success, 1 bad
configuration, 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .. import io as dumps
from ..cycles import ConstructionError, extend_with_sparse, merge_backbone_cycles
from ..graphs import sample_er
from ..paths import longest_path_exact, longest_path_rotation
from ..rng import trial_seed
from ..tiling import detect_events, render_grid
from .config import ConfigError, ExperimentConfig, _field_types, coerce, load_config
from .runner import er_model, rgg_instance, run_experiment, run_sweep
from .verify import verify_suite

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; here 2 means a failed verification
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser, skip=("mode",)) -> None:
    p.add_argument("--config", help="key=value file; flags override it")
    for name, kind in _field_types().items():
        if name in skip:
            continue
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=str, default=None,
                       metavar=kind.__name__.upper())


def _config_from(args, **fixed) -> ExperimentConfig:
    overrides = {f.name: coerce(f.name, getattr(args, f.name))
                 for f in dataclasses.fields(ExperimentConfig)
                 if getattr(args, f.name, None) is not None}
    overrides.update(fixed)
    return load_config(args.config, **overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longpaths", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    er = sub.add_parser("er", help="longest paths in inhomogeneous Erdos-Renyi graphs")
    _add_config_flags(er)

    rgg = sub.add_parser("rgg", help="long and Hamiltonian cycles in random geometric graphs")
    rgg.add_argument("--mode", choices=["rgg-long-cycle", "rgg-hamiltonian"], default="rgg-hamiltonian")
    _add_config_flags(rgg)

    sweep = sub.add_parser("sweep", help="one summary row per value of a config parameter")
    _add_config_flags(sweep)

    ver = sub.add_parser("verify", help="oracle, invariant and statistical checks")
    ver.add_argument("level", nargs="?", choices=["fast", "full"], default="fast")

    dump = sub.add_parser("dump", help="text dumps of one trial's graph, points, tiling or cycle")
    dump.add_argument("what", choices=["graph", "points", "tiling", "cycle"])
    dump.add_argument("--index", type=int, default=0, help="trial index (seed derives from it)")
    dump.add_argument("--mode", choices=["er-longest-path", "rgg-long-cycle", "rgg-hamiltonian"],
                      default="rgg-hamiltonian")
    _add_config_flags(dump)
    return parser


def _emit(text: str, path: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(config: ExperimentConfig) -> int:
    result = run_experiment(config.replace(output=""))
    _emit(result.to_csv(), config.output)
    keys = ("mean_length", "freq_hamiltonian", "freq_H_n")
    print("  ".join(f"{k}={result.summary[k]:.4g}" for k in keys if k in result.summary), file=sys.stderr)
    return EXIT_OK


def _dump(args, config: ExperimentConfig) -> str:
    seed = trial_seed(config.seed, args.index)
    if config.mode == "er-longest-path":
        g = sample_er(er_model(config), seed)
        if args.what == "graph":
            return dumps.dump_graph(g)
        if args.what == "cycle":
            if config.n <= config.exact_max_n:
                return dumps.dump_cycle(longest_path_exact(g))
            return dumps.dump_cycle(longest_path_rotation(g, config.budget, seed))
        raise ConfigError(f"dump {args.what} needs an rgg mode")
    cloud, g, t, bb, _ = rgg_instance(config, seed)
    if args.what == "graph":
        return dumps.dump_graph(g)
    if args.what == "points":
        return dumps.dump_points(cloud)
    if args.what == "tiling":
        ev = detect_events(t, bb, g)
        head = f"# k={t.k} F_n={ev.F_n} I_n={ev.I_n} J_n={ev.J_n} H_n={ev.H_n} X_O={ev.X_O}\n"
        return head + render_grid(t, bb)
    cycle = merge_backbone_cycles(t, bb, g)
    if config.mode == "rgg-hamiltonian":
        cycle = extend_with_sparse(cycle, t, bb, g)
    return dumps.dump_cycle(cycle)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = verify_suite(args.level, echo=print)
            print(report.text().splitlines()[-1])
            return EXIT_OK if report.passed else EXIT_VERIFY
        if args.command == "er":
            return _run(_config_from(args, mode="er-longest-path"))
        if args.command == "rgg":
            return _run(_config_from(args, mode=args.mode))
        if args.command == "sweep":
            config = _config_from(args, mode="sweep")
            _emit(run_sweep(config.replace(output="")).to_csv(), config.output)
            return EXIT_OK
        config = _config_from(args, mode=args.mode)
        _emit(_dump(args, config), config.output)
        return EXIT_OK
    except (ConfigError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ConstructionError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
