"""Command line: config-driven runs, the benchmark, and quick probes.

    cdalg run --config exp.json [--seed N] [--out DIR] [--backend exact|float]
    cdalg bench --levels 2..9 [--reps R] [--out DIR] [--seed N]
    cdalg probe --level N [--samples M] [--seed N] [--expect-fail NAME ...]

Reports land in the output directory (default ./cdalg-out) as JSON Lines
plus CSV where tabular.  Exit status is nonzero iff any assertion-bearing
item failed.  CDALG_THREADS caps worker threads; output bytes are
identical regardless.
"""

from __future__ import annotations

import argparse
import sys

from .config import (
    BenchConfig,
    ConfigError,
    ProbesConfig,
    load_config,
    override,
    parse_level_range,
)
from .runner import run_experiment


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdalg",
        description="Cayley-Dickson algebra laboratory: experiments, benchmarks, probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment config")
    run_p.add_argument("--config", required=True, help="path to a JSON config")
    run_p.add_argument("--out", default="cdalg-out", help="output directory")
    run_p.add_argument("--seed", type=int, default=None, help="override config seed")
    run_p.add_argument(
        "--backend", choices=("exact", "float"), default=None,
        help="override config backend",
    )

    bench_p = sub.add_parser("bench", help="benchmark multiplication cost by level")
    bench_p.add_argument("--levels", required=True, help="level range, e.g. 2..9")
    bench_p.add_argument("--reps", type=int, default=3, help="best-of repetitions")
    bench_p.add_argument("--out", default="cdalg-out", help="output directory")
    bench_p.add_argument("--seed", type=int, default=0)

    probe_p = sub.add_parser("probe", help="run structural probes at one level")
    probe_p.add_argument("--level", type=int, required=True)
    probe_p.add_argument("--samples", type=int, default=300)
    probe_p.add_argument("--seed", type=int, default=0)
    probe_p.add_argument(
        "--expect-fail", action="append", default=[],
        choices=("alternativity", "multiplicativity"),
        help="probe expected to fail at this level (a pass there is an error)",
    )
    probe_p.add_argument("--out", default="cdalg-out", help="output directory")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = override(load_config(args.config), args.seed, args.backend)
        elif args.command == "bench":
            cfg = BenchConfig(
                seed=args.seed, levels=parse_level_range(args.levels), reps=args.reps
            )
        else:
            probes = ["alternativity", "multiplicativity"]
            cfg = ProbesConfig(
                seed=args.seed,
                levels=[args.level],
                samples=args.samples,
                probes=probes,
                expect_fail={
                    name: ([args.level] if name in args.expect_fail else [])
                    for name in probes
                },
            )
        result = run_experiment(cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    for path in result.outputs:
        print(f"wrote {path}")
    for failure in result.failures:
        print(f"FAIL {failure}")
    if not result.failures:
        print("all checks passed")
    return result.exit_code


def entrypoint() -> None:  # console script target
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
