"""Experiment dispatch: turns a parsed config into report files.

Every run writes one JSON Lines file per experiment (a volatile metadata
header record followed by deterministic body records) plus CSV exports
for tabular kinds.  The exit status is nonzero exactly when some
assertion-bearing item failed: a limit check missed its tolerance, an
analytic verdict disagreed with the search, a probe deviated from its
expected outcome (including "expected to fail but passed"), or a bench
growth factor left the sanity window.

Items are independent; with CDALG_THREADS > 1 they are evaluated by a
thread pool, but records are buffered per item and emitted in config
order, so the output bytes do not depend on the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from random import Random
from typing import Any, Callable

from . import __version__
from .bench import bench_multiply, growth_violations
from .config import (
    BenchConfig,
    ExperimentConfig,
    GelfandConfig,
    PowerEquationConfig,
    ProbesConfig,
    SweepConfig,
)
from .core import (
    Element,
    euclidean_norm,
    random_float_element,
    random_integer_element,
)
from .gelfand import check_limit, gelfand_sequence
from .reporting import (
    dumps_canonical,
    meta_header,
    subnorm_to_json,
    to_jsonable,
    write_csv,
    write_jsonl,
)
from .stability import analytic_stability, radial_dominance_search
from .structure import alternativity_probe, multiplicativity_probe
from .subnorms import PNorm, WeightedL1, WeightedSup, evaluate


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    failures: list[str]
    outputs: list[Path]


def _thread_count() -> int:
    raw = os.environ.get("CDALG_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"CDALG_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _map_items(work: list[Callable[[], Any]]) -> list[Any]:
    threads = _thread_count()
    if threads == 1 or len(work) <= 1:
        return [fn() for fn in work]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda fn: fn(), work))


def _emit(
    out_dir: Path,
    name: str,
    kind: str,
    seed,
    records: list,
    csv_name: str | None = None,
    csv_header: list[str] | None = None,
    csv_rows: list[tuple] | None = None,
) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    jsonl = out_dir / f"{name}.jsonl"
    with jsonl.open("w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(to_jsonable(meta_header(__version__, kind, seed))) + "\n")
        write_jsonl(fh, records)
    outputs = [jsonl]
    if csv_name is not None:
        csv_path = out_dir / csv_name
        with csv_path.open("w", encoding="utf-8") as fh:
            write_csv(fh, csv_header or [], csv_rows or [])
        outputs.append(csv_path)
    return outputs


def _random_elements(cfg: GelfandConfig) -> list[Element]:
    out = []
    for level in cfg.random_levels:
        for i in range(cfg.random_count):
            rng = Random(f"{cfg.seed}:element:{level}:{i}")
            if cfg.backend == "exact":
                out.append(random_integer_element(level, rng, nonzero=True))
            else:
                e = random_float_element(level, rng)
                while all(c == 0 for c in e.coords):  # pragma: no cover
                    e = random_float_element(level, rng)
                out.append(e)
    return out


def _run_gelfand(cfg: GelfandConfig, out_dir: Path) -> tuple[list, list, list]:
    elements = cfg.elements + _random_elements(cfg)
    items = [(spec, elem) for spec in cfg.subnorms for elem in elements]

    def make_work(spec, elem):
        def work():
            report = gelfand_sequence(spec, elem, cfg.k_grid)
            claimed = (
                euclidean_norm(elem) if cfg.claimed == "euclidean" else float(cfg.claimed)
            )
            ok = check_limit(report, claimed, cfg.tol) if cfg.check else None
            return report, claimed, ok

        return work

    results = _map_items([make_work(s, e) for s, e in items])
    records, failures, csv_rows = [], [], []
    for idx, ((spec, elem), (report, claimed, ok)) in enumerate(zip(items, results)):
        doc = to_jsonable(report)
        doc.update({"experiment": "gelfand", "item": idx, "claimed": claimed,
                    "tol": cfg.tol, "limit_ok": ok})
        records.append(doc)
        for k, v in report.samples:
            csv_rows.append((idx, k, v, report.target, abs(v - report.target)))
        if ok is False:
            failures.append(
                f"gelfand item {idx}: tail misses claimed limit {claimed!r} "
                f"at tol {cfg.tol!r}"
            )
    return records, failures, csv_rows


def _sweep_points(cfg: SweepConfig):
    for p in cfg.pnorm_ps:
        yield "pnorm", PNorm(p), {"p": p, "u": None, "v": None}
    for u in cfg.weight_us:
        for v in cfg.weight_vs:
            yield "weighted_sup", WeightedSup(u, v), {"p": None, "u": u, "v": v}
    for u in cfg.weight_us:
        for v in cfg.weight_vs:
            yield "weighted_l1", WeightedL1(u, v), {"p": None, "u": u, "v": v}


def _run_sweep(cfg: SweepConfig, out_dir: Path) -> tuple[list, list, list]:
    points = list(_sweep_points(cfg))

    def make_work(family, spec, params):
        def work():
            verdict = analytic_stability(spec)
            witness = radial_dominance_search(
                spec, cfg.level, cfg.budget,
                seed=f"{cfg.seed}:{family}:{params}",
            )
            return verdict, witness

        return work

    results = _map_items([make_work(f, s, p) for f, s, p in points])
    records, failures, csv_rows = [], [], []
    for (family, spec, params), (verdict, witness) in zip(points, results):
        gap = None if witness is None else 1.0 - evaluate(spec, witness)
        agreement = None
        if verdict.stable is not None:
            agreement = (witness is not None) == (verdict.stable is False)
            if cfg.check_agreement and not agreement:
                failures.append(
                    f"stability_sweep {family} {params}: analytic stable="
                    f"{verdict.stable} but witness "
                    f"{'found' if witness is not None else 'absent'}"
                )
        doc = to_jsonable(verdict)
        doc.update(
            {
                "experiment": "stability_sweep",
                "family": family,
                "params": {k: v for k, v in params.items() if v is not None},
                "search_witness": None if witness is None else to_jsonable(witness),
                "witness_norm_gap": gap,
                "agreement": agreement,
            }
        )
        records.append(doc)
        csv_rows.append(
            (family, params["p"], params["u"], params["v"], verdict.stable, gap)
        )
    return records, failures, csv_rows


def _run_probes(cfg: ProbesConfig, out_dir: Path) -> tuple[list, list]:
    fns = {
        "alternativity": alternativity_probe,
        "multiplicativity": multiplicativity_probe,
    }
    items = [(name, level) for name in cfg.probes for level in cfg.levels]

    def make_work(name, level):
        return lambda: fns[name](level, cfg.samples, seed=cfg.seed)

    results = _map_items([make_work(n, lv) for n, lv in items])
    records, failures = [], []
    for (name, level), report in zip(items, results):
        expected_fail = level in cfg.expect_fail.get(name, [])
        ok = report.passed != expected_fail
        doc = to_jsonable(report)
        doc.update(
            {"experiment": "probes", "expected_failure": expected_fail, "ok": ok}
        )
        records.append(doc)
        if not ok:
            state = "passed" if report.passed else "failed"
            want = "failure" if expected_fail else "pass"
            failures.append(f"probe {name} level {level}: {state}, expected {want}")
    return records, failures


def _run_power_equation(cfg: PowerEquationConfig, out_dir: Path) -> tuple[list, list]:
    from .stability import power_equation_check

    def make_work(idx, spec):
        return lambda: power_equation_check(
            spec, cfg.level, cfg.samples, cfg.k_max,
            seed=f"{cfg.seed}:{idx}", tol=cfg.tol,
        )

    results = _map_items(
        [make_work(i, s) for i, s in enumerate(cfg.subnorms)]
    )
    records, failures = [], []
    for idx, (spec, report) in enumerate(zip(cfg.subnorms, results)):
        expected_fail = idx in cfg.expect_fail
        ok = report.is_submodulus_on_samples != expected_fail
        doc = to_jsonable(report)
        doc.update(
            {
                "experiment": "power_equation",
                "item": idx,
                "spec": subnorm_to_json(spec),
                "level": cfg.level,
                "expected_failure": expected_fail,
                "ok": ok,
            }
        )
        records.append(doc)
        if not ok:
            state = "holds" if report.is_submodulus_on_samples else "fails"
            want = "failure" if expected_fail else "pass"
            failures.append(
                f"power_equation item {idx}: equation {state} on samples, "
                f"expected {want}"
            )
    return records, failures


def _run_bench(cfg: BenchConfig, out_dir: Path) -> tuple[list, list, list]:
    rows = bench_multiply(cfg.levels, cfg.reps, cfg.seed)
    failures = growth_violations(rows)
    records, csv_rows = [], []
    for row in rows:
        records.append(
            {
                "experiment": "bench",
                "level": row.level,
                "dim": row.dim,
                "ns_per_mul": row.ns_per_mul,
                "growth_factor": row.growth_factor,
                "low_confidence": row.low_confidence,
            }
        )
        csv_rows.append((row.level, row.dim, row.ns_per_mul, row.growth_factor))
    return records, failures, csv_rows


def run_experiment(cfg: ExperimentConfig, out_dir: str | Path) -> RunResult:
    """Execute one experiment config; returns outputs and the exit code."""
    out_dir = Path(out_dir)
    if isinstance(cfg, GelfandConfig):
        records, failures, csv_rows = _run_gelfand(cfg, out_dir)
        outputs = _emit(
            out_dir, "gelfand", cfg.kind, cfg.seed, records,
            "gelfand_samples.csv",
            ["item", "k", "value", "target", "abs_error"], csv_rows,
        )
    elif isinstance(cfg, SweepConfig):
        records, failures, csv_rows = _run_sweep(cfg, out_dir)
        outputs = _emit(
            out_dir, "stability_sweep", cfg.kind, cfg.seed, records,
            "stability_sweep.csv",
            ["family", "p", "u", "v", "stable", "witness_norm_gap"], csv_rows,
        )
    elif isinstance(cfg, ProbesConfig):
        records, failures = _run_probes(cfg, out_dir)
        outputs = _emit(out_dir, "probes", cfg.kind, cfg.seed, records)
    elif isinstance(cfg, PowerEquationConfig):
        records, failures = _run_power_equation(cfg, out_dir)
        outputs = _emit(out_dir, "power_equation", cfg.kind, cfg.seed, records)
    elif isinstance(cfg, BenchConfig):
        records, failures, csv_rows = _run_bench(cfg, out_dir)
        outputs = _emit(
            out_dir, "bench", cfg.kind, cfg.seed, records,
            "bench.csv", ["level", "dim", "ns_per_mul", "growth_factor"], csv_rows,
        )
    else:  # pragma: no cover
        raise TypeError(f"unknown config type {type(cfg).__name__}")
    return RunResult(1 if failures else 0, failures, outputs)
