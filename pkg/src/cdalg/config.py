"""Experiment configuration: strict JSON parsing into typed configs.

Unknown keys are rejected by name, a seed is mandatory for any randomized
experiment, and all value errors name the offending key, so a config
typo cannot silently change what a run measures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .core import Element
from .gelfand import pow2_grid
from .reporting import element_from_json, subnorm_from_json
from .subnorms import SubnormSpec

EXPERIMENT_KINDS = ("gelfand", "stability_sweep", "probes", "bench", "power_equation")
PROBE_NAMES = ("alternativity", "multiplicativity")


class ConfigError(ValueError):
    """A malformed experiment config; the message names the offending key."""


def _take(doc: dict, kind: str, keys: dict[str, bool]) -> dict[str, Any]:
    """Extract exactly the allowed keys; ``keys`` maps name -> required."""
    unknown = set(doc) - set(keys) - {"experiment"}
    if unknown:
        raise ConfigError(
            f"unknown key {sorted(unknown)[0]!r} in {kind!r} config "
            f"(allowed: {sorted(keys)})"
        )
    out = {}
    for key, required in keys.items():
        if key in doc:
            out[key] = doc[key]
        elif required:
            raise ConfigError(f"missing required key {key!r} in {kind!r} config")
    return out


def _seed(value) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"seed must be an integer, got {value!r}")
    return value


def _backend(value, default: str) -> str:
    if value is None:
        return default
    if value not in ("exact", "float"):
        raise ConfigError(f"backend must be 'exact' or 'float', got {value!r}")
    return value


def _subnorm_list(raw, kind: str) -> list[SubnormSpec]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"'subnorms' in {kind!r} config must be a nonempty list")
    try:
        return [subnorm_from_json(doc) for doc in raw]
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad subnorm entry in {kind!r} config: {exc}") from exc


def _k_grid(raw) -> list[int]:
    if raw is None:
        return pow2_grid(16)
    if isinstance(raw, dict):
        spec = _take(raw, "k_grid", {"type": True, "max_exp": True})
        if spec["type"] != "pow2":
            raise ConfigError(f"k_grid type must be 'pow2', got {spec['type']!r}")
        max_exp = spec["max_exp"]
        if not isinstance(max_exp, int) or not 0 <= max_exp <= 20:
            raise ConfigError("k_grid max_exp must be an integer in 0..20")
        return pow2_grid(max_exp)
    if isinstance(raw, list) and raw and all(isinstance(k, int) for k in raw):
        return raw
    raise ConfigError(f"bad k_grid: {raw!r}")


def parse_level_range(text: str) -> list[int]:
    """Parse 'A..B' (inclusive) or a single integer."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError as exc:
            raise ConfigError(f"bad level range {text!r}") from exc
        if hi_i < lo_i:
            raise ConfigError(f"empty level range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError as exc:
        raise ConfigError(f"bad level {text!r}") from exc


@dataclass(frozen=True)
class GelfandConfig:
    seed: int | None
    backend: str
    subnorms: list[SubnormSpec]
    elements: list[Element]
    random_count: int
    random_levels: list[int]
    k_grid: list[int]
    claimed: float | str
    tol: float
    check: bool
    kind: str = "gelfand"


@dataclass(frozen=True)
class SweepConfig:
    seed: int
    level: int
    pnorm_ps: list[float]
    weight_us: list[float]
    weight_vs: list[float]
    budget: int
    k_max: int
    check_agreement: bool
    kind: str = "stability_sweep"


@dataclass(frozen=True)
class ProbesConfig:
    seed: int
    levels: list[int]
    samples: int
    probes: list[str]
    expect_fail: dict[str, list[int]]
    kind: str = "probes"


@dataclass(frozen=True)
class PowerEquationConfig:
    seed: int
    level: int
    subnorms: list[SubnormSpec]
    samples: int
    k_max: int
    tol: float
    expect_fail: list[int]
    kind: str = "power_equation"


@dataclass(frozen=True)
class BenchConfig:
    seed: int
    levels: list[int]
    reps: int
    kind: str = "bench"


ExperimentConfig = (
    GelfandConfig | SweepConfig | ProbesConfig | PowerEquationConfig | BenchConfig
)


def _parse_gelfand(doc: dict) -> GelfandConfig:
    got = _take(
        doc,
        "gelfand",
        {
            "seed": False,
            "backend": False,
            "subnorms": True,
            "elements": False,
            "random_elements": False,
            "k_grid": False,
            "claimed": False,
            "tol": False,
            "check": False,
        },
    )
    elements = []
    for entry in got.get("elements", []):
        try:
            elements.append(element_from_json(entry))
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad element entry: {exc}") from exc
    random_count, random_levels = 0, []
    if "random_elements" in got:
        spec = _take(got["random_elements"], "random_elements",
                     {"count": True, "levels": True})
        random_count, random_levels = int(spec["count"]), list(spec["levels"])
        if random_count < 1 or not random_levels:
            raise ConfigError("random_elements needs count >= 1 and levels")
        if "seed" not in got:
            raise ConfigError(
                "missing required key 'seed': random elements make this a "
                "randomized experiment"
            )
    if not elements and not random_count:
        raise ConfigError("gelfand config needs 'elements' or 'random_elements'")
    claimed = got.get("claimed", "euclidean")
    if claimed != "euclidean" and not isinstance(claimed, (int, float)):
        raise ConfigError(f"claimed must be a number or 'euclidean', got {claimed!r}")
    return GelfandConfig(
        seed=_seed(got["seed"]) if "seed" in got else None,
        backend=_backend(got.get("backend"), "float"),
        subnorms=_subnorm_list(got["subnorms"], "gelfand"),
        elements=elements,
        random_count=random_count,
        random_levels=random_levels,
        k_grid=_k_grid(got.get("k_grid")),
        claimed=claimed,
        tol=float(got.get("tol", 1e-3)),
        check=bool(got.get("check", True)),
    )


def _parse_sweep(doc: dict) -> SweepConfig:
    got = _take(
        doc,
        "stability_sweep",
        {
            "seed": True,
            "level": False,
            "pnorm_ps": False,
            "weight_grid": False,
            "budget": False,
            "k_max": False,
            "check_agreement": False,
        },
    )
    us, vs = [], []
    if "weight_grid" in got:
        grid = _take(got["weight_grid"], "weight_grid", {"us": True, "vs": True})
        us = [float(u) for u in grid["us"]]
        vs = [float(v) for v in grid["vs"]]
        if any(u <= 0 for u in us) or any(v <= 0 for v in vs):
            raise ConfigError("weight grid entries must be positive")
    ps = [float(p) for p in got.get("pnorm_ps", [])]
    if not ps and not us:
        raise ConfigError("stability_sweep needs 'pnorm_ps' and/or 'weight_grid'")
    return SweepConfig(
        seed=_seed(got["seed"]),
        level=int(got.get("level", 1)),
        pnorm_ps=ps,
        weight_us=us,
        weight_vs=vs,
        budget=int(got.get("budget", 400)),
        k_max=int(got.get("k_max", 32)),
        check_agreement=bool(got.get("check_agreement", True)),
    )


def _parse_probes(doc: dict) -> ProbesConfig:
    got = _take(
        doc,
        "probes",
        {
            "seed": True,
            "levels": True,
            "samples": False,
            "probes": False,
            "expect_fail": False,
        },
    )
    probes = list(got.get("probes", PROBE_NAMES))
    for name in probes:
        if name not in PROBE_NAMES:
            raise ConfigError(f"unknown probe {name!r} (have {PROBE_NAMES})")
    expect = {name: [] for name in probes}
    for name, levels in got.get("expect_fail", {}).items():
        if name not in probes:
            raise ConfigError(f"expect_fail names unknown probe {name!r}")
        expect[name] = [int(lv) for lv in levels]
    return ProbesConfig(
        seed=_seed(got["seed"]),
        levels=[int(lv) for lv in got["levels"]],
        samples=int(got.get("samples", 300)),
        probes=probes,
        expect_fail=expect,
    )


def _parse_power_equation(doc: dict) -> PowerEquationConfig:
    got = _take(
        doc,
        "power_equation",
        {
            "seed": True,
            "level": True,
            "subnorms": True,
            "samples": False,
            "k_max": False,
            "tol": False,
            "expect_fail": False,
        },
    )
    subnorms = _subnorm_list(got["subnorms"], "power_equation")
    expect_fail = [int(i) for i in got.get("expect_fail", [])]
    for i in expect_fail:
        if not 0 <= i < len(subnorms):
            raise ConfigError(f"expect_fail index {i} out of range")
    return PowerEquationConfig(
        seed=_seed(got["seed"]),
        level=int(got["level"]),
        subnorms=subnorms,
        samples=int(got.get("samples", 200)),
        k_max=int(got.get("k_max", 32)),
        tol=float(got.get("tol", 1e-9)),
        expect_fail=expect_fail,
    )


def _parse_bench(doc: dict) -> BenchConfig:
    got = _take(doc, "bench", {"seed": False, "levels": True, "reps": False})
    levels = got["levels"]
    if isinstance(levels, str):
        levels = parse_level_range(levels)
    else:
        levels = [int(lv) for lv in levels]
    return BenchConfig(
        seed=_seed(got.get("seed", 0)),
        levels=levels,
        reps=int(got.get("reps", 3)),
    )


def parse_config(doc: Any) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    kind = doc.get("experiment")
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError(
            f"bad 'experiment' value {kind!r}; expected one of {EXPERIMENT_KINDS}"
        )
    parser = {
        "gelfand": _parse_gelfand,
        "stability_sweep": _parse_sweep,
        "probes": _parse_probes,
        "power_equation": _parse_power_equation,
        "bench": _parse_bench,
    }[kind]
    return parser(doc)


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(doc)


def override(cfg: ExperimentConfig, seed: int | None, backend: str | None):
    """Apply command-line --seed / --backend overrides."""
    changes: dict[str, Any] = {}
    if seed is not None:
        changes["seed"] = seed
    if backend is not None and hasattr(cfg, "backend"):
        changes["backend"] = _backend(backend, backend)
    if not changes:
        return cfg
    from dataclasses import replace

    return replace(cfg, **changes)
