"""Machine-readable report emission and wire formats.

All report bodies are deterministic bytes: object keys are sorted, floats
print with 17 significant digits (full round-trip fidelity), exact
rational scalars serialize as "p/q" strings and floats as JSON numbers.
Infinities become the string "inf" since JSON has no number for them.
The only volatile content is an explicit metadata header record carrying
the tool version and a timestamp; consumers comparing runs strip it.
"""

from __future__ import annotations

import json
import math
from dataclasses import is_dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, IO

from .core import Element, ScaledPower
from .gelfand import ConvergenceReport
from .spectral import MinimalPoly
from .stability import (
    DominanceScanEntry,
    GrowthWitness,
    PowerEquationReport,
    StabilityVerdict,
)
from .structure import ProbeReport, ProbeWitness
from .subnorms import (
    CauchyExp,
    Generator,
    PhiSpec,
    PNorm,
    ScaledSubspace,
    SubnormSpec,
    SymbolicAngle,
    WeightedL1,
    WeightedSup,
)


def format_float(x: float) -> str:
    if math.isnan(x):
        raise ValueError("NaN has no canonical report form")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def dumps_canonical(value: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed float formatting."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Fraction):
        return json.dumps(f"{value.numerator}/{value.denominator}")
    if isinstance(value, dict):
        items = sorted(value.items())
        body = ",".join(f"{json.dumps(str(k))}:{dumps_canonical(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in value) + "]"
    raise TypeError(f"no canonical JSON form for {type(value).__name__}")


# --------------------------------------------------------------------------
# domain type <-> plain JSON data
# --------------------------------------------------------------------------


def scalar_to_json(c) -> Any:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c


def scalar_from_json(v) -> Any:
    if isinstance(v, str):
        num, _, den = v.partition("/")
        return Fraction(int(num), int(den) if den else 1)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"not a scalar: {v!r}")
    return v


def element_to_json(a: Element) -> dict:
    # coords are 1-based in document order: entry 0 is coordinate 1
    doc: dict[str, Any] = {
        "level": a.level,
        "coords": [scalar_to_json(c) for c in a.coords],
    }
    if a.angle is not None:
        doc["angle"] = angle_to_json(a.angle)
    return doc


def element_from_json(doc: dict) -> Element:
    angle = angle_from_json(doc["angle"]) if "angle" in doc else None
    coords = tuple(scalar_from_json(c) for c in doc["coords"])
    return Element(int(doc["level"]), coords, angle=angle)


def angle_to_json(angle: SymbolicAngle) -> dict:
    return {
        "pi": scalar_to_json(angle.pi_coeff),
        "terms": {str(i): scalar_to_json(q) for i, q in angle.terms},
    }


def angle_from_json(doc: dict) -> SymbolicAngle:
    terms = tuple(
        (int(i), Fraction(scalar_from_json(q)))
        for i, q in doc.get("terms", {}).items()
    )
    return SymbolicAngle(Fraction(scalar_from_json(doc["pi"])), terms)


def phi_to_json(phi: PhiSpec) -> list:
    return [{"theta": g.theta, "c": g.c} for g in phi.generators]


def phi_from_json(doc: list) -> PhiSpec:
    return PhiSpec(tuple(Generator(float(g["theta"]), float(g["c"])) for g in doc))


def subnorm_to_json(spec: SubnormSpec) -> dict:
    if isinstance(spec, PNorm):
        return {"kind": "pnorm", "p": "inf" if spec.p == math.inf else spec.p}
    if isinstance(spec, WeightedSup):
        return {"kind": "weighted_sup", "u": spec.u, "v": spec.v}
    if isinstance(spec, WeightedL1):
        return {"kind": "weighted_l1", "u": spec.u, "v": spec.v}
    if isinstance(spec, ScaledSubspace):
        return {
            "kind": "scaled_subspace",
            "base": subnorm_to_json(spec.base),
            "a0": element_to_json(spec.a0),
            "kappa": spec.kappa,
        }
    if isinstance(spec, CauchyExp):
        return {
            "kind": "cauchy_exp",
            "base": subnorm_to_json(spec.base),
            "generators": phi_to_json(spec.phi),
            "carrier": spec.carrier,
        }
    raise TypeError(f"not a subnorm spec: {spec!r}")


def subnorm_from_json(doc: dict) -> SubnormSpec:
    kind = doc.get("kind")
    known = {"pnorm", "weighted_sup", "weighted_l1", "scaled_subspace", "cauchy_exp"}
    if kind not in known:
        raise ValueError(f"unknown subnorm kind {kind!r}; expected one of {sorted(known)}")
    if kind == "pnorm":
        p = doc["p"]
        return PNorm(math.inf if p in ("inf", "Infinity") else float(p))
    if kind == "weighted_sup":
        return WeightedSup(float(doc["u"]), float(doc["v"]))
    if kind == "weighted_l1":
        return WeightedL1(float(doc["u"]), float(doc["v"]))
    if kind == "scaled_subspace":
        return ScaledSubspace(
            subnorm_from_json(doc["base"]),
            element_from_json(doc["a0"]),
            float(doc["kappa"]),
        )
    return CauchyExp(
        subnorm_from_json(doc["base"]),
        phi_from_json(doc["generators"]),
        int(doc["carrier"]),
    )


def minimal_poly_to_json(mp: MinimalPoly) -> dict:
    return {
        "degree": mp.degree,
        "coeffs": [scalar_to_json(c) for c in mp.coefficients],
        "roots": [[r.real, r.imag] for r in mp.roots],
    }


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data for any report-bearing domain object."""
    if isinstance(obj, Element):
        return element_to_json(obj)
    if isinstance(obj, SymbolicAngle):
        return angle_to_json(obj)
    if isinstance(obj, MinimalPoly):
        return minimal_poly_to_json(obj)
    if isinstance(obj, ScaledPower):
        return {
            "log_magnitude": obj.log_magnitude,
            "direction": element_to_json(obj.direction),
            "k": obj.k,
        }
    if isinstance(obj, (PNorm, WeightedSup, WeightedL1, ScaledSubspace, CauchyExp)):
        return subnorm_to_json(obj)
    if isinstance(obj, ConvergenceReport):
        return {
            "spec": subnorm_to_json(obj.spec),
            "element": element_to_json(obj.element),
            "samples": [[k, v] for k, v in obj.samples],
            "target": obj.target,
            "max_abs_error_tail": obj.max_abs_error_tail,
            "fitted_decay": obj.fitted_decay,
            "subsequential_limits": list(obj.subsequential_limits),
        }
    if isinstance(obj, StabilityVerdict):
        return {
            "spec": subnorm_to_json(obj.spec),
            "stable": obj.stable,
            "strongly_stable": obj.strongly_stable,
            "radially_dominant": obj.radially_dominant,
            "criterion": obj.criterion,
            "witness": to_jsonable(obj.witness) if obj.witness is not None else None,
        }
    if isinstance(obj, GrowthWitness):
        return {
            "element": element_to_json(obj.element),
            "k": obj.k,
            "ratio": obj.ratio,
        }
    if isinstance(obj, PowerEquationReport):
        return {
            "is_submodulus_on_samples": obj.is_submodulus_on_samples,
            "worst_relative_residual": obj.worst_relative_residual,
            "witness": None
            if obj.witness is None
            else {"element": element_to_json(obj.witness[0]), "k": obj.witness[1]},
            "samples_checked": obj.samples_checked,
        }
    if isinstance(obj, ProbeWitness):
        return {
            "inputs": [element_to_json(e) for e in obj.inputs],
            "lhs": to_jsonable(obj.lhs),
            "rhs": to_jsonable(obj.rhs),
        }
    if isinstance(obj, ProbeReport):
        return {
            "probe": obj.probe,
            "level": obj.level,
            "samples": obj.samples,
            "passed": obj.passed,
            "witness": to_jsonable(obj.witness) if obj.witness is not None else None,
        }
    if isinstance(obj, DominanceScanEntry):
        return {
            "angle": angle_to_json(obj.angle),
            "ratio": obj.ratio,
            "relation": obj.relation,
        }
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return scalar_to_json(obj)
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# report files
# --------------------------------------------------------------------------


def meta_header(tool_version: str, experiment: str, seed) -> dict:
    """The one volatile record: everything below it is deterministic."""
    return {
        "meta": {
            "tool": f"cdalg {tool_version}",
            "created": datetime.now(timezone.utc).isoformat(),
            "experiment": experiment,
            "seed": seed,
        }
    }


def write_jsonl(handle: IO[str], records: list) -> None:
    for record in records:
        handle.write(dumps_canonical(to_jsonable(record)) + "\n")


def csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    return str(v)


def write_csv(handle: IO[str], header: list[str], rows: list[tuple]) -> None:
    handle.write(",".join(header) + "\n")
    for row in rows:
        handle.write(",".join(csv_cell(v) for v in row) + "\n")
