"""Gelfand-formula experiments: sequences f(a**k)**(1/k) and their limits.

For every continuous subnorm f the sequence converges to the Euclidean
norm of a.  Evaluation is done in the log domain through the scaled-power
walk, so k can reach 2**20 without overflow: by homogeneity
``f(a**k) = |a**k| * f(w_k)`` with ``w_k`` the unit direction of a**k,
hence ``log f(a**k) = log|a**k| + log f(w_k)``.

Exponential subnorms advance their symbolic angle instead of consulting
the direction: with a Euclidean base the per-k value has the closed form
``|a| * exp(phi_k / k)``, which on the complex carrier is a constant
sequence.  On the quaternion carrier the fold of arguments into [0, pi]
makes the functional term oscillate between +/- k*phi, so those reports
carry subsequential cluster values rather than a single forced limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import Element, euclidean_norm, scaled_power_sequence
from .subnorms import (
    CauchyExp,
    SubnormSpec,
    SymbolicAngle,
    angle_power,
    evaluate,
    is_euclidean,
    phi_eval,
    phi_eval_exact,
)


def pow2_grid(max_exp: int, min_exp: int = 0) -> list[int]:
    """The default k grid: powers of two, exposing 1/k decay on a log axis."""
    if max_exp < min_exp:
        raise ValueError("max_exp must be >= min_exp")
    return [1 << e for e in range(min_exp, max_exp + 1)]


@dataclass(frozen=True)
class ConvergenceReport:
    """One computed sequence with its error and clustering diagnostics.

    ``max_abs_error_tail`` is taken over the last quartile of the k grid,
    ignoring small-k transients without hiding oscillation; oscillating
    sequences surface through ``subsequential_limits``, the gap-clustered
    values of the tail half.  ``fitted_decay`` is the least-squares C of
    the model |value - target| ~ C/k, or None when the tail already sits
    on the target.
    """

    spec: SubnormSpec
    element: Element
    samples: tuple[tuple[int, float], ...]
    target: float
    max_abs_error_tail: float
    fitted_decay: float | None
    subsequential_limits: tuple[float, ...]


def log_subnorm_powers(
    spec: SubnormSpec, a: Element, ks: Sequence[int]
) -> list[tuple[int, float]]:
    """(k, log f(a**k)) along the grid, computed without overflow."""
    ks = list(ks)
    if isinstance(spec, CauchyExp):
        if a.level != spec.carrier:
            raise ValueError(
                f"element level {a.level} does not match carrier {spec.carrier}"
            )
        if a.angle is None:
            raise ValueError(
                "exponential subnorm sequences need a symbolic-angle element"
            )
        phis = [
            phi_eval(spec.phi, angle_power(a.angle, k, spec.carrier, spec.phi).angle)
            for k in ks
        ]
        if is_euclidean(spec.base):
            # |a**k| = |a|**k holds identically, so the base factor on the
            # unit direction is exactly 1 and the closed form applies.
            logm = math.log(euclidean_norm(a))
            return [(k, k * logm + ph) for k, ph in zip(ks, phis)]
        out = []
        for sp, ph in zip(scaled_power_sequence(a, ks), phis):
            base = evaluate(spec.base, sp.direction)
            out.append((sp.k, sp.log_magnitude + math.log(base) + ph))
        return out
    # probe evaluability / carrier fit once, on the element itself
    evaluate(spec, a)
    return [
        (sp.k, sp.log_magnitude + math.log(evaluate(spec, sp.direction)))
        for sp in scaled_power_sequence(a, ks)
    ]


def _tail_start(n: int) -> int:
    return n - max(1, n // 4)


def _cluster(values: Sequence[float], gap: float) -> tuple[float, ...]:
    """1-d gap clustering: split sorted values at jumps above ``gap``."""
    ordered = sorted(values)
    clusters: list[list[float]] = [[ordered[0]]]
    for v in ordered[1:]:
        if v - clusters[-1][-1] > gap:
            clusters.append([v])
        else:
            clusters[-1].append(v)
    return tuple(math.fsum(c) / len(c) for c in clusters)


def claimed_limit(spec: SubnormSpec, a: Element) -> float:
    """Default target: |a|, or |a| * exp(phi(arg a)) for exponential specs."""
    if isinstance(spec, CauchyExp):
        if a.angle is None:
            raise ValueError("exponential subnorm target needs a symbolic angle")
        return euclidean_norm(a) * math.exp(phi_eval(spec.phi, a.angle))
    return euclidean_norm(a)


def gelfand_sequence(
    spec: SubnormSpec,
    a: Element,
    ks: Sequence[int],
    target: float | None = None,
) -> ConvergenceReport:
    """Compute f(a**k)**(1/k) along an increasing k grid.

    Rejects a = 0 (the sequence is undefined) and specs incompatible with
    the element's level.  ``target`` defaults to :func:`claimed_limit`.
    """
    if all(c == 0 for c in a.coords):
        raise ValueError("the sequence is undefined at the zero element")
    logs = log_subnorm_powers(spec, a, ks)
    samples = tuple((k, math.exp(lf / k)) for k, lf in logs)
    if target is None:
        target = claimed_limit(spec, a)
    tail = samples[_tail_start(len(samples)):]
    max_err = max(abs(v - target) for _, v in tail)
    decay_pairs = [(k, abs(v - target)) for k, v in samples if abs(v - target) > 0.0]
    if decay_pairs:
        denom = math.fsum(1.0 / (k * k) for k, _ in decay_pairs)
        fitted = math.fsum(e / k for k, e in decay_pairs) / denom
    else:
        fitted = None
    half = samples[len(samples) // 2:]
    clusters = _cluster([v for _, v in half], 1e-3 * abs(target))
    return ConvergenceReport(
        spec, a, samples, target, max_err, fitted, clusters
    )


def check_limit(report: ConvergenceReport, claimed: float, tol: float) -> bool:
    """Whether the tail of the sequence sits within ``tol`` of ``claimed``."""
    if not report.samples:
        raise ValueError("empty report")
    tail = report.samples[_tail_start(len(report.samples)):]
    return max(abs(v - claimed) for _, v in tail) <= tol


def decay_envelope(mu: float, nu: float, k: int) -> float:
    """Error bound factor from equivalence constants mu*f <= |.| <= nu*f.

    On the unit sphere f ranges over [1/nu, 1/mu], so the k-th sequence
    value differs from |a| by at most |a|*(max(nu, 1/mu)**(1/k) - 1), an
    O(1/k) envelope.
    """
    c = max(nu, 1.0 / mu)
    return c ** (1.0 / k) - 1.0


class ViolationEntry(NamedTuple):
    angle: SymbolicAngle
    limit: float
    violates: bool


def violation_scan(
    spec: SubnormSpec, angles: Sequence[SymbolicAngle], modulus: float
) -> list[ViolationEntry]:
    """Where an exponential subnorm's power limit leaves the norm.

    For each angle the limit is ``modulus * exp(phi(angle))``; it agrees
    with the Euclidean norm exactly when the functional vanishes there,
    which happens on every rational multiple of pi and fails on generator
    directions -- both families are dense.
    """
    if not isinstance(spec, CauchyExp):
        raise ValueError("violation scans apply to exponential subnorms only")
    out = []
    for angle in angles:
        ph = phi_eval_exact(spec.phi, angle)
        limit = modulus * math.exp(float(ph))
        out.append(ViolationEntry(angle, limit, ph != 0))
    return out
