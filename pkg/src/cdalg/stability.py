"""Stability, radial dominance, and the power equation.

A subnorm f is stable when ``f(a**k) <= sigma * f(a)**k`` for some
constant sigma and all a, k; strongly stable when sigma = 1.  For
continuous subnorms on algebras without nonzero nilpotents, stability is
equivalent to radial dominance, i.e. f majorizing the radius -- on these
algebras, the Euclidean norm.  That equivalence turns a one-point
inequality into a falsifier: any unit-sphere point with ``f < 1`` is a
stability counterexample, and the ratio ``f(a**k) / f(a)**k`` then grows
geometrically.

Closed-form criteria are known for the coordinate p-norms (stable iff
p <= 2) and the weighted sup and l1 norms on the complex carrier; for
everything else the verdict stays "unknown" and a deterministic seeded
search hunts for witnesses.  "No witness found" is never upgraded to
"proved stable".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, NamedTuple, Sequence, Union

from .core import Element, euclidean_norm, power
from .gelfand import log_subnorm_powers
from .subnorms import (
    CauchyExp,
    PNorm,
    ScaledSubspace,
    SubnormSpec,
    SymbolicAngle,
    WeightedL1,
    WeightedSup,
    evaluate,
    from_polar,
    phi_eval,
    polar_power,
)

#: Strict-inequality margin for search witnesses; excludes boundary-case
#: float noise (p = 2, u^2 v^2 = u^2 + v^2, ...).
WITNESS_MARGIN = 1e-9


class GrowthWitness(NamedTuple):
    element: Element
    k: int
    ratio: float


@dataclass(frozen=True)
class StabilityVerdict:
    """Analytic or search-backed stability classification.

    Fields are ``True`` / ``False`` / ``None`` (unknown).  A verdict that
    is stable via the analytic path never carries a witness; a recorded
    witness is either a dominance violation (an Element) or a
    :class:`GrowthWitness` for unbounded power growth.
    """

    spec: SubnormSpec
    stable: bool | None
    strongly_stable: bool | None
    radially_dominant: bool | None
    criterion: str
    witness: Union[Element, GrowthWitness, None] = None


@dataclass(frozen=True)
class PowerEquationReport:
    is_submodulus_on_samples: bool
    worst_relative_residual: float
    witness: tuple[Element, int] | None
    samples_checked: int


def analytic_stability(spec: SubnormSpec) -> StabilityVerdict:
    """Closed-form verdict for the families with known criteria.

    Strong stability is filled only where a closed form exists: the
    Euclidean norm (always strongly stable) and the weighted l1 family
    (strongly stable iff v**2 >= u >= 1).  An unstable subnorm is never
    strongly stable; a stable one without a closed form stays unknown.
    """
    if isinstance(spec, PNorm):
        stable = spec.p <= 2.0
        if spec.p == 2.0:
            strongly = True
        else:
            strongly = None if stable else False
        return StabilityVerdict(
            spec, stable, strongly, stable, "p-norm: stable iff 0 < p <= 2"
        )
    if isinstance(spec, WeightedSup):
        u, v = spec.u, spec.v
        stable = u * u * v * v >= u * u + v * v
        return StabilityVerdict(
            spec,
            stable,
            None if stable else False,
            stable,
            "weighted sup: stable iff u^2 v^2 >= u^2 + v^2",
        )
    if isinstance(spec, WeightedL1):
        u, v = spec.u, spec.v
        stable = u >= 1.0 and v >= 1.0
        strongly = v * v >= u >= 1.0
        return StabilityVerdict(
            spec,
            stable,
            strongly,
            stable,
            "weighted l1: stable iff u >= 1 and v >= 1; "
            "strongly stable iff v^2 >= u >= 1",
        )
    return StabilityVerdict(spec, None, None, None, "none; use search")


# --------------------------------------------------------------------------
# deterministic sphere search
# --------------------------------------------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(g, lo: float, hi: float, iters: int):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = g(c), g(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = g(d)
    return (c, fc) if fc < fd else (d, fd)


def _unit(x: Sequence[float]) -> tuple[float, ...]:
    nrm = math.sqrt(math.fsum(v * v for v in x))
    return tuple(v / nrm for v in x)


def _sphere_minimize(
    fn: Callable[[tuple[float, ...]], float],
    dim: int,
    budget: int,
    seed,
    extra_starts: Sequence[Sequence[float]] = (),
):
    """Minimize a continuous objective over the unit Euclidean sphere.

    Deterministic: half the budget goes to random restarts whose RNG
    streams derive from (seed, restart index), then the best point gets a
    per-coordinate golden-section polish (the objective may be max-type,
    so no gradients are assumed).  Results are independent of thread
    count by construction since restarts never share state.
    """
    evals = 0
    best_x: tuple[float, ...] | None = None
    best_f = math.inf
    for cand in extra_starts:
        x = _unit(cand)
        f = fn(x)
        evals += 1
        if f < best_f:
            best_x, best_f = x, f
    n_starts = max(1, (budget - evals) // 2)
    for i in range(n_starts):
        rng = Random(f"{seed}:start:{i}")
        x = _unit([rng.gauss(0.0, 1.0) for _ in range(dim)])
        f = fn(x)
        evals += 1
        if f < best_f:
            best_x, best_f = x, f
    # polish: golden section along each coordinate, renormalizing
    step_cost = 14  # 2 seed evals + 12 iterations
    while evals + step_cost <= budget:
        improved = False
        for axis in range(dim):
            if evals + step_cost > budget:
                break
            base = best_x

            def g(t: float, _axis=axis, _base=base) -> float:
                y = list(_base)
                y[_axis] += t
                return fn(_unit(y))

            t, ft = _golden_min(g, -0.6, 0.6, 12)
            evals += step_cost
            if ft < best_f - 1e-15:
                y = list(base)
                y[axis] += t
                best_x, best_f = _unit(y), ft
                improved = True
        if not improved:
            break
    return best_x, best_f


def _default_starts(dim: int) -> list[tuple[float, ...]]:
    starts: list[tuple[float, ...]] = [(1.0,) * dim]
    for i in range(min(dim, 4)):
        e = [0.0] * dim
        e[i] = 1.0
        starts.append(tuple(e))
    if dim >= 2:
        starts.append((1.0, -1.0) + (0.0,) * (dim - 2))
    return starts


def _exact_dominance_confirm(spec: SubnormSpec, x: tuple[float, ...]) -> bool:
    """Re-verify f(x) < |x| in exact rational arithmetic where possible.

    Float coordinates are exact rationals, so for the weighted families
    and integer-p (or sup) p-norms the strict inequality is decidable;
    non-integer p has no exact evaluation and the float margin stands.
    """
    xs = [Fraction(v) for v in x]
    n2 = sum(v * v for v in xs)
    if isinstance(spec, WeightedSup):
        f = max(Fraction(spec.u) * abs(xs[0]), Fraction(spec.v) * abs(xs[1]))
        return f * f < n2
    if isinstance(spec, WeightedL1):
        f = Fraction(spec.u) * abs(xs[0]) + Fraction(spec.v) * abs(xs[1])
        return f * f < n2
    if isinstance(spec, PNorm):
        if spec.p == math.inf:
            f = max(abs(v) for v in xs)
            return f * f < n2
        if spec.p == int(spec.p):
            p = int(spec.p)
            s = sum(abs(v) ** p for v in xs)
            return s * s < n2**p
    return True


def radial_dominance_search(
    spec: SubnormSpec, level: int, budget: int = 400, seed=0
) -> Element | None:
    """Hunt for a unit element with ``f(a) < |a| - 1e-9``.

    Such an element disproves radial dominance and hence stability.  The
    absence of a witness is a legitimate outcome, not an error, and is
    *not* a stability proof.  Exponential subnorms are excluded: they are
    only defined on symbolic-angle inputs, and get the angle-scan path
    (:func:`dominance_angle_scan`) instead.
    """
    if isinstance(spec, CauchyExp):
        raise ValueError(
            "exponential subnorms are scanned over symbolic angles; "
            "use dominance_angle_scan"
        )
    dim = 1 << level

    def fn(x: tuple[float, ...]) -> float:
        return evaluate(spec, Element(level, x))

    best_x, best_f = _sphere_minimize(fn, dim, budget, seed, _default_starts(dim))
    if best_x is not None and best_f < 1.0 - WITNESS_MARGIN:
        if _exact_dominance_confirm(spec, best_x):
            return Element(level, best_x)
    return None


def stability_witness_search(
    spec: SubnormSpec, level: int, k_max: int = 32, budget: int = 400, seed=0
) -> GrowthWitness | None:
    """Direct falsification of ``f(a**k) <= sigma * f(a)**k``.

    A dominance violation f(a) < |a| forces
    ``f(a**k) >= |a|**k / nu = (|a|/f(a))**k * f(a)**k / nu``, so the
    ratio grows geometrically; the witness reports it at k_max, computed
    in the log domain (and honestly infinite if it overflows).
    """
    a = radial_dominance_search(spec, level, budget, seed)
    if a is None:
        return None
    logs = dict(log_subnorm_powers(spec, a, [1, k_max]))
    log_ratio = logs[k_max] - k_max * logs[1]
    ratio = math.exp(log_ratio) if log_ratio < 709.0 else math.inf
    return GrowthWitness(a, k_max, ratio)


def strong_stability_search(
    spec: SubnormSpec, level: int, k_max: int = 8, budget: int = 200, seed=0
) -> GrowthWitness | None:
    """Hunt for ``f(a**k) > f(a)**k`` (a sigma = 1 violation).

    Finds witnesses for stable-but-not-strongly-stable subnorms, where
    the growth ratio exceeds 1 for some k even though it stays bounded.
    """
    dim = 1 << level
    ks = list(range(1, k_max + 1))

    def neg_worst_log_ratio(x: tuple[float, ...]) -> float:
        logs = log_subnorm_powers(spec, Element(level, x), ks)
        lf1 = logs[0][1]
        return -max(lf - k * lf1 for k, lf in logs[1:])

    best_x, best_neg = _sphere_minimize(
        neg_worst_log_ratio, dim, budget, seed, _default_starts(dim)
    )
    if best_x is None or -best_neg <= math.log1p(WITNESS_MARGIN):
        return None
    a = Element(level, best_x)
    logs = log_subnorm_powers(spec, a, ks)
    lf1 = logs[0][1]
    k_best, lr = max(
        ((k, lf - k * lf1) for k, lf in logs[1:]), key=lambda kv: kv[1]
    )
    return GrowthWitness(a, k_best, math.exp(lr))


# --------------------------------------------------------------------------
# the power equation
# --------------------------------------------------------------------------


def _symbolic_samples(
    spec: CauchyExp, count: int, rng: Random
) -> list[Element]:
    """Random symbolic-angle elements on the spec's carrier.

    Mixes rational multiples of pi (where the functional vanishes) with
    generator combinations; moduli stay in [1/2, 2] so direct small-k
    powering cannot overflow.
    """
    n_gens = len(spec.phi.generators)
    out = [from_polar(1.0, SymbolicAngle.of_pi(Fraction(1, 4)), spec.carrier,
                      axis=(0.0, 1.0, 0.0) if spec.carrier == 2 else None,
                      phi=spec.phi)]
    if n_gens:
        out.append(
            from_polar(1.0, SymbolicAngle.generator(1), spec.carrier,
                       axis=(1.0, 0.0, 0.0) if spec.carrier == 2 else None,
                       phi=spec.phi)
        )
    while len(out) < count:
        if rng.random() < 0.5 or not n_gens:
            angle = SymbolicAngle.of_pi(
                Fraction(rng.randint(0, 24), rng.randint(1, 12))
            )
        else:
            terms = tuple(
                (i, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                for i in range(1, n_gens + 1)
            )
            angle = SymbolicAngle(Fraction(rng.randint(0, 8), rng.randint(1, 4)), terms)
        modulus = 0.5 + 1.5 * rng.random()
        axis = None
        if spec.carrier == 2:
            axis = _unit([rng.gauss(0.0, 1.0) for _ in range(3)])
        out.append(from_polar(modulus, angle, spec.carrier, axis=axis, phi=spec.phi))
    return out[:count]


def _generic_samples(level: int, count: int, rng: Random) -> list[Element]:
    dim = 1 << level
    out = [Element(level, (1.0,) * dim)]
    if dim >= 2:
        out.append(Element(level, (1.0, 1.0) + (0.0,) * (dim - 2)))
    while len(out) < count:
        e = Element(level, tuple(rng.gauss(0.0, 1.0) for _ in range(dim)))
        if any(c != 0 for c in e.coords):
            out.append(e)
    return out[:count]


def power_equation_check(
    spec: SubnormSpec | Callable[[Element], float],
    level: int,
    sample_count: int = 200,
    k_max: int = 32,
    seed=0,
    tol: float = 1e-9,
    samples: Sequence[Element] | None = None,
    phi=None,
) -> PowerEquationReport:
    """Measure the worst relative residual of ``f(a**k) = f(a)**k``.

    Catalog specs are evaluated in the log domain (residual
    ``|exp(log f(a**k) - k log f(a)) - 1|``); raw callables are powered
    directly -- advancing symbolic angles where the samples carry them
    (pass the ambient ``phi``) -- so pointwise combinations of solutions
    can be probed too.  The Euclidean norm passes at 1e-9; every other
    continuous catalog member fails with an explicit witness.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    is_catalog = isinstance(
        spec, (PNorm, WeightedSup, WeightedL1, ScaledSubspace, CauchyExp)
    )
    if not is_catalog and not callable(spec):
        raise TypeError(f"not a subnorm spec or callable: {spec!r}")
    rng = Random(f"{seed}:power-equation")
    if samples is None:
        if isinstance(spec, CauchyExp):
            samples = _symbolic_samples(spec, sample_count, rng)
        else:
            samples = _generic_samples(level, sample_count, rng)
            if isinstance(spec, ScaledSubspace):
                # violations concentrate on the scaled line itself
                a0 = Element(
                    spec.a0.level, tuple(float(c) for c in spec.a0.coords)
                )
                samples = [a0] + samples[: sample_count - 1]
    worst = 0.0
    witness: tuple[Element, int] | None = None
    ks = list(range(1, k_max + 1))
    for a in samples:
        if is_catalog:
            logs = log_subnorm_powers(spec, a, ks)
            lf1 = logs[0][1]
            pairs = logs[1:]
        else:
            lf1 = math.log(spec(a))
            pairs = []
            for k in ks[1:]:
                ak = polar_power(a, k, phi) if a.angle is not None else power(a, k)
                pairs.append((k, math.log(spec(ak))))
        for k, lf in pairs:
            rel = abs(math.expm1(lf - k * lf1))
            worst = max(worst, rel)
            if witness is None and rel > tol:
                witness = (a, k)
    return PowerEquationReport(worst <= tol, worst, witness, len(samples))


class DominanceScanEntry(NamedTuple):
    angle: SymbolicAngle
    ratio: float  # f(unit element at the angle), i.e. f / euclidean norm
    relation: str  # "below", "equal" or "above"


def dominance_angle_scan(
    spec: CauchyExp, angles: Sequence[SymbolicAngle]
) -> list[DominanceScanEntry]:
    """Compare an exponential subnorm against the norm along angles.

    With generator values of both signs the scan exhibits points where
    the subnorm drops below the norm and points where it exceeds it, so
    no inequality between the two can hold.
    """
    if not isinstance(spec, CauchyExp):
        raise ValueError("the angle scan applies to exponential subnorms only")
    axis = (1.0, 0.0, 0.0) if spec.carrier == 2 else None
    out = []
    for angle in angles:
        u = from_polar(1.0, angle, spec.carrier, axis=axis, phi=spec.phi)
        ratio = evaluate(spec, u)
        if ratio < 1.0 - WITNESS_MARGIN:
            rel = "below"
        elif ratio > 1.0 + WITNESS_MARGIN:
            rel = "above"
        else:
            rel = "equal"
        out.append(DominanceScanEntry(angle, ratio, rel))
    return out
