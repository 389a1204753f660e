"""Subnorm catalog: p-norms, weighted two-coordinate norms, subspace-scaled
subnorms, and exponential subnorms driven by additive angle functionals.

A subnorm is a real function that is positive off zero and absolutely
homogeneous; it need not be subadditive or continuous.  The discontinuous
members here come in two constructions:

* ``ScaledSubspace`` multiplies a base subnorm by a constant ``kappa > 1``
  on the line spanned by a fixed element, leaving it untouched elsewhere.
* ``CauchyExp`` multiplies a base subnorm by ``exp(phi(arg a))`` where
  ``phi`` is an additive, pi-periodic rational-linear functional.  A fully
  general such functional cannot be realized computationally, so ``phi``
  is evaluated only on the rational span of pi and finitely many fixed
  generator angles, where additivity and periodicity force its values
  exactly.  Angles are therefore carried symbolically: a ``SymbolicAngle``
  is a rational combination ``q0*pi + sum q_i*theta_i``, and elements
  built through :func:`from_polar` remember theirs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import NamedTuple, Union

from .core import Element, euclidean_norm, is_exact

TWO_PI = 2.0 * math.pi

#: Largest denominator considered by the pi-commensurability screen.
_COMMENSURABLE_MAX_DEN = 1_000_000
_COMMENSURABLE_ATOL = 1e-13


# --------------------------------------------------------------------------
# symbolic angles and the additive functional
# --------------------------------------------------------------------------


def _normalized_terms(terms) -> tuple[tuple[int, Fraction], ...]:
    merged: dict[int, Fraction] = {}
    for idx, coeff in terms:
        idx = int(idx)
        if idx < 1:
            raise ValueError(f"generator indices are 1-based, got {idx}")
        merged[idx] = merged.get(idx, Fraction(0)) + Fraction(coeff)
    return tuple(sorted((i, q) for i, q in merged.items() if q != 0))


@dataclass(frozen=True, slots=True)
class SymbolicAngle:
    """Rational combination ``q0*pi + sum_i q_i * theta_i``.

    ``terms`` maps 1-based generator indices to rational coefficients;
    the generators' numeric values live in the ambient :class:`PhiSpec`.
    Pure rational multiples of pi need no PhiSpec at all.
    """

    pi_coeff: Fraction
    terms: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pi_coeff", Fraction(self.pi_coeff))
        object.__setattr__(self, "terms", _normalized_terms(self.terms))

    @staticmethod
    def of_pi(q) -> "SymbolicAngle":
        """The angle q * pi for rational q."""
        return SymbolicAngle(Fraction(q))

    @staticmethod
    def generator(index: int, coeff=1, pi_coeff=0) -> "SymbolicAngle":
        """The angle coeff * theta_index (+ pi_coeff * pi)."""
        return SymbolicAngle(Fraction(pi_coeff), ((index, Fraction(coeff)),))

    @property
    def is_pi_rational(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymbolicAngle") -> "SymbolicAngle":
        return SymbolicAngle(
            self.pi_coeff + other.pi_coeff, self.terms + other.terms
        )

    def __sub__(self, other: "SymbolicAngle") -> "SymbolicAngle":
        return self + (-other)

    def __neg__(self) -> "SymbolicAngle":
        return self.scaled(-1)

    def scaled(self, factor) -> "SymbolicAngle":
        f = Fraction(factor)
        return SymbolicAngle(
            f * self.pi_coeff, tuple((i, f * q) for i, q in self.terms)
        )


@dataclass(frozen=True, slots=True)
class Generator:
    """One fixed generator angle ``theta`` with functional value ``c``."""

    theta: float
    c: float


def _pi_rational_approximation(theta: float) -> Fraction | None:
    """Small-denominator rational p/q with theta ~ (p/q)*pi, if one exists.

    Runs the continued-fraction convergents of theta/pi and reports the
    first convergent within ``_COMMENSURABLE_ATOL`` whose denominator is
    below the screening bound.  True non-commensurability is undecidable
    from a float, so this is a best-effort configuration check only.
    """
    x = theta / math.pi
    hm2, hm1 = 0, 1  # convergent numerators h_{-2}, h_{-1}
    km2, km1 = 1, 0  # convergent denominators
    val = x
    for _ in range(64):
        ai = math.floor(val)
        h = ai * hm1 + hm2
        k = ai * km1 + km2
        hm2, hm1, km2, km1 = hm1, h, km1, k
        if k > _COMMENSURABLE_MAX_DEN:
            return None
        if abs(x - h / k) < _COMMENSURABLE_ATOL:
            return Fraction(h, k)
        frac = val - ai
        if frac <= 1e-15:
            return None
        val = 1.0 / frac
    return None


@dataclass(frozen=True, slots=True)
class PhiSpec:
    """Additive, pi-periodic functional on a finitely generated angle span.

    By construction ``phi(q*pi) = 0`` for every rational q and
    ``phi(q0*pi + sum q_i*theta_i) = sum q_i*c_i``; additivity then holds
    exactly in the rational coefficient arithmetic.  Generators whose
    angle is detected as a small-denominator rational multiple of pi are
    rejected as a configuration error (the value table would contradict
    periodicity there).
    """

    generators: tuple[Generator, ...]

    def __post_init__(self) -> None:
        gens = tuple(
            g if isinstance(g, Generator) else Generator(*g) for g in self.generators
        )
        object.__setattr__(self, "generators", gens)
        for n, g in enumerate(gens, start=1):
            if not (g.theta > 0.0 and math.isfinite(g.theta)):
                raise ValueError(f"generator {n}: angle must be positive and finite")
            if not math.isfinite(g.c):
                raise ValueError(f"generator {n}: functional value must be finite")
            rel = _pi_rational_approximation(g.theta)
            if rel is not None:
                raise ValueError(
                    f"generator {n}: angle {g.theta!r} looks like {rel}*pi; "
                    "a generator commensurable with pi contradicts periodicity"
                )

    @staticmethod
    def single(theta: float, c: float) -> "PhiSpec":
        return PhiSpec((Generator(theta, c),))


def angle_value(angle: SymbolicAngle, phi: PhiSpec | None = None) -> float:
    """Numeric value of a symbolic angle, in radians."""
    v = float(angle.pi_coeff) * math.pi
    if angle.terms:
        if phi is None:
            raise ValueError(
                "angle has generator terms; a PhiSpec is needed for numerics"
            )
        gens = phi.generators
        for i, q in angle.terms:
            if i > len(gens):
                raise ValueError(f"angle uses generator {i}; PhiSpec has {len(gens)}")
            v += float(q) * gens[i - 1].theta
    return v


def reduce_angle(angle: SymbolicAngle, phi: PhiSpec | None = None) -> SymbolicAngle:
    """Shift by multiples of 2*pi into [0, 2*pi).

    Only the pi coefficient changes, and only by even integers, so the
    functional value of the angle is untouched.  Pure rational multiples
    of pi reduce exactly; angles with generator terms reduce through
    their float value.
    """
    if angle.is_pi_rational:
        shift = 2 * (angle.pi_coeff // 2)
        return SymbolicAngle(angle.pi_coeff - shift, angle.terms)
    v = angle_value(angle, phi)
    m = math.floor(v / TWO_PI)
    out = SymbolicAngle(angle.pi_coeff - 2 * m, angle.terms)
    while angle_value(out, phi) < 0.0:
        out = SymbolicAngle(out.pi_coeff + 2, out.terms)
    while angle_value(out, phi) >= TWO_PI:
        out = SymbolicAngle(out.pi_coeff - 2, out.terms)
    return out


def _fold(angle: SymbolicAngle, phi: PhiSpec | None) -> tuple[SymbolicAngle, int]:
    """Reduce, then reflect (pi, 2*pi) down to [0, pi].

    Returns (folded angle, parity); parity -1 marks a reflection
    ``x -> 2*pi - x``, which negates the functional value.
    """
    r = reduce_angle(angle, phi)
    if r.is_pi_rational:
        above = r.pi_coeff > 1
    else:
        above = angle_value(r, phi) > math.pi
    if above:
        return SymbolicAngle(2 - r.pi_coeff, tuple((i, -q) for i, q in r.terms)), -1
    return r, 1


class PoweredAngle(NamedTuple):
    angle: SymbolicAngle
    parity: int


def angle_power(
    angle: SymbolicAngle, k: int, carrier: int, phi: PhiSpec | None = None
) -> PoweredAngle:
    """Argument of the k-th power of an element with the given argument.

    Carrier 1 (complex): k*angle reduced mod 2*pi, parity always +1.
    Carrier 2 (quaternion): arguments live in [0, pi], so k*angle is
    reduced and then folded; the reported parity is -1 when the fold
    reflected, in which case the functional value of the returned angle
    is the negative of k times the original one.
    """
    scaled = angle.scaled(k)
    if carrier == 1:
        return PoweredAngle(reduce_angle(scaled, phi), 1)
    if carrier == 2:
        folded, parity = _fold(scaled, phi)
        return PoweredAngle(folded, parity)
    raise ValueError(f"carrier must be 1 or 2, got {carrier}")


def phi_eval_exact(phi: PhiSpec, angle: SymbolicAngle) -> Fraction:
    """Exact rational value of the functional at a symbolic angle.

    The pi coefficient is ignored entirely (pi-periodicity); each float
    ``c_i`` enters as the exact rational it denotes, so additivity holds
    with literal equality.  Unknown generator indices are rejected: the
    functional has no defined value off the generated span.
    """
    total = Fraction(0)
    gens = phi.generators
    for i, q in angle.terms:
        if i > len(gens):
            raise ValueError(f"angle uses generator {i}; PhiSpec has {len(gens)}")
        total += q * Fraction(gens[i - 1].c)
    return total


def phi_eval(phi: PhiSpec, angle: SymbolicAngle) -> float:
    return float(phi_eval_exact(phi, angle))


# --------------------------------------------------------------------------
# the catalog
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PNorm:
    """Coordinate p-norm, 0 < p <= inf; a norm precisely when p >= 1.

    For p < 1 the function is still a subnorm (positive, homogeneous)
    but not subadditive; ``is_norm`` carries that flag as metadata.
    """

    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", float(self.p))
        if math.isnan(self.p) or self.p <= 0.0:
            raise ValueError(f"p must satisfy 0 < p <= inf, got {self.p}")

    @property
    def is_norm(self) -> bool:
        return self.p >= 1.0


#: The Euclidean norm, distinguished throughout: it equals the radius.
EUCLID = PNorm(2.0)


def is_euclidean(spec) -> bool:
    return isinstance(spec, PNorm) and spec.p == 2.0


@dataclass(frozen=True)
class WeightedSup:
    """max(u*|re|, v*|im|) on the two-dimensional (complex) carrier."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not (self.u > 0 and self.v > 0):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class WeightedL1:
    """u*|re| + v*|im| on the two-dimensional (complex) carrier."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not (self.u > 0 and self.v > 0):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class ScaledSubspace:
    """A base subnorm multiplied by kappa > 1 on the line through ``a0``.

    Discontinuous at a0, yet sandwiched between the base and kappa times
    the base, hence equivalent to a continuous subnorm.
    """

    base: "SubnormSpec"
    a0: Element
    kappa: float

    def __post_init__(self) -> None:
        if not self.kappa > 1.0:
            raise ValueError("kappa must exceed 1")
        if all(c == 0 for c in self.a0.coords):
            raise ValueError("a0 must be nonzero")


@dataclass(frozen=True)
class CauchyExp:
    """base(a) * exp(phi(arg a)) on the complex (1) or quaternion (2) carrier.

    Defined only on elements carrying a symbolic angle; the functional
    has no computable value elsewhere.
    """

    base: "SubnormSpec"
    phi: PhiSpec
    carrier: int

    def __post_init__(self) -> None:
        if self.carrier not in (1, 2):
            raise ValueError("carrier must be level 1 or 2")


SubnormSpec = Union[PNorm, WeightedSup, WeightedL1, ScaledSubspace, CauchyExp]


def _pnorm_value(p: float, coords) -> float:
    m = max(abs(float(c)) for c in coords)
    if m == 0.0:
        return 0.0
    if p == math.inf:
        return m
    s = math.fsum((abs(float(c)) / m) ** p for c in coords)
    return m * s ** (1.0 / p)


def in_span(a: Element, a0: Element) -> bool:
    """Membership of ``a`` in the line spanned by ``a0``.

    Exact proportionality when both elements are exact; on floats the
    cross-product residual must be below 1e-12 relative to |a|*|a0|.
    The exact backend is authoritative for the sharp case split.
    """
    if is_exact(a) and is_exact(a0):
        i = next(j for j, c in enumerate(a0.coords) if c != 0)
        pivot_a, pivot_a0 = a.coords[i], a0.coords[i]
        return all(
            c * pivot_a0 == pivot_a * c0 for c, c0 in zip(a.coords, a0.coords)
        )
    xs = tuple(float(c) for c in a.coords)
    ys = tuple(float(c) for c in a0.coords)
    i = max(range(len(ys)), key=lambda j: abs(ys[j]))
    residual = max(abs(x * ys[i] - xs[i] * y) for x, y in zip(xs, ys))
    return residual <= 1e-12 * euclidean_norm(a) * euclidean_norm(a0)


def evaluate(spec: SubnormSpec, a: Element, strict: bool = True) -> float:
    """Value of a catalog subnorm at an element.

    Positive for a != 0 and absolutely homogeneous, per family.  Raises
    ``ValueError`` on a carrier mismatch.  For ``CauchyExp`` the element
    must carry a symbolic angle; in strict mode (the default) an element
    without one is rejected, while ``strict=False`` falls back to the
    bare base value, i.e. treats the angle as if it were a rational
    multiple of pi.
    """
    if isinstance(spec, PNorm):
        return _pnorm_value(spec.p, a.coords)
    if isinstance(spec, WeightedSup):
        if a.level != 1:
            raise ValueError("weighted sup subnorm is defined on level 1 only")
        return max(spec.u * abs(float(a.coords[0])), spec.v * abs(float(a.coords[1])))
    if isinstance(spec, WeightedL1):
        if a.level != 1:
            raise ValueError("weighted l1 subnorm is defined on level 1 only")
        return spec.u * abs(float(a.coords[0])) + spec.v * abs(float(a.coords[1]))
    if isinstance(spec, ScaledSubspace):
        if a.level != spec.a0.level:
            raise ValueError(
                f"element level {a.level} does not match the scaled line's "
                f"level {spec.a0.level}"
            )
        base = evaluate(spec.base, a, strict)
        return spec.kappa * base if in_span(a, spec.a0) else base
    if isinstance(spec, CauchyExp):
        if a.level != spec.carrier:
            raise ValueError(
                f"element level {a.level} does not match carrier {spec.carrier}"
            )
        if a.angle is None:
            if strict:
                raise ValueError(
                    "element carries no symbolic angle; the exponential "
                    "subnorm is undefined off the generated angle span"
                )
            return evaluate(spec.base, a, strict)
        return evaluate(spec.base, a, strict) * math.exp(phi_eval(spec.phi, a.angle))
    raise TypeError(f"not a subnorm spec: {spec!r}")


def from_polar(
    modulus: float,
    angle: SymbolicAngle,
    carrier: int,
    axis: tuple[float, float, float] | None = None,
    phi: PhiSpec | None = None,
) -> Element:
    """Element of the given modulus and symbolic argument.

    Carrier 1 builds ``modulus * (cos t, sin t)`` and records the angle
    reduced to the principal range [0, 2*pi).  Carrier 2 needs a unit
    axis in the three-dimensional imaginary part and records the angle
    folded into [0, pi] (reflecting both angle and axis preserves the
    element, so the constructed point is exactly the one requested).
    """
    modulus = float(modulus)
    if not modulus > 0.0:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if carrier == 1:
        ar = reduce_angle(angle, phi)
        t = angle_value(ar, phi)
        return Element(1, (modulus * math.cos(t), modulus * math.sin(t)), angle=ar)
    if carrier == 2:
        if axis is None:
            raise ValueError("carrier 2 needs a unit axis in the imaginary part")
        ax = tuple(float(x) for x in axis)
        if len(ax) != 3 or abs(math.fsum(x * x for x in ax) - 1.0) > 1e-12:
            raise ValueError("axis must be a unit 3-vector")
        af, parity = _fold(angle, phi)
        t = angle_value(af, phi)
        st = modulus * math.sin(t) * parity
        coords = (modulus * math.cos(t), st * ax[0], st * ax[1], st * ax[2])
        return Element(2, coords, angle=af)
    raise ValueError(
        f"arguments are defined on carriers 1 and 2 only, got {carrier}"
    )


def polar_power(a: Element, k: int, phi: PhiSpec | None = None) -> Element:
    """a**k for a symbolic-angle element, with the powered angle attached.

    The modulus is raised directly (small k only; large powers belong in
    the log-domain machinery) and the angle is advanced symbolically, so
    the result remains usable by ``CauchyExp`` evaluation.
    """
    if a.angle is None or a.level not in (1, 2):
        raise ValueError("polar_power needs a level-1 or level-2 symbolic element")
    m = euclidean_norm(a)
    mk = m**k
    pw = angle_power(a.angle, k, a.level, phi)
    t = angle_value(pw.angle, phi)
    if a.level == 1:
        return Element(1, (mk * math.cos(t), mk * math.sin(t)), angle=pw.angle)
    imag = a.coords[1:]
    inorm = math.sqrt(math.fsum(float(c) * float(c) for c in imag))
    if inorm < 1e-300:
        ax = (1.0, 0.0, 0.0)
    else:
        ax = tuple(float(c) / inorm for c in imag)
    st = mk * math.sin(t) * pw.parity
    coords = (mk * math.cos(t), st * ax[0], st * ax[1], st * ax[2])
    return Element(2, coords, angle=pw.angle)


def equivalence_constants(spec: SubnormSpec, level: int) -> tuple[float, float]:
    """Closed-form (mu, nu) with ``mu*f <= |.| <= nu*f`` on the level.

    Available for the continuous families; the exponential subnorms admit
    no such constants (their ratio to the norm is unbounded both ways).
    """
    if isinstance(spec, PNorm):
        d = float(1 << level)
        if spec.p == math.inf:
            return 1.0, math.sqrt(d)
        gap = d ** abs(0.5 - 1.0 / spec.p)
        if spec.p <= 2.0:
            return 1.0 / gap, 1.0
        return 1.0, gap
    if isinstance(spec, WeightedSup):
        if level != 1:
            raise ValueError("weighted sup lives on level 1")
        return 1.0 / max(spec.u, spec.v), math.sqrt(2.0) / min(spec.u, spec.v)
    if isinstance(spec, WeightedL1):
        if level != 1:
            raise ValueError("weighted l1 lives on level 1")
        return 1.0 / math.hypot(spec.u, spec.v), 1.0 / min(spec.u, spec.v)
    if isinstance(spec, ScaledSubspace):
        mu, nu = equivalence_constants(spec.base, level)
        return mu / spec.kappa, nu
    raise ValueError(f"no equivalence constants for {type(spec).__name__}")


def sampled_equivalence_constants(
    spec: SubnormSpec, level: int, samples: int, rng: Random
) -> tuple[float, float]:
    """Empirical (mu, nu) from unit-sphere sampling; always inside the
    closed-form interval, which tests exploit as a cross-check."""
    from .core import random_unit_element

    lo, hi = math.inf, 0.0
    for _ in range(samples):
        w = random_unit_element(level, rng)
        r = 1.0 / evaluate(spec, w)
        lo = min(lo, r)
        hi = max(hi, r)
    return lo, hi
