"""Arithmetic for the Cayley-Dickson tower of algebras.

The level-n algebra has dimension 2**n over the reals; its elements are
coordinate tuples built by the doubling construction: a level-n element is
an ordered pair of level-(n-1) elements, conjugation is ``(a, b)* = (a*, -b)``
and multiplication is ``(a, b)(c, d) = (ac - d*b, da + bc*)``.  Levels
0..4 are the reals, complexes, quaternions, octonions and sedenions.

Coordinates follow the 1-based convention throughout the public interfaces:
coordinate 1 is the real part (stored at ``coords[0]``), and the basis
element ``e_j`` has a one at coordinate j.

Two scalar backends coexist: exact (``int`` / ``fractions.Fraction``
coordinates, no rounding, decidable equality) and floating point.  An
element's backend is simply the type of its coordinates; the doubling
recursion is agnostic.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain
from random import Random
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence, Union

if TYPE_CHECKING:  # pragma: no cover
    from .subnorms import SymbolicAngle

Scalar = Union[int, float, Fraction]

#: Relative threshold under which non-real coordinates count as zero on the
#: float backend.  Shared by minimal-polynomial degree detection and the
#: square-root branch split so both classify "real axis" identically.
REAL_AXIS_RTOL = 1e-14


@dataclass(frozen=True, slots=True)
class Element:
    """A point of the level-n Cayley-Dickson algebra.

    ``coords`` holds the 2**n coordinates in document order (real part
    first).  Instances are immutable and safe to share across threads.

    ``angle`` optionally records a symbolic polar angle attached by
    :func:`cdalg.subnorms.from_polar`; plain arithmetic never propagates
    it and it does not participate in equality.
    """

    level: int
    coords: tuple[Scalar, ...]
    angle: "SymbolicAngle | None" = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.coords) != 1 << self.level:
            raise ValueError(
                f"level {self.level} element needs {1 << self.level} "
                f"coordinates, got {len(self.coords)}"
            )

    @classmethod
    def from_coords(cls, coords: Iterable[Scalar]) -> "Element":
        """Build an element from a coordinate sequence of length 2**n."""
        coords = tuple(coords)
        n = len(coords)
        if n == 0 or n & (n - 1):
            raise ValueError(f"coordinate count {n} is not a power of two")
        return cls(n.bit_length() - 1, coords)

    @classmethod
    def zero(cls, level: int) -> "Element":
        return cls(level, (0,) * (1 << level))

    @classmethod
    def unit(cls, level: int) -> "Element":
        """The multiplicative unit: coordinate 1 equals one, rest zero."""
        return cls(level, (1,) + (0,) * ((1 << level) - 1))

    @classmethod
    def basis(cls, level: int, j: int) -> "Element":
        """Basis element e_j, with j 1-based (e_1 is the unit)."""
        dim = 1 << level
        if not 1 <= j <= dim:
            raise ValueError(f"basis index {j} out of range 1..{dim}")
        return cls(level, tuple(1 if i == j - 1 else 0 for i in range(dim)))

    def __add__(self, other: "Element") -> "Element":
        _check_levels(self, other)
        return Element(self.level, tuple(map(operator.add, self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        _check_levels(self, other)
        return Element(self.level, tuple(map(operator.sub, self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.level, tuple(-c for c in self.coords))

    def __mul__(self, other: "Element | Scalar") -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other: Scalar) -> "Element":
        return scale(self, other)

    def __truediv__(self, other: Scalar) -> "Element":
        return Element(self.level, tuple(c / other for c in self.coords))


@dataclass(frozen=True, slots=True)
class ScaledPower:
    """A power a**k kept as magnitude and unit direction.

    ``exp(log_magnitude) * direction`` equals a**k; keeping the magnitude
    in the log domain lets k grow to 2**20 without float overflow.
    """

    log_magnitude: float
    direction: Element
    k: int


def _check_levels(a: Element, b: Element) -> None:
    if a.level != b.level:
        raise ValueError(
            f"level mismatch: {a.level} vs {b.level}; embed the lower one first"
        )


def _conj(x: tuple) -> tuple:
    if len(x) == 1:
        return x
    t = tuple(map(operator.neg, x))
    return (x[0],) + t[1:]


def _mul(x: tuple, y: tuple) -> tuple:
    # (a,b)(c,d) = (ac - d*b, da + bc*), recursing on halves; a size-2
    # input is a complex product written out directly.
    n = len(x)
    if n == 2:
        x0, x1 = x
        y0, y1 = y
        return (x0 * y0 - y1 * x1, y1 * x0 + x1 * y0)
    if n == 1:
        return (x[0] * y[0],)
    h = n >> 1
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    p = _mul(a, c)
    q = _mul(_conj(d), b)
    r = _mul(d, a)
    s = _mul(b, _conj(c))
    return tuple(chain(map(operator.sub, p, q), map(operator.add, r, s)))


def multiply(a: Element, b: Element) -> Element:
    """Cayley-Dickson product of two same-level elements.

    Scalar cost is Theta(4**n): four recursive sub-products per level, by
    construction.  Raises ``ValueError`` on a level mismatch; callers must
    embed the lower-level operand first.
    """
    _check_levels(a, b)
    return Element(a.level, _mul(a.coords, b.coords))


def conjugate(a: Element) -> Element:
    """Conjugate: fixes coordinate 1, negates all others."""
    return Element(a.level, _conj(a.coords))


def embed(a: Element, target_level: int) -> Element:
    """View ``a`` inside a higher-level algebra by zero padding.

    Multiplication commutes with embedding, so the image generates an
    isomorphic copy of the original algebra.
    """
    if target_level < a.level:
        raise ValueError(
            f"cannot embed level {a.level} into lower level {target_level}"
        )
    if target_level == a.level:
        return Element(a.level, a.coords)
    pad = (1 << target_level) - (1 << a.level)
    fill = 0.0 if any(isinstance(c, float) for c in a.coords) else 0
    return Element(target_level, a.coords + (fill,) * pad)


def scale(a: Element, alpha: Scalar) -> Element:
    return Element(a.level, tuple(alpha * c for c in a.coords))


def norm_squared(a: Element) -> Scalar:
    """Sum of squared coordinates; exact on the exact backend."""
    return sum(c * c for c in a.coords)


def euclidean_norm(a: Element) -> float:
    """Euclidean norm; nonnegative, zero only for the zero element."""
    return math.sqrt(float(norm_squared(a)))


def real_part(a: Element) -> Scalar:
    return a.coords[0]


def is_zero(a: Element) -> bool:
    return all(c == 0 for c in a.coords)


def is_exact(a: Element) -> bool:
    """True when every coordinate is an int or Fraction (exact backend)."""
    return all(not isinstance(c, float) for c in a.coords)


def is_real_axis(a: Element) -> bool:
    """Whether ``a`` is a real multiple of the unit element.

    Exact coordinates are tested exactly; on the float backend the
    non-real coordinates must be below ``REAL_AXIS_RTOL`` relative to
    the norm.  The classification is deliberately shared between the
    degree detector and the square-root branch split.
    """
    if a.level == 0:
        return True
    if is_exact(a):
        return all(c == 0 for c in a.coords[1:])
    bound = REAL_AXIS_RTOL * euclidean_norm(a)
    return all(abs(c) <= bound for c in a.coords[1:])


def power(a: Element, k: int) -> Element:
    """k-th power, k >= 1, via the two-term span recurrence.

    Every element satisfies ``a**2 = 2*a1*a - |a|^2 * 1`` (a1 the real
    part), so all powers stay in span{1, a}: writing ``a**k = u*1 + v*a``
    gives ``u' = -|a|^2 * v`` and ``v' = u + 2*a1*v``.  Exact on the exact
    backend and in exact agreement with repeated multiplication.

    k = 0 is rejected: powers here are only defined for positive k.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"power requires an integer k >= 1, got {k!r}")
    if k == 1:
        return Element(a.level, a.coords)
    n2 = norm_squared(a)
    a1 = a.coords[0]
    u, v = 0, 1
    for _ in range(k - 1):
        u, v = -n2 * v, u + 2 * a1 * v
    return Element(
        a.level, (u + v * a.coords[0],) + tuple(v * c for c in a.coords[1:])
    )


def scaled_power_sequence(a: Element, ks: Sequence[int]) -> Iterator[ScaledPower]:
    """Yield ``ScaledPower`` snapshots of a**k at each k in ``ks``.

    ``ks`` must be strictly increasing positive integers.  The walk runs
    the span recurrence on the normalized element, renormalizing the
    (u, v) pair at every step so nothing overflows for k up to 2**20;
    the tiny per-step corrections are folded into the log magnitude.
    """
    ks = list(ks)
    if not ks or any(k < 1 for k in ks) or any(
        ks[i] >= ks[i + 1] for i in range(len(ks) - 1)
    ):
        raise ValueError("ks must be a nonempty strictly increasing list of k >= 1")
    nrm = euclidean_norm(a)
    if nrm == 0.0:
        raise ValueError("scaled powers of the zero element are undefined")
    inv = 1.0 / nrm
    b = tuple(float(c) * inv for c in a.coords)
    b1 = b[0]
    bn2 = math.fsum(c * c for c in b)
    log_nrm = math.log(nrm)
    u, v = 0.0, 1.0
    sprod = 1.0  # running product of squared step norms, stays ~1
    k = 1
    for target in ks:
        while k < target:
            u, v = -bn2 * v, u + 2.0 * b1 * v
            s2 = u * u + 2.0 * u * v * b1 + v * v * bn2
            rs = 1.0 / math.sqrt(s2)
            u *= rs
            v *= rs
            sprod *= s2
            k += 1
        coords = (u + v * b[0],) + tuple(v * c for c in b[1:])
        dn = math.sqrt(math.fsum(c * c for c in coords))
        direction = Element(a.level, tuple(c / dn for c in coords))
        yield ScaledPower(
            k * log_nrm + 0.5 * math.log(sprod) + math.log(dn), direction, k
        )


def power_scaled(a: Element, k: int) -> ScaledPower:
    """Single-k form of :func:`scaled_power_sequence`; rejects a = 0."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"power_scaled requires an integer k >= 1, got {k!r}")
    return next(iter(scaled_power_sequence(a, [k])))


def random_integer_element(
    level: int, rng: Random, bound: int = 9, nonzero: bool = False
) -> Element:
    """Random exact element with integer coordinates in [-bound, bound]."""
    while True:
        e = Element(level, tuple(rng.randint(-bound, bound) for _ in range(1 << level)))
        if not nonzero or not is_zero(e):
            return e


def random_float_element(level: int, rng: Random, sigma: float = 1.0) -> Element:
    """Random float element with independent gaussian coordinates."""
    return Element(level, tuple(rng.gauss(0.0, sigma) for _ in range(1 << level)))


def random_unit_element(level: int, rng: Random) -> Element:
    """Random point of the unit Euclidean sphere."""
    while True:
        e = random_float_element(level, rng)
        nrm = euclidean_norm(e)
        if nrm > 1e-6:
            return scale(e, 1.0 / nrm)
