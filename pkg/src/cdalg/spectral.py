"""Minimal polynomials and the radius for Cayley-Dickson elements.

Every element is annihilated by the monic quadratic
``t**2 - 2*a1*t + |a|^2`` (a1 the real part), so the minimal polynomial
has degree 2 in general and degree 1 exactly for real multiples of the
unit.  The radius of an element is the largest root modulus of its
minimal polynomial; on these algebras it coincides with the Euclidean
norm, and that identity is the module's central cross-check rather than
an implementation shortcut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Element,
    Scalar,
    euclidean_norm,
    is_real_axis,
    norm_squared,
    power,
    scale,
)


@dataclass(frozen=True, slots=True)
class MinimalPoly:
    """Monic annihilating polynomial of degree 1 or 2.

    ``coefficients`` are in descending order with the leading 1 omitted:
    degree 2 stores ``(c1, c0)`` for ``t**2 + c1*t + c0`` and degree 1
    stores ``(c0,)`` for ``t + c0``.  Coefficients stay exact on the
    exact backend; roots are always stored as complex floats because the
    square root of a rational is generally irrational.
    """

    degree: int
    coefficients: tuple[Scalar, ...]
    roots: tuple[complex, ...]


def minimal_polynomial(a: Element) -> MinimalPoly:
    """Unique minimal polynomial of ``a``.

    Real multiples of the unit get the degree-1 polynomial ``t - lam``
    (the zero element gets ``t``); everything else gets
    ``t**2 - 2*a1*t + |a|^2``, whose two complex roots are conjugate with
    common modulus |a|.  Degree detection is exact on the exact backend
    and threshold-based (``REAL_AXIS_RTOL``) on floats, since the degree
    is a discontinuous function of the coordinates.
    """
    if is_real_axis(a):
        lam = a.coords[0]
        return MinimalPoly(1, (-lam,), (complex(float(lam), 0.0),))
    a1 = a.coords[0]
    # Imaginary part of the roots computed from the non-real coordinates
    # directly; subtracting a1**2 from |a|^2 would cancel catastrophically
    # for nearly-real elements.
    imag = math.sqrt(float(sum(c * c for c in a.coords[1:])))
    re = float(a1)
    return MinimalPoly(
        2, (-2 * a1, norm_squared(a)), (complex(re, imag), complex(re, -imag))
    )


def radius(a: Element) -> float:
    """Largest root modulus of the minimal polynomial.

    Both roots of the degree-2 polynomial share modulus |a|; the code
    still takes the max over the stored roots, staying honest to the
    definition.
    """
    return max(abs(r) for r in minimal_polynomial(a).roots)


def radius_homogeneity_check(a: Element, alpha: float, rtol: float = 1e-10) -> bool:
    """Probe ``radius(alpha * a) == |alpha| * radius(a)``.

    Returns True when the two sides agree within ``rtol`` relative; named
    so that experiment reports can emit homogeneity tables directly.
    """
    lhs = radius(scale(a, alpha))
    rhs = abs(alpha) * radius(a)
    return abs(lhs - rhs) <= rtol * max(abs(rhs), 1.0e-300)


def annihilation_residual(poly: MinimalPoly, a: Element) -> Element:
    """Evaluate ``poly`` at ``a`` through the power recurrence.

    The result is the zero element exactly on the exact backend; tests
    use it both for the quadratic annihilation identity and for checking
    that returned minimal polynomials really annihilate their elements.
    """
    one = Element.unit(a.level)
    if poly.degree == 1:
        (c0,) = poly.coefficients
        return a + scale(one, c0)
    c1, c0 = poly.coefficients
    return power(a, 2) + scale(a, c1) + scale(one, c0)


def divides_quadratic(poly: MinimalPoly, a: Element) -> bool:
    """Check the degree-1 divisibility identity for real-axis elements.

    When ``a = lam * 1`` the annihilating quadratic factors as
    ``(t - lam)**2``, i.e. its coefficients must be ``(-2*lam, lam**2)``;
    for degree-2 minimal polynomials the quadratic *is* the minimal
    polynomial and divisibility is trivial.
    """
    if poly.degree == 2:
        return poly.coefficients == (-2 * a.coords[0], norm_squared(a))
    (c0,) = poly.coefficients
    lam = -c0
    return (-2 * a.coords[0], norm_squared(a)) == (-2 * lam, lam * lam)
