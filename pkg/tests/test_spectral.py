"""Minimal polynomials, roots, and the radius-norm identity."""

import math
from random import Random

import pytest

from cdalg.core import (
    Element,
    euclidean_norm,
    is_zero,
    power,
    random_float_element,
    random_integer_element,
    scale,
)
from cdalg.spectral import (
    annihilation_residual,
    divides_quadratic,
    minimal_polynomial,
    radius,
    radius_homogeneity_check,
)


class TestMinimalPolynomial:
    def test_zero_element(self):
        mp = minimal_polynomial(Element.zero(3))
        assert mp.degree == 1
        assert mp.coefficients == (0,)
        assert mp.roots == (0j,)

    def test_generic_quaternion(self):
        # |a|^2 = 1 + 4 + 4 = 9, real part 1
        a = Element(2, (1, 2, 2, 0))
        mp = minimal_polynomial(a)
        assert mp.degree == 2
        assert mp.coefficients == (-2, 9)
        r1, r2 = mp.roots
        assert r1 == pytest.approx(complex(1, math.sqrt(8)))
        assert r2 == pytest.approx(complex(1, -math.sqrt(8)))
        assert is_zero(annihilation_residual(mp, a))

    def test_negative_real(self):
        mp = minimal_polynomial(Element(1, (-4, 0)))
        assert mp.degree == 1
        assert mp.coefficients == (4,)
        assert mp.roots == (complex(-4.0, 0.0),)

    def test_roots_satisfy_polynomial(self):
        rng = Random("roots")
        for level in (1, 2, 4):
            a = random_float_element(level, rng)
            mp = minimal_polynomial(a)
            c1, c0 = mp.coefficients
            for r in mp.roots:
                value = r * r + c1 * r + c0
                scale_ref = max(abs(c0), abs(c1), 1.0)
                assert abs(value) <= 1e-10 * scale_ref

    @pytest.mark.parametrize("level", range(0, 7))
    def test_annihilation_exact_and_divisibility(self, level):
        rng = Random(f"annihilation:{level}")
        for _ in range(10):
            a = random_integer_element(level, rng)
            mp = minimal_polynomial(a)
            assert is_zero(annihilation_residual(mp, a))
            assert divides_quadratic(mp, a)

    def test_degree_detection_threshold(self):
        nearly_real = Element(2, (1.0, 1e-18, 0.0, 0.0))
        assert minimal_polynomial(nearly_real).degree == 1
        barely_complex = Element(2, (1.0, 1e-10, 0.0, 0.0))
        assert minimal_polynomial(barely_complex).degree == 2
        # exact backend: any nonzero imaginary coordinate counts
        from fractions import Fraction

        tiny_exact = Element(2, (1, Fraction(1, 10**20), 0, 0))
        assert minimal_polynomial(tiny_exact).degree == 2


class TestRadius:
    def test_examples(self):
        assert radius(Element(2, (1, 2, 2, 0))) == pytest.approx(3.0, rel=1e-12)
        assert radius(Element(1, (-4, 0))) == 4.0
        assert radius(Element.zero(2)) == 0.0

    @pytest.mark.parametrize("level", range(0, 9))
    def test_radius_equals_euclidean_norm(self, level):
        rng = Random(f"radius:{level}")
        for _ in range(20):
            a = random_float_element(level, rng)
            assert radius(a) == pytest.approx(euclidean_norm(a), rel=1e-12)

    def test_radius_of_powers(self):
        rng = Random("radius-power")
        for level in (1, 2, 3):
            a = random_float_element(level, rng)
            a = scale(a, 1.2 / euclidean_norm(a))
            r = radius(a)
            for k in (2, 5, 11, 32):
                assert radius(power(a, k)) == pytest.approx(r**k, rel=1e-9)

    def test_no_nonzero_nilpotents(self):
        rng = Random("nilpotent")
        for level in (1, 3, 5):
            a = random_float_element(level, rng)
            a = scale(a, 1.0 / euclidean_norm(a))
            for k in (2, 8, 32):
                nrm = euclidean_norm(power(a, k))
                assert nrm == pytest.approx(1.0, rel=1e-10)
                assert nrm > 0.0


class TestHomogeneity:
    def test_examples(self):
        assert radius_homogeneity_check(Element(1, (1, 1)), -2.0)
        assert radius_homogeneity_check(Element(1, (1, 1)), 0.0)
        assert radius_homogeneity_check(Element(2, (0, 1, 0, 0)), 3.0)

    def test_randomized(self):
        rng = Random("homogeneity")
        for _ in range(25):
            a = random_float_element(3, rng)
            assert radius_homogeneity_check(a, rng.uniform(-5, 5))
