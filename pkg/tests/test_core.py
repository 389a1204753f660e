"""Doubling arithmetic: exact identities, powers, scaled powers."""

import math
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdalg.core import (
    Element,
    conjugate,
    embed,
    euclidean_norm,
    is_zero,
    multiply,
    norm_squared,
    power,
    power_scaled,
    random_float_element,
    random_integer_element,
    scale,
    scaled_power_sequence,
)


def quaternion(c0, c1, c2, c3):
    return Element(2, (c0, c1, c2, c3))


class TestMultiply:
    def test_quaternion_basis_table(self):
        # hand-expanded through the doubling recursion over pairs of complexes
        one = Element.unit(2)
        i, j, k = (Element.basis(2, n) for n in (2, 3, 4))
        assert multiply(i, j) == k
        assert multiply(j, i) == -k
        assert multiply(j, k) == i
        assert multiply(k, i) == j
        for e in (i, j, k):
            assert multiply(e, e) == -one

    @pytest.mark.parametrize("level", range(0, 6))
    def test_unit_law(self, level):
        rng = Random(f"unit:{level}")
        one = Element.unit(level)
        for _ in range(10):
            a = random_integer_element(level, rng)
            assert multiply(one, a) == a
            assert multiply(a, one) == a

    def test_sedenion_zero_divisor_product(self):
        o1 = Element.basis(4, 4) + Element.basis(4, 11)
        o2 = Element.basis(4, 7) - Element.basis(4, 16)
        assert is_zero(multiply(o1, o2))

    def test_level_mismatch_rejected(self):
        with pytest.raises(ValueError, match="level mismatch"):
            multiply(Element.unit(1), Element.unit(2))

    def test_backends_agree_on_small_integers(self):
        rng = Random("backends")
        for level in (1, 2, 3, 4):
            a = random_integer_element(level, rng)
            b = random_integer_element(level, rng)
            af = Element(level, tuple(float(c) for c in a.coords))
            bf = Element(level, tuple(float(c) for c in b.coords))
            exact = multiply(a, b)
            approx = multiply(af, bf)
            assert all(
                abs(x - y) <= 1e-12 for x, y in zip(exact.coords, approx.coords)
            )


class TestConjugate:
    def test_unit_self_conjugate(self):
        one = Element.unit(3)
        assert conjugate(one) == one

    def test_complex_conjugation(self):
        assert conjugate(Element(1, (3, 4))) == Element(1, (3, -4))

    @given(st.lists(st.integers(-9, 9), min_size=8, max_size=8))
    def test_involution(self, coords):
        a = Element(3, tuple(coords))
        assert conjugate(conjugate(a)) == a

    @given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
    def test_sum_with_conjugate_is_real(self, coords):
        a = Element(2, tuple(coords))
        assert a + conjugate(a) == scale(Element.unit(2), 2 * coords[0])

    @pytest.mark.parametrize("level", range(0, 6))
    def test_conjugate_times_self_is_norm_squared(self, level):
        rng = Random(f"conj:{level}")
        for _ in range(10):
            a = random_integer_element(level, rng)
            expected = scale(Element.unit(level), norm_squared(a))
            assert multiply(conjugate(a), a) == expected


class TestEmbed:
    def test_zero_padding(self):
        assert embed(Element(1, (3, 4)), 2) == Element(2, (3, 4, 0, 0))

    def test_identity_embedding(self):
        a = Element(1, (3, 4))
        assert embed(a, 1) == a

    def test_lower_level_rejected(self):
        with pytest.raises(ValueError, match="cannot embed"):
            embed(Element.unit(2), 1)

    def test_multiplication_commutes_with_embedding(self):
        rng = Random("embed-hom")
        for _ in range(20):
            a = random_integer_element(2, rng)
            b = random_integer_element(2, rng)
            lifted = multiply(embed(a, 4), embed(b, 4))
            assert lifted == embed(multiply(a, b), 4)


class TestNorm:
    def test_three_four_five(self):
        assert euclidean_norm(Element(1, (3, 4))) == 5.0

    def test_zero(self):
        assert euclidean_norm(Element.zero(3)) == 0.0

    def test_all_ones(self):
        assert euclidean_norm(Element(2, (1, 1, 1, 1))) == 2.0


class TestPower:
    def test_complex_i_squared(self):
        assert power(Element(1, (0, 1)), 2) == Element(1, (-1, 0))

    def test_one_plus_i_fourth(self):
        # (1+i)^2 = 2i, squared again: -4
        assert power(Element(1, (1, 1)), 4) == Element(1, (-4, 0))

    @pytest.mark.parametrize("level", range(0, 7))
    def test_agrees_with_repeated_multiplication(self, level):
        rng = Random(f"power:{level}")
        a = random_integer_element(level, rng)
        chain = a
        for k in range(2, 33):
            chain = multiply(chain, a)
            assert power(a, k) == chain

    def test_rejects_k_zero_and_negative(self):
        a = Element(1, (1, 1))
        with pytest.raises(ValueError, match="k >= 1"):
            power(a, 0)
        with pytest.raises(ValueError, match="k >= 1"):
            power(a, -3)

    def test_zero_element_powers(self):
        z = Element.zero(2)
        assert power(z, 5) == z

    @pytest.mark.parametrize("level", range(0, 9))
    def test_quadratic_annihilation_exact(self, level):
        rng = Random(f"annihilate:{level}")
        one = Element.unit(level)
        for _ in range(5):
            a = random_integer_element(level, rng)
            residual = (
                multiply(a, a) - scale(a, 2 * a.coords[0])
                + scale(one, norm_squared(a))
            )
            assert is_zero(residual)

    def test_quadratic_annihilation_float(self):
        rng = Random("annihilate-float")
        for level in (1, 3, 5):
            one = Element.unit(level)
            for _ in range(20):
                a = random_float_element(level, rng)
                residual = (
                    multiply(a, a) - scale(a, 2 * a.coords[0])
                    + scale(one, norm_squared(a))
                )
                n2 = float(norm_squared(a))
                assert euclidean_norm(residual) <= 1e-12 * (1 + n2)

    def test_norm_power_identity(self):
        rng = Random("norm-power")
        for level in (1, 2, 4):
            for _ in range(5):
                a = random_float_element(level, rng)
                nrm = euclidean_norm(a)
                for k in (2, 7, 16, 33, 64):
                    expected = nrm**k
                    assert euclidean_norm(power(a, k)) == pytest.approx(
                        expected, rel=1e-10
                    )


class TestPowerScaled:
    def test_three_four_cubed(self):
        a = Element(1, (3.0, 4.0))
        sp = power_scaled(a, 3)
        assert sp.log_magnitude == pytest.approx(3 * math.log(5), rel=1e-14)
        direct = power(a, 3)
        rebuilt = scale(sp.direction, math.exp(sp.log_magnitude))
        assert all(
            x == pytest.approx(y, rel=1e-12, abs=1e-10)
            for x, y in zip(rebuilt.coords, direct.coords)
        )

    def test_unit_sphere_log_magnitude_vanishes(self):
        rng = Random("unit-logmag")
        for _ in range(10):
            a = random_float_element(3, rng)
            a = scale(a, 1.0 / euclidean_norm(a))
            sp = power_scaled(a, 257)
            assert abs(sp.log_magnitude) < 1e-10

    def test_real_axis(self):
        a = embed(Element(0, (2.0,)), 3)
        sp = power_scaled(a, 20)
        assert sp.log_magnitude == pytest.approx(20 * math.log(2), rel=1e-14)
        assert sp.direction == Element.unit(3)

    def test_direction_is_unit(self):
        rng = Random("direction-unit")
        a = random_float_element(2, rng)
        for sp in scaled_power_sequence(a, [1, 4, 64, 1024, 1 << 16]):
            assert euclidean_norm(sp.direction) == pytest.approx(1.0, abs=1e-12)

    def test_agrees_with_power_for_small_k(self):
        rng = Random("scaled-vs-power")
        for level in (1, 2, 3):
            a = random_float_element(level, rng)
            for k in (1, 2, 5, 9):
                sp = power_scaled(a, k)
                direct = power(a, k)
                rebuilt = scale(sp.direction, math.exp(sp.log_magnitude))
                for x, y in zip(rebuilt.coords, direct.coords):
                    assert x == pytest.approx(y, rel=1e-10, abs=1e-9)

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="zero element"):
            power_scaled(Element.zero(1), 3)

    def test_bad_grid_rejected(self):
        a = Element(1, (1.0, 2.0))
        with pytest.raises(ValueError, match="strictly increasing"):
            list(scaled_power_sequence(a, [4, 2]))
        with pytest.raises(ValueError, match="strictly increasing"):
            list(scaled_power_sequence(a, []))


class TestElementValidation:
    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="coordinates"):
            Element(2, (1, 2, 3))

    def test_from_coords_requires_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            Element.from_coords([1, 2, 3])
        assert Element.from_coords([1, 2, 3, 4]).level == 2

    def test_basis_index_is_one_based(self):
        e1 = Element.basis(3, 1)
        assert e1 == Element.unit(3)
        with pytest.raises(ValueError, match="out of range"):
            Element.basis(2, 5)
        with pytest.raises(ValueError, match="out of range"):
            Element.basis(2, 0)

    def test_exact_fractions_flow_through(self):
        # (1/2 + i/3)^2 = (1/4 - 1/9) + 2*(1/6) i
        a = Element(1, (Fraction(1, 2), Fraction(1, 3)))
        assert multiply(a, a) == Element(1, (Fraction(5, 36), Fraction(1, 3)))
