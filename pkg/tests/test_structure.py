"""Square roots, zero divisors, and identity probes."""

import math
from fractions import Fraction
from random import Random

import pytest

from cdalg.core import (
    Element,
    embed,
    euclidean_norm,
    is_exact,
    is_zero,
    multiply,
    random_float_element,
    random_integer_element,
)
from cdalg.stability import _symbolic_samples, power_equation_check
from cdalg.structure import (
    alternativity_probe,
    multiplicativity_probe,
    power_equation_nonnegativity_demo,
    sqrt,
    zero_divisor_pair,
)
from cdalg.subnorms import (
    EUCLID,
    CauchyExp,
    PhiSpec,
    PNorm,
    SymbolicAngle,
    evaluate,
    from_polar,
    phi_eval,
)

LN2 = math.log(2.0)
PHI1 = PhiSpec.single(1.0, LN2)


class TestSqrt:
    def test_negative_real_case(self):
        assert sqrt(Element(1, (-4, 0))) == Element(1, (0, 2))
        assert sqrt(Element(3, (-9,) + (0,) * 7)) == Element(3, (0, 3) + (0,) * 6)

    def test_positive_real_case(self):
        assert sqrt(Element(2, (9, 0, 0, 0))) == Element(2, (3, 0, 0, 0))

    def test_pure_imaginary_quaternion(self):
        a = Element(2, (0.0, 3.0, 4.0, 0.0))
        b = sqrt(a)
        expected = [c / math.sqrt(10) for c in (5.0, 3.0, 4.0, 0.0)]
        assert all(x == pytest.approx(y) for x, y in zip(b.coords, expected))
        assert euclidean_norm(multiply(b, b) - a) <= 1e-10 * euclidean_norm(a)

    def test_exact_on_rational_witness(self):
        # norm 25, denominator sqrt(2*7 + 2*25) = 8: stays rational
        b = sqrt(Element(1, (7, 24)))
        assert is_exact(b)
        assert b == Element(1, (4, 3))

    def test_level_zero(self):
        assert sqrt(Element(0, (Fraction(9, 4),))) == Element(0, (Fraction(3, 2),))
        with pytest.raises(ValueError, match="level 0"):
            sqrt(Element(0, (-1,)))

    @pytest.mark.parametrize("level", range(1, 7))
    def test_round_trip(self, level):
        rng = Random(f"sqrt:{level}")
        for _ in range(40):
            a = random_float_element(level, rng)
            b = sqrt(a)
            residual = euclidean_norm(multiply(b, b) - a)
            assert residual <= 1e-10 * max(euclidean_norm(a), 1e-30)

    def test_half_angle_propagation(self):
        z = from_polar(4.0, SymbolicAngle.generator(1), 1, phi=PHI1)
        b = sqrt(z)
        assert b.angle is not None
        assert phi_eval(PHI1, b.angle) == pytest.approx(LN2 / 2)
        spec = CauchyExp(EUCLID, PHI1, 1)
        assert evaluate(spec, b) ** 2 == pytest.approx(evaluate(spec, z), rel=1e-12)

    def test_half_angle_pi_shift_beyond_pi(self):
        # argument 3*pi/2 halves to 3*pi/4, but the principal square root
        # of the formula sits at 3*pi/4 + pi; the functional cannot tell
        z = from_polar(1.0, SymbolicAngle.of_pi(Fraction(3, 2)), 1)
        b = sqrt(z)
        residual = euclidean_norm(multiply(b, b) - z)
        assert residual <= 1e-12
        from cdalg.subnorms import angle_value, reduce_angle

        recorded = angle_value(reduce_angle(b.angle))
        actual = math.atan2(float(b.coords[1]), float(b.coords[0])) % (2 * math.pi)
        assert recorded == pytest.approx(actual, abs=1e-12)


class TestZeroDivisors:
    def test_sedenion_pair(self):
        o1, o2 = zero_divisor_pair(4)
        assert is_zero(multiply(o1, o2))
        assert euclidean_norm(o1) == euclidean_norm(o2) == pytest.approx(math.sqrt(2))

    @pytest.mark.parametrize("level", (5, 6))
    def test_embedded_pair(self, level):
        o1, o2 = zero_divisor_pair(level)
        assert o1.level == level
        assert is_zero(multiply(o1, o2))

    def test_low_levels_rejected(self):
        with pytest.raises(ValueError, match="level 4"):
            zero_divisor_pair(3)


class TestAlternativity:
    @pytest.mark.parametrize("level", (0, 1, 2, 3))
    def test_passes_through_octonions(self, level):
        report = alternativity_probe(level, 200, seed=1)
        assert report.passed and report.witness is None

    def test_fails_at_sedenions_with_deterministic_witness(self):
        report = alternativity_probe(4, 200, seed=1)
        assert not report.passed
        o1, o2 = zero_divisor_pair(4)
        assert report.witness.inputs == (o1, o2)
        # (o1 o1) o2 = -2 o2 while o1 (o1 o2) = 0
        assert report.witness.lhs == -2 * o2
        assert is_zero(report.witness.rhs)

    def test_fails_at_level_five(self):
        assert not alternativity_probe(5, 50, seed=2).passed


class TestMultiplicativity:
    @pytest.mark.parametrize("level", (0, 1, 2, 3))
    def test_holds_through_octonions(self, level):
        report = multiplicativity_probe(level, 300, seed=1)
        assert report.passed

    def test_zero_divisor_gap_at_sedenions(self):
        report = multiplicativity_probe(4, 100, seed=1)
        assert not report.passed
        assert report.witness.lhs == 0.0
        assert report.witness.rhs == pytest.approx(2.0)


class TestNonnegativityDemo:
    def test_euclidean(self):
        report = power_equation_nonnegativity_demo(2, EUCLID, 60, seed=3)
        assert report.passed

    def test_exponential_submodulus(self):
        spec = CauchyExp(EUCLID, PHI1, 1)
        report = power_equation_nonnegativity_demo(1, spec, 60, seed=3)
        assert report.passed

    def test_level_zero_rejected(self):
        with pytest.raises(ValueError, match="level 0"):
            power_equation_nonnegativity_demo(0, EUCLID, 10, seed=3)

    def test_non_solution_rejected_with_witness(self):
        with pytest.raises(ValueError, match="fails the power equation"):
            power_equation_nonnegativity_demo(1, PNorm(1), 10, seed=3)


class TestSolutionClosure:
    def test_combinations_still_solve_the_power_equation(self):
        spec = CauchyExp(EUCLID, PHI1, 1)
        rng = Random("closure")
        samples = _symbolic_samples(spec, 40, rng)
        f = lambda e: euclidean_norm(e)
        g = lambda e: evaluate(spec, e)
        combos = {
            "f^0.8": lambda e: f(e) ** 0.8,
            "f^1.5 g^0.5": lambda e: f(e) ** 1.5 * g(e) ** 0.5,
            "max(f,g)": lambda e: max(f(e), g(e)),
            "min(f,g)": lambda e: min(f(e), g(e)),
        }
        for name, fn in combos.items():
            report = power_equation_check(
                fn, 1, k_max=8, seed=1, samples=samples, phi=PHI1
            )
            assert report.is_submodulus_on_samples, (
                name,
                report.worst_relative_residual,
            )

    def test_power_associativity_identities(self):
        # the two identities characterizing unambiguous powers
        for level in range(0, 9):
            rng = Random(f"pa:{level}")
            for _ in range(5):
                a = random_integer_element(level, rng)
                sq = multiply(a, a)
                assert multiply(sq, a) == multiply(a, sq)
                assert multiply(sq, sq) == multiply(multiply(sq, a), a)

    def test_no_nonzero_nilpotents_on_integer_samples(self):
        rng = Random("nilpotent-int")
        for level in (2, 4, 5):
            a = random_integer_element(level, rng, nonzero=True)
            nrm = euclidean_norm(a)
            from cdalg.core import power

            for k in (2, 5, 11):
                assert euclidean_norm(power(a, k)) == pytest.approx(
                    nrm**k, rel=1e-9
                )
