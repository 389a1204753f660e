"""Stability criteria, dominance searches, and the power equation."""

import math
from random import Random

import pytest

from cdalg.core import Element, euclidean_norm, random_float_element
from cdalg.gelfand import log_subnorm_powers
from cdalg.stability import (
    analytic_stability,
    dominance_angle_scan,
    power_equation_check,
    radial_dominance_search,
    stability_witness_search,
    strong_stability_search,
)
from cdalg.subnorms import (
    EUCLID,
    CauchyExp,
    Generator,
    PhiSpec,
    PNorm,
    ScaledSubspace,
    SymbolicAngle,
    WeightedL1,
    WeightedSup,
    equivalence_constants,
    evaluate,
    from_polar,
)

LN2 = math.log(2.0)
PHI1 = PhiSpec.single(1.0, LN2)


class TestAnalyticStability:
    def test_euclidean_boundary_case(self):
        v = analytic_stability(PNorm(2))
        assert v.stable and v.radially_dominant and v.strongly_stable
        assert v.witness is None

    def test_pnorm_regions(self):
        assert analytic_stability(PNorm(1)).stable
        assert analytic_stability(PNorm(1)).strongly_stable is None
        v = analytic_stability(PNorm(3))
        assert v.stable is False and v.strongly_stable is False

    def test_weighted_sup_criterion(self):
        assert analytic_stability(WeightedSup(1.0, 1.0)).stable is False
        assert analytic_stability(WeightedSup(2.0, 2.0)).stable is True
        boundary = analytic_stability(WeightedSup(math.sqrt(2), math.sqrt(2)))
        assert boundary.stable is True

    def test_weighted_l1_regions(self):
        v = analytic_stability(WeightedL1(2.0, 1.0))
        assert v.stable is True and v.strongly_stable is False
        v = analytic_stability(WeightedL1(1.5, 2.0))
        assert v.stable is True and v.strongly_stable is True
        v = analytic_stability(WeightedL1(0.5, 2.0))
        assert v.stable is False and v.strongly_stable is False

    def test_unsupported_variants_stay_unknown(self):
        for spec in (
            ScaledSubspace(EUCLID, Element(1, (1.0, 0.0)), 2.0),
            CauchyExp(EUCLID, PHI1, 1),
        ):
            v = analytic_stability(spec)
            assert v.stable is None and v.strongly_stable is None
            assert v.radially_dominant is None
            assert v.criterion == "none; use search"

    def test_strong_implies_stable_across_grid(self):
        for u in (0.5, 1.0, 1.5, 2.5):
            for v in (0.5, 1.0, 1.5, 2.5):
                verdict = analytic_stability(WeightedL1(u, v))
                if verdict.strongly_stable:
                    assert verdict.stable


class TestDominanceSearch:
    def test_pnorm3_witness_near_diagonal(self):
        w = radial_dominance_search(PNorm(3), 1, budget=400, seed=11)
        assert w is not None
        value = evaluate(PNorm(3), w)
        assert value < 1.0 - 1e-9
        # global minimum on the circle sits at the diagonal, value 2**(-1/6)
        assert value <= 2 ** (-1 / 6) + 1e-3

    def test_pnorm1_has_no_witness(self):
        assert radial_dominance_search(PNorm(1), 3, budget=300, seed=3) is None

    def test_boundary_cases_produce_no_witness(self):
        assert radial_dominance_search(PNorm(2), 2, budget=300, seed=5) is None
        r2 = math.sqrt(2)
        assert radial_dominance_search(WeightedSup(r2, r2), 1, budget=300, seed=5) is None
        assert radial_dominance_search(WeightedL1(1.0, 2.0), 1, budget=300, seed=5) is None

    def test_exponential_subnorm_excluded(self):
        with pytest.raises(ValueError, match="angle"):
            radial_dominance_search(CauchyExp(EUCLID, PHI1, 1), 1, 100, 0)

    def test_deterministic_per_seed(self):
        a = radial_dominance_search(PNorm(4), 2, budget=200, seed=42)
        b = radial_dominance_search(PNorm(4), 2, budget=200, seed=42)
        assert a == b


class TestWitnessSearch:
    def test_pnorm4_growth(self):
        spec = PNorm(4)
        gw = stability_witness_search(spec, 1, k_max=32, budget=300, seed=7)
        assert gw is not None and gw.k == 32
        f_a = evaluate(spec, gw.element)
        _, nu = equivalence_constants(spec, 1)
        lower_bound = (1.0 / f_a) ** 32 / nu
        assert gw.ratio >= lower_bound * (1 - 1e-9)
        assert gw.ratio > 1e2
        # geometric growth: doubling k roughly squares the ratio
        gw16 = stability_witness_search(spec, 1, k_max=16, budget=300, seed=7)
        assert gw.ratio > gw16.ratio > 1.0

    def test_euclidean_has_no_witness(self):
        assert stability_witness_search(EUCLID, 2, 32, budget=300, seed=1) is None

    def test_scaled_subspace_over_stable_base_is_bounded(self):
        rng = Random("scaled-bounded")
        a0 = random_float_element(2, rng)
        spec = ScaledSubspace(EUCLID, a0, 2.0)
        assert stability_witness_search(spec, 2, 32, budget=300, seed=9) is None
        # growth stays within kappa * sigma (= 2) for sampled elements
        for _ in range(25):
            a = random_float_element(2, rng)
            logs = dict(log_subnorm_powers(spec, a, [1, 8, 32]))
            for k in (8, 32):
                ratio = math.exp(logs[k] - k * logs[1])
                assert ratio <= 2.0 * (1 + 1e-9)


class TestDominanceTransfer:
    def test_scaled_subspace_over_dominant_base(self):
        rng = Random("transfer")
        for n in range(50):
            level = rng.choice((1, 2))
            a0 = random_float_element(level, rng)
            kappa = 1.0 + 3.0 * rng.random()
            spec = ScaledSubspace(PNorm(1), a0, kappa)
            w = radial_dominance_search(spec, level, budget=120, seed=f"t:{n}")
            assert w is None


class TestStrongStabilitySearch:
    def test_stable_but_not_strong_witness(self):
        # at z = i and k = 2: f(z**2) = u against f(z)**2 = v**2
        gw = strong_stability_search(WeightedL1(2.0, 1.0), 1, k_max=8, budget=150, seed=3)
        assert gw is not None
        assert gw.ratio > 1.0 + 1e-9
        assert gw.ratio == pytest.approx(2.0, rel=1e-2)

    def test_strong_region_yields_nothing(self):
        assert strong_stability_search(WeightedL1(1.5, 2.0), 1, 8, 150, 3) is None
        assert strong_stability_search(EUCLID, 2, 8, 150, 3) is None


class TestPowerEquation:
    @pytest.mark.parametrize("level", range(0, 7))
    def test_euclidean_norm_passes(self, level):
        report = power_equation_check(EUCLID, level, sample_count=60, k_max=32, seed=4)
        assert report.is_submodulus_on_samples
        assert report.worst_relative_residual <= 1e-9
        assert report.witness is None

    def test_one_norm_fails_with_canonical_witness(self):
        report = power_equation_check(PNorm(1), 1, sample_count=40, k_max=8, seed=4)
        assert not report.is_submodulus_on_samples
        element, k = report.witness
        assert element.coords == (1.0, 1.0) and k == 2
        # (1+i)^2 = 2i: values 2 against 4
        assert evaluate(PNorm(1), Element(1, (0.0, 2.0))) == 2.0
        assert evaluate(PNorm(1), element) ** 2 == 4.0

    def test_every_non_euclidean_continuous_member_fails(self):
        rng = Random("non-euclid")
        a0 = random_float_element(1, rng)
        specs = [
            PNorm(0.5),
            PNorm(1),
            PNorm(4),
            PNorm(math.inf),
            WeightedSup(2.0, 2.0),
            WeightedL1(1.5, 1.5),
            ScaledSubspace(EUCLID, a0, 2.0),
        ]
        for spec in specs:
            report = power_equation_check(spec, 1, sample_count=80, k_max=16, seed=8)
            assert not report.is_submodulus_on_samples, spec
            assert report.witness is not None

    def test_exponential_submodulus_on_complex_carrier(self):
        spec = CauchyExp(EUCLID, PHI1, 1)
        report = power_equation_check(spec, 1, sample_count=60, k_max=24, seed=5)
        assert report.is_submodulus_on_samples
        assert report.worst_relative_residual <= 1e-12

    def test_callable_path_matches_spec_path(self):
        fn = lambda e: euclidean_norm(e)
        report = power_equation_check(fn, 2, sample_count=30, k_max=8, seed=6)
        assert report.is_submodulus_on_samples

    def test_rejects_bad_input(self):
        with pytest.raises(TypeError, match="subnorm spec or callable"):
            power_equation_check(42, 1, 10, 4, 0)
        with pytest.raises(ValueError, match="sample_count"):
            power_equation_check(EUCLID, 1, 0, 4, 0)


class TestExponentialDominanceScan:
    def test_both_signs_appear_with_mixed_generators(self):
        phi = PhiSpec((Generator(1.0, 1.0), Generator(math.sqrt(2.0), -1.0)))
        spec = CauchyExp(EUCLID, phi, 1)
        angles = [
            SymbolicAngle.generator(1),
            SymbolicAngle.generator(2),
            SymbolicAngle.of_pi(1),
        ]
        entries = dominance_angle_scan(spec, angles)
        relations = {e.relation for e in entries}
        assert {"above", "below", "equal"} == relations
        by_rel = {e.relation: e for e in entries}
        assert by_rel["above"].ratio == pytest.approx(math.e)
        assert by_rel["below"].ratio == pytest.approx(1 / math.e)


class TestSweepAgreement:
    def test_pnorm_sweep(self):
        for p in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0):
            spec = PNorm(p)
            verdict = analytic_stability(spec)
            w = radial_dominance_search(spec, 1, budget=300, seed=f"sweep:{p}")
            assert (w is not None) == (verdict.stable is False), p

    def test_weighted_spot_checks(self):
        cases = [
            (WeightedSup(3.0, 3.0), True),
            (WeightedSup(1.2, 1.2), False),
            (WeightedL1(1.2, 0.4), False),
            (WeightedL1(1.05, 1.05), True),
        ]
        for spec, stable in cases:
            assert analytic_stability(spec).stable is stable
            w = radial_dominance_search(spec, 1, budget=300, seed="spot")
            assert (w is None) is stable
