from fractions import Fraction

import pytest
from hypothesis import given

from l0convex import (
    CANONICAL,
    Ball,
    CounterexampleFamily,
    EcRv,
    EventSet,
    FromSeminorms,
    Localized,
    MPlusBall,
    PointInM,
    SeedSet,
    Weighted,
    Zero,
    ZERO,
    ONE,
    base_axiom_witnesses,
    classify,
    closure_membership,
    contains,
    epslambda_membership,
    hausdorff_report,
    seminorm_induction_verdict,
    separation_witness,
    sup_evaluate,
    order_compare,
)
from l0convex import sampling

from conftest import ecrvs

COUNTEREXAMPLE = CounterexampleFamily()
UNIT_FAMILY = FromSeminorms((Weighted(ONE),))


class TestBaseAxioms:
    def test_counterexample_witnesses(self):
        report = base_axiom_witnesses(
            COUNTEREXAMPLE, ONE, EcRv.constant(Fraction(1, 2)), 200, seed=3
        )
        half = EcRv.constant(Fraction(1, 2))
        assert report.meet_witness == half
        assert report.sum_witness == half
        assert report.scaling_witness == half
        assert report.passed

    def test_seminorm_base_equal_radii(self):
        report = base_axiom_witnesses(UNIT_FAMILY, ONE, ONE, 100, seed=5)
        assert report.meet_witness == ONE
        assert report.passed

    def test_pointwise_radii(self):
        eps = EcRv({1: 4}, 1)
        delta = EcRv.constant(2)
        report = base_axiom_witnesses(COUNTEREXAMPLE, eps, delta, 200, seed=7)
        assert report.passed
        assert report.meet_witness == EcRv({1: 2}, 1)
        assert report.scaling_witness == EcRv({1: Fraction(1, 2)}, 2)

    def test_radii_must_be_strictly_positive(self):
        with pytest.raises(ValueError):
            base_axiom_witnesses(COUNTEREXAMPLE, ZERO, ONE, 10, seed=1)


class TestSeparation:
    def test_constant_example(self):
        witness = separation_witness(EcRv.constant(4))
        assert witness.epsilon == EcRv.constant(2)
        assert witness.excluded
        assert not contains(MPlusBall(witness.epsilon), EcRv.constant(4))

    def test_zero_override_example(self):
        witness = separation_witness(EcRv({1: 0}, 1))
        assert witness.epsilon == EcRv({1: 1}, Fraction(1, 2))
        assert witness.excluded

    def test_finite_support_rejected(self):
        with pytest.raises(PointInM):
            separation_witness(EcRv({5: 9}, 0))

    @given(ecrvs)
    def test_every_outsider_separated(self, x):
        if classify(x).in_M:
            return
        witness = separation_witness(x)
        assert classify(witness.epsilon).in_L0_plusplus
        assert witness.excluded


class TestClosure:
    def test_nonzero_point_in_closure_of_zero(self):
        result = closure_membership(COUNTEREXAMPLE, SeedSet.ZERO_SINGLETON, EcRv({1: 1}, 0))
        assert result.member

    def test_outsider_excluded_with_evidence(self):
        result = closure_membership(COUNTEREXAMPLE, SeedSet.SUBMODULE_M, ONE)
        assert not result.member
        assert result.separation.epsilon == EcRv.constant(Fraction(1, 2))
        assert result.separation.excluded

    def test_seminorm_base_closure_of_zero(self):
        assert closure_membership(UNIT_FAMILY, SeedSet.ZERO_SINGLETON, ZERO).member
        assert not closure_membership(UNIT_FAMILY, SeedSet.ZERO_SINGLETON, ONE).member
        degenerate = FromSeminorms((Localized(EventSet.finite({1})),))
        assert closure_membership(degenerate, SeedSet.ZERO_SINGLETON, EcRv({2: 5}, 0)).member

    def test_closure_of_m_needs_counterexample_base(self):
        with pytest.raises(ValueError):
            closure_membership(UNIT_FAMILY, SeedSet.SUBMODULE_M, ONE)


class TestHausdorff:
    def test_counterexample_not_hausdorff(self):
        report = hausdorff_report(COUNTEREXAMPLE, samples=100, seed=11)
        assert not report.hausdorff
        assert report.witness == EcRv({1: 1}, 0)
        assert report.checks_passed == 100

    def test_unit_family_separates(self):
        report = hausdorff_report(UNIT_FAMILY, samples=200, seed=13)
        assert report.hausdorff
        assert report.checks_passed == 200

    def test_zero_family_separates_nothing(self):
        report = hausdorff_report(FromSeminorms((Zero(),)), samples=10, seed=17)
        assert not report.hausdorff
        x, y = report.witness
        assert x != y
        assert sup_evaluate((Zero(),), x - y) == ZERO

    def test_non_separating_family_has_concrete_non_separated_pair(self):
        # a family blind beyond atom 1 cannot separate points that agree there
        family = FromSeminorms((Localized(EventSet.finite({1})),))
        d = EcRv({2: 1}, 0)
        assert sup_evaluate(family.family, d) == ZERO
        rng = sampling.make_rng(19)
        for _ in range(100):
            radius = sampling.random_positive_ecrv(rng)
            assert contains(family.base_set(radius), d)


class TestEpsLambda:
    def test_example_true(self):
        assert epslambda_membership(
            (Weighted(ONE),), 1, Fraction(3, 5), EcRv({1: 5}, 0)
        )

    def test_example_false(self):
        assert not epslambda_membership(
            (Weighted(ONE),), 1, Fraction(2, 5), EcRv({1: 5}, 0)
        )

    def test_zero_always_member(self):
        assert epslambda_membership((Weighted(ONE),), Fraction(1, 100), Fraction(1, 100), ZERO)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            epslambda_membership((Weighted(ONE),), 0, Fraction(1, 2), ZERO)
        with pytest.raises(ValueError):
            epslambda_membership((Weighted(ONE),), 1, 1, ZERO)

    @given(ecrvs)
    def test_matches_direct_probability(self, x):
        family = (Weighted(ONE), Localized(EventSet.finite({2, 3})))
        eps, lam = Fraction(7, 8), Fraction(1, 3)
        norm = sup_evaluate(family, x)
        event = order_compare(norm, EcRv.constant(eps)).strict_set
        expected = CANONICAL.probability(event) > 1 - lam
        assert epslambda_membership(family, eps, lam, x) == expected


class TestInductionVerdict:
    def test_counterexample_not_induced(self):
        report = seminorm_induction_verdict(COUNTEREXAMPLE, horizon=32, seed=19, samples=100)
        assert report.verdict == "not_induced"
        assert report.passed
        names = [step.name for step in report.steps]
        assert "gauge_degeneracy" in names
        assert "gauge_monotonicity" in names
        assert "proper_closed_submodule" in names

    def test_seminorm_family_induced(self):
        base = FromSeminorms((Localized(EventSet.finite({1})), Weighted(ONE)))
        report = seminorm_induction_verdict(base, horizon=16, seed=23, samples=50)
        assert report.verdict == "induced"
        assert report.passed
        assert report.family == base.family

    def test_zero_family_induced(self):
        report = seminorm_induction_verdict(
            FromSeminorms((Zero(),)), horizon=8, seed=29, samples=30
        )
        assert report.verdict == "induced"
        assert report.passed
