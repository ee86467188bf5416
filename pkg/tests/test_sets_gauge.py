import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from l0convex import (
    Ball,
    EcRv,
    EventSet,
    Intersect,
    Localized,
    MPlusBall,
    Scale,
    Translate,
    UnsupportedShape,
    Weighted,
    ZERO,
    ONE,
    classify,
    confirm_structural_flags,
    contains,
    emin,
    evaluate,
    gauge_closed_form,
    gauge_upper_certificate,
    leq_everywhere,
    order_compare,
    reciprocal,
    roundtrip_check,
    sample_member,
    structural_flags,
    verify_certificate,
)
from l0convex import sampling

from conftest import ecrvs, positive_ecrvs

UNIT_BALL = Ball((Weighted(ONE),), ONE)
TOL = Fraction(1, 2**20)


def decompose_into_m_plus_ball(x, radius):
    """Constructive membership oracle: clamp into the ball, absorb the
    rest into a finite-support part.  Returns (m, y) or None."""
    y = EcRv(
        {j: max(-radius.value_at(j), min(x.value_at(j), radius.value_at(j)))
         for j in set(x.overrides) | set(radius.overrides)},
        max(-radius.tail, min(x.tail, radius.tail)),
    )
    m = x - y
    if m.tail != 0:
        return None
    assert m + y == x
    assert leq_everywhere(abs(y), radius)
    return m, y


class TestContains:
    def test_m_plus_ball_absorbs_finite_violation(self):
        target = MPlusBall(ONE)
        x = EcRv({1: 2}, 0)
        assert contains(target, x)
        m, y = decompose_into_m_plus_ball(x, ONE)
        assert classify(m).in_M

    def test_ball_rejects_pointwise_violation(self):
        assert not contains(UNIT_BALL, EcRv({1: 2}, 0))

    def test_zero_in_origin_shapes(self):
        for target in (
            UNIT_BALL,
            MPlusBall(ONE),
            Scale(EcRv.constant(2), UNIT_BALL),
            Intersect((UNIT_BALL, MPlusBall(ONE))),
        ):
            assert contains(target, ZERO)

    @given(ecrvs, positive_ecrvs)
    def test_m_plus_ball_matches_decomposition_oracle(self, x, radius):
        assert contains(MPlusBall(radius), x) == (
            decompose_into_m_plus_ball(x, radius) is not None
        )

    @given(ecrvs)
    def test_translate_shifts_membership(self, x):
        y = EcRv({2: 3}, Fraction(1, 2))
        assert contains(Translate(y, UNIT_BALL), x + y) == contains(UNIT_BALL, x)

    def test_scale_coherence_on_random_factors(self):
        rng = sampling.make_rng(31)
        for _ in range(200):
            factor = sampling.random_positive_ecrv(rng)
            x = sampling.random_ecrv(rng)
            assert contains(Scale(factor, UNIT_BALL), x) == contains(
                UNIT_BALL, reciprocal(factor) * x
            )

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            MPlusBall(ZERO)
        with pytest.raises(ValueError):
            Ball((Weighted(ONE),), EcRv({1: 0}, 1))
        with pytest.raises(ValueError):
            Scale(EcRv({1: 0}, 1), UNIT_BALL)


class TestStructuralFlags:
    def test_m_plus_ball_all_three(self):
        flags = structural_flags(MPlusBall(ONE))
        assert flags.all_true()
        confirmation = confirm_structural_flags(MPlusBall(ONE), 1000, seed=11)
        assert confirmation.passed

    def test_ball_all_three(self):
        flags = structural_flags(UNIT_BALL)
        assert flags.all_true()
        assert confirm_structural_flags(UNIT_BALL, 300, seed=13).passed

    def test_translate_breaks_balance(self):
        shifted = Translate(ONE, UNIT_BALL)
        flags = structural_flags(shifted)
        assert flags.l0_convex and not flags.l0_balanced
        # witness: negating a member leaves the translate
        member = ONE  # the center itself
        assert contains(shifted, member)
        assert not contains(shifted, -1 * member)

    def test_intersect_preserves(self):
        both = Intersect((UNIT_BALL, MPlusBall(ONE)))
        assert structural_flags(both).all_true()

    def test_scale_preserves(self):
        assert structural_flags(Scale(EcRv.constant(-3), MPlusBall(ONE))).all_true()


class TestGaugeClosedForm:
    def test_ball_example_with_bracket(self):
        target = Ball((Weighted(ONE),), EcRv.constant(2))
        x = EcRv.constant(3)
        g = gauge_closed_form(target, x)
        assert g == EcRv.constant(Fraction(3, 2))
        # bracket: the bound plus a sliver admits x, a dent below does not
        assert contains(Scale(g + TOL, target), x)
        dented = EcRv({1: g.value_at(1) * (1 - TOL)}, g.tail)
        assert not contains(Scale(dented, target), x)

    def test_m_plus_ball_gauge_is_zero(self):
        rng = sampling.make_rng(17)
        for _ in range(100):
            radius = sampling.random_positive_ecrv(rng)
            x = sampling.random_ecrv(rng)
            assert gauge_closed_form(MPlusBall(radius), x) == ZERO

    def test_zero_point(self):
        for target in (UNIT_BALL, MPlusBall(ONE)):
            assert gauge_closed_form(target, ZERO) == ZERO

    @given(positive_ecrvs, ecrvs)
    def test_ball_bracket_oracle(self, radius, x):
        target = Ball((Weighted(ONE), Localized(EventSet.finite({2}))), radius)
        g = gauge_closed_form(target, x)
        assert contains(Scale(g + TOL, target), x)
        # lowering the bound at any atom where it is positive breaks membership
        lifted = g + TOL
        for j in list(g.overrides) + [17]:
            if g.value_at(j) > 0:
                dent = EcRv({**lifted.overrides, j: g.value_at(j) / 2}, lifted.tail)
                assert not contains(Scale(dent, target), x)
                break

    def test_scale_recursion(self):
        target = Scale(EcRv.constant(2), Ball((Weighted(ONE),), ONE))
        assert gauge_closed_form(target, EcRv.constant(3)) == EcRv.constant(
            Fraction(3, 2)
        )

    def test_intersect_of_balls(self):
        target = Intersect(
            (
                Ball((Weighted(ONE),), EcRv.constant(2)),
                Ball((Localized(EventSet.finite({1})),), ONE),
            )
        )
        g = gauge_closed_form(target, EcRv.constant(3))
        assert g == EcRv({1: 3}, Fraction(3, 2))

    def test_unsupported_shapes(self):
        with pytest.raises(UnsupportedShape):
            gauge_closed_form(Translate(ONE, UNIT_BALL), ZERO)
        with pytest.raises(UnsupportedShape):
            gauge_closed_form(Intersect((UNIT_BALL, MPlusBall(ONE))), ONE)

    @given(positive_ecrvs, ecrvs, ecrvs)
    def test_gauge_is_homogeneous_and_subadditive(self, radius, x, y):
        target = Ball((Weighted(ONE),), radius)
        gx, gy = gauge_closed_form(target, x), gauge_closed_form(target, y)
        assert gauge_closed_form(target, x + y) is not None
        assert leq_everywhere(gauge_closed_form(target, x + y), gx + gy)
        scalar = EcRv({3: -2}, Fraction(1, 2))
        assert gauge_closed_form(target, scalar * x) == abs(scalar) * gx

    def test_gauge_monotone_under_inclusion(self):
        rng = sampling.make_rng(23)
        for _ in range(200):
            radius = sampling.random_positive_ecrv(rng)
            smaller = Ball((Weighted(ONE),), radius)  # the order ball
            larger = MPlusBall(radius)  # contains it
            probe = sample_member(smaller, rng)
            assert contains(larger, probe)
            x = sampling.random_ecrv(rng)
            assert leq_everywhere(
                gauge_closed_form(larger, x), gauge_closed_form(smaller, x)
            )


class TestAtomicInfimum:
    def test_pointwise_min_is_the_lattice_infimum_of_finite_families(self):
        # brute force: the pointwise min is a lower bound, and no lower
        # bound beats it at any probed atom
        rng = sampling.make_rng(41)
        for _ in range(200):
            family = [sampling.random_ecrv(rng) for _ in range(rng.randint(1, 6))]
            low = family[0]
            for member in family[1:]:
                low = emin(low, member)
            for member in family:
                assert leq_everywhere(low, member)
            bound = emin(low, sampling.random_ecrv(rng))  # an arbitrary lower bound
            assert leq_everywhere(bound, low)
            for j in range(1, 65):
                assert low.value_at(j) == min(m.value_at(j) for m in family)


class TestCertificates:
    def test_m_plus_ball_example(self):
        cert = gauge_upper_certificate(
            MPlusBall(ONE), EcRv.constant(5), probe_atoms=(1,), tol=Fraction(1, 2**10)
        )
        assert cert.witness == EcRv({1: Fraction(1, 2**10)}, 5)
        assert verify_certificate(cert)

    def test_ball_example(self):
        cert = gauge_upper_certificate(
            Ball((Weighted(ONE),), EcRv.constant(2)),
            EcRv.constant(3),
            probe_atoms=range(1, 9),
            tol=TOL,
        )
        assert cert.witness == EcRv.constant(Fraction(3, 2) + Fraction(1, 2**21))
        assert verify_certificate(cert)

    def test_zero_point_certificate(self):
        for target in (UNIT_BALL, MPlusBall(ONE)):
            cert = gauge_upper_certificate(target, ZERO, probe_atoms=(1, 2), tol=TOL)
            assert cert.witness == EcRv.constant(TOL / 2)
            assert verify_certificate(cert)

    @settings(max_examples=50)
    @given(positive_ecrvs, ecrvs)
    def test_certificates_reverify_without_closed_form(self, radius, x):
        for target in (MPlusBall(radius), Ball((Weighted(ONE),), radius)):
            cert = gauge_upper_certificate(target, x)
            assert classify(cert.witness).in_L0_plusplus
            assert contains(Scale(cert.witness, target), x)
            for j in cert.probe_atoms:
                assert cert.witness.value_at(j) <= cert.claimed_bound.value_at(j) + cert.tolerance

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            gauge_upper_certificate(UNIT_BALL, ONE, tol=Fraction(0))


class TestRoundtrip:
    def test_seminorm_reproduced_exactly(self):
        report = roundtrip_check(Localized(EventSet.finite({1})), 500, seed=29)
        assert report.passed
        assert report.gauge_mismatches == 0

    def test_boundary_point_is_member(self):
        assert gauge_closed_form(UNIT_BALL, ONE) == ONE
        assert contains(UNIT_BALL, ONE)

    def test_interior_point(self):
        x = EcRv.constant(Fraction(1, 2))
        g = gauge_closed_form(UNIT_BALL, x)
        assert g == x
        assert order_compare(g, ONE).strict_set == EventSet.full()
        assert contains(UNIT_BALL, x)

    def test_ball_membership_agreement(self):
        report = roundtrip_check(UNIT_BALL, 500, seed=37)
        assert report.passed
        assert report.membership_mismatches == 0
        assert report.strict_inclusion_failures == 0

    @given(ecrvs)
    def test_weighted_family_roundtrip(self, x):
        s = Weighted(EcRv({2: 3}, Fraction(1, 4)))
        ball = Ball((s,), ONE)
        assert gauge_closed_form(ball, x) == evaluate(s, x)
