"""Neighborhood-base machinery and the seminorm-induction verdict.

Two base families are supported: balls generated by a finite family of
seminorms, and the degenerate family M + B_eps whose gauges vanish
identically.  The verdict operation packages the full evidence chain:
gauge degeneracy certificates, gauge monotonicity under inclusion, and
the properness/closedness of the finitely-supported submodule M, which
together rule out any inducing family of seminorms for the degenerate
base.  Every evidence step is re-checkable from membership tests and
order comparisons alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .l0 import (
    EcRv,
    ZERO,
    ONE,
    classify,
    divide,
    emin,
    leq_everywhere,
    order_compare,
)
from .measure import CANONICAL, DiscreteSpace
from .seminorms import Seminorm, Zero, Weighted, evaluate, sup_evaluate
from .sets import (
    Ball,
    MPlusBall,
    contains,
    gauge_closed_form,
    gauge_upper_certificate,
    sample_member,
    structural_flags,
    verify_certificate,
    roundtrip_check,
    DEFAULT_TOLERANCE,
)
from . import sampling


class PointInM(ValueError):
    """Separation witnesses only exist for points outside M."""


@dataclass(frozen=True)
class FromSeminorms:
    """Base sets are the balls of a finite seminorm family."""

    family: tuple[Seminorm, ...]

    def base_set(self, radius: EcRv) -> Ball:
        return Ball(self.family, radius)


@dataclass(frozen=True)
class CounterexampleFamily:
    """Base sets are M + B_eps; all their gauges are identically zero."""

    def base_set(self, radius: EcRv) -> MPlusBall:
        return MPlusBall(radius)


NeighborhoodBase = Union[FromSeminorms, CounterexampleFamily]


# -- base axioms -----------------------------------------------------------


@dataclass
class BaseAxiomReport:
    meet_witness: EcRv
    sum_witness: EcRv
    scaling_witness: EcRv
    samples: int
    meet_failures: int = 0
    sum_failures: int = 0
    scaling_failures: int = 0

    @property
    def passed(self) -> bool:
        return not (self.meet_failures or self.sum_failures or self.scaling_failures)


def base_axiom_witnesses(
    base: NeighborhoodBase, eps: EcRv, delta: EcRv, samples: int, seed: int
) -> BaseAxiomReport:
    """Witness sets for the three neighborhood-base inclusions.

    U(eps ^ delta) lies in U(eps) and U(delta); U(eps/2) + U(eps/2) lies
    in U(eps); eps * U(delta/eps) lies in U(delta).  Each inclusion is
    sample-verified through the membership test.
    """
    for r in (eps, delta):
        if not classify(r).in_L0_plusplus:
            raise ValueError("radii must be strictly positive everywhere")
    meet = emin(eps, delta)
    half = eps * Fraction(1, 2)
    ratio = divide(delta, eps)
    report = BaseAxiomReport(meet, half, ratio, samples)
    rng = sampling.make_rng(seed)
    u_eps, u_delta = base.base_set(eps), base.base_set(delta)
    u_meet, u_half, u_ratio = (
        base.base_set(meet),
        base.base_set(half),
        base.base_set(ratio),
    )
    for _ in range(samples):
        x = sample_member(u_meet, rng)
        if not (contains(u_eps, x) and contains(u_delta, x)):
            report.meet_failures += 1
        a, b = sample_member(u_half, rng), sample_member(u_half, rng)
        if not contains(u_eps, a + b):
            report.sum_failures += 1
        y = sample_member(u_ratio, rng)
        if not contains(u_delta, eps * y):
            report.scaling_failures += 1
    return report


# -- separation and closure ------------------------------------------------


@dataclass(frozen=True)
class SeparationWitness:
    """A radius eps with point not in M + B_eps, built by halving |x|
    where x is nonzero and defaulting to 1 where it vanishes."""

    point: EcRv
    epsilon: EcRv
    excluded: bool  # re-checked: contains(MPlusBall(epsilon), point) is False


def separation_witness(x: EcRv) -> SeparationWitness:
    if classify(x).in_M:
        raise PointInM(f"{x!r} has finite support")
    overrides = {
        j: abs(v) / 2 if v != 0 else Fraction(1) for j, v in x.overrides.items()
    }
    eps = EcRv(overrides, abs(x.tail) / 2)
    return SeparationWitness(x, eps, not contains(MPlusBall(eps), x))


class SeedSet(Enum):
    ZERO_SINGLETON = "zero_singleton"
    SUBMODULE_M = "submodule_m"


@dataclass(frozen=True)
class ClosureResult:
    member: bool
    separation: Optional[SeparationWitness] = None

    def __bool__(self) -> bool:
        return self.member


def closure_membership(
    base: NeighborhoodBase, seed_set: SeedSet, x: EcRv
) -> ClosureResult:
    """Membership of x in the closure of {0} or of M under the base.

    For the degenerate base both closures equal M, since every base set
    contains M and the separation witness excludes anything else.  For a
    seminorm base the closure of {0} is the common kernel of the family.
    """
    if isinstance(base, CounterexampleFamily):
        if classify(x).in_M:
            return ClosureResult(True)
        return ClosureResult(False, separation_witness(x))
    if seed_set is not SeedSet.ZERO_SINGLETON:
        raise ValueError("only the closure of {0} is computed for seminorm bases")
    vanishes = all(evaluate(s, x) == ZERO for s in base.family)
    return ClosureResult(vanishes)


# -- Hausdorff diagnosis ----------------------------------------------------


@dataclass
class HausdorffReport:
    hausdorff: bool
    witness: object  # a never-separated point, or a non-separated pair
    samples: int
    checks_passed: int

    @property
    def passed(self) -> bool:
        return self.checks_passed == self.samples


def hausdorff_report(
    base: NeighborhoodBase, samples: int = 100, seed: int = 0
) -> HausdorffReport:
    rng = sampling.make_rng(seed)
    if isinstance(base, CounterexampleFamily):
        # a nonzero point of M lies in every base set
        witness = EcRv({1: 1}, 0)
        hits = sum(
            contains(base.base_set(sampling.random_positive_ecrv(rng)), witness)
            for _ in range(samples)
        )
        return HausdorffReport(False, witness, samples, hits)
    separated = 0
    for _ in range(samples):
        x = sampling.random_ecrv(rng)
        y = sampling.random_ecrv(rng)
        while y == x:
            y = sampling.random_ecrv(rng)
        d = x - y
        norm = sup_evaluate(base.family, d)
        if norm == ZERO:
            return HausdorffReport(False, (x, y), samples, separated)
        eps = EcRv(
            {j: v / 2 if v > 0 else Fraction(1) for j, v in norm.overrides.items()},
            norm.tail / 2 if norm.tail > 0 else Fraction(1),
        )
        if not contains(base.base_set(eps), d):
            separated += 1
    return HausdorffReport(True, None, samples, separated)


# -- (eps, lambda) neighborhoods --------------------------------------------


def epslambda_membership(
    family,
    eps: Fraction,
    lam: Fraction,
    x: EcRv,
    space: DiscreteSpace = CANONICAL,
) -> bool:
    """Is P(sup-seminorm of x < eps) > 1 - lambda, computed exactly?"""
    eps, lam = Fraction(eps), Fraction(lam)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not 0 < lam < 1:
        raise ValueError("lambda must lie strictly between 0 and 1")
    norm = sup_evaluate(family, x)
    below = order_compare(norm, EcRv.constant(eps)).strict_set
    return space.probability(below) > 1 - lam


# -- the induction verdict ---------------------------------------------------


@dataclass
class EvidenceStep:
    name: str
    inputs: dict
    expected: str
    observed: str
    passed: bool


@dataclass
class EvidenceReport:
    verdict: str  # "induced" | "not_induced"
    family: Optional[tuple[Seminorm, ...]]
    steps: list[EvidenceStep]
    seed: int
    horizon: int

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)


def seminorm_induction_verdict(
    base: NeighborhoodBase, horizon: int = 32, seed: int = 0, samples: int = 20
) -> EvidenceReport:
    if isinstance(base, FromSeminorms):
        return _induced_report(base, horizon, seed, samples)
    return _not_induced_report(base, horizon, seed, samples)


def _induced_report(
    base: FromSeminorms, horizon: int, seed: int, samples: int
) -> EvidenceReport:
    rng = sampling.make_rng(seed)
    steps = []

    flag_fails = 0
    for _ in range(samples):
        ball = base.base_set(sampling.random_positive_ecrv(rng))
        if not structural_flags(ball).all_true():
            flag_fails += 1
    steps.append(
        EvidenceStep(
            name="base_sets_structural",
            inputs={"samples": samples},
            expected="every base ball is convex, absorbent and balanced",
            observed=f"{samples - flag_fails}/{samples} balls pass",
            passed=flag_fails == 0,
        )
    )

    ball = base.base_set(ONE)
    rt = roundtrip_check(ball, samples, seed)
    steps.append(
        EvidenceStep(
            name="gauge_membership_roundtrip",
            inputs={"ball_radius": repr(ONE), "samples": samples},
            expected="membership in a base ball agrees with gauge <= 1",
            observed=f"{rt.membership_mismatches} mismatches",
            passed=rt.passed,
        )
    )

    axioms = base_axiom_witnesses(base, ONE, EcRv.constant(Fraction(1, 2)), samples, seed)
    steps.append(
        EvidenceStep(
            name="base_axioms",
            inputs={"eps": repr(ONE), "delta": "{|1/2}", "samples": samples},
            expected="meet, sum and scaling inclusions hold on samples",
            observed=(
                f"failures: meet={axioms.meet_failures}, "
                f"sum={axioms.sum_failures}, scaling={axioms.scaling_failures}"
            ),
            passed=axioms.passed,
        )
    )

    return EvidenceReport("induced", base.family, steps, seed, horizon)


def _not_induced_report(
    base: CounterexampleFamily, horizon: int, seed: int, samples: int
) -> EvidenceReport:
    rng = sampling.make_rng(seed)
    probes = tuple(range(1, horizon + 1))
    steps = []

    # 1. every base-set gauge collapses to zero, certified at tolerance
    degenerate = 0
    certified = 0
    example_cert = None
    for _ in range(samples):
        radius = sampling.random_positive_ecrv(rng)
        x = sampling.random_ecrv(rng)
        u = base.base_set(radius)
        if gauge_closed_form(u, x) == ZERO:
            degenerate += 1
        cert = gauge_upper_certificate(u, x, probes, DEFAULT_TOLERANCE)
        if verify_certificate(cert):
            certified += 1
            example_cert = cert
    steps.append(
        EvidenceStep(
            name="gauge_degeneracy",
            inputs={
                "samples": samples,
                "tolerance": str(DEFAULT_TOLERANCE),
                "probe_atoms": f"1..{horizon}",
                "example_witness": repr(example_cert.witness) if example_cert else "",
            },
            expected="gauge is exactly zero and certificates verify",
            observed=f"{degenerate}/{samples} zero gauges, {certified}/{samples} certificates",
            passed=degenerate == samples and certified == samples,
        )
    )

    # 2. gauges shrink under inclusion, so any ball containing a base set
    #    inherits the zero gauge
    mono_ok = 0
    for _ in range(samples):
        radius = sampling.random_positive_ecrv(rng)
        x = sampling.random_ecrv(rng)
        u = base.base_set(radius)
        inner = Ball((Weighted(ONE),), radius)  # order ball inside M + B
        inner_member = sample_member(inner, rng)
        wider = Ball((Zero(),), sampling.random_positive_ecrv(rng))  # contains U
        u_member = sample_member(u, rng)
        ok = (
            contains(u, inner_member)
            and leq_everywhere(gauge_closed_form(u, x), gauge_closed_form(inner, x))
            and contains(wider, u_member)
            and gauge_closed_form(wider, x) == ZERO
        )
        mono_ok += ok
    steps.append(
        EvidenceStep(
            name="gauge_monotonicity",
            inputs={"samples": samples},
            expected="larger sets have smaller gauges; balls containing a base set have zero gauge",
            observed=f"{mono_ok}/{samples} sample checks pass",
            passed=mono_ok == samples,
        )
    )

    # 3. M is a proper closed submodule, so the topology is not trivial
    sep_ok = 0
    closure_ok = 0
    for _ in range(samples):
        outside = sampling.random_nonzero_tail_ecrv(rng)
        witness = separation_witness(outside)
        sep_ok += witness.excluded
        inside = sampling.random_finite_support_ecrv(rng)
        closure_ok += closure_membership(base, SeedSet.ZERO_SINGLETON, inside).member
    nonzero_member = EcRv({1: 1}, 0)
    member_everywhere = all(
        contains(base.base_set(sampling.random_positive_ecrv(rng)), nonzero_member)
        for _ in range(samples)
    )
    steps.append(
        EvidenceStep(
            name="proper_closed_submodule",
            inputs={"samples": samples, "nonzero_member": repr(nonzero_member)},
            expected="points outside M are separated; M lies in the closure of {0}",
            observed=(
                f"{sep_ok}/{samples} separations, {closure_ok}/{samples} closure hits, "
                f"nonzero member in all sampled base sets: {member_everywhere}"
            ),
            passed=sep_ok == samples and closure_ok == samples and member_everywhere,
        )
    )

    all_prior = all(step.passed for step in steps)
    steps.append(
        EvidenceStep(
            name="zero_family_contradiction",
            inputs={},
            expected=(
                "any inducing family is dominated by the zero gauge, hence induces "
                "the trivial topology, contradicting the proper closed submodule"
            ),
            observed="all supporting steps verified" if all_prior else "a supporting step failed",
            passed=all_prior,
        )
    )

    return EvidenceReport("not_induced", None, steps, seed, horizon)
