"""A closed grammar of vector-valued seminorms with exact evaluation.

Every seminorm here maps an EcRv to a nonnegative EcRv and satisfies
homogeneity ||s*x|| = |s|*||x|| and the triangle inequality by
construction.  The randomized checker exists to validate test fixtures
and any future grammar extension, not to establish the axioms for the
shipped shapes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .l0 import EcRv, ZERO, classify, combine, emax, indicator_mul, leq_everywhere
from .measure import EventSet
from . import sampling


@dataclass(frozen=True)
class Zero:
    """The zero seminorm."""


@dataclass(frozen=True)
class Weighted:
    """||x|| = weight * |x| with a nonnegative weight."""

    weight: EcRv

    def __post_init__(self):
        if not classify(self.weight).in_L0_plus:
            raise ValueError("weight must be nonnegative everywhere")


@dataclass(frozen=True)
class Localized:
    """||x|| = |x| on the event, 0 off it."""

    event: EventSet


@dataclass(frozen=True)
class FiniteSup:
    """Pointwise maximum of finitely many seminorms."""

    members: tuple["Seminorm", ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("FiniteSup needs at least one member")


Seminorm = Union[Zero, Weighted, Localized, FiniteSup]


def evaluate(s: Seminorm, x: EcRv) -> EcRv:
    if isinstance(s, Zero):
        return ZERO
    if isinstance(s, Weighted):
        return combine("mul", s.weight, abs(x))
    if isinstance(s, Localized):
        return indicator_mul(s.event, abs(x))
    if isinstance(s, FiniteSup):
        result = evaluate(s.members[0], x)
        for member in s.members[1:]:
            result = emax(result, evaluate(member, x))
        return result
    raise TypeError(f"not a seminorm descriptor: {s!r}")


def sup_evaluate(family, x: EcRv) -> EcRv:
    """Pointwise maximum of a finite family of seminorms at x."""
    return evaluate(FiniteSup(tuple(family)), x)


@dataclass
class AxiomsReport:
    samples: int
    homogeneity_failures: int = 0
    triangle_failures: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.homogeneity_failures == 0 and self.triangle_failures == 0


def axioms_check(
    s: Seminorm | Callable[[EcRv], EcRv], sample_count: int, seed: int
) -> AxiomsReport:
    """Check homogeneity and the triangle inequality on random samples.

    Accepts either a grammar descriptor or a bare evaluator callable so
    deliberately broken fixtures can be probed.  Failures are collected
    as witness triples, not raised.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    ev = s if callable(s) else (lambda x: evaluate(s, x))
    rng = sampling.make_rng(seed)
    report = AxiomsReport(samples=sample_count)
    for _ in range(sample_count):
        scalar = sampling.random_ecrv(rng)
        x = sampling.random_ecrv(rng)
        y = sampling.random_ecrv(rng)
        if ev(combine("mul", scalar, x)) != combine("mul", abs(scalar), ev(x)):
            report.homogeneity_failures += 1
            report.witnesses.append(("homogeneity", scalar, x))
        if not leq_everywhere(ev(x + y), ev(x) + ev(y)):
            report.triangle_failures += 1
            report.witnesses.append(("triangle", x, y))
    # a nonzero offset at the origin is the cheapest homogeneity breaker
    if ev(ZERO) != ZERO:
        report.homogeneity_failures += 1
        report.witnesses.append(("homogeneity", ZERO, ZERO))
    return report
