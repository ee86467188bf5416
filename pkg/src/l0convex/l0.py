"""Exact algebra and lattice structure of eventually constant random variables.

An EcRv assigns a rational value to every atom: finitely many explicit
overrides plus a constant tail.  The fragment is closed under the ring
operations, the lattice operations, absolute value, multiplication by
indicators of finite/cofinite events, and reciprocals of never-zero
elements, which is everything the verification pipeline needs.

Because every atom carries positive mass, "almost everywhere" relations
collapse to "at every atom", so equality and order are decidable by
inspecting the overrides and the tails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .measure import EventSet, _check_atom

Rational = Union[Fraction, int]


class NotInvertible(ZeroDivisionError):
    """Reciprocal of an element with a zero value somewhere."""


class EcRv:
    """Eventually constant random variable over the positive integers.

    Canonical form: no override equals the tail, so structural equality
    coincides with pointwise equality.
    """

    __slots__ = ("overrides", "tail")

    def __init__(self, overrides: Mapping[int, Rational] | None = None, tail: Rational = 0):
        t = Fraction(tail)
        kept: dict[int, Fraction] = {}
        for j, v in (overrides or {}).items():
            _check_atom(j)
            v = Fraction(v)
            if v != t:
                kept[j] = v
        self.overrides = kept
        self.tail = t

    @classmethod
    def constant(cls, value: Rational) -> "EcRv":
        return cls({}, value)

    def value_at(self, j: int) -> Fraction:
        return self.overrides.get(j, self.tail)

    def values(self):
        """Every value taken somewhere: the tail plus the overrides."""
        yield self.tail
        yield from self.overrides.values()

    @property
    def override_atoms(self) -> frozenset[int]:
        return frozenset(self.overrides)

    def is_zero(self) -> bool:
        return self.tail == 0 and not self.overrides

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EcRv)
            and self.tail == other.tail
            and self.overrides == other.overrides
        )

    def __hash__(self) -> int:
        return hash((self.tail, frozenset(self.overrides.items())))

    def __repr__(self) -> str:
        inner = ", ".join(f"{j}:{v}" for j, v in sorted(self.overrides.items()))
        return "{" + inner + (" | " if inner else "|") + f"{self.tail}" + "}"

    # -- ring and lattice operations (pointwise, re-canonicalized) --

    def __add__(self, other: "EcRv | Rational") -> "EcRv":
        return combine("add", self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: "EcRv | Rational") -> "EcRv":
        return combine("sub", self, _coerce(other))

    def __rsub__(self, other: "EcRv | Rational") -> "EcRv":
        return combine("sub", _coerce(other), self)

    def __mul__(self, other: "EcRv | Rational") -> "EcRv":
        return combine("mul", self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "EcRv":
        return EcRv({j: -v for j, v in self.overrides.items()}, -self.tail)

    def __abs__(self) -> "EcRv":
        return EcRv({j: abs(v) for j, v in self.overrides.items()}, abs(self.tail))


ZERO = EcRv.constant(0)
ONE = EcRv.constant(1)


def _coerce(value: "EcRv | Rational") -> EcRv:
    if isinstance(value, EcRv):
        return value
    return EcRv.constant(value)


_OPS: dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "min": min,
    "max": max,
}


def combine(op: str, x: EcRv, y: EcRv) -> EcRv:
    """Pointwise op(x, y); the result tail is op of the tails."""
    f = _OPS[op]
    atoms = set(x.overrides) | set(y.overrides)
    return EcRv({j: f(x.value_at(j), y.value_at(j)) for j in atoms}, f(x.tail, y.tail))


def emin(x: EcRv, y: EcRv) -> EcRv:
    return combine("min", x, y)


def emax(x: EcRv, y: EcRv) -> EcRv:
    return combine("max", x, y)


def indicator_mul(event: EventSet, x: EcRv) -> EcRv:
    """Multiply by the indicator of an event: keep x on the event, zero off it."""
    if event.cofinite:
        over = {j: v for j, v in x.overrides.items() if j not in event.atoms}
        over.update({j: Fraction(0) for j in event.atoms})
        return EcRv(over, x.tail)
    return EcRv({j: x.value_at(j) for j in event.atoms}, 0)


def indicator(event: EventSet) -> EcRv:
    return indicator_mul(event, ONE)


def reciprocal(x: EcRv) -> EcRv:
    if any(v == 0 for v in x.values()):
        raise NotInvertible(f"{x!r} takes the value 0")
    return EcRv({j: 1 / v for j, v in x.overrides.items()}, 1 / x.tail)


def divide(x: EcRv, y: EcRv) -> EcRv:
    return x * reciprocal(y)


@dataclass(frozen=True)
class OrderReport:
    """Pointwise comparison of two elements, with the exact witness events."""

    leq_everywhere: bool
    strict_set: EventSet
    equal_set: EventSet


def order_compare(x: EcRv, y: EcRv) -> OrderReport:
    """Exact pointwise comparison; the strict/equal sets cover all atoms
    where the relation holds (finite or cofinite by eventual constancy)."""
    probed = set(x.overrides) | set(y.overrides)
    strict_atoms = {j for j in probed if x.value_at(j) < y.value_at(j)}
    equal_atoms = {j for j in probed if x.value_at(j) == y.value_at(j)}
    if x.tail < y.tail:
        strict = EventSet.cofinite_excluding(probed - strict_atoms)
    else:
        strict = EventSet.finite(strict_atoms)
    if x.tail == y.tail:
        equal = EventSet.cofinite_excluding(probed - equal_atoms)
    else:
        equal = EventSet.finite(equal_atoms)
    leq = x.tail <= y.tail and all(
        x.value_at(j) <= y.value_at(j) for j in probed
    )
    return OrderReport(leq, strict, equal)


def leq_everywhere(x: EcRv, y: EcRv) -> bool:
    return order_compare(x, y).leq_everywhere


def lt_everywhere(x: EcRv, y: EcRv) -> bool:
    return order_compare(x, y).strict_set == EventSet.full()


@dataclass(frozen=True)
class Classification:
    in_L0_plus: bool
    in_L0_plusplus: bool
    in_M: bool


def classify(x: EcRv) -> Classification:
    """Membership in the nonnegative cone, the strictly positive cone,
    and the submodule M of finitely supported elements (zero tail)."""
    values = list(x.values())
    return Classification(
        in_L0_plus=all(v >= 0 for v in values),
        in_L0_plusplus=all(v > 0 for v in values),
        in_M=x.tail == 0,
    )
