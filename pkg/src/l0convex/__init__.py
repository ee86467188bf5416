"""Exact-arithmetic calculus for module topologies over a discrete base space.

Everything is computed with rationals: probabilities, seminorm values,
gauges, witnesses.  The package verifies, with re-checkable evidence,
when a neighborhood base of convex absorbent balanced sets is (and is
not) induced by a family of vector-valued seminorms.
"""

from .measure import (
    CANONICAL,
    DiscreteSpace,
    EventSet,
    FinitePartition,
    MalformedPrefix,
    SingletonTail,
    build_countable_partition,
)
from .l0 import (
    EcRv,
    NotInvertible,
    OrderReport,
    ZERO,
    ONE,
    classify,
    combine,
    divide,
    emax,
    emin,
    indicator,
    indicator_mul,
    leq_everywhere,
    lt_everywhere,
    order_compare,
    reciprocal,
)
from .seminorms import (
    FiniteSup,
    Localized,
    Weighted,
    Zero,
    axioms_check,
    evaluate,
    sup_evaluate,
)
from .sets import (
    Ball,
    GaugeCertificate,
    Intersect,
    MPlusBall,
    Scale,
    Translate,
    UnsupportedShape,
    contains,
    confirm_structural_flags,
    gauge_closed_form,
    gauge_upper_certificate,
    roundtrip_check,
    sample_member,
    structural_flags,
    verify_certificate,
)
from .topology import (
    CounterexampleFamily,
    EvidenceReport,
    FromSeminorms,
    PointInM,
    SeedSet,
    base_axiom_witnesses,
    closure_membership,
    epslambda_membership,
    hausdorff_report,
    seminorm_induction_verdict,
    separation_witness,
)
from .concatenation import (
    CcFailureWitness,
    Diagonal,
    EventuallyConstantSeq,
    GaugeNotBelowOne,
    GlueResult,
    IncompatibleSpec,
    cc_failure_witness,
    glue,
    glue_identity_holds,
    relative_cc_check,
    reverse_partition_construct,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
