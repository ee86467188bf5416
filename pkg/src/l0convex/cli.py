"""Command-line front end.

Commands:

    verify-counterexample    run the full evidence pipeline for the
                             configured neighborhood base
    eval EXPR                evaluate one expression exactly
    check TARGET             axioms | roundtrip | cc | base
    partition                build and verify a halving-mass partition

The JSON report goes to stdout (and to --json PATH if given); one
human-readable line per step goes to stderr.  Exit codes: 0 all checks
pass, 1 a check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .config import ConfigError, RunConfig, parse_config, parse_event_list
from .concatenation import cc_failure_witness, glue, relative_cc_check
from .l0 import EcRv, ONE, NotInvertible
from .measure import EventSet, SingletonTail, build_countable_partition
from .seminorms import axioms_check, evaluate, sup_evaluate
from .sets import (
    UnsupportedShape,
    contains,
    gauge_closed_form,
    roundtrip_check,
)
from .syntax import (
    ParseError,
    Parser,
    parse_partition,
    format_partition,
    format_seminorm,
    format_sequence,
    format_set,
)
from .topology import (
    CounterexampleFamily,
    SeedSet,
    base_axiom_witnesses,
    closure_membership,
    hausdorff_report,
    seminorm_induction_verdict,
    separation_witness,
)
from . import sampling

SCHEMA = 1


def _step(name: str, inputs: dict, expected: str, observed: str, passed: bool) -> dict:
    return {
        "name": name,
        "inputs": inputs,
        "expected": expected,
        "observed": observed,
        "pass": passed,
    }


def _emit(report: dict, json_path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if json_path:
        with open(json_path, "w") as handle:
            handle.write(text)
    for step in report.get("steps", ()):
        tag = "PASS" if step["pass"] else "FAIL"
        print(f"{tag}  {step['name']}", file=sys.stderr)
    if "verdict" in report:
        print(f"verdict: {report['verdict']}", file=sys.stderr)


def _load_config(args) -> RunConfig:
    if args.config:
        with open(args.config) as handle:
            config = parse_config(handle.read())
    else:
        config = RunConfig()
    if args.seed is not None:
        config.seed = args.seed
    if args.horizon is not None:
        config.horizon = args.horizon
    if args.samples is not None:
        config.samples = args.samples
    return config


# -- verify-counterexample ---------------------------------------------------


def _hausdorff_step(base, samples: int, seed: int) -> dict:
    report = hausdorff_report(base, samples=samples, seed=seed)
    inputs = {"samples": samples}
    if isinstance(base, CounterexampleFamily):
        inputs["witness"] = repr(report.witness)
        observed = (
            f"non-Hausdorff, nonzero witness {report.witness!r} in "
            f"{report.checks_passed}/{report.samples} sampled base sets"
        )
        passed = not report.hausdorff and report.passed
        expected = "a nonzero point lies in every sampled base set"
    elif report.hausdorff:
        observed = f"{report.checks_passed}/{report.samples} sampled pairs separated"
        passed = report.checks_passed == report.samples
        expected = "distinct sampled points are separated by some base set"
    else:
        x, y = report.witness
        inputs["witness_pair"] = [repr(x), repr(y)]
        observed = "found a pair no base set separates"
        passed = sup_evaluate(base.family, x - y).is_zero()  # re-verify the pair
        expected = "the non-separated pair re-verifies against the family"
    return _step(
        "hausdorff_diagnosis",
        inputs,
        expected,
        observed,
        passed,
    )


def cmd_verify(args) -> int:
    config = _load_config(args)
    base = config.base
    verdict = seminorm_induction_verdict(
        base, horizon=config.horizon, seed=config.seed, samples=config.samples
    )
    steps = [
        _step(s.name, s.inputs, s.expected, s.observed, s.passed) for s in verdict.steps
    ]

    eps = config.epsilon if config.epsilon is not None else ONE
    delta = config.delta if config.delta is not None else EcRv.constant(Fraction(1, 2))
    axioms = base_axiom_witnesses(base, eps, delta, config.samples, config.seed)
    steps.insert(
        0,
        _step(
            "base_axioms",
            {"epsilon": repr(eps), "delta": repr(delta), "samples": config.samples},
            "meet, sum and scaling inclusions hold on all samples",
            (
                f"witnesses ({axioms.meet_witness!r}, {axioms.sum_witness!r}, "
                f"{axioms.scaling_witness!r}); failures: {axioms.meet_failures}, "
                f"{axioms.sum_failures}, {axioms.scaling_failures}"
            ),
            axioms.passed,
        ),
    )

    if isinstance(base, CounterexampleFamily):
        rng = sampling.make_rng(config.seed)
        sep_ok = 0
        example = None
        for _ in range(config.samples):
            x = sampling.random_nonzero_tail_ecrv(rng)
            witness = separation_witness(x)
            sep_ok += witness.excluded
            example = witness
        steps.append(
            _step(
                "separation_witnesses",
                {
                    "samples": config.samples,
                    "example_point": repr(example.point),
                    "example_epsilon": repr(example.epsilon),
                },
                "every sampled point outside M is excluded from some base set",
                f"{sep_ok}/{config.samples} exclusions verified",
                sep_ok == config.samples,
            )
        )
        closure_hits = 0
        closure_rejects = 0
        example_in = example_out = None
        for _ in range(config.samples):
            inside = sampling.random_finite_support_ecrv(rng)
            closure_hits += closure_membership(base, SeedSet.ZERO_SINGLETON, inside).member
            outside = sampling.random_nonzero_tail_ecrv(rng)
            result = closure_membership(base, SeedSet.SUBMODULE_M, outside)
            closure_rejects += (not result.member) and result.separation.excluded
            example_in, example_out = inside, result.separation
        steps.append(
            _step(
                "closure_membership",
                {
                    "samples": config.samples,
                    "example_inside": repr(example_in),
                    "example_outside": repr(example_out.point),
                    "example_epsilon": repr(example_out.epsilon),
                },
                "closure of {0} and of M is exactly M",
                (
                    f"{closure_hits}/{config.samples} members of M inside, "
                    f"{closure_rejects}/{config.samples} outsiders excluded with evidence"
                ),
                closure_hits == config.samples and closure_rejects == config.samples,
            )
        )

        cc_ok = 0
        example_cc = None
        for _ in range(config.samples):
            radius = sampling.random_positive_ecrv(rng)
            witness = cc_failure_witness(radius, horizon=config.horizon)
            cc_ok += witness.valid
            example_cc = witness
        steps.append(
            _step(
                "concatenation_failure",
                {
                    "samples": config.samples,
                    "example_radius": repr(example_cc.radius),
                    "example_glue": repr(example_cc.glue),
                },
                "single-atom pieces stay in the base set while their glue escapes",
                f"{cc_ok}/{config.samples} witnesses valid",
                cc_ok == config.samples,
            )
        )

    steps.append(_hausdorff_step(base, config.samples, config.seed))

    verdict_label = "NotInduced" if verdict.verdict == "not_induced" else "Induced"
    report = {
        "schema": SCHEMA,
        "command": "verify-counterexample",
        "seed": config.seed,
        "horizon": config.horizon,
        "samples": config.samples,
        "verdict": verdict_label,
        "steps": steps,
        "pass": all(s["pass"] for s in steps),
    }
    if verdict.family is not None:
        report["family"] = [format_seminorm(s) for s in verdict.family]
    _emit(report, args.json)
    return 0 if report["pass"] else 1


# -- eval --------------------------------------------------------------------


def run_eval(expr: str, config: RunConfig) -> str:
    parser = Parser(expr)
    op = parser.word()
    if op == "gauge":
        target = parser.set_descriptor()
        x = parser.ecrv()
        parser.finish()
        return repr(gauge_closed_form(target, x))
    if op == "contains":
        target = parser.set_descriptor()
        x = parser.ecrv()
        parser.finish()
        return "true" if contains(target, x) else "false"
    if op == "prob":
        event = parser.event()
        parser.finish()
        return str(config.space.probability(event))
    if op == "seminorm":
        s = parser.seminorm()
        x = parser.ecrv()
        parser.finish()
        return repr(evaluate(s, x))
    if op == "glue":
        seq = parser.sequence()
        part = parser.partition()
        parser.finish()
        result = glue(seq, part)
        return repr(result.element) if result.representable else f"not representable: {result.reason}"
    raise ParseError(f"unknown operation {op!r}", 1, 1)


def cmd_eval(args) -> int:
    config = _load_config(args)
    value = run_eval(args.expression, config)
    print(value)
    if args.json:
        report = {"schema": SCHEMA, "command": "eval", "expression": args.expression, "value": value}
        with open(args.json, "w") as handle:
            handle.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


# -- check -------------------------------------------------------------------


def cmd_check(args) -> int:
    config = _load_config(args)
    target = args.target
    if target == "axioms":
        if config.seminorm is None:
            raise ConfigError("check axioms needs a 'seminorm' key in the config")
        report = axioms_check(config.seminorm, config.samples, config.seed)
        steps = [
            _step(
                "seminorm_axioms",
                {"seminorm": format_seminorm(config.seminorm), "samples": config.samples},
                "homogeneity and triangle inequality hold exactly on all samples",
                (
                    f"homogeneity failures: {report.homogeneity_failures}, "
                    f"triangle failures: {report.triangle_failures}"
                ),
                report.passed,
            )
        ]
    elif target == "roundtrip":
        probe = config.seminorm if config.seminorm is not None else config.set_descriptor
        if probe is None:
            raise ConfigError("check roundtrip needs a 'seminorm' or 'set' key")
        report = roundtrip_check(probe, config.samples, config.seed)
        label = (
            format_seminorm(probe) if config.seminorm is not None else format_set(probe)
        )
        steps = [
            _step(
                "gauge_roundtrip",
                {"target": label, "samples": config.samples},
                "gauge reproduces the seminorm and membership agrees with gauge <= 1",
                (
                    f"gauge mismatches: {report.gauge_mismatches}, membership "
                    f"mismatches: {report.membership_mismatches}, strict-inclusion "
                    f"failures: {report.strict_inclusion_failures}"
                ),
                report.passed,
            )
        ]
    elif target == "cc":
        if config.set_descriptor is None or not config.sequences:
            raise ConfigError("check cc needs 'set' and at least one sequence")
        part = config.partition()
        if part is None:
            raise ConfigError("check cc needs a partition (part.finite or part.singletons_from)")
        report = relative_cc_check(
            config.set_descriptor, part, config.sequences, horizon=config.horizon
        )
        outcome = "fail" if not report.closure_holds else "pass"
        entries = [
            {
                "sequence": format_sequence(e.sequence),
                "precondition_ok": e.precondition_ok,
                "glue": repr(e.glue) if e.glue is not None else None,
                "glue_in_set": e.glue_in_set,
                "seminorm_identity_ok": e.seminorm_identity_ok,
            }
            for e in report.entries
        ]
        steps = [
            _step(
                "relative_concatenation",
                {
                    "set": format_set(config.set_descriptor),
                    "partition": format_partition(part),
                    "entries": entries,
                },
                f"closure outcome matches the declared expectation ({config.expect})",
                f"outcome: {outcome}",
                outcome == config.expect and report.identity_holds,
            )
        ]
    elif target == "base":
        eps = config.epsilon if config.epsilon is not None else ONE
        delta = config.delta if config.delta is not None else ONE
        report = base_axiom_witnesses(config.base, eps, delta, config.samples, config.seed)
        steps = [
            _step(
                "base_axioms",
                {"epsilon": repr(eps), "delta": repr(delta), "samples": config.samples},
                "meet, sum and scaling inclusions hold on all samples",
                (
                    f"witnesses ({report.meet_witness!r}, {report.sum_witness!r}, "
                    f"{report.scaling_witness!r}); failures: {report.meet_failures}, "
                    f"{report.sum_failures}, {report.scaling_failures}"
                ),
                report.passed,
            )
        ]
    else:
        raise ConfigError(f"unknown check target {target!r}")

    doc = {
        "schema": SCHEMA,
        "command": f"check {target}",
        "seed": config.seed,
        "samples": config.samples,
        "steps": steps,
        "pass": all(s["pass"] for s in steps),
    }
    _emit(doc, args.json)
    return 0 if doc["pass"] else 1


# -- partition ---------------------------------------------------------------


def cmd_partition(args) -> int:
    config = _load_config(args)
    cells = config.prefix_cells
    tail_start = args.tail_start if args.tail_start is not None else config.singletons_from
    if args.spec:
        part_spec = parse_partition(args.spec)
        if not isinstance(part_spec, SingletonTail):
            raise ConfigError("the partition builder takes a singletons_from(...) spec")
        cells = list(part_spec.prefix_cells)
        tail_start = part_spec.tail_start
    elif args.cells:
        cells = parse_event_list(args.cells, 1)
    if tail_start is None:
        raise ConfigError("partition needs a spec, part.singletons_from, or --from")
    part = build_countable_partition(config.space, cells, tail_start)
    omega_prime = EventSet.cofinite_excluding(range(1, tail_start))
    remainder = config.space.probability(omega_prime)
    masses = []
    law_holds = True
    for n in range(1, 21):
        cell = part.cell(part.prefix_count + n)
        mass = config.space.probability(cell)
        masses.append(str(mass))
        law_holds = law_holds and mass == remainder / 2**n
    positive = all(
        config.space.probability(part.cell(k)) > 0
        for k in range(1, part.prefix_count + 21)
    )
    doc = {
        "schema": SCHEMA,
        "command": "partition",
        "partition": format_partition(part),
        "tail_mass": str(remainder),
        "tail_cell_masses": masses,
        "steps": [
            _step(
                "halving_masses",
                {"tail_start": tail_start, "cells_checked": 20},
                "the n-th tail cell has exactly a 2**-n share of the tail mass",
                f"law holds: {law_holds}, all cells positive: {positive}",
                law_holds and positive,
            )
        ],
        "pass": law_holds and positive,
    }
    _emit(doc, args.json)
    return 0 if doc["pass"] else 1


# -- entry point -------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--config", help="path to a key=value config file")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--horizon", type=int, default=None)
    sub.add_argument("--samples", type=int, default=None)
    sub.add_argument("--json", help="also write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l0convex",
        description="Exact checks for seminorm-induced and degenerate module topologies",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser(
        "verify-counterexample", help="run the full evidence pipeline"
    )
    _add_common(verify)
    verify.set_defaults(handler=cmd_verify)

    ev = commands.add_parser("eval", help="evaluate one expression")
    ev.add_argument("expression")
    _add_common(ev)
    ev.set_defaults(handler=cmd_eval)

    check = commands.add_parser("check", help="run one named check")
    check.add_argument("target", choices=["axioms", "roundtrip", "cc", "base"])
    _add_common(check)
    check.set_defaults(handler=cmd_check)

    part = commands.add_parser("partition", help="build a halving-mass partition")
    part.add_argument(
        "spec", nargs="?", help="partition literal, e.g. 'singletons_from(3; {1}, {2})'"
    )
    part.add_argument("--from", dest="tail_start", type=int, default=None)
    part.add_argument("--cells", help="prefix cells, e.g. [{1},{2}]")
    _add_common(part)
    part.set_defaults(handler=cmd_partition)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedShape, NotInvertible, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
