"""Batch front-end.

Subcommands load a scenario (``builtin:<name>`` or a JSON file), run one
analysis, and print a JSON report on stdout (or ``--out``) with a short
human-readable summary on stderr.

Exit codes: 0 success, 1 analysis precondition failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from .association import (
    AssociationBudget,
    UNBOUNDED,
    is_1_associated,
    is_strictly_2_associated,
)
from .audit import audit_scenario
from .gtest import GTestConfig
from .growshrink import markov_blanket
from .oracle import GTestOracle, OracleError
from .orientation import OrientationQuery, PreconditionError, orient
from .sparsest import sparsest_permutations
from .scenarios import BUILTINS, Scenario, ScenarioError, builtin, load_path

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_scenario(spec: str) -> Scenario:
    try:
        if spec.startswith("builtin:"):
            return builtin(spec[len("builtin:") :])
        return load_path(spec)
    except ScenarioError as exc:
        raise CliError(f"bad scenario {spec!r}: {exc}", EXIT_USAGE) from exc


def _make_oracle(scenario: Scenario, args):
    """Exact oracle by default; a G-test oracle over fresh samples when
    --samples is given (discrete scenarios only)."""
    if getattr(args, "samples", None):
        if scenario.kind != "discrete":
            raise CliError("--samples needs a discrete scenario", EXIT_ANALYSIS)
        data = scenario.joint.sample(args.samples, args.seed)
        return GTestOracle(data, GTestConfig(alpha=args.alpha))
    return scenario.oracle()


def _budget(args) -> AssociationBudget:
    if getattr(args, "budget", None) is None:
        return UNBOUNDED
    return AssociationBudget(max_size=args.budget)


def _require_vars(scenario: Scenario, names):
    for v in names:
        if v not in scenario.dag.nodes:
            raise CliError(f"unknown variable {v!r}", EXIT_USAGE)


def _split_csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _cmd_assoc(scenario, args):
    _require_vars(scenario, [args.target])
    o = _make_oracle(scenario, args)
    budget = _budget(args)
    others = [v for v in o.variables if v != args.target]
    found = []
    for y in others:
        r = is_1_associated(o, args.target, y, budget)
        if r.holds:
            found.append(r.to_dict())
    for y1, y2 in itertools.combinations(others, 2):
        r = is_strictly_2_associated(o, args.target, y1, y2, budget)
        if r.holds:
            found.append(r.to_dict())
    summary = f"{len(found)} association(s) for {args.target}"
    return {"target": args.target, "associations": found}, summary, o


def _cmd_orient(scenario, args):
    left = _split_csv(args.left)
    right = _split_csv(args.right)
    _require_vars(scenario, [args.center, *left, *right])
    o = _make_oracle(scenario, args)
    try:
        q = OrientationQuery(args.center, tuple(left), tuple(right), o, _budget(args))
        verdict = orient(q)
    except (PreconditionError, OracleError) as exc:
        raise CliError(f"orientation precondition failed: {exc}", EXIT_ANALYSIS)
    summary = f"verdict: {verdict.outcome}"
    return {"center": args.center, "left": left, "right": right,
            "verdict": verdict.to_dict()}, summary, o


def _cmd_mb(scenario, args):
    _require_vars(scenario, [args.target])
    o = _make_oracle(scenario, args)
    try:
        blanket, trace = markov_blanket(o, args.target, mode=args.mode)
    except OracleError as exc:
        raise CliError(str(exc), EXIT_ANALYSIS)
    result = {"target": args.target, "mode": args.mode, "blanket": sorted(blanket)}
    if args.trace:
        result["trace"] = [step.to_dict() for step in trace]
    summary = f"MB({args.target}) = {{{', '.join(sorted(blanket))}}}"
    return result, summary, o


def _cmd_sp(scenario, args):
    o = _make_oracle(scenario, args)
    try:
        minimizers = sparsest_permutations(o)
    except OracleError as exc:
        raise CliError(str(exc), EXIT_ANALYSIS)
    count = minimizers[0][1].edge_count
    result = {
        "minimum_edges": count,
        "minimizers": [
            {"permutation": list(perm), "dag": pdag.to_dict()}
            for perm, pdag in minimizers
        ],
    }
    summary = f"{len(minimizers)} minimizer(s) with {count} edge(s)"
    return result, summary, o


def _cmd_audit(scenario, args):
    report = audit_scenario(scenario)
    o = scenario.oracle()  # query count is folded into the audit's oracle
    flags = ", ".join(
        f"{r.assumption}={'ok' if r.holds else 'FAIL'}" for r in report.results
    )
    if not report.exhaustive:
        flags += " (partial)"
    return report.to_dict(), flags, o


def _cmd_sample(scenario, args):
    if scenario.kind != "discrete":
        raise CliError("sampling needs a discrete scenario", EXIT_ANALYSIS)
    data = scenario.joint.sample(args.samples, args.seed)
    result = {
        "variables": list(data.names),
        "seed": args.seed,
        "rows": [list(r) for r in data.rows],
    }
    summary = f"{args.samples} sample(s), seed {args.seed}"
    return result, summary, None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kassoc",
        description="Association scans, orientation, Markov blankets and "
        "sparsest permutations over exact scenario oracles.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples_default=None):
        sp.add_argument("--scenario", required=True,
                        help="builtin:<name> or a scenario JSON path "
                        f"(builtins: {', '.join(sorted(BUILTINS))})")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--budget", type=int, default=None,
                        help="max conditioning-set size (default: unbounded)")
        sp.add_argument("--samples", type=int, default=samples_default,
                        help="sample size for a G-test oracle (default: exact oracle)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--alpha", type=float, default=0.01,
                        help="G-test significance level")

    sp = sub.add_parser("assoc", help="weak-association scan for a target")
    common(sp)
    sp.add_argument("--target", required=True)
    sp.set_defaults(fn=_cmd_assoc)

    sp = sub.add_parser("orient", help="collider/non-collider orientation")
    common(sp)
    sp.add_argument("--center", required=True)
    sp.add_argument("--left", required=True, help="comma-separated, 1 or 2 nodes")
    sp.add_argument("--right", required=True, help="comma-separated, 1 or 2 nodes")
    sp.set_defaults(fn=_cmd_orient)

    sp = sub.add_parser("mb", help="Markov blanket by grow-and-shrink")
    common(sp)
    sp.add_argument("--target", required=True)
    sp.add_argument("--mode", choices=("modified", "classic"), default="modified")
    sp.add_argument("--trace", action="store_true", help="include the query log")
    sp.set_defaults(fn=_cmd_mb)

    sp = sub.add_parser("sp", help="sparsest-permutation search")
    common(sp)
    sp.set_defaults(fn=_cmd_sp)

    sp = sub.add_parser("audit", help="verify assumption annotations")
    common(sp)
    sp.set_defaults(fn=_cmd_audit)

    sp = sub.add_parser("sample", help="draw rows from a discrete scenario")
    common(sp, samples_default=1000)
    sp.set_defaults(fn=_cmd_sample)
    return p


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    started = time.perf_counter()
    try:
        scenario = _load_scenario(args.scenario)
        result, summary, oracle = args.fn(scenario, args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    report = {
        "command": args.command,
        "scenario": {
            "name": scenario.name,
            "kind": scenario.kind,
            "nodes": list(scenario.dag.nodes),
            "edges": [f"{a}->{b}" for a, b in scenario.dag.edges],
            "params": {k: str(v) for k, v in scenario.params.items()},
        },
        "result": result,
        "oracle_queries": oracle.query_count if oracle is not None else 0,
        "wall_time_s": round(time.perf_counter() - started, 6),
    }
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(text)
    print(f"{scenario.name}: {summary}", file=sys.stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
