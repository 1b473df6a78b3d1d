"""Markov blanket recovery by grow-and-shrink.

``modified`` mode adds the paired-conditioning clause to the grow phase
(add X when the target depends on X given S plus one helper node Z), which
picks up strict 2-associations that the classic grow phase misses.  The
shrink phase removes singletons only and is shared by both modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .oracle import IndependenceOracle, OracleError


@dataclass(frozen=True)
class GsStep:
    phase: str  # "grow" | "shrink"
    candidate: str
    helper: str | None  # pair-clause partner, if any
    conditioning: frozenset[str]
    independent: bool
    action: str  # "add" | "remove" | "keep" | "skip"

    def to_dict(self) -> dict:
        return {
            "phase": self.phase,
            "candidate": self.candidate,
            "helper": self.helper,
            "conditioning": sorted(self.conditioning),
            "independent": self.independent,
            "action": self.action,
        }


class GsTrace(list):
    """Ordered oracle-query log; replaying it reproduces every answer."""

    def replay_consistent(self, o: IndependenceOracle, target: str) -> bool:
        return all(
            o.query(target, step.candidate, step.conditioning) == step.independent
            for step in self
        )


def grow(
    o: IndependenceOracle,
    target: str,
    *,
    mode: str = "modified",
    scan_order: Sequence[str] | None = None,
    trace: GsTrace | None = None,
) -> set[str]:
    """Fixpoint of the grow clauses; returns a superset of the blanket.

    Scan policy per pass: single-node candidates in scan order first, then
    (candidate, helper) pairs; the first hit is added and the pass
    restarts.  The helper may already be in S (then the pair clause
    coincides with the single clause and never fires anew).
    """
    _check_target(o, target, mode)
    order = _scan_order(o, target, scan_order)
    trace = trace if trace is not None else GsTrace()
    s: set[str] = set()
    while True:
        added = _grow_pass(o, target, s, order, mode, trace)
        if added is None:
            return s
        s.add(added)


def _grow_pass(o, target, s, order, mode, trace):
    for x in order:
        if x in s:
            continue
        indep = o.query(target, x, s)
        trace.append(GsStep("grow", x, None, frozenset(s), indep, "skip" if indep else "add"))
        if not indep:
            return x
    if mode == "classic":
        return None
    for x in order:
        if x in s:
            continue
        for z in order:
            if z == x:
                continue
            cond = s | {z}
            indep = o.query(target, x, cond)
            trace.append(
                GsStep("grow", x, z, frozenset(cond), indep, "skip" if indep else "add")
            )
            if not indep:
                return x
    return None


def shrink(
    o: IndependenceOracle,
    target: str,
    s: Iterable[str],
    *,
    scan_order: Sequence[str] | None = None,
    trace: GsTrace | None = None,
) -> set[str]:
    """Fixpoint removal of single nodes separable from the target."""
    s = set(s)
    if target in s:
        raise OracleError("target cannot be in its own candidate blanket")
    order = _scan_order(o, target, scan_order)
    trace = trace if trace is not None else GsTrace()
    changed = True
    while changed:
        changed = False
        for x in order:
            if x not in s:
                continue
            cond = s - {x}
            indep = o.query(target, x, cond)
            trace.append(
                GsStep("shrink", x, None, frozenset(cond), indep, "remove" if indep else "keep")
            )
            if indep:
                s.remove(x)
                changed = True
                break
    return s


def markov_blanket(
    o: IndependenceOracle,
    target: str,
    *,
    mode: str = "modified",
    scan_order: Sequence[str] | None = None,
) -> tuple[set[str], GsTrace]:
    """Grow then shrink; ``modified`` or ``classic`` grow phase."""
    trace = GsTrace()
    grown = grow(o, target, mode=mode, scan_order=scan_order, trace=trace)
    final = shrink(o, target, grown, scan_order=scan_order, trace=trace)
    return final, trace


def _check_target(o, target, mode):
    if target not in o.variables:
        raise OracleError(f"unknown target {target!r}")
    if mode not in ("modified", "classic"):
        raise OracleError(f"unknown mode {mode!r}")


def _scan_order(o, target, scan_order):
    if scan_order is None:
        return [v for v in o.variables if v != target]
    order = list(scan_order)
    if set(order) != set(o.variables) - {target}:
        raise OracleError("scan order must cover all non-target variables")
    return order
