"""k-associations and unfaithful triples.

1-, 2- and strict 2-associations are universally quantified dependence
patterns; they are decided by exhaustive enumeration of conditioning sets
against an independence oracle.  Subsets are enumerated smallest-first
(ties broken lexicographically by node index) so reported separating
witnesses are minimal-size and reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .distribution import DiscreteJoint
from .oracle import DiscreteOracle, IndependenceOracle, OracleError


@dataclass(frozen=True)
class AssociationBudget:
    """Cap on conditioning-set size; None means unbounded (|V| - 2)."""

    max_size: int | None = None

    def __post_init__(self):
        if self.max_size is not None and self.max_size < 0:
            raise ValueError("budget must be non-negative")

    def cap(self, pool_size: int) -> int:
        if self.max_size is None:
            return pool_size
        return min(self.max_size, pool_size)

    def capped(self, pool_size: int) -> bool:
        return self.max_size is not None and self.max_size < pool_size


UNBOUNDED = AssociationBudget()


@dataclass(frozen=True)
class AssociationReport:
    """Outcome of an association check.

    ``witness`` carries, for a negative answer, the first CI statement
    found in enumeration order that defeats the pattern.
    """

    target: str
    partners: tuple[str, ...]
    kind: str  # "one", "two" or "strict-two"
    holds: bool
    witness: dict | None = None
    up_to_budget: bool = False

    def __post_init__(self):
        if self.kind not in ("one", "two", "strict-two"):
            raise ValueError(f"unknown association kind {self.kind!r}")
        if len(self.partners) not in (1, 2):
            raise ValueError("partner set must have one or two nodes")
        if self.kind in ("two", "strict-two") and len(self.partners) != 2:
            raise ValueError(f"{self.kind} association needs two partners")

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "partners": list(self.partners),
            "kind": self.kind,
            "holds": self.holds,
            "witness": self.witness,
            "up_to_budget": self.up_to_budget,
        }


def subsets_by_size(
    pool: Sequence[str], order: Sequence[str], max_size: int
) -> Iterator[tuple[str, ...]]:
    """Subsets of ``pool``, smallest first, lexicographic in ``order`` index."""
    rank = {v: i for i, v in enumerate(order)}
    pool = sorted(pool, key=rank.__getitem__)
    for size in range(min(max_size, len(pool)) + 1):
        yield from itertools.combinations(pool, size)


def _ci_statement(x: str, y: str, given: Iterable[str], independent: bool) -> dict:
    return {"x": x, "y": y, "given": sorted(given), "independent": independent}


def is_1_associated(
    o: IndependenceOracle,
    x: str,
    y: str,
    budget: AssociationBudget = UNBOUNDED,
) -> AssociationReport:
    """X is 1-associated to Y iff X and Y are dependent given every subset."""
    if x == y:
        raise OracleError("x and y must be distinct")
    pool = [v for v in o.variables if v not in (x, y)]
    for s in subsets_by_size(pool, o.variables, budget.cap(len(pool))):
        if o.query(x, y, s):
            return AssociationReport(
                x, (y,), "one", False, _ci_statement(x, y, s, True)
            )
    return AssociationReport(x, (y,), "one", True, None, budget.capped(len(pool)))


def is_2_associated(
    o: IndependenceOracle,
    x: str,
    y1: str,
    y2: str,
    budget: AssociationBudget = UNBOUNDED,
) -> AssociationReport:
    """Three universally quantified dependence clauses over all subsets S.

    For every S avoiding {x, y1, y2}: x dep y1 | S+y2, x dep y2 | S+y1 and
    y1 dep y2 | S+x.
    """
    if len({x, y1, y2}) != 3:
        raise OracleError("x, y1, y2 must be distinct")
    pool = [v for v in o.variables if v not in (x, y1, y2)]
    clauses = ((x, y1, y2), (x, y2, y1), (y1, y2, x))
    for s in subsets_by_size(pool, o.variables, budget.cap(len(pool))):
        for a, b, extra in clauses:
            given = set(s) | {extra}
            if o.query(a, b, given):
                return AssociationReport(
                    x, (y1, y2), "two", False, _ci_statement(a, b, given, True)
                )
    return AssociationReport(x, (y1, y2), "two", True, None, budget.capped(len(pool)))


def is_strictly_2_associated(
    o: IndependenceOracle,
    x: str,
    y1: str,
    y2: str,
    budget: AssociationBudget = UNBOUNDED,
    *,
    either_reading: bool = False,
) -> AssociationReport:
    """Strict form: 2-associated and not 1-associated to either partner.

    Default reading requires 1-association to NEITHER partner; the
    alternative reading (``either_reading``) only requires that at least
    one partner is not 1-associated.
    """
    two = is_2_associated(o, x, y1, y2, budget)
    if not two.holds:
        return AssociationReport(x, (y1, y2), "strict-two", False, two.witness)
    one_1 = is_1_associated(o, x, y1, budget)
    one_2 = is_1_associated(o, x, y2, budget)
    if either_reading:
        ok = not (one_1.holds and one_2.holds)
    else:
        ok = not one_1.holds and not one_2.holds
    witness = None
    if not ok:
        offender = y1 if one_1.holds else y2
        witness = {"one_associated_to": offender}
    capped = two.up_to_budget or one_1.up_to_budget or one_2.up_to_budget
    return AssociationReport(x, (y1, y2), "strict-two", ok, witness, capped)


def is_weakly_associated(
    o: IndependenceOracle,
    x: str,
    partners: Sequence[str],
    budget: AssociationBudget = UNBOUNDED,
) -> AssociationReport:
    """1-association for a single partner, strict 2-association for a pair."""
    partners = tuple(partners)
    if len(partners) == 1:
        return is_1_associated(o, x, partners[0], budget)
    if len(partners) == 2:
        return is_strictly_2_associated(o, x, partners[0], partners[1], budget)
    raise OracleError("partner set must have one or two nodes")


@dataclass(frozen=True)
class UnfaithfulTriple:
    nodes: tuple[str, str, str]
    minimal: bool
    witnesses: tuple[dict, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "minimal": self.minimal,
            "witnesses": list(self.witnesses),
        }


def mutual_dependence_disjunction(joint: DiscreteJoint, x: str, y: str, z: str) -> bool:
    """True iff some node is dependent on the set of the other two.

    This is the disjunctive reading of "not mutually independent"; the
    triple finder itself uses full non-factorization.
    """
    return (
        not joint.is_independent_sets([x], [y, z])
        or not joint.is_independent_sets([y], [x, z])
        or not joint.is_independent_sets([z], [x, y])
    )


def _mutually_independent(joint: DiscreteJoint, x: str, y: str, z: str) -> bool:
    sub = joint.marginalize([x, y, z])
    px = sub.marginalize([x])
    py = sub.marginalize([y])
    pz = sub.marginalize([z])
    for (xv, yv, zv), p in zip(sub.assignments(), sub.probs):
        if p != px.probs[xv] * py.probs[yv] * pz.probs[zv]:
            return False
    return True


def find_unfaithful_triples(
    o: IndependenceOracle,
    budget: AssociationBudget = UNBOUNDED,
) -> list[UnfaithfulTriple]:
    """All triples that are pairwise marginally independent but whose joint
    does not factorize, flagged minimal when every within-triple pair stays
    dependent under all outside conditioning sets.

    Requires the discrete backend: the mutual-independence check needs the
    joint table.
    """
    if not isinstance(o, DiscreteOracle):
        raise OracleError("unfaithful-triple search needs the discrete backend")
    joint = o.joint
    out = []
    for x, y, z in itertools.combinations(o.variables, 3):
        if not (o.query(x, y) and o.query(x, z) and o.query(y, z)):
            continue
        if _mutually_independent(joint, x, y, z):
            continue
        minimal = True
        witnesses = []
        pool = [v for v in o.variables if v not in (x, y, z)]
        for a, b in itertools.combinations((x, y, z), 2):
            third = ({x, y, z} - {a, b}).pop()
            for s in subsets_by_size(pool, o.variables, budget.cap(len(pool))):
                if o.query(a, b, set(s) | {third}):
                    minimal = False
                    witnesses.append(_ci_statement(a, b, set(s) | {third}, True))
                    break
            if not minimal:
                break
        out.append(UnfaithfulTriple((x, y, z), minimal, tuple(witnesses)))
    return out
