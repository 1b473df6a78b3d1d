"""Sound collider orientation from universally quantified dependencies.

The rule orients side sets into a centre node when every cross pair stays
dependent under all supersets of the required core, and witnesses a
non-collider otherwise.  When neither condition fires on an unshielded
configuration, a 2-orientation-faithfulness failure has been detected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .association import (
    AssociationBudget,
    UNBOUNDED,
    is_1_associated,
    is_strictly_2_associated,
    is_weakly_associated,
    subsets_by_size,
)
from .oracle import IndependenceOracle


class PreconditionError(ValueError):
    """Orientation preconditions are violated; no verdict is produced."""


@dataclass(frozen=True)
class OrientationQuery:
    center: str
    left: tuple[str, ...]
    right: tuple[str, ...]
    oracle: IndependenceOracle
    budget: AssociationBudget = UNBOUNDED

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if not 1 <= len(left) <= 2 or not 1 <= len(right) <= 2:
            raise PreconditionError("side sets must have one or two nodes")
        if set(left) & set(right):
            raise PreconditionError("side sets must be disjoint")
        if self.center in left or self.center in right:
            raise PreconditionError("centre node cannot be in a side set")
        known = set(self.oracle.variables)
        for v in {self.center, *left, *right}:
            if v not in known:
                raise PreconditionError(f"unknown variable {v!r}")


@dataclass(frozen=True)
class OrientationVerdict:
    outcome: str  # "collider" | "non-collider" | "inconclusive"
    edges: tuple[tuple[str, str], ...] = ()
    rule_i_holds: bool = False
    rule_ii_holds: bool = False
    of_failure_detected: bool = False
    shielding_caveat: bool = False
    witnesses: tuple[dict, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "edges": [f"{a}->{b}" for a, b in self.edges],
            "rule_i_holds": self.rule_i_holds,
            "rule_ii_holds": self.rule_ii_holds,
            "of_failure_detected": self.of_failure_detected,
            "shielding_caveat": self.shielding_caveat,
            "witnesses": list(self.witnesses),
        }


def check_nonadjacency(
    o: IndependenceOracle,
    x: str,
    z: str,
    budget: AssociationBudget = UNBOUNDED,
) -> bool:
    """True iff no association evidence of adjacency between x and z exists.

    Evidence of adjacency: a 1-association between x and z, or a third node
    u making one of them strictly 2-associated to a pair containing the
    other.  The check is conservative: strict-2 evidence is ambiguous (the
    shared path may be shielded or unshielded) but still counts as
    possible adjacency.
    """
    if x == z:
        raise PreconditionError("x and z must be distinct")
    if is_1_associated(o, x, z, budget).holds:
        return False
    for u in o.variables:
        if u in (x, z):
            continue
        if is_strictly_2_associated(o, x, z, u, budget).holds:
            return False
        if is_strictly_2_associated(o, z, x, u, budget).holds:
            return False
    return True


def _strict2_third_node_evidence(o, x, z, budget) -> bool:
    for u in o.variables:
        if u in (x, z):
            continue
        if (
            is_strictly_2_associated(o, x, z, u, budget).holds
            or is_strictly_2_associated(o, z, x, u, budget).holds
        ):
            return True
    return False


def _pairs_dependent_over_supersets(o, x, z, core, exclude, budget):
    """All-supersets dependence family for one cross pair.

    Checks x dep z | core + E for every extra set E within the variable
    pool (pool excludes x, z, the core and ``exclude``).  Returns the
    defeating CI statement, or None when the family holds.
    """
    pool = [v for v in o.variables if v not in {x, z, *core, *exclude}]
    for extra in subsets_by_size(pool, o.variables, budget.cap(len(pool))):
        given = set(core) | set(extra)
        if o.query(x, z, given):
            return {"x": x, "y": z, "given": sorted(given), "independent": True}
    return None


def orient(q: OrientationQuery) -> OrientationVerdict:
    """Apply the orientation rule.

    Verifies the premises first: the centre must be (strictly, for pairs)
    associated to each side set and no cross pair may show 1-association
    evidence of adjacency.  Any premise failure raises PreconditionError.
    """
    o, budget = q.oracle, q.budget
    for side in (q.left, q.right):
        rep = is_weakly_associated(o, q.center, side, budget)
        if not rep.holds:
            raise PreconditionError(
                f"centre {q.center} is not associated to side set {side}: {rep.witness}"
            )
    caveat = False
    for x, z in itertools.product(q.left, q.right):
        if is_1_associated(o, x, z, budget).holds:
            raise PreconditionError(f"side nodes {x} and {z} are 1-associated (adjacent)")
        if _strict2_third_node_evidence(o, x, z, budget):
            caveat = True

    witnesses = []
    rule_i = True
    for x, z in itertools.product(q.left, q.right):
        core = {q.center} | (set(q.left) - {x}) | (set(q.right) - {z})
        defeat = _pairs_dependent_over_supersets(o, x, z, core, (), budget)
        if defeat is not None:
            rule_i = False
            witnesses.append(defeat)
            break

    rule_ii = True
    for x, z in itertools.product(q.left, q.right):
        core = (set(q.left) - {x}) | (set(q.right) - {z})
        defeat = _pairs_dependent_over_supersets(o, x, z, core, {q.center}, budget)
        if defeat is not None:
            rule_ii = False
            if not rule_i:
                witnesses.append(defeat)
            break

    if rule_i:
        edges = tuple((v, q.center) for v in q.left + q.right)
        return OrientationVerdict(
            "collider", edges, True, rule_ii, False, caveat, tuple(witnesses)
        )
    if rule_ii:
        return OrientationVerdict(
            "non-collider", (), False, True, False, caveat, tuple(witnesses)
        )
    return OrientationVerdict(
        "inconclusive", (), False, False, True, caveat, tuple(witnesses)
    )


def detect_of_failure(q: OrientationQuery) -> bool:
    """True iff neither orientation rule fires on the query."""
    return orient(q).of_failure_detected


def orient_fixpoint(
    o: IndependenceOracle,
    queries: list[OrientationQuery],
) -> dict[OrientationQuery, OrientationVerdict]:
    """Re-apply the rule until no new verdict changes.

    Driver for iterative use: inner triples oriented first may unblock
    outer queries on a later pass.  Queries raising PreconditionError stay
    unresolved.  Terminates once a full pass yields no change.
    """
    verdicts: dict[OrientationQuery, OrientationVerdict] = {}
    changed = True
    while changed:
        changed = False
        for q in queries:
            try:
                v = orient(q)
            except PreconditionError:
                continue
            if verdicts.get(q) != v:
                verdicts[q] = v
                changed = True
    return verdicts
