"""Exact discrete joint distributions.

Probabilities are ``fractions.Fraction`` throughout; independence is
decided by exact equality, never by a tolerance.  Tables are dense over
all assignments (desk scale, capped at 2**20 cells).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

MAX_CELLS = 1 << 20

ONE = Fraction(1)
ZERO = Fraction(0)


class DistributionError(ValueError):
    """Invalid distribution construction or query."""


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table of one variable given its parents.

    ``rows`` maps a parent assignment (tuple of values in ``parents``
    order) to a probability vector over the child's domain.  Each vector
    must sum to exactly 1.
    """

    child: str
    child_card: int
    parents: tuple[str, ...]
    parent_cards: tuple[int, ...]
    rows: Mapping[tuple[int, ...], tuple[Fraction, ...]]

    def __post_init__(self):
        expected = set(itertools.product(*(range(c) for c in self.parent_cards)))
        if set(self.rows) != expected:
            raise DistributionError(f"CPT for {self.child}: wrong set of parent rows")
        for pa, vec in self.rows.items():
            if len(vec) != self.child_card:
                raise DistributionError(f"CPT for {self.child}: bad row length at {pa}")
            if any(p < 0 for p in vec):
                raise DistributionError(f"CPT for {self.child}: negative probability")
            if sum(vec) != ONE:
                raise DistributionError(f"CPT for {self.child}: row {pa} does not sum to 1")

    @staticmethod
    def prior(name: str, probs: Sequence[Fraction]) -> "Cpt":
        return Cpt(name, len(probs), (), (), {(): tuple(Fraction(p) for p in probs)})

    @staticmethod
    def coin(name: str, p_one: Fraction) -> "Cpt":
        p = Fraction(p_one)
        return Cpt.prior(name, (ONE - p, p))

    @staticmethod
    def noisy_function(
        child: str,
        parents: Sequence[str],
        parent_cards: Sequence[int],
        fn: Callable[..., int],
        flip: Fraction,
    ) -> "Cpt":
        """Binary child: value fn(parents) xor an unobserved coin of bias ``flip``.

        The noise coin is marginalised into the table, it is not a node.
        """
        flip = Fraction(flip)
        rows = {}
        for pa in itertools.product(*(range(c) for c in parent_cards)):
            v = fn(*pa)
            if v not in (0, 1):
                raise DistributionError("noisy_function requires a boolean function")
            p_one = ONE - flip if v == 1 else flip
            rows[pa] = (ONE - p_one, p_one)
        return Cpt(child, 2, tuple(parents), tuple(parent_cards), rows)


@dataclass(frozen=True)
class Dataset:
    """Finite sample of joint assignments (integer-coded values)."""

    variables: tuple[tuple[str, int], ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    def card(self, name: str) -> int:
        for n, c in self.variables:
            if n == name:
                return c
        raise DistributionError(f"unknown variable {name!r}")

    def column(self, name: str) -> list[int]:
        i = self.names.index(name)
        return [row[i] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


class DiscreteJoint:
    """Dense exact joint probability table over finite-domain variables."""

    __slots__ = ("variables", "probs", "_strides", "_pos")

    def __init__(
        self,
        variables: Sequence[tuple[str, int]],
        probs: Sequence[Fraction],
    ):
        variables = tuple((str(n), int(c)) for n, c in variables)
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            raise DistributionError("duplicate variable names")
        size = 1
        for _, c in variables:
            if c < 1:
                raise DistributionError("cardinalities must be positive")
            size *= c
        if size > MAX_CELLS:
            raise DistributionError("joint table too large")
        probs = tuple(Fraction(p) for p in probs)
        if len(probs) != size:
            raise DistributionError("table size does not match variable domains")
        if any(p < 0 for p in probs):
            raise DistributionError("negative probability entry")
        if sum(probs) != ONE:
            raise DistributionError("probabilities must sum to exactly 1")
        strides = [1] * len(variables)
        for i in range(len(variables) - 2, -1, -1):
            strides[i] = strides[i + 1] * variables[i + 1][1]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_strides", tuple(strides))
        object.__setattr__(self, "_pos", {n: i for i, (n, _) in enumerate(variables)})

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteJoint is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, DiscreteJoint)
            and self.variables == other.variables
            and self.probs == other.probs
        )

    def __hash__(self):
        return hash((self.variables, self.probs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    def card(self, name: str) -> int:
        return self.variables[self._position(name)][1]

    def _position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise DistributionError(f"unknown variable {name!r}") from None

    def assignments(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(c) for _, c in self.variables))

    def prob(self, assignment: Mapping[str, int]) -> Fraction:
        """Probability of a full or partial assignment (exact sum)."""
        fixed = {self._position(n): v for n, v in assignment.items()}
        total = ZERO
        for i, a in enumerate(self.assignments()):
            if all(a[p] == v for p, v in fixed.items()):
                total += self.probs[i]
        return total

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_cpts(dag, cpts: Iterable[Cpt]) -> "DiscreteJoint":
        """Product of CPT entries over all full assignments.

        One CPT per node; CPT parents must match the graph's parent sets.
        """
        by_child = {}
        for cpt in cpts:
            if cpt.child in by_child:
                raise DistributionError(f"duplicate CPT for {cpt.child}")
            by_child[cpt.child] = cpt
        if set(by_child) != set(dag.nodes):
            raise DistributionError("need exactly one CPT per graph node")
        cards = {}
        for node in dag.nodes:
            cpt = by_child[node]
            if set(cpt.parents) != dag.parents(node):
                raise DistributionError(
                    f"CPT parents for {node} do not match graph parents"
                )
            cards[node] = cpt.child_card
        for node in dag.nodes:
            cpt = by_child[node]
            for p, c in zip(cpt.parents, cpt.parent_cards):
                if cards[p] != c:
                    raise DistributionError(
                        f"CPT for {node}: cardinality mismatch on parent {p}"
                    )
        variables = [(n, cards[n]) for n in dag.nodes]
        pos = {n: i for i, n in enumerate(dag.nodes)}
        probs = []
        for a in itertools.product(*(range(cards[n]) for n in dag.nodes)):
            p = ONE
            for node in dag.nodes:
                cpt = by_child[node]
                pa = tuple(a[pos[q]] for q in cpt.parents)
                p *= cpt.rows[pa][a[pos[node]]]
                if p == 0:
                    break
            probs.append(p)
        return DiscreteJoint(variables, probs)

    @staticmethod
    def independent(cpts: Iterable[Cpt]) -> "DiscreteJoint":
        """Product distribution of parentless CPTs."""
        cpts = list(cpts)
        if any(c.parents for c in cpts):
            raise DistributionError("independent() takes parentless CPTs only")
        variables = [(c.child, c.child_card) for c in cpts]
        probs = []
        for a in itertools.product(*(range(c.child_card) for c in cpts)):
            p = ONE
            for v, c in zip(a, cpts):
                p *= c.rows[()][v]
            probs.append(p)
        return DiscreteJoint(variables, probs)

    # -- queries --------------------------------------------------------------

    def marginalize(self, keep: Iterable[str]) -> "DiscreteJoint":
        """Exact summation over all dropped variables."""
        keep = list(keep)
        positions = [self._position(n) for n in keep]
        new_vars = [(n, self.variables[p][1]) for n, p in zip(keep, positions)]
        acc: dict[tuple[int, ...], Fraction] = {}
        for a, p in zip(self.assignments(), self.probs):
            key = tuple(a[i] for i in positions)
            acc[key] = acc.get(key, ZERO) + p
        probs = [acc.get(a, ZERO) for a in itertools.product(*(range(c) for _, c in new_vars))]
        if not new_vars:
            probs = [sum(acc.values(), ZERO)]
        return DiscreteJoint(new_vars, probs)

    def is_independent(self, x: str, y: str, s: Iterable[str] = ()) -> bool:
        """Exact pairwise CI: P(x,y|s) == P(x|s) P(y|s) wherever P(s) > 0."""
        return self.is_independent_sets([x], [y], s)

    def is_independent_sets(
        self, xs: Iterable[str], ys: Iterable[str], s: Iterable[str] = ()
    ) -> bool:
        """Set-valued exact CI check on the marginal table over xs, ys, s.

        Zero-probability conditioning events are skipped, never divided by:
        the criterion is the cross-multiplied identity
        P(x,y,s) * P(s) == P(x,s) * P(y,s).
        """
        xs, ys, s = list(xs), list(ys), list(s)
        if not xs or not ys:
            raise DistributionError("query sets must be non-empty")
        names = xs + ys + s
        if len(set(names)) != len(names):
            raise DistributionError("query sets must be pairwise disjoint")
        sub = self.marginalize(names)
        nx, ny = len(xs), len(ys)
        p_s: dict[tuple, Fraction] = {}
        p_xs: dict[tuple, Fraction] = {}
        p_ys: dict[tuple, Fraction] = {}
        cells = []
        for a, p in zip(sub.assignments(), sub.probs):
            xk, yk, sk = a[:nx], a[nx : nx + ny], a[nx + ny :]
            p_s[sk] = p_s.get(sk, ZERO) + p
            p_xs[(xk, sk)] = p_xs.get((xk, sk), ZERO) + p
            p_ys[(yk, sk)] = p_ys.get((yk, sk), ZERO) + p
            cells.append((xk, yk, sk, p))
        for xk, yk, sk, p in cells:
            if p_s[sk] == 0:
                continue
            if p * p_s[sk] != p_xs[(xk, sk)] * p_ys[(yk, sk)]:
                return False
        return True

    def sample(self, n: int, seed: int) -> Dataset:
        """n i.i.d. draws; deterministic for a fixed seed."""
        if n < 1:
            raise DistributionError("need at least one sample")
        rng = random.Random(seed)
        cum = list(itertools.accumulate(float(p) for p in self.probs))
        cum[-1] = 1.0
        cells = list(self.assignments())
        idx = rng.choices(range(len(cells)), cum_weights=cum, k=n)
        return Dataset(self.variables, tuple(cells[i] for i in idx))
