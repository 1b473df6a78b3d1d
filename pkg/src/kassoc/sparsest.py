"""Brute-force Sparsest Permutation reference.

For each permutation, an edge from the j-th to the k-th ordered node (j <
k) is present iff the pair stays dependent given the rest of the prefix.
The sparsest permutations are the minimizers of the induced edge count.
No search heuristics: full factorial enumeration, guarded at 8 variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .oracle import IndependenceOracle, OracleError


@dataclass(frozen=True)
class PermutationDag:
    permutation: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_dict(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "edges": sorted(f"{a}->{b}" for a, b in self.edges),
            "edge_count": self.edge_count,
        }


def dag_from_permutation(
    o: IndependenceOracle, permutation: Sequence[str]
) -> PermutationDag:
    """One CI query per ordered pair j < k; deterministic."""
    perm = tuple(permutation)
    if sorted(perm) != sorted(o.variables):
        raise OracleError("permutation must cover all oracle variables")
    edges = []
    for k in range(1, len(perm)):
        prefix = set(perm[:k])
        for j in range(k):
            given = prefix - {perm[j]}
            if not o.query(perm[j], perm[k], given):
                edges.append((perm[j], perm[k]))
    return PermutationDag(perm, frozenset(edges))


def sparsest_permutations(
    o: IndependenceOracle,
) -> list[tuple[tuple[str, ...], PermutationDag]]:
    """All minimum-edge-count permutations, in lexicographic order.

    Lexicographic relative to the oracle's variable order.
    """
    if len(o.variables) > 8:
        raise OracleError("factorial enumeration limited to 8 variables")
    results = []
    best = None
    for perm in itertools.permutations(o.variables):
        pdag = dag_from_permutation(o, perm)
        if best is None or pdag.edge_count < best:
            best = pdag.edge_count
            results = [(perm, pdag)]
        elif pdag.edge_count == best:
            results.append((perm, pdag))
    return results
