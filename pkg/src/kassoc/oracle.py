"""A single independence-query capability with interchangeable backends.

Backends: graph truth (d-separation), exact discrete joint, exact
linear-Gaussian partial correlation, and a sample-based G-test.  All
backends are immutable after construction except the query counter, which
is lock-protected.
"""

from __future__ import annotations

import threading
from typing import Iterable

from .distribution import Dataset, DiscreteJoint
from .gaussian import GaussianSystem, partial_correlation_zero
from .graph import Dag
from .gtest import GTestConfig, g_test


class OracleError(ValueError):
    """Invalid query for the given backend."""


class IndependenceOracle:
    """Base type: answers "is x independent of y given s?"."""

    backend = "abstract"

    def __init__(self, variables: Iterable[str]):
        self._variables = tuple(variables)
        self._count = 0
        self._lock = threading.Lock()
        self._cache: dict | None = {}

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    @property
    def query_count(self) -> int:
        return self._count

    def _bump(self):
        with self._lock:
            self._count += 1

    def query(self, x: str, y: str, s: Iterable[str] = ()) -> bool:
        """True = independent. Deterministic given the backend state."""
        self._check(x, y, s)
        key = None
        if self._cache is not None:
            key = (x, y, frozenset(s)) if x <= y else (y, x, frozenset(s))
            hit = self._cache.get(key)
            if hit is not None:
                return hit
        self._bump()
        ans = self._query(x, y, set(s))
        if self._cache is not None:
            self._cache[key] = ans
        return ans

    def query_sets(self, xs: Iterable[str], ys: Iterable[str], s: Iterable[str] = ()) -> bool:
        """Set-valued query; not every backend supports it."""
        raise OracleError(f"{self.backend} backend does not support set queries")

    def _check(self, x, y, s):
        s = set(s)
        for v in {x, y} | s:
            if v not in self._variables:
                raise OracleError(f"unknown variable {v!r}")
        if x == y or x in s or y in s:
            raise OracleError("query variables must be distinct from the conditioning set")

    def _query(self, x, y, s) -> bool:
        raise NotImplementedError


class GraphOracle(IndependenceOracle):
    """Ground-truth backend: independence = d-separation."""

    backend = "graph"

    def __init__(self, dag: Dag):
        super().__init__(dag.nodes)
        self.dag = dag

    def _query(self, x, y, s):
        return self.dag.d_separated({x}, {y}, s)

    def query_sets(self, xs, ys, s=()):
        self._bump()
        return self.dag.d_separated(set(xs), set(ys), set(s))


class DiscreteOracle(IndependenceOracle):
    """Exact-distribution backend over a rational joint table."""

    backend = "discrete"

    def __init__(self, joint: DiscreteJoint):
        super().__init__(joint.names)
        self.joint = joint

    def _query(self, x, y, s):
        return self.joint.is_independent(x, y, s)

    def query_sets(self, xs, ys, s=()):
        self._bump()
        return self.joint.is_independent_sets(list(xs), list(ys), list(s))


class GaussianOracle(IndependenceOracle):
    """Exact linear-Gaussian backend: zero partial correlation."""

    backend = "gaussian"

    def __init__(self, system: GaussianSystem):
        super().__init__(system.nodes)
        self.system = system
        self._cov = system.covariance()
        self._idx = {n: i for i, n in enumerate(system.nodes)}

    def _query(self, x, y, s):
        return partial_correlation_zero(
            self._cov, self._idx[x], self._idx[y], [self._idx[v] for v in s]
        )

    def query_sets(self, xs, ys, s=()):
        # for a multivariate Gaussian, block independence reduces to all
        # pairwise partial correlations vanishing
        self._bump()
        s = set(s)
        return all(self._query(x, y, s) for x in set(xs) for y in set(ys))


class GTestOracle(IndependenceOracle):
    """Finite-sample backend; deterministic given the dataset."""

    backend = "gtest"

    def __init__(self, dataset: Dataset, config: GTestConfig | None = None):
        super().__init__(dataset.names)
        self.dataset = dataset
        self.config = config or GTestConfig()

    def _query(self, x, y, s):
        return g_test(self.dataset, x, y, sorted(s), self.config).independent
