"""Oracle layer: caching, counting, and backend agreement."""

import pytest

from kassoc.graph import Dag
from kassoc.oracle import (
    DiscreteOracle,
    GaussianOracle,
    GraphOracle,
    OracleError,
)


def test_query_counts_cache_hits_once(example1):
    o = DiscreteOracle(example1.joint)
    assert o.query_count == 0
    o.query("X", "Y")
    o.query("Y", "X")  # symmetric, cached
    o.query("X", "Y", ())
    assert o.query_count == 1


def test_query_validates_variables(example1):
    o = DiscreteOracle(example1.joint)
    with pytest.raises(OracleError):
        o.query("X", "Q")
    with pytest.raises(OracleError):
        o.query("X", "X")
    with pytest.raises(OracleError):
        o.query("X", "Y", {"X"})


def test_graph_oracle_answers_dsep():
    dag = Dag(["A", "B", "C"], [("A", "B"), ("B", "C")])
    o = GraphOracle(dag)
    assert o.query("A", "C", {"B"})
    assert not o.query("A", "C")
    assert o.query_sets({"A"}, {"C"}, {"B"})


def test_discrete_oracle_matches_graph_on_faithful_scenario(all_builtins):
    s = all_builtins["chain"]
    graph, exact = GraphOracle(s.dag), DiscreteOracle(s.joint)
    import itertools

    for x, y in itertools.combinations(s.dag.nodes, 2):
        rest = [v for v in s.dag.nodes if v not in (x, y)]
        for r in range(len(rest) + 1):
            for cond in itertools.combinations(rest, r):
                assert graph.query(x, y, cond) == exact.query(x, y, cond)


def test_gaussian_oracle_cancellation(all_builtins):
    o = GaussianOracle(all_builtins["cancel3"].gaussian)
    assert o.query("X", "Y")
    assert not o.query("X", "Y", {"Z"})


def test_gaussian_set_query(all_builtins):
    o = GaussianOracle(all_builtins["cancel4"].gaussian)
    assert not o.query_sets({"X", "Z"}, {"W", "Y"})
