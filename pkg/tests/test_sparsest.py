"""Sparsest-permutation reference search."""

import pytest

from kassoc.oracle import DiscreteOracle, GraphOracle, OracleError
from kassoc.graph import Dag
from kassoc.sparsest import dag_from_permutation, sparsest_permutations
from kassoc.scenarios import builtin


class TestPermutationDags:
    def test_chain_in_causal_order(self):
        o = DiscreteOracle(builtin("chain").joint)
        pdag = dag_from_permutation(o, ("X", "Y", "Z"))
        assert set(pdag.edges) == {("X", "Y"), ("Y", "Z")}

    def test_chain_reversed_is_equally_sparse(self):
        o = DiscreteOracle(builtin("chain").joint)
        pdag = dag_from_permutation(o, ("Z", "Y", "X"))
        assert pdag.edge_count == 2

    def test_edge_rule_uses_prefix_minus_source(self):
        o = DiscreteOracle(builtin("collider").joint)
        # collider in causal order: Y last, conditioning on the full prefix
        pdag = dag_from_permutation(o, ("X", "Z", "Y"))
        assert set(pdag.edges) == {("X", "Y"), ("Z", "Y")}


class TestExampleTwoWalkthrough:
    """Full factorial over the four variables of the contextual xor."""

    @pytest.fixture()
    def minimizers(self, example2):
        return sparsest_permutations(DiscreteOracle(example2.joint))

    def test_minimum_edge_count_is_three(self, minimizers):
        assert minimizers[0][1].edge_count == 3

    def test_causal_order_recovers_the_graph(self, example2):
        o = DiscreteOracle(example2.joint)
        pdag = dag_from_permutation(o, ("X", "Z", "W", "Y"))
        assert set(pdag.edges) == {("X", "Y"), ("Z", "Y"), ("W", "Y")}

    def test_listed_suboptimal_permutations(self, example2):
        o = DiscreteOracle(example2.joint)
        assert dag_from_permutation(o, ("X", "Z", "Y", "W")).edge_count == 5
        assert dag_from_permutation(o, ("Z", "W", "Y", "X")).edge_count == 4

    def test_every_minimizer_puts_y_last(self, minimizers):
        for perm, _ in minimizers:
            assert perm[-1] == "Y"


def test_guard_rejects_large_variable_sets():
    nodes = [f"v{i}" for i in range(9)]
    o = GraphOracle(Dag(nodes, []))
    with pytest.raises(OracleError):
        sparsest_permutations(o)
