"""Exact discrete joints: construction, marginals, independence, sampling."""

from fractions import Fraction as F

import pytest

from kassoc.distribution import Cpt, DiscreteJoint, DistributionError
from kassoc.graph import Dag


def coin_pair():
    return DiscreteJoint.independent([Cpt.coin("A", F(1, 2)), Cpt.coin("B", F(1, 3))])


class TestCpt:
    def test_coin(self):
        c = Cpt.coin("E", F(1, 4))
        assert c.rows[()] == (F(3, 4), F(1, 4))

    def test_prior_must_normalize(self):
        with pytest.raises(DistributionError):
            Cpt.prior("A", [F(1, 2), F(1, 3)])

    def test_rows_must_cover_parent_domain(self):
        with pytest.raises(DistributionError):
            Cpt("Y", 2, ("X",), (2,), {(0,): (F(1, 2), F(1, 2))})

    def test_noisy_function_marginalizes_the_coin(self):
        xor = Cpt.noisy_function(
            "Y", ("X", "Z"), (2, 2), lambda x, z: x ^ z, F(1, 4)
        )
        assert xor.rows[(0, 0)] == (F(3, 4), F(1, 4))
        assert xor.rows[(1, 0)] == (F(1, 4), F(3, 4))


class TestJoint:
    def test_probabilities_sum_to_one(self):
        j = coin_pair()
        assert sum(j.probs) == 1

    def test_prob_partial_assignment(self):
        j = coin_pair()
        assert j.prob({"A": 1}) == F(1, 2)
        assert j.prob({"A": 1, "B": 0}) == F(1, 3)

    def test_prob_rejects_unknown_variable(self):
        with pytest.raises(DistributionError):
            coin_pair().prob({"C": 0})

    def test_marginalize_keeps_exact_mass(self):
        j = coin_pair()
        m = j.marginalize(["B"])
        assert m.prob({"B": 1}) == F(1, 3)

    def test_marginalize_to_scalar(self):
        m = coin_pair().marginalize([])
        assert m.probs == (F(1),)

    def test_from_cpts_requires_full_cover(self):
        dag = Dag(["A", "B"], [("A", "B")])
        with pytest.raises(DistributionError):
            DiscreteJoint.from_cpts(dag, [Cpt.coin("A", F(1, 2))])

    def test_from_cpts_parent_mismatch(self):
        dag = Dag(["A", "B"], [])
        bad = Cpt.noisy_function("B", ("A",), (2,), lambda a: a, F(0))
        with pytest.raises(DistributionError):
            DiscreteJoint.from_cpts(dag, [Cpt.coin("A", F(1, 2)), bad])


class TestExampleOneIdentities:
    """Noisy-xor collider at p=1/4: the joint hits its closed forms."""

    def test_joint_point_mass(self, example1):
        j = example1.joint
        assert j.prob({"X": 1, "Z": 1, "Y": 1}) == F(1, 16)

    def test_product_differs(self, example1):
        j = example1.joint
        prod = j.prob({"X": 1, "Z": 1}) * j.prob({"Y": 1})
        assert prod == F(1, 8)
        assert j.prob({"X": 1, "Z": 1, "Y": 1}) != prod

    def test_marginal_independencies(self, example1):
        j = example1.joint
        assert j.is_independent("X", "Y")
        assert j.is_independent("Z", "Y")
        assert j.is_independent("X", "Z")

    def test_conditional_dependencies(self, example1):
        j = example1.joint
        assert not j.is_independent("X", "Z", {"Y"})
        assert not j.is_independent("X", "Y", {"Z"})
        assert not j.is_independent("Y", "Z", {"X"})


class TestExampleTwoIdentities:
    """Contextual xor (p=1/2, q=1/4) closed forms from the and-gate."""

    def test_y_marginal(self, example2):
        assert example2.joint.prob({"Y": 1}) == F(3, 8)

    def test_wy_joint_is_half_p(self, example2):
        assert example2.joint.prob({"W": 1, "Y": 1}) == F(1, 4)

    def test_full_point_mass(self, example2):
        j = example2.joint
        assert j.prob({"X": 1, "W": 1, "Y": 1, "Z": 1}) == F(1, 32)

    def test_context_node_dependence(self, example2):
        j = example2.joint
        assert not j.is_independent("W", "Y")
        assert j.is_independent("X", "W", {"Y"})
        assert j.is_independent("Z", "W", {"Y"})
        assert not j.is_independent("X", "W", {"Y", "Z"})
        assert not j.is_independent("Z", "W", {"X", "Y"})

    def test_set_query_against_context(self, example2):
        assert example2.joint.is_independent_sets({"X", "Z"}, {"W"}, ())


class TestSampling:
    def test_fixed_seed_reproduces(self, example1):
        a = example1.joint.sample(50, seed=7)
        b = example1.joint.sample(50, seed=7)
        assert a.rows == b.rows

    def test_different_seeds_differ(self, example1):
        a = example1.joint.sample(200, seed=1)
        b = example1.joint.sample(200, seed=2)
        assert a.rows != b.rows

    def test_values_in_domain(self, example1):
        data = example1.joint.sample(100, seed=3)
        for name in data.names:
            col = data.column(name)
            assert set(col) <= {0, 1}

    def test_empirical_mean_tracks_marginal(self, example1):
        data = example1.joint.sample(20000, seed=11)
        freq = sum(data.column("Y")) / len(data.rows)
        assert abs(freq - 0.5) < 0.02
