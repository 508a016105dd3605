"""Smoke tests for the python bindings; the heavy lifting lives in ctest."""

import math

import pytest

import bnactive as bn


@pytest.fixture
def coin_pair():
    m1 = bn.parse_network(
        '{"variables": [{"name": "A", "states": ["s0", "s1"]}],'
        ' "edges": [], "cpts": {"A": [[0.5, 0.5]]}}'
    )
    m2 = bn.parse_network(
        '{"variables": [{"name": "A", "states": ["s0", "s1"]}],'
        ' "edges": [], "cpts": {"A": [[0.25, 0.75]]}}'
    )
    return bn.Committee([m1, m2], [0.5, 0.5])


def test_network_roundtrip():
    net = bn.random_network(5, max_arity=3, edge_density=0.4, seed=3)
    again = bn.parse_network(bn.serialize_network(net))
    assert len(again) == 5
    assert again.dag.edge_count() == net.dag.edge_count()


def test_mutilation_and_inference():
    net = bn.random_network(4, seed=11)
    q = bn.Intervention({1: 0})
    cut = bn.mutilate(net, q)
    assert cut.dag.parents(1) == []
    lp = bn.joint_log_prob(net, [0, 0, 0, 0], q)
    assert lp <= 0.0
    _, _, probs = bn.exact_marginal(net, [0], q)
    assert math.isclose(sum(probs), 1.0, abs_tol=1e-9)


def test_measures_satisfy_the_sum_identity(coin_pair):
    v_js = bn.js(coin_pair).value
    v_bjs = bn.bjs(coin_pair).value
    v_kl2 = bn.kl2(coin_pair).value
    assert math.isclose(v_kl2, v_js + v_bjs, abs_tol=1e-12)
    assert v_js == pytest.approx(0.0338, abs=5e-4)


def test_learning_pipeline_runs():
    truth = bn.random_network(4, max_arity=2, cpt_alpha=0.4, seed=21)
    ds = bn.Dataset(truth.variables)
    for i in range(120):
        ds.append(bn.oracle_respond(truth, bn.Intervention(), seed=1000 + i))
    learned = bn.local_search(ds, seed=5)
    assert len(learned) == 4

    committee = bn.build_committee(ds, 2, seed=6)
    query, score = bn.greedy_query(committee, measure="kl2", budget=2)
    assert len(query) <= 2
    assert score.value >= 0.0


def test_sampling_is_seeded():
    net = bn.random_network(3, seed=31)
    a = bn.forward_sample(net, bn.Intervention(), 20, seed=9)
    b = bn.forward_sample(net, bn.Intervention(), 20, seed=9)
    assert a == b


def test_invalid_intervention_raises(coin_pair):
    with pytest.raises(RuntimeError):
        bn.mutilate(coin_pair.member(0), bn.Intervention({7: 0}))
