import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gambitnet.graph import BINARY, Network, edge_degree_pairs
from gambitnet.measures import (
    integer_correlation,
    knn_curve,
    local_degree_difference,
    newman_assortativity,
    newman_from_adjacency,
    rich_club,
    spearman_assortativity,
    spearman_from_adjacency,
)

from conftest import to_network
from oracles import newman_oracle, rich_club_oracle, spearman_oracle


@pytest.mark.parametrize("n", [2, 3, 5, 10])
def test_newman_star_is_minus_one(n):
    res = newman_assortativity(to_network(nx.star_graph(n)))
    assert res.value == -1.0 and res.n_edges == n


def test_newman_complete_graph_undefined():
    res = newman_assortativity(to_network(nx.complete_graph(4)))
    assert res.value is None and not res.defined
    assert res.reason == "zero degree variance"


def test_newman_empty_network_undefined():
    res = newman_assortativity(Network(["A", "B"]))
    assert not res.defined and res.reason == "no edges"


def test_newman_diamond_tail(diamond_tail):
    # exact value -5/7 from the Fraction oracle
    assert newman_assortativity(diamond_tail).value == pytest.approx(-5 / 7, abs=1e-15)


def test_spearman_examples(diamond_tail):
    assert spearman_assortativity(to_network(nx.star_graph(3))).value == -1.0
    assert spearman_assortativity(to_network(nx.complete_graph(5))).value is None
    assert spearman_assortativity(diamond_tail).value == pytest.approx(-51 / 70, abs=1e-15)


def test_weights_are_ignored():
    a = Network([], [("A", "B", 5.0), ("B", "C", 0.1), ("C", "D", 2.0), ("B", "D", 1.0)])
    b = Network([], [(u, v, 1.0) for u, v in a.edges], kind=BINARY)
    assert newman_assortativity(a).value == newman_assortativity(b).value


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 12), st.floats(0.1, 0.9), st.integers(0, 100_000))
def test_matches_exact_oracle(n, p, seed):
    G = nx.gnp_random_graph(n, p, seed=seed)
    net = to_network(G)
    for measure, oracle in ((newman_assortativity, newman_oracle), (spearman_assortativity, spearman_oracle)):
        expected = oracle(G)
        got = measure(net).value
        if expected is None:
            assert got is None
        else:
            assert abs(got - float(expected)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.floats(0.1, 0.9), st.integers(0, 100_000))
def test_adjacency_fast_path_agrees(n, p, seed):
    net = to_network(nx.gnp_random_graph(n, p, seed=seed))
    adj = net.adjacency()
    assert newman_from_adjacency(adj) == newman_assortativity(net).value
    assert spearman_from_adjacency(adj) == spearman_assortativity(net).value


def test_orientation_invariance():
    rng = random.Random(3)
    for seed in range(50):
        G = nx.gnp_random_graph(10, 0.35, seed=seed)
        edges = list(G.edges)
        rng.shuffle(edges)
        flipped = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]
        a = newman_assortativity(to_network(G)).value
        b = newman_assortativity(to_network(nx.Graph(flipped))).value if flipped else None
        if G.number_of_edges():
            assert a == b
        pairs = edge_degree_pairs(to_network(G))
        perm = np.random.default_rng(seed).permutation(len(pairs))
        assert integer_correlation(pairs[perm, 0], pairs[perm, 1]) == integer_correlation(pairs[:, 0], pairs[:, 1])


def test_excess_degree_shift_is_exact():
    for seed in range(200):
        net = to_network(nx.gnp_random_graph(9, 0.4, seed=seed))
        pairs = edge_degree_pairs(net)
        r = newman_assortativity(net).value
        assert integer_correlation(pairs[:, 0] - 1, pairs[:, 1] - 1) == r


@pytest.mark.parametrize(
    "G",
    [nx.path_graph(4), nx.star_graph(6), nx.complete_bipartite_graph(2, 5), nx.path_graph(7)],
    ids=["P4", "star6", "K25", "P7"],
)
def test_spearman_equals_newman_with_two_degree_classes(G):
    # With two distinct degrees the rank map is affine, so both coincide.
    net = to_network(G)
    assert len(set(dict(G.degree()).values())) == 2
    assert spearman_assortativity(net).value == pytest.approx(newman_assortativity(net).value, abs=1e-15)


def test_knn_star(star3):
    curve = knn_curve(star3)
    assert curve.per_node["0"] == 1
    assert all(curve.per_node[leaf] == 3 for leaf in "123")
    assert curve.slope < 0 and curve.trend == "disassortative"


def test_knn_cycle_single_degree_class():
    curve = knn_curve(to_network(nx.cycle_graph(5)))
    assert curve.per_degree == {2: 2.0}
    assert curve.slope is None and curve.trend == "neutral"


def test_knn_diamond_tail(diamond_tail):
    per_node = knn_curve(diamond_tail).per_node
    assert per_node == pytest.approx({"A": 3, "B": 5 / 3, "C": 5 / 2, "D": 5 / 2})


def test_knn_matches_networkx():
    for seed in range(20):
        G = nx.gnp_random_graph(15, 0.25, seed=seed)
        net = to_network(G)
        ref = nx.average_neighbor_degree(G)
        curve = knn_curve(net)
        for v, d in G.degree():
            if d:
                assert curve.per_node[str(v)] == pytest.approx(ref[v])
            else:
                assert str(v) not in curve.per_node


def test_knn_isolated_nodes_skipped():
    net = Network(["A", "B", "C"], [("A", "B", 1.0)])
    assert set(knn_curve(net).per_node) == {"A", "B"}


def test_rich_club_examples(diamond_tail, star3):
    assert rich_club(to_network(nx.complete_graph(4))).per_k == {0: 1.0, 1: 1.0, 2: 1.0}
    star = rich_club(star3).per_k
    assert star[0] == 0.5 and star[1] is None
    # brute-force oracle: S={B,C,D} for k=1 holds edges BC, CD, DB
    assert rich_club(diamond_tail).per_k == {0: pytest.approx(2 / 3), 1: 1.0, 2: None}


def test_rich_club_matches_oracle_and_is_bounded():
    for seed in range(40):
        G = nx.gnp_random_graph(12, 0.3, seed=seed)
        got = rich_club(to_network(G)).per_k
        expected = rich_club_oracle(G)
        assert got.keys() == expected.keys()
        for k, v in expected.items():
            if v is None:
                assert got[k] is None
            else:
                assert got[k] == pytest.approx(float(v), abs=1e-15)
                assert 0 <= got[k] <= 1


def test_local_degree_difference(star3, diamond_tail):
    assert local_degree_difference(star3, "0") == 2
    assert local_degree_difference(star3, "1") == 2
    assert local_degree_difference(diamond_tail, "B") == pytest.approx(4 / 3)
    for v in range(6):
        assert local_degree_difference(to_network(nx.cycle_graph(6)), str(v)) == 0
    assert local_degree_difference(Network(["A", "B", "C"], [("A", "B", 1.0)]), "C") is None


def test_defined_values_in_range():
    for seed in range(100):
        G = nx.gnp_random_graph(11, 0.3, seed=seed)
        for f in (newman_assortativity, spearman_assortativity):
            v = f(to_network(G)).value
            assert v is None or -1 - 1e-12 <= v <= 1 + 1e-12
            assert v is None or math.isfinite(v)
