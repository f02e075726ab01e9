import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from longpaths import oracles
from longpaths.graphs import EdgeProbModel, Graph, sample_er
from longpaths.paths import (
    EXACT_MAX_N,
    CycleWalk,
    longest_path_exact,
    longest_path_rotation,
    min_degree_event,
)
from longpaths.rng import trial_seed
from longpaths.cycles import validate_cycle


def graphs(max_n=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = list(itertools.combinations(range(n), 2))
        edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph.from_edges(n, edges)
    return build()


def is_path(walk, g):
    return len(walk) == 1 or bool(validate_cycle(walk, g))


def test_exact_complete():
    assert longest_path_exact(Graph.complete(5)).vertices == (0, 1, 2, 3, 4)


def test_exact_star():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert longest_path_exact(star).vertices == (1, 0, 2)


def test_exact_isolated_vertices():
    assert longest_path_exact(Graph(3, np.empty((0, 2)))).vertices == (0,)


def test_exact_rejects_large():
    with pytest.raises(ValueError, match="longest_path_rotation"):
        longest_path_exact(Graph.complete(EXACT_MAX_N + 1))


@given(graphs(7))
def test_exact_matches_bruteforce(g):
    assert longest_path_exact(g).vertices == oracles.longest_path_bruteforce(g.n, g.edges.tolist())


@given(graphs(9), st.data())
def test_exact_monotone_under_edge_addition(g, data):
    missing = [(i, j) for i, j in itertools.combinations(range(g.n), 2) if not g.has_edge(i, j)]
    if not missing:
        return
    extra = data.draw(st.sampled_from(missing))
    bigger = Graph.from_edges(g.n, g.edges.tolist() + [extra])
    assert len(longest_path_exact(bigger)) >= len(longest_path_exact(g))


def test_exact_18_vertices():
    g = sample_er(EdgeProbModel.homogeneous(18, 0.25), seed=4)
    walk = longest_path_exact(g)
    assert is_path(walk, g)
    assert len(walk) >= len(longest_path_rotation(g, 2000, seed=0))


def test_rotation_path_graph():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert len(longest_path_rotation(g, budget=10, seed=0)) == 4


@pytest.mark.parametrize("budget", [1, 5, 1000])
def test_rotation_complete(budget):
    assert len(longest_path_rotation(Graph.complete(8), budget=budget, seed=1)) == 8


@given(graphs(10), st.integers(0, 2**32))
def test_rotation_sound(g, seed):
    walk = longest_path_rotation(g, budget=200, seed=seed)
    assert is_path(walk, g)
    assert len(walk) <= len(longest_path_exact(g))


def test_rotation_deterministic():
    g = sample_er(EdgeProbModel.homogeneous(60, 0.08), seed=2)
    assert longest_path_rotation(g, 500, seed=3) == longest_path_rotation(g, 500, seed=3)


def test_rotation_matches_exact_mostly():
    hits = 0
    for s in range(100):
        g = sample_er(EdgeProbModel.homogeneous(12, 0.5), trial_seed(99, s))
        exact, heur = len(longest_path_exact(g)), len(longest_path_rotation(g, 10_000, seed=s))
        assert heur <= exact
        hits += heur == exact
    assert hits >= 90


def test_rotation_large_sparse_graph():
    g = sample_er(EdgeProbModel.homogeneous(400, 0.02), seed=8)
    walk = longest_path_rotation(g, budget=5000, seed=0)
    assert is_path(walk, g)
    assert len(walk) > 300


def test_min_degree_event():
    k5 = Graph.complete(5)
    assert min_degree_event(k5, 0, 3)
    assert not min_degree_event(k5, 0, 4)
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    # removing the middle vertex leaves two isolated vertices
    assert not min_degree_event(path, 1, 1)
    assert min_degree_event(path, 0, 1)


def test_min_degree_event_frequency():
    # A_i fails with probability at most a_n = n exp(-q(delta) beta2 n p)
    from longpaths.bounds import min_degree_failure_bound

    n, p, beta2, delta = 100, 0.5, 0.3, 0.5
    t0 = int(np.ceil(beta2 * n * p))
    hits = sum(min_degree_event(sample_er(EdgeProbModel.homogeneous(n, p), trial_seed(5, s)), 0, t0)
               for s in range(1000))
    bound = min_degree_failure_bound(n, p, beta2, delta).value
    assert hits / 1000 >= 1 - bound


def test_cycle_walk_hops():
    assert CycleWalk((3, 1, 2), closed=True).hops() == [(3, 1), (1, 2), (2, 3)]
    assert CycleWalk((3, 1, 2)).hops() == [(3, 1), (1, 2)]
