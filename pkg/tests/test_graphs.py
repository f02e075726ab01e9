import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, stats

from longpaths import oracles
from longpaths.graphs import (
    Density,
    EdgeProbModel,
    Graph,
    audit_conditions,
    geometric_edges,
    sample_er,
    sample_rgg,
)
from longpaths.rng import make_rng, trial_seed


# -- Graph container ------------------------------------------------------


def test_graph_normalises_edges():
    g = Graph.from_edges(4, [(2, 1), (0, 3), (1, 2)])
    assert g.edges.tolist() == [[0, 3], [1, 2]]
    assert g.m == 2
    assert g.has_edge(2, 1) and g.has_edge(1, 2)
    assert not g.has_edge(0, 1)


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 4)], [(-1, 2)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph.from_edges(4, edges)


def test_graph_rejects_empty_vertex_set():
    with pytest.raises(ValueError):
        Graph(0, np.empty((0, 2)))


def test_graph_neighbors_and_degrees():
    g = Graph.from_edges(5, [(0, 1), (0, 4), (3, 4)])
    assert g.degrees.tolist() == [2, 1, 0, 1, 2]
    assert [nb.tolist() for nb in g.neighbors] == [[1, 4], [0], [], [4], [0, 3]]


@given(st.integers(2, 12), st.data())
def test_adjacency_is_symmetric(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    g = Graph.from_edges(n, chosen)
    u, v = np.triu_indices(n, 1)
    assert (g.has_edges(u, v) == g.has_edges(v, u)).all()
    assert g.has_edges(u, v).sum() == len(chosen)


# -- ER sampling -------------------------------------------------------------


def test_er_p_one_is_complete():
    g = sample_er(EdgeProbModel.homogeneous(4, 1.0), seed=3)
    assert g.m == 6
    assert g == Graph.complete(4)


def test_er_p_zero_is_empty():
    assert sample_er(EdgeProbModel.homogeneous(5, 0.0), seed=3).m == 0


def test_er_is_reproducible_and_seed_sensitive():
    model = EdgeProbModel.homogeneous(60, 0.3)
    a, b, c = sample_er(model, 11), sample_er(model, 11), sample_er(model, 12)
    assert a == b
    assert a != c


def test_er_pair_frequencies():
    # 2000 draws per pair. A single pair lands in 0.3 +- 0.03 with the exact
    # binomial probability `cover`; across all 19900 pairs the share inside
    # the band must agree with `cover` to within 4 standard errors.
    n, p, seeds = 200, 0.3, 2000
    model = EdgeProbModel.homogeneous(n, p)
    counts = np.zeros(n * (n - 1) // 2)
    iu = np.triu_indices(n, 1)
    keys = iu[0] * n + iu[1]
    for s in range(seeds):
        g = sample_er(model, trial_seed(7, s))
        counts[np.searchsorted(keys, g.edges[:, 0] * n + g.edges[:, 1])] += 1
    freq = counts / seeds
    k = np.arange(seeds + 1)
    cover = stats.binom.pmf(k, seeds, p)[np.abs(k / seeds - p) < 0.03].sum()
    inside = (np.abs(freq - p) < 0.03).mean()
    assert abs(inside - cover) < 4 * math.sqrt(cover * (1 - cover) / len(freq))
    assert abs(freq.mean() - p) < 1e-3


def test_weighted_probabilities_are_capped():
    model = EdgeProbModel.weighted(0.5, np.array([1.0, 2.0, 4.0]))
    P = model.prob_matrix()
    assert P[0, 1] == pytest.approx(1.0)
    assert P[0, 2] == 1.0 and P[1, 2] == 1.0
    assert np.allclose(P, P.T, equal_nan=True)


def test_explicit_matrix_must_be_symmetric():
    bad = np.array([[0, 0.2], [0.3, 0]])
    with pytest.raises(ValueError):
        EdgeProbModel.explicit(0.2, bad)


def test_explicit_matrix_rejects_out_of_range():
    with pytest.raises(ValueError):
        EdgeProbModel.explicit(0.2, np.array([[0, 1.5], [1.5, 0]]))


# -- condition audit ------------------------------------------------------------


@pytest.mark.parametrize("n", [5, 20, 100])
def test_audit_homogeneous_is_one(n):
    a = audit_conditions(EdgeProbModel.homogeneous(n, 0.2), beta2=0.5)
    assert a.beta3_hat == pytest.approx(1.0)
    assert a.beta1_hat == pytest.approx(1.0)


def test_audit_hand_example():
    P = np.array([[0, 0.1, 0.3], [0.1, 0, 0.2], [0.3, 0.2, 0]])
    a = audit_conditions(EdgeProbModel.explicit(0.2, P), beta2=1.0)
    assert a.m0 == 1
    assert a.beta3_hat == pytest.approx(0.75)
    assert a.beta1_hat == pytest.approx(0.5)


def test_audit_unit_weights_match_homogeneous():
    w = audit_conditions(EdgeProbModel.weighted(0.3, np.ones(30)), beta2=0.7)
    h = audit_conditions(EdgeProbModel.homogeneous(30, 0.3), beta2=0.7)
    assert (w.beta1_hat, w.beta3_hat, w.m0) == pytest.approx((h.beta1_hat, h.beta3_hat, h.m0))


def test_audit_infeasible_when_m0_too_large():
    a = audit_conditions(EdgeProbModel.homogeneous(4, 1.0), beta2=1.0)
    assert a.m0 == 4 and not a.feasible and math.isinf(a.beta1_hat)


@given(st.integers(3, 7), st.integers(0, 2**32 - 1), st.floats(0.05, 1.0))
def test_audit_matches_subset_enumeration(n, seed, beta2):
    rng = make_rng(seed)
    P = np.triu(rng.random((n, n)), 1)
    P = P + P.T
    p_n = 0.5
    model = EdgeProbModel.explicit(p_n, P)
    a = audit_conditions(model, beta2)
    if not a.feasible:
        return
    want = oracles.beta1_bruteforce(model.prob_matrix(), p_n, a.m0)
    assert a.beta1_hat == pytest.approx(want, rel=1e-12)
    assert a.beta1_hat <= a.beta3_hat + 1e-12


# -- RGG sampling -----------------------------------------------------------


def test_rgg_large_radius_is_complete():
    cloud, g = sample_rgg(4, math.sqrt(2) + 0.01, seed=5)
    assert g == Graph.complete(4)
    assert (np.abs(cloud.points) <= 0.5).all()


def test_rgg_edge_rule_is_strict():
    pts = np.array([[0.0, 0.0], [0.25, 0.0], [0.0, 0.3]])
    assert geometric_edges(pts, 0.25).tolist() == []
    assert geometric_edges(pts, 0.2500001).tolist() == [[0, 1]]


def test_rgg_two_far_points_have_no_edge():
    cloud, _ = sample_rgg(2, 1.0, seed=9)
    d = float(np.linalg.norm(cloud.points[0] - cloud.points[1]))
    _, g = sample_rgg(2, d, seed=9)
    assert g.m == 0


@given(st.integers(1, 80), st.floats(0.01, 0.6), st.integers(0, 2**63))
def test_rgg_edges_match_distances(n, r, seed):
    cloud, g = sample_rgg(n, r, seed=seed)
    d = np.linalg.norm(cloud.points[:, None] - cloud.points[None], axis=2)
    iu = np.triu_indices(n, 1)
    assert (g.has_edges(*iu) == (d[iu] < r)).all()


def test_rgg_reproducible():
    a = sample_rgg(300, 0.1, seed=42)
    b = sample_rgg(300, 0.1, seed=42)
    assert np.array_equal(a[0].points, b[0].points) and a[1] == b[1]


def _expected_degree(n, r):
    # E|disc cap S| for X uniform on S = int over offsets (u, v) in the disc of (1-|u|)(1-|v|)
    val, _ = integrate.dblquad(
        lambda v, u: (1 - abs(u)) * (1 - abs(v)),
        -r, r, lambda u: -math.sqrt(r * r - u * u), lambda u: math.sqrt(r * r - u * u))
    return (n - 1) * val


def test_rgg_mean_degree():
    n = 5000
    r = math.sqrt(4 / n)
    degs = [sample_rgg(n, r, seed=trial_seed(3, s))[1].degrees.mean() for s in range(100)]
    mean = float(np.mean(degs))
    assert mean == pytest.approx(n * math.pi * r * r, rel=0.05)
    assert mean == pytest.approx(_expected_degree(n, r), rel=0.01)


def test_custom_density_rejection():
    dens = Density(lambda xy: 1.5 - (xy[:, 0] + 0.5), inf=0.5, sup=1.5, name="ramp")
    cloud, _ = sample_rgg(4000, 0.05, density=dens, seed=1)
    # density 1.5 - x' on [0,1] has mean x' = 5/12
    assert float(cloud.points[:, 0].mean() + 0.5) == pytest.approx(5 / 12, abs=0.015)
    assert 0.5 < cloud.acceptance_rate <= 1.0
    assert cloud.acceptance_rate == pytest.approx(1 / 1.5, abs=0.03)


def test_density_bounds_are_checked():
    with pytest.raises(ValueError):
        Density(lambda xy: np.ones(len(xy)), inf=0.0, sup=1.0)
    with pytest.raises(ValueError):
        Density(lambda xy: np.ones(len(xy)), inf=1.0, sup=0.0)
    liar = Density(lambda xy: np.full(len(xy), 3.0), inf=0.5, sup=2.0, name="liar")
    with pytest.raises(ValueError, match="liar"):
        sample_rgg(10, 0.1, density=liar, seed=0)
