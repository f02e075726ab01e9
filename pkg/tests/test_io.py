import numpy as np
from hypothesis import given, strategies as st

from longpaths.graphs import EdgeProbModel, sample_er, sample_rgg
from longpaths.io import dump_graph, dump_points, load_graph, load_points


def test_graph_dump_golden():
    from longpaths.graphs import Graph

    g = Graph.from_edges(4, [(2, 0), (1, 3)])
    assert dump_graph(g) == "4 2\n0 2\n1 3\n"


@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**63))
def test_graph_round_trip(n, p, seed):
    g = sample_er(EdgeProbModel.homogeneous(n, p), seed)
    assert load_graph(dump_graph(g)) == g


@given(st.integers(1, 50), st.integers(0, 2**63))
def test_points_round_trip_exactly(n, seed):
    cloud, _ = sample_rgg(n, 0.2, seed=seed)
    pts, r = load_points(dump_points(cloud))
    assert r == 0.2
    assert np.array_equal(pts, cloud.points)


def test_points_dump_format():
    cloud, _ = sample_rgg(2, 0.25, seed=1)
    lines = dump_points(cloud).splitlines()
    assert lines[0] == "2 0.25"
    assert all(len(line.split()) == 2 for line in lines[1:])
