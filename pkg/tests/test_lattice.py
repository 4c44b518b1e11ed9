import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterforge.errors import ClusterError, ValidationError
from clusterforge.lattice import (
    Cluster,
    bounding_box,
    correlation_operator,
    neighbors,
    validate_cluster,
)
from corpus import connected_subclusters, flood_connected, pauli_dense, random_subcluster

CROSS = Cluster(2, [(1, 1), (0, 1), (2, 1), (1, 0), (1, 2)])


def test_neighbors_examples():
    chain = Cluster.chain(5)
    assert neighbors(chain, (2,)) == {(1,), (3,)}
    assert neighbors(chain, (0,)) == {(1,)}
    ell = Cluster(2, [(0, 0), (1, 0), (1, 1)])
    assert neighbors(ell, (1, 0)) == {(0, 0), (1, 1)}
    with pytest.raises(ClusterError):
        neighbors(chain, (7,))


@settings(max_examples=100, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=16))
def test_neighbor_relation_symmetric(sites):
    c = Cluster(2, sites)
    for a in c.sites:
        nb = neighbors(c, a)
        assert len(nb) <= 4
        for b in nb:
            assert a in neighbors(c, b)


def test_validate_examples():
    assert validate_cluster(Cluster(2, [(0, 0), (0, 1)]))
    report = validate_cluster(Cluster(2, [(0, 0), (2, 0)]))
    assert not report
    assert report.components == [[(0, 0)], [(2, 0)]]
    report = validate_cluster(Cluster(2, []))
    assert not report and "empty" in report.reason


@settings(max_examples=200, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 1)), max_size=12))
def test_validate_agrees_with_flood_fill(sites):
    assert bool(validate_cluster(Cluster(3, sites))) == flood_connected(sites)


def test_construction_errors():
    with pytest.raises(ClusterError):
        Cluster(2, [(0, 0), (0, 0)])
    with pytest.raises(ClusterError):
        Cluster(2, [(0,)])
    with pytest.raises(ClusterError):
        Cluster(0, [])


def test_lexicographic_qubit_order():
    c = Cluster(2, [(1, 0), (0, 1), (0, 0)])
    assert c.sites == ((0, 0), (0, 1), (1, 0))
    assert c.index((1, 0)) == 2


def test_correlation_operator_examples():
    k = correlation_operator(Cluster.chain(3), (1,))
    assert k.terms == {0: "Z", 1: "X", 2: "Z"} and k.sign == 1
    assert correlation_operator(Cluster.chain(1), (0,)).terms == {0: "X"}
    k = correlation_operator(CROSS, (1, 1))
    centre = CROSS.index((1, 1))
    assert k.terms[centre] == "X"
    assert sorted(q for q, l in k.terms.items() if l == "Z") == sorted(
        CROSS.index(s) for s in [(0, 1), (2, 1), (1, 0), (1, 2)])


@pytest.mark.parametrize("seed", range(6))
def test_correlation_operators_commute(seed):
    c = random_subcluster(np.random.default_rng(seed), (3, 3), size=int(3 + seed))
    mats = [pauli_dense(len(c), correlation_operator(c, a).terms) for a in c.sites]
    for a, b in itertools.combinations(mats, 2):
        assert np.abs(a @ b - b @ a).max() < 1e-12


def test_bounding_box_examples():
    assert bounding_box(Cluster(2, [(0, 0), (1, 1)])) == [(0, 1), (0, 1)]
    assert bounding_box(Cluster(1, [(k,) for k in range(2, 8)])) == [(2, 7)]
    assert bounding_box(Cluster(2, [(0, 0)])) == [(0, 0), (0, 0)]
    with pytest.raises(ClusterError):
        bounding_box(Cluster(2, []))


def test_connected_subcluster_count_of_3x3():
    # the 3x3 grid graph has 218 connected induced subgraphs
    assert len(connected_subclusters(3, 3)) == 218


def test_json_parsing():
    c, kappa = Cluster.from_dict({"dimension": 2, "sites": [[1, 0], [0, 0]], "kappa": [1, 0]})
    assert c.sites == ((0, 0), (1, 0))
    assert kappa == [0, 1]
    for bad, field in [
        ({"sites": [[0]]}, "dimension"),
        ({"dimension": 1}, "sites"),
        ({"dimension": 2, "sites": [[0]]}, "sites"),
        ({"dimension": 1, "sites": [[0], [0]]}, "sites"),
        ({"dimension": 1, "sites": [[0]], "kappa": [2]}, "kappa"),
    ]:
        with pytest.raises(ValidationError, match=field):
            Cluster.from_dict(bad)
