import pytest

from knotgraph.cocycles import build_psi
from knotgraph.cohomology import (
    basis,
    cocycle_representatives,
    cohomology_dim,
    cohomology_table,
    coordinates,
    delta_matrix,
    enumerate_basis,
    in_span,
)
from knotgraph.complex import Chain, delta
from knotgraph.errors import BasisIncompleteError, ResourceGuardError
from knotgraph.graph import RawGraph, canonicalize

COMPLEXES = [(bb, par) for bb in ("circle", "line") for par in ("odd", "even")]

# Basis sizes for k <= 3, m <= 3.
BASIS_SIZES = {
    ("circle", "odd"): {(0, 0): 1, (1, 0): 1, (2, 0): 3, (2, 1): 1, (3, 0): 10, (3, 1): 12, (3, 2): 5, (3, 3): 1},
    ("circle", "even"): {(0, 0): 1, (1, 1): 1, (2, 0): 2, (2, 1): 2, (2, 2): 2, (3, 0): 10, (3, 1): 17, (3, 2): 13, (3, 3): 7},
    ("line", "odd"): {(0, 0): 1, (1, 0): 1, (2, 0): 4, (2, 1): 3, (3, 0): 30, (3, 1): 49, (3, 2): 21, (3, 3): 1},
    ("line", "even"): {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 0): 4, (2, 1): 6, (2, 2): 3, (3, 0): 30, (3, 1): 68, (3, 2): 54, (3, 3): 17},
}

# dim H^{k,m} for k <= 3, m <= 2; frozen after the order and pivot checks passed.
GOLDEN = {
    ("circle", "odd"): {(1, 0): 1, (2, 0): 2, (3, 0): 3, (3, 1): 1},
    ("circle", "even"): {(1, 1): 1, (2, 0): 1, (2, 2): 1, (3, 0): 1, (3, 1): 1},
    ("line", "odd"): {(1, 0): 1, (2, 0): 2, (2, 1): 1, (3, 0): 3, (3, 1): 2},
    ("line", "even"): {(2, 0): 1, (3, 0): 1, (3, 1): 1},
}


@pytest.mark.parametrize("bb, par", COMPLEXES)
def test_basis_sizes(bb, par):
    for k in range(4):
        for m in range(4):
            assert len(basis(bb, par, k, m)) == BASIS_SIZES[(bb, par)].get((k, m), 0), (k, m)


def test_small_bases():
    assert [g.is_unit for g in basis("circle", "odd", 0, 0)] == [True]
    theta = canonicalize(RawGraph("circle", "odd", 2, 0, ((1, 2),))).graph
    assert basis("circle", "odd", 1, 0).graphs == (theta,)
    # crossing chords and tripod; the nested double chord vanishes
    reps = {(g.n_ext, g.n_int, g.edges) for g in basis("circle", "even", 2, 0)}
    assert reps == {(4, 0, ((0, 2), (1, 3))), (3, 1, ((0, 3), (1, 3), (2, 3)))}
    assert canonicalize(RawGraph("circle", "even", 4, 0, ((1, 2), (3, 4)))).is_zero


def test_basis_is_sorted_and_duplicate_free():
    b = basis("line", "even", 3, 1)
    keys = [g.key for g in b]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert enumerate_basis("line", "even", 3, 1).graphs == b.graphs


@pytest.mark.parametrize("bb, par", COMPLEXES)
def test_basis_closure_and_matrix_square(bb, par):
    for k in range(4):
        for m in range(3):
            src, dst = basis(bb, par, k, m), basis(bb, par, k, m + 1)
            for g in src:
                coordinates(delta(g), dst)  # raises if a graph is missing
            if m >= 1:
                prev = delta_matrix(basis(bb, par, k, m - 1), src)
                assert (delta_matrix(src, dst) @ prev).is_zero()


def test_delta_matrix_of_unit_is_zero():
    one = basis("circle", "odd", 0, 0)
    assert delta_matrix(one, basis("circle", "odd", 0, 1)).is_zero()


def test_delta_matrix_of_theta():
    src = basis("line", "even", 1, 0)
    dst = basis("line", "even", 1, 1)
    M = delta_matrix(src, dst)
    assert (M.rows, M.cols) == (1, 1)
    assert M.entries == {(0, 0): 1}


def test_missing_graph_is_reported():
    with pytest.raises(BasisIncompleteError):
        coordinates(Chain.of(basis("line", "even", 1, 0)[0]), basis("line", "even", 1, 1))


@pytest.mark.parametrize("bb, par", COMPLEXES)
def test_golden_tables(bb, par):
    table = cohomology_table(bb, par, 3, 2)
    expected = {key: GOLDEN[(bb, par)].get(key, 0) for key in table}
    expected[(0, 0)] = 1
    assert table == expected


@pytest.mark.parametrize("bb, par", COMPLEXES)
def test_degree_zero_cohomology_is_the_kernel(bb, par):
    for k in range(4):
        reps = cocycle_representatives(bb, par, k, 0)
        assert len(reps) == cohomology_dim(bb, par, k, 0)
        for c in reps:
            assert delta(c) == 0


def test_psi_spans_the_even_degree_zero_kernel():
    reps = cocycle_representatives("circle", "even", 2, 0)
    assert len(reps) == 1
    assert in_span(build_psi(), reps, basis("circle", "even", 2, 0))
    assert not in_span(Chain.of(basis("circle", "even", 2, 0)[0]), reps, basis("circle", "even", 2, 0))


def test_dimension_ignores_order_and_pivoting():
    for seed in range(3):
        for pivoting in ("sparse", "natural"):
            assert cohomology_dim("line", "odd", 3, 1, order_seed=seed, pivoting=pivoting) == 2


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("KNOTGRAPH_MAX_RAW_GRAPHS", "3")
    with pytest.raises(ResourceGuardError):
        enumerate_basis("line", "even", 3, 1)
    monkeypatch.setenv("KNOTGRAPH_MAX_MATRIX_DIM", "5")
    with pytest.raises(ResourceGuardError):
        delta_matrix(basis("line", "even", 3, 0), basis("line", "even", 3, 1))
