from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_subspaces_bfs, d_inj, d_sub, orthogonal_set, rows_to_ints, set_dim, span_set
from subspace_codec import (
    MatrixGF,
    delta_rho,
    delta_rho_bruteforce,
    dual,
    galois_field,
    injection_distance,
    intersection_dim,
    subspace_distance,
    subspace_from_rows,
    sum_dim,
)
from subspace_codec.errors import AmbientMismatch, Infeasible, NegativeRho, SearchSpaceTooLarge
from subspace_codec.gf_linalg import rref
from subspace_codec.subspace import (
    all_subspaces,
    intersection,
    random_subspace,
    span_of_units,
    zero_subspace,
)

F2 = galois_field(2)


def as_set(S) -> frozenset[int]:
    return span_set(rows_to_ints(S.basis.tolist()))


def e(*idx, N=2):
    return span_of_units(F2, N, list(idx))


def test_canonical_form():
    assert subspace_from_rows(MatrixGF.zeros(F2, 3, 4)).dim == 0
    M = MatrixGF(F2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert subspace_from_rows(M) == subspace_from_rows(rref(M)[0])
    assert subspace_from_rows(M).dim == 2


def test_sum_and_intersection_examples():
    U = e(0)
    assert sum_dim(U, U) == 1 and intersection_dim(U, U) == 1
    assert sum_dim(e(0), e(1)) == 2 and intersection_dim(e(0), e(1)) == 0


def test_distance_examples():
    assert subspace_distance(e(0), e(0)) == 0
    assert subspace_distance(e(0), e(1)) == 2
    assert subspace_distance(e(0, 1), e(0)) == 1
    assert injection_distance(e(0), e(0)) == 0
    assert injection_distance(e(0), e(1)) == 1
    assert injection_distance(e(0, 1), e(0)) == 1


def test_delta_rho_examples():
    X = e(0, 1, N=3)
    Y = e(0, N=3)
    assert delta_rho(X, X, 0) == 0
    assert delta_rho(X, Y, 0) == injection_distance(X, Y) == 1
    assert delta_rho(X, Y, 2) == 0
    with pytest.raises(NegativeRho):
        delta_rho(X, Y, -1)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        sum_dim(e(0, N=2), e(0, N=3))


def test_dual_examples():
    assert dual(e(0)) == e(1)
    assert dual(zero_subspace(F2, 3)).dim == 3
    rng = np.random.default_rng(3)
    for _ in range(500):
        U = random_subspace(F2, 5, int(rng.integers(0, 6)), rng)
        assert dual(dual(U)) == U
        assert dual(U).dim == 5 - U.dim


def test_enumeration_matches_bfs_oracle():
    for N in range(1, 5):
        ours = {as_set(S) for S in all_subspaces(F2, N)}
        assert ours == set(all_subspaces_bfs(N))


def test_distances_match_set_oracle_exhaustively_n3():
    spaces = all_subspaces(F2, 3)
    for U, V in itertools.product(spaces, repeat=2):
        su, sv = as_set(U), as_set(V)
        assert injection_distance(U, V) == d_inj(su, sv)
        assert subspace_distance(U, V) == d_sub(su, sv)
        assert intersection(U, V).dim == set_dim(su & sv)
        assert as_set(intersection(U, V)) == su & sv


def test_dual_matches_orthogonal_set_oracle():
    for U in all_subspaces(F2, 4):
        assert as_set(dual(U)) == orthogonal_set(as_set(U), 4)


@pytest.mark.parametrize("q", [3, 4])
def test_equidimensional_collapse(q):
    F = galois_field(q)
    rng = np.random.default_rng(q)
    for _ in range(100):
        d = int(rng.integers(0, 4))
        U, V = random_subspace(F, 4, d, rng), random_subspace(F, 4, d, rng)
        assert subspace_distance(U, V) == 2 * injection_distance(U, V)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2 ** 32 - 1))
def test_metric_axioms_random(a, b, seed):
    F = galois_field(3)
    rng = np.random.default_rng(seed)
    U, V, W = (random_subspace(F, 5, d, rng) for d in (a, b, int(rng.integers(0, 6))))
    for dist in (injection_distance, subspace_distance):
        assert dist(U, V) == dist(V, U)
        assert dist(U, W) <= dist(U, V) + dist(V, W)
        assert (dist(U, V) == 0) == (U == V)


def test_bruteforce_examples():
    X = MatrixGF(F2, [[1, 0, 1], [0, 1, 1]])
    assert delta_rho_bruteforce(X, X, 0, max_r=3) == 0
    Y0 = MatrixGF.zeros(F2, 2, 3)
    assert delta_rho_bruteforce(X, Y0, 2, max_r=3) == 0


def test_bruteforce_infeasible_when_no_admissible_transfer():
    X = MatrixGF(F2, [[1, 0], [0, 1]])
    Y = MatrixGF(F2, [[1, 1]])
    with pytest.raises(Infeasible):
        delta_rho_bruteforce(X, Y, 0)
    assert delta_rho_bruteforce(X, Y, 1) == delta_rho(subspace_from_rows(X), subspace_from_rows(Y), 1)


def test_bruteforce_cap():
    X = MatrixGF.zeros(F2, 4, 6)
    with pytest.raises(SearchSpaceTooLarge):
        delta_rho_bruteforce(X, X, 0, search_cap=1000)


def test_bruteforce_sample_gf3():
    F = galois_field(3)
    rng = np.random.default_rng(11)
    for _ in range(30):
        X = MatrixGF(F, rng.integers(0, 3, size=(2, 2)))
        Y = MatrixGF(F, rng.integers(0, 3, size=(2, 2)))
        rho = int(rng.integers(0, 3))
        assert delta_rho_bruteforce(X, Y, rho) == delta_rho(subspace_from_rows(X), subspace_from_rows(Y), rho)
