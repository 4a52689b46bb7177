from __future__ import annotations

import math
from fractions import Fraction

import pytest

from oracles import all_subspaces_bfs, set_dim
from subspace_codec import (
    count_subspaces_up_to,
    figure1_table,
    gabidulin_bound_exact,
    gabidulin_bound_loose,
    gaussian_coefficient,
    lemma4_ratio,
    log_q_big,
    rate,
    singleton_bound,
)
from subspace_codec.bounds import CSV_HEADER, lemma4_ratio_exact, table_to_csv
from subspace_codec.errors import ParamViolation


def q_binomial_recurrence(N: int, l: int, q: int) -> int:
    """Pascal-type recurrence [N, l] = [N-1, l-1] + q^l [N-1, l]."""
    table = {(0, 0): 1}
    for n in range(1, N + 1):
        for j in range(0, n + 1):
            table[n, j] = table.get((n - 1, j - 1), 0) + q ** j * table.get((n - 1, j), 0)
    return table.get((N, l), 0)


def test_gaussian_examples():
    assert gaussian_coefficient(7, 0, 3) == 1
    assert gaussian_coefficient(7, 7, 3) == 1
    assert gaussian_coefficient(4, 2, 2) == 35
    assert count_subspaces_up_to(4, 4, 2) == 67
    assert count_subspaces_up_to(5, 0, 2) == 1
    assert count_subspaces_up_to(3, 1, 2) == 8


def test_gaussian_matches_enumeration():
    for N in range(1, 5):
        dims = [set_dim(S) for S in all_subspaces_bfs(N)]
        for l in range(N + 1):
            assert gaussian_coefficient(N, l, 2) == dims.count(l)


@pytest.mark.parametrize("q", [2, 3, 4, 16])
def test_gaussian_recurrence_and_symmetry(q):
    for N in range(0, 25):
        for l in range(N + 1):
            g = gaussian_coefficient(N, l, q)
            assert g == gaussian_coefficient(N, N - l, q)
            if N <= 12:
                assert g == q_binomial_recurrence(N, l, q)


def test_singleton_examples():
    assert gaussian_coefficient(5, 4, 2) == 31
    assert singleton_bound(6, 2, 2, 2) == 32
    assert singleton_bound(5, 2, 2, 2) == gabidulin_bound_exact(1, 3, 2)
    assert singleton_bound(8, 3, 1, 3) == 1 + 3 * gaussian_coefficient(8, 5, 3)
    with pytest.raises(ParamViolation):
        singleton_bound(6, 2, 3, 2)
    with pytest.raises(ParamViolation, match="N/2"):
        singleton_bound(5, 3, 2, 2)


def test_gabidulin_bound_examples():
    assert gabidulin_bound_exact(1, 1, 2) == 4
    assert gabidulin_bound_exact(2, 2, 2) == 71
    assert gabidulin_bound_loose(1, 1, 2) == 9
    assert gabidulin_bound_loose(2, 2, 2) == 1 + 4 * 2 * 2 ** 4 == 129
    assert gabidulin_bound_exact(2, 2, 2) < gabidulin_bound_loose(2, 2, 2)


def test_gaussian_ratio_examples():
    assert lemma4_ratio_exact(4, 2, 2) == Fraction(35, 16)
    assert lemma4_ratio(4, 2, 2) == 2.1875
    assert lemma4_ratio_exact(6, 3, 2) == Fraction(1395, 512)
    assert lemma4_ratio_exact(9, 0, 5) == 1


def test_log_q_big_exact_powers_and_huge_values():
    assert log_q_big(16 ** 450, 16) == 450
    assert math.isclose(log_q_big(10 ** 400, 10), 400, rel_tol=1e-12)
    assert math.isclose(log_q_big(12345, 2), math.log2(12345), rel_tol=1e-14)


def test_rate():
    assert rate(48, 18, Fraction(450)) == pytest.approx(450 / 864, abs=1e-15)
    assert rate(5, 2, 0) == 0
    with pytest.raises(ParamViolation):
        rate(0, 1, 1)


def test_bound_chain_over_example_sweep():
    for r in figure1_table():
        e = gabidulin_bound_exact(r.k, r.m, 16)
        lo = gabidulin_bound_loose(r.k, r.m, 16)
        assert 16 ** (r.m * r.k) <= e < lo
        assert (lo - 1) // 16 ** (r.m * r.k) == 4 * r.k


def test_figure1_table_values():
    rows = figure1_table()
    assert len(rows) == 27
    assert [r.N for r in rows] == [r.m + r.l for r in rows]
    assert rows[0].N == 6 and rows[1].N == 8 and rows[2].N == 9 and rows[-1].N == 48
    for r in rows:
        assert r.rate_code == pytest.approx(r.m * r.k / (r.N * r.l), abs=1e-15)
        assert r.rate_code < r.rate_eq_exact < r.rate_eq_loose
        # the loose gap has the closed form log_q(4k + q^(-mk)) / (N l)
        gap = r.rate_eq_loose - r.rate_code
        assert gap == pytest.approx(math.log(4 * r.k + 16.0 ** (-r.m * r.k), 16) / (r.N * r.l), rel=1e-9)


def test_figure1_gap_trend():
    gaps = [r.rate_eq_loose - r.rate_code for r in figure1_table()]
    assert gaps[-1] < 0.01
    # along each parity class of i the gap shrinks strictly
    assert all(a > b for a, b in zip(gaps, gaps[2:]))
    # but not between neighbours: i = 5 -> 6 grows because k steps up while l does not
    assert gaps[2] > gaps[1]


def test_csv_rendering():
    text = table_to_csv(figure1_table())
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 28
    assert lines[-1].startswith("30,30,18,15,48,0.520833333333,")
