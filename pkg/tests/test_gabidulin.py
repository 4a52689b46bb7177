from __future__ import annotations

import itertools

import numpy as np
import pytest

from oracles import d_inj, gf2_rank, int_to_poly, poly_mulmod, poly_to_int, rows_to_ints, span_set
from subspace_codec import (
    GabidulinParams,
    LinearizedPoly,
    MatrixGF,
    encode_rank,
    enumerate_code,
    evaluate_linearized,
    example_sequence,
    expand_to_matrix,
    galois_field,
    injection_distance,
    lift,
    min_injection_distance,
    puncture,
)
from subspace_codec.errors import CodeTooLarge, ParamViolation, ZeroDimCodeword
from subspace_codec.finite_field import generator
from subspace_codec.gabidulin import SubspaceCode, default_hyperplane, random_hyperplane
from subspace_codec.subspace import intersection_dim, random_subspace, span_of_units, subspace_from_rows

F2 = galois_field(2)


def as_set(S):
    return span_set(rows_to_ints(S.basis.tolist()))


def schoolbook_encode(params: GabidulinParams, msg):
    """Evaluate sum_j c_j a^(2^j) at a = b^i with plain polynomial arithmetic (q = 2 only)."""
    F = params.ext_field
    mod, m = F.modulus, params.m

    def mul(a, b):
        return poly_to_int(poly_mulmod(int_to_poly(a, 2, m), int_to_poly(b, 2, m), mod, 2), 2)

    out = []
    for i in range(params.l):
        a = 1
        for _ in range(i):
            a = mul(a, 2)
        acc, x = 0, a
        for c in msg:
            acc ^= mul(c, x)
            x = mul(x, x)
        out.append(acc)
    return out


def test_linearized_examples():
    E = GabidulinParams(2, 2, 2, 2).ext_field
    w = generator(E)
    assert evaluate_linearized(LinearizedPoly(E, (0, 0)), w) == E.zero
    c = E(3)
    assert evaluate_linearized(LinearizedPoly(E, (c,)), w) == c * w
    assert evaluate_linearized(LinearizedPoly(E, (0, 1)), w) == w + E.one


def test_encode_examples():
    p = GabidulinParams(2, 1, 1, 1)
    assert [int(x) for x in encode_rank(p, [1])] == [1]
    p = GabidulinParams(2, 3, 2, 1)
    assert all(not x for x in encode_rank(p, [0]))
    p = GabidulinParams(2, 2, 2, 1)
    words = {tuple(int(x) for x in encode_rank(p, [c])) for c in range(4)}
    assert len(words) == 4


@pytest.mark.parametrize("m,l,k", [(3, 2, 1), (3, 3, 2), (4, 3, 2), (4, 4, 2), (5, 4, 1)])
def test_encoder_matches_schoolbook(m, l, k):
    p = GabidulinParams(2, m, l, k)
    rng = np.random.default_rng(m * 100 + l * 10 + k)
    for _ in range(30):
        msg = [int(x) for x in rng.integers(0, 2 ** m, size=k)]
        assert [int(x) for x in encode_rank(p, msg)] == schoolbook_encode(p, msg)


@pytest.mark.parametrize("m,l,k", [(2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 3, 2), (4, 3, 2), (4, 4, 3)])
def test_rank_distance_is_mrd(m, l, k):
    p = GabidulinParams(2, m, l, k)
    best = min(gf2_rank(expand_to_matrix(encode_rank(p, list(msg))).tolist())
               for msg in itertools.product(range(2 ** m), repeat=k) if any(msg))
    assert best == l - k + 1


def test_lift_identity_exhaustive():
    mats = [np.array(bits).reshape(2, 2) for bits in itertools.product((0, 1), repeat=4)]
    lifted = [lift(MatrixGF(F2, M)) for M in mats]
    assert len(set(lifted)) == 16
    for (M1, U), (M2, V) in itertools.product(zip(mats, lifted), repeat=2):
        assert d_inj(as_set(U), as_set(V)) == gf2_rank((M1 ^ M2).tolist())
        assert injection_distance(U, V) == gf2_rank((M1 ^ M2).tolist())
    assert lift(MatrixGF.zeros(F2, 2, 3)) == span_of_units(F2, 5, [0, 1])


def test_enumerate_examples():
    c = enumerate_code(GabidulinParams(2, 2, 2, 1))
    assert len(c) == 4 and tuple(c.declared_type) == (4, 2, 2, 2)
    c = enumerate_code(GabidulinParams(2, 3, 2, 2))
    assert len(c) == 64 and tuple(c.declared_type) == (5, 2, 6, 1)
    with pytest.raises(CodeTooLarge):
        enumerate_code(GabidulinParams(16, 30, 18, 15))


def test_min_distance_examples():
    assert min_injection_distance(enumerate_code(GabidulinParams(2, 2, 2, 1))) == 2
    assert min_injection_distance(enumerate_code(GabidulinParams(2, 3, 2, 2))) == 1
    U, V = random_subspace(F2, 5, 2, 1), random_subspace(F2, 5, 2, 2)
    assert U != V
    assert min_injection_distance(SubspaceCode(5, F2, (U, V))) == injection_distance(U, V)


def test_min_distance_against_set_oracle():
    code = enumerate_code(GabidulinParams(2, 3, 3, 1))
    sets = [as_set(c) for c in code]
    assert min(d_inj(a, b) for a, b in itertools.combinations(sets, 2)) == min_injection_distance(code) == 3


def test_gf4_code_distance():
    code = enumerate_code(GabidulinParams(4, 3, 2, 1))
    assert len(code) == 64 and min_injection_distance(code) == 2


def test_param_guards():
    with pytest.raises(ParamViolation):
        GabidulinParams(2, 2, 3, 1)
    with pytest.raises(ParamViolation):
        GabidulinParams(6, 2, 2, 1)
    with pytest.raises(ParamViolation):
        U = span_of_units(F2, 3, [0])
        SubspaceCode(3, F2, (U, U))


def test_puncture_distance_drop_instance():
    code = enumerate_code(GabidulinParams(2, 3, 3, 1))
    assert min_injection_distance(code) == 3
    for seed in range(4):
        out = puncture(code, random_hyperplane(F2, code.ambient_dim, seed), seed=seed)
        assert out.ambient_dim == 5 and out.max_dim == 2 and out.is_equidimensional
        assert len(out) == len(code)
        assert min_injection_distance(out) >= 2


def test_puncture_forced_branch_stays_inside():
    W = default_hyperplane(F2, 4)
    V = span_of_units(F2, 4, [0, 1])
    code = SubspaceCode(4, F2, (V, span_of_units(F2, 4, [2, 3])))
    out = puncture(code, W, seed=3)
    first = out.codewords[0]
    assert first.dim == 1 and first.ambient_dim == 3
    # with W = {x_4 = 0} the re-coordinatization just drops the last entry
    assert as_set(first) <= as_set(span_of_units(F2, 3, [0, 1]))
    assert out.codewords[1] == span_of_units(F2, 3, [2])


def test_puncture_subspace_relation():
    code = enumerate_code(GabidulinParams(2, 3, 3, 2))
    W = default_hyperplane(F2, 6)
    out = puncture(code, W, seed=0)
    for V, P in zip(code, out):
        padded = subspace_from_rows(MatrixGF(F2, np.hstack([P.basis.data, np.zeros((P.dim, 1), dtype=np.int64)])))
        assert intersection_dim(padded, V) == P.dim


def test_puncture_deterministic_and_guards():
    code = enumerate_code(GabidulinParams(2, 3, 2, 1))
    W = random_hyperplane(F2, 5, 9)
    assert puncture(code, W, seed=4).codewords == puncture(code, W, seed=4).codewords
    with pytest.raises(ZeroDimCodeword):
        puncture(SubspaceCode(3, F2, (span_of_units(F2, 3, []),)))


def test_example_sequence_endpoints():
    seq = example_sequence()
    assert len(seq) == 27
    first, last = seq[0], seq[-1]
    assert (first.m, first.l, first.k, first.N) == (4, 2, 2, 6)
    assert (last.m, last.l, last.k, last.N) == (30, 18, 15, 48)
    assert tuple(last.code_type) == (48, 18, 450, 4)
    assert [p.N for p in seq][:3] == [6, 8, 9]
