"""Lifted Gabidulin subspace codes and puncturing.

A message ``(f_0, ..., f_{k-1})`` over GF(q^m) defines the q-linearized
polynomial ``f(x) = sum_i f_i x^(q^i)``. Evaluating it at the first ``l``
polynomial-basis elements ``1, b, ..., b^(l-1)`` of GF(q^m) gives a rank-metric
codeword; expanding each coordinate over GF(q) gives an ``l x m`` matrix ``M``
and the transmitted subspace is the row space of ``[I_l | M]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    CodeTooLarge,
    FieldMismatch,
    LengthMismatch,
    ParamViolation,
    ZeroDimCodeword,
)
from .finite_field import (
    FieldElement,
    FieldSpec,
    extension_field,
    galois_field,
    generator,
    prime_power,
)
from .gf_linalg import MatrixGF, SeedLike, as_rng
from .subspace import (
    Subspace,
    dual,
    injection_distance,
    intersection,
    span_of_units,
    subspace_from_rows,
)

DEFAULT_ENUMERATION_CAP = 1 << 16
DEFAULT_PAIR_BUDGET = 10 ** 7


class CodeType(NamedTuple):
    """[N, l, log_q |C|, D]; ``D`` is ``None`` when not known."""

    N: int
    l: int
    logq_size: Fraction | float
    D: int | None

    def __str__(self) -> str:
        D = "?" if self.D is None else self.D
        return f"[{self.N}, {self.l}, {self.logq_size}, {D}]"


@dataclass(frozen=True)
class GabidulinParams:
    q: int
    m: int
    l: int
    k: int

    def __post_init__(self):
        prime_power(self.q)
        if min(self.m, self.l, self.k) < 1:
            raise ParamViolation(f"m, l, k must be positive: {self}")
        if not self.k <= self.l <= self.m:
            raise ParamViolation(f"need k <= l <= m: {self}")

    @property
    def N(self) -> int:
        return self.l + self.m

    @property
    def min_distance(self) -> int:
        return self.l - self.k + 1

    @property
    def code_type(self) -> CodeType:
        return CodeType(self.N, self.l, Fraction(self.m * self.k), self.min_distance)

    @property
    def size(self) -> int:
        return self.q ** (self.m * self.k)

    @property
    def base_field(self) -> FieldSpec:
        return galois_field(self.q)

    @property
    def ext_field(self) -> FieldSpec:
        return _ext_field(self.q, self.m)


@lru_cache(maxsize=None)
def _ext_field(q: int, m: int) -> FieldSpec:
    return extension_field(galois_field(q), m)


@dataclass(frozen=True)
class LinearizedPoly:
    """``sum_i coeffs[i] x^(q^i)`` over ``field`` = GF(q^m); coefficients as encodings."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.field.base is None:
            raise FieldMismatch("linearized polynomials need an extension field")
        vals = []
        for c in self.coeffs:
            if isinstance(c, FieldElement):
                if c.field != self.field:
                    raise FieldMismatch(f"{c.field!r} vs {self.field!r}")
                c = c.value
            vals.append(self.field.check(c))
        object.__setattr__(self, "coeffs", tuple(vals))

    @classmethod
    def padded(cls, field: FieldSpec, coeffs: Sequence, k: int) -> LinearizedPoly:
        coeffs = list(coeffs)
        if len(coeffs) > k:
            raise LengthMismatch(f"{len(coeffs)} coefficients exceed k = {k}")
        return cls(field, tuple(coeffs) + (0,) * (k - len(coeffs)))

    @property
    def k(self) -> int:
        return len(self.coeffs)


def evaluate_linearized(f: LinearizedPoly, a: FieldElement) -> FieldElement:
    if a.field != f.field:
        raise FieldMismatch(f"{a.field!r} vs {f.field!r}")
    F = f.field
    acc, x = 0, a.value
    for c in f.coeffs:
        acc = F.add_int(acc, F.mul_int(c, x))
        x = F.pow_int(x, F.base.order)
    return FieldElement(F, acc)


def evaluation_points(params: GabidulinParams) -> list[FieldElement]:
    beta = generator(params.ext_field)
    return [beta ** i for i in range(params.l)]


@lru_cache(maxsize=None)
def _frobenius_table(params: GabidulinParams) -> np.ndarray:
    """table[i, j] = (b^i)^(q^j) as encodings, shape (l, k)."""
    F = params.ext_field
    out = np.zeros((params.l, params.k), dtype=np.int64)
    for i, a in enumerate(evaluation_points(params)):
        x = a.value
        for j in range(params.k):
            out[i, j] = x
            x = F.pow_int(x, params.q)
    return out


def encode_rank(params: GabidulinParams, message: Sequence[FieldElement | int]) -> tuple[FieldElement, ...]:
    """Evaluate the message polynomial at ``1, b, ..., b^(l-1)``."""
    if len(message) != params.k:
        raise ParamViolation(f"message length {len(message)} != k = {params.k}")
    F = params.ext_field
    poly = LinearizedPoly(F, tuple(message))
    return tuple(FieldElement(F, v) for v in _encode_ints(params, poly.coeffs))


def _encode_ints(params: GabidulinParams, coeffs: Sequence[int]) -> list[int]:
    F = params.ext_field
    table = _frobenius_table(params)
    out = []
    for i in range(params.l):
        acc = 0
        for j, c in enumerate(coeffs):
            if c:
                acc = F.add_int(acc, F.mul_int(c, int(table[i, j])))
        out.append(acc)
    return out


def expand_to_matrix(v: Sequence[FieldElement]) -> MatrixGF:
    """``len(v) x m`` matrix over the base field; row i holds the coordinates of v_i."""
    if not v:
        raise LengthMismatch("cannot expand an empty vector")
    F = v[0].field
    if F.base is None:
        raise FieldMismatch(f"{F!r} is not an extension field")
    rows = []
    for x in v:
        if x.field != F:
            raise FieldMismatch(f"{x.field!r} vs {F!r}")
        rows.append(F.to_vec(x.value))
    return MatrixGF(F.base, rows)


def lift(M: MatrixGF) -> Subspace:
    """Row space of ``[I_l | M]``; the block is already in RREF."""
    l = M.rows
    data = np.hstack([np.eye(l, dtype=np.int64), M.data])
    return Subspace(MatrixGF(M.field, data), list(range(l)))


@dataclass(frozen=True)
class SubspaceCode:
    ambient_dim: int
    field: FieldSpec
    codewords: tuple[Subspace, ...]
    declared_type: CodeType | None = dc_field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        for c in self.codewords:
            if c.ambient_dim != self.ambient_dim:
                raise AmbientMismatch(f"codeword in F^{c.ambient_dim}, code in F^{self.ambient_dim}")
            if c.field != self.field:
                raise FieldMismatch(f"{c.field!r} vs {self.field!r}")
        if len(set(self.codewords)) != len(self.codewords):
            raise ParamViolation("duplicate codewords")
        if self.declared_type is None:
            object.__setattr__(self, "declared_type", CodeType(
                self.ambient_dim, self.max_dim, logq(len(self.codewords), self.field.order), None))

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.codewords)

    def __getitem__(self, i: int) -> Subspace:
        return self.codewords[i]

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.codewords), default=0)

    @property
    def is_equidimensional(self) -> bool:
        return len({c.dim for c in self.codewords}) <= 1


def logq(size: int, q: int) -> Fraction | float:
    """log_q(size), exact when size is a power of q; -inf for the empty code."""
    if size == 0:
        return float("-inf")
    e, s = 0, size
    while s > 1 and s % q == 0:
        s //= q
        e += 1
    if s == 1:
        return Fraction(e)
    from .bounds import log_q_big
    return log_q_big(size, q)


def iter_messages(params: GabidulinParams) -> Iterator[tuple[int, ...]]:
    """All q^(mk) messages as encodings, first coefficient varying fastest."""
    for msg in itertools.product(range(params.ext_field.order), repeat=params.k):
        yield msg[::-1]


def enumerate_code(params: GabidulinParams, cap: int = DEFAULT_ENUMERATION_CAP) -> SubspaceCode:
    """Every lifted codeword, in :func:`iter_messages` order."""
    if params.size > cap:
        raise CodeTooLarge(f"q^(mk) = {params.q}^{params.m * params.k} exceeds cap {cap}")
    F = params.ext_field
    words = []
    for msg in iter_messages(params):
        rows = [F.to_vec(v) for v in _encode_ints(params, msg)]
        words.append(lift(MatrixGF(F.base, rows)))
    return SubspaceCode(params.N, F.base, tuple(words), params.code_type)


def min_injection_distance(code: SubspaceCode, budget: int = DEFAULT_PAIR_BUDGET) -> int:
    n = len(code)
    if n < 2:
        raise ParamViolation("minimum distance needs at least two codewords")
    pairs = n * (n - 1) // 2
    if pairs > budget:
        raise BudgetExceeded(f"{pairs} pairs exceed budget {budget}")
    words = code.codewords
    best = None
    for i in range(n):
        U = words[i]
        for j in range(i + 1, n):
            d = injection_distance(U, words[j])
            if best is None or d < best:
                best = d
    return best


# -- puncturing -------------------------------------------------------------------

def default_hyperplane(field: FieldSpec, N: int) -> Subspace:
    """{x : x_N = 0}."""
    return span_of_units(field, N, range(N - 1))


def random_hyperplane(field: FieldSpec, N: int, seed: SeedLike = None) -> Subspace:
    """Kernel of the form x -> h.x for a uniform nonzero h."""
    rng = as_rng(seed)
    while True:
        h = rng.integers(0, field.order, size=(1, N))
        if h.any():
            return dual(subspace_from_rows(MatrixGF(field, h)))


def _random_hyperplane_of(V: Subspace, rng: np.random.Generator) -> Subspace:
    """Uniform (dim V - 1)-subspace of V: dim V - 1 random combinations of its basis, resampled until independent."""
    k = V.dim - 1
    while True:
        coeffs = MatrixGF(V.field, rng.integers(0, V.field.order, size=(k, V.dim)))
        S = subspace_from_rows(coeffs @ V.basis)
        if S.dim == k:
            return S


def puncture(code: SubspaceCode, W_prime: Subspace | None = None, seed: SeedLike = None) -> SubspaceCode:
    """Replace each V by V & W' when that drops the dimension by one, otherwise
    (V inside W') by a seeded uniform hyperplane of V.

    The result lives in F^(N-1): vectors of W' are re-coordinatized by their
    entries at the pivot columns of W''s RREF basis. Codewords that collide
    (possible only when the minimum distance is 1) are kept once.
    """
    N, f = code.ambient_dim, code.field
    if W_prime is None:
        W_prime = default_hyperplane(f, N)
    if W_prime.ambient_dim != N or W_prime.field != f:
        raise AmbientMismatch("hyperplane must live in the code's ambient space")
    if W_prime.dim != N - 1:
        raise ParamViolation(f"hyperplane must have dimension {N - 1}, got {W_prime.dim}")
    rng = as_rng(seed)
    cols = list(W_prime.pivots)
    out: list[Subspace] = []
    seen: set[Subspace] = set()
    for V in code.codewords:
        if V.dim == 0:
            raise ZeroDimCodeword("cannot puncture the zero subspace")
        cut = intersection(V, W_prime)
        if cut.dim != V.dim - 1:
            cut = _random_hyperplane_of(V, rng)
        W = subspace_from_rows(MatrixGF(f, cut.basis.data[:, cols]))
        if W not in seen:
            seen.add(W)
            out.append(W)
    t = code.declared_type
    logq_size = t.logq_size if len(out) == len(code) else logq(len(out), f.order)
    new_type = CodeType(N - 1, max((w.dim for w in out), default=0), logq_size, None)
    return SubspaceCode(N - 1, f, tuple(out), new_type)


def example_sequence(i_from: int = 4, i_to: int = 30) -> list[GabidulinParams]:
    """GF(16) parameters m = i, l = floor(3m/5), k = floor(m/2)."""
    if not 4 <= i_from <= i_to:
        raise ParamViolation(f"need 4 <= i_from <= i_to, got {i_from}, {i_to}")
    return [GabidulinParams(16, i, (3 * i) // 5, i // 2) for i in range(i_from, i_to + 1)]
