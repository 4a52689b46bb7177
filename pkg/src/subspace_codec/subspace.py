"""Subspaces of F_q^N and the distances between them.

A :class:`Subspace` is stored by its RREF basis, so equality is a row-by-row
comparison. The distances are

* subspace distance ``d_S(U, V) = dim U + dim V - 2 dim(U & V)``
* injection distance ``d_I(U, V) = dim(U + V) - min(dim U, dim V)``
* the decoding metric ``delta_rho(X, Y) = max(dim X - rho, dim Y) - dim(X & Y)``

:func:`delta_rho_bruteforce` evaluates the last one from its definition as
the least number of error packets explaining ``Y = A X + D Z``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    FieldMismatch,
    Infeasible,
    NegativeRho,
    ParamViolation,
    SearchSpaceTooLarge,
)
from .finite_field import FieldSpec
from .gf_linalg import (
    MatrixGF,
    SeedLike,
    _matmul_arrays,
    _use_bits,
    all_matrices,
    all_matrix_ranks,
    as_rng,
    encode_matrices,
    kernel,
    pack_gf2,
    rank,
    rank_gf2_packed,
    rref_nonzero,
    vstack,
)

BRUTEFORCE_SEARCH_CAP = 1 << 20


class Subspace:
    """Row space of a matrix over ``field`` inside F^ambient_dim.

    Build with :func:`subspace_from_rows`; ``basis`` is in RREF without zero
    rows, so ``dim == basis.rows``.
    """

    __slots__ = ("ambient_dim", "field", "basis", "pivots", "_packed", "_hash")

    def __init__(self, basis: MatrixGF, pivots: list[int]):
        self.ambient_dim = basis.cols
        self.field = basis.field
        self.basis = basis
        self.pivots = tuple(pivots)
        self._packed: list[int] | None = None
        self._hash = hash((self.field, self.ambient_dim, basis.data.tobytes()))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def packed(self) -> list[int]:
        if self._packed is None:
            self._packed = pack_gf2(self.basis.data)
        return self._packed

    def contains(self, other: Subspace) -> bool:
        return sum_dim(self, other) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self._hash == other._hash and self.field == other.field
                and self.ambient_dim == other.ambient_dim
                and bool(np.array_equal(self.basis.data, other.basis.data)))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, N={self.ambient_dim}, basis={self.basis.tolist()})"


def subspace_from_rows(M: MatrixGF) -> Subspace:
    R, pivots = rref_nonzero(M)
    return Subspace(R, pivots)


def zero_subspace(field: FieldSpec, N: int) -> Subspace:
    return Subspace(MatrixGF.zeros(field, 0, N), [])


def full_space(field: FieldSpec, N: int) -> Subspace:
    return Subspace(MatrixGF.identity(field, N), list(range(N)))


def span_of_units(field: FieldSpec, N: int, indices) -> Subspace:
    """Span of the standard basis vectors ``e_i`` (0-based ``indices``)."""
    rows = np.zeros((len(indices), N), dtype=np.int64)
    for r, i in enumerate(indices):
        rows[r, i] = 1
    return subspace_from_rows(MatrixGF(field, rows))


def _check_pair(U: Subspace, V: Subspace) -> None:
    if U.field != V.field:
        raise FieldMismatch(f"{U.field!r} vs {V.field!r}")
    if U.ambient_dim != V.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {U.ambient_dim} and {V.ambient_dim}")


def sum_dim(U: Subspace, V: Subspace) -> int:
    """dim(U + V)."""
    _check_pair(U, V)
    if U.dim == 0:
        return V.dim
    if V.dim == 0:
        return U.dim
    if _use_bits(U.field, U.ambient_dim):
        return rank_gf2_packed(U.packed() + V.packed())
    return rank(vstack(U.basis, V.basis))


def intersection_dim(U: Subspace, V: Subspace) -> int:
    """dim(U & V) = dim U + dim V - dim(U + V)."""
    return U.dim + V.dim - sum_dim(U, V)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_pair(U, V)
    return subspace_from_rows(vstack(U.basis, V.basis))


def intersection(U: Subspace, V: Subspace) -> Subspace:
    """U & V by Zassenhaus: row-reduce [[U, U], [V, 0]] and keep rows with zero left half."""
    _check_pair(U, V)
    f, N = U.field, U.ambient_dim
    top = np.hstack([U.basis.data, U.basis.data])
    bottom = np.hstack([V.basis.data, np.zeros_like(V.basis.data)])
    R, pivots = rref_nonzero(MatrixGF(f, np.vstack([top, bottom])))
    rows = [R.data[i, N:] for i, p in enumerate(pivots) if p >= N]
    data = np.array(rows, dtype=np.int64).reshape(len(rows), N)
    return subspace_from_rows(MatrixGF(f, data))


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """d_S(U, V) = dim U + dim V - 2 dim(U & V)."""
    return U.dim + V.dim - 2 * intersection_dim(U, V)


def injection_distance(U: Subspace, V: Subspace) -> int:
    """d_I(U, V) = dim(U + V) - min(dim U, dim V)."""
    return sum_dim(U, V) - min(U.dim, V.dim)


def delta_rho(X: Subspace, Y: Subspace, rho: int) -> int:
    """Closed form max(dim X - rho, dim Y) - dim(X & Y).

    ``dim X`` stands in for the number of injected packets.
    """
    if rho < 0:
        raise NegativeRho(f"rho must be non-negative, got {rho}")
    return max(X.dim - rho, Y.dim) - intersection_dim(X, Y)


def dual(U: Subspace) -> Subspace:
    """Orthogonal complement under sum_i u_i v_i."""
    if U.dim == 0:
        return full_space(U.field, U.ambient_dim)
    return subspace_from_rows(kernel(U.basis))


# -- brute-force decoding metric ------------------------------------------------

@lru_cache(maxsize=64)
def _least_inner_dim(field: FieldSpec, N: int, m: int, max_r: int) -> np.ndarray:
    """Table over matrix encodings: least r <= max_r with E = D Z, D in F^(N x r), Z in F^(r x m).

    Built by enumerating every (D, Z) pair for r = 1..max_r; entries no
    product reaches hold ``max_r + 1``.
    """
    table = np.full(field.order ** (N * m), max_r + 1, dtype=np.int64)
    table[0] = 0
    for r in range(1, max_r + 1):
        Z = all_matrices(field, r, m)
        # one D at a time keeps the product batch at |Z| matrices
        for d in all_matrices(field, N, r):
            enc = encode_matrices(field, _matmul_arrays(field, np.broadcast_to(d, (Z.shape[0], N, r)), Z))
            table[enc] = np.minimum(table[enc], r)
    table.setflags(write=False)
    return table


def delta_rho_bruteforce(X: MatrixGF, Y: MatrixGF, rho: int, max_r: int | None = None,
                         search_cap: int = BRUTEFORCE_SEARCH_CAP) -> int:
    """Least r admitting Y = A X + D Z with D (N x r), Z (r x m) and rank(A) >= n - rho.

    Every A in F^(N x n) is enumerated; for each inner dimension r the set of
    all products D Z is enumerated once and cached, so ``Y - A X`` is
    factorable with r rows exactly when some enumerated product equals it. ``max_r``
    defaults to N, where D = I always works.

    Raises:
        SearchSpaceTooLarge: the enumeration would exceed ``search_cap``.
        Infeasible: no admissible A exists, or none within ``max_r``.
    """
    f = X.field
    if Y.field != f:
        raise FieldMismatch(f"{X.field!r} vs {Y.field!r}")
    if X.cols != Y.cols:
        raise DimensionMismatch(f"packet lengths {X.cols} and {Y.cols} differ")
    if rho < 0:
        raise NegativeRho(f"rho must be non-negative, got {rho}")
    n, N, m = X.rows, Y.rows, X.cols
    if max_r is None:
        max_r = N
    q = f.order
    work = q ** (N * n) + sum(q ** (r * (N + m)) for r in range(1, max_r + 1))
    if work > search_cap or q ** (N * m) > search_cap:
        raise SearchSpaceTooLarge(f"enumeration size {work} exceeds cap {search_cap}")

    A_all = all_matrices(f, N, n)
    admissible = all_matrix_ranks(f, N, n) >= n - rho
    if not admissible.any():
        raise Infeasible(max_r, f"no {N}x{n} matrix has rank >= {n - rho}")
    A_ok = A_all[admissible]
    if n == 0:
        AX = np.zeros((A_ok.shape[0], N, m), dtype=np.int64)
    else:
        AX = _matmul_arrays(f, A_ok, X.data)
    E = encode_matrices(f, f.np_sub(Y.data[None, :, :], AX))
    best = int(_least_inner_dim(f, N, m, max_r)[E].min())
    if best > max_r:
        raise Infeasible(max_r)
    return best


# -- enumeration and sampling ---------------------------------------------------

def all_subspaces(field: FieldSpec, N: int, dim: int | None = None) -> list[Subspace]:
    """Every subspace of F^N (of one dimension if ``dim`` is given).

    Enumerates RREF matrices by pivot set: for pivots p_1 < ... < p_k each
    row has free entries right of its pivot in non-pivot columns.
    """
    q = field.order
    dims = range(N + 1) if dim is None else [dim]
    out = []
    for k in dims:
        for pivots in itertools.combinations(range(N), k):
            free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, N)
                    if j not in pivots]
            for values in itertools.product(range(q), repeat=len(free)):
                data = np.zeros((k, N), dtype=np.int64)
                for i, p in enumerate(pivots):
                    data[i, p] = 1
                for (i, j), v in zip(free, values):
                    data[i, j] = v
                out.append(Subspace(MatrixGF(field, data), list(pivots)))
    return out


def random_subspace(field: FieldSpec, N: int, dim: int, seed: SeedLike = None) -> Subspace:
    """Row space of ``dim`` uniform vectors, resampled until independent."""
    if not 0 <= dim <= N:
        raise ParamViolation(f"dimension {dim} outside [0, {N}]")
    rng = as_rng(seed)
    while True:
        M = MatrixGF(field, rng.integers(0, field.order, size=(dim, N)))
        S = subspace_from_rows(M)
        if S.dim == dim:
            return S
