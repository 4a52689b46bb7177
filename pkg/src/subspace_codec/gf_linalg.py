"""Dense linear algebra over finite fields.

Matrices hold integer element encodings in a numpy array and defer all
arithmetic to the owning :class:`~subspace_codec.finite_field.FieldSpec`.
GF(2) rank and RREF take a bit-packed fast path with identical results.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, ParamViolation
from .finite_field import FieldElement, FieldSpec

SeedLike = int | np.random.SeedSequence | np.random.Generator | None


def as_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class MatrixGF:
    """Dense ``rows x cols`` matrix over a finite field.

    ``data`` is a read-only int64 array of element encodings.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ParamViolation(f"entries must lie in [0, {field.order})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def _wrap(cls, field: FieldSpec, arr: np.ndarray) -> MatrixGF:
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        m.field = field
        m.data = arr
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> MatrixGF:
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> MatrixGF:
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FieldElement]], field: FieldSpec | None = None,
                      cols: int | None = None) -> MatrixGF:
        rows = [list(r) for r in rows]
        if field is None:
            field = rows[0][0].field
        data = []
        for r in rows:
            line = []
            for x in r:
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise FieldMismatch(f"{x.field!r} vs {field!r}")
                    line.append(x.value)
                else:
                    line.append(field.check(x))
            data.append(line)
        arr = np.array(data, dtype=np.int64).reshape(len(rows), cols if not rows else -1)
        return cls(field, arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx: tuple[int, int]) -> FieldElement:
        i, j = idx
        return FieldElement(self.field, int(self.data[i, j]))

    def row(self, i: int) -> MatrixGF:
        return MatrixGF._wrap(self.field, self.data[i:i + 1])

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    @property
    def T(self) -> MatrixGF:
        return MatrixGF._wrap(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.tolist()})"

    def __add__(self, other: MatrixGF) -> MatrixGF:
        return matadd(self, other)

    def __sub__(self, other: MatrixGF) -> MatrixGF:
        return matsub(self, other)

    def __neg__(self) -> MatrixGF:
        return MatrixGF._wrap(self.field, self.field.np_neg(self.data))

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        return matmul(self, other)

    def scale(self, c: FieldElement | int) -> MatrixGF:
        c = c.value if isinstance(c, FieldElement) else self.field.check(c)
        return MatrixGF._wrap(self.field, self.field.np_mul(c, self.data))


def _same_field(a: MatrixGF, b: MatrixGF) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return a.field


def matadd(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    f = _same_field(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return MatrixGF._wrap(f, f.np_add(a.data, b.data))


def matsub(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    f = _same_field(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {b.shape} from {a.shape}")
    return MatrixGF._wrap(f, f.np_sub(a.data, b.data))


def _matmul_arrays(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched product over ``f``; ``a`` is (..., r, k), ``b`` is (k, c) or (..., k, c)."""
    if f.is_prime_field and f.p < (1 << 20):
        return (a @ b) % f.p
    prod = f.np_mul(a[..., :, :, None], b[..., None, :, :])
    return f.np_sum(prod, axis=-2)


def matmul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    f = _same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return MatrixGF.zeros(f, a.rows, b.cols)
    return MatrixGF._wrap(f, _matmul_arrays(f, a.data, b.data))


def vstack(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    f = _same_field(a, b)
    if a.cols != b.cols:
        raise DimensionMismatch(f"cannot stack {a.shape} over {b.shape}")
    return MatrixGF._wrap(f, np.vstack([a.data, b.data]))


def hstack(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    f = _same_field(a, b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"cannot place {a.shape} beside {b.shape}")
    return MatrixGF._wrap(f, np.hstack([a.data, b.data]))


# -- elimination --------------------------------------------------------------

def _use_bits(f: FieldSpec, cols: int) -> bool:
    return f.is_prime_field and f.p == 2 and cols <= 62


def pack_gf2(data: np.ndarray) -> list[int]:
    """Rows of a 0/1 array as ints; column 0 is the most significant bit."""
    c = data.shape[1]
    if data.shape[0] == 0:
        return []
    weights = np.left_shift(1, np.arange(c - 1, -1, -1, dtype=np.int64))
    return (data @ weights).tolist()


def _unpack_gf2(rows: Iterable[int], c: int) -> np.ndarray:
    rows = list(rows)
    if not rows:
        return np.zeros((0, c), dtype=np.int64)
    shifts = np.arange(c - 1, -1, -1, dtype=np.int64)
    return (np.array(rows, dtype=np.int64)[:, None] >> shifts) & 1


def rank_gf2_packed(rows: Iterable[int]) -> int:
    """Rank of bit-packed GF(2) rows via an xor basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length()
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def _rref_gf2(data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    c = data.shape[1]
    basis: dict[int, int] = {}
    for v in pack_gf2(data):
        for top in sorted(basis, reverse=True):
            if v >> (top - 1) & 1:
                v ^= basis[top]
        if v:
            top = v.bit_length()
            for t, b in basis.items():
                if b >> (top - 1) & 1:
                    basis[t] = b ^ v
            basis[top] = v
    tops = sorted(basis, reverse=True)
    pivots = [c - t for t in tops]
    return _unpack_gf2([basis[t] for t in tops], c), pivots


def _rref_array(f: FieldSpec, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """RREF rows (nonzero rows only) and pivot columns."""
    r, c = data.shape
    if r == 0 or c == 0:
        return np.zeros((0, c), dtype=np.int64), []
    if _use_bits(f, c):
        return _rref_gf2(data)
    R = np.array(data, dtype=np.int64)
    pivots: list[int] = []
    top = 0
    for col in range(c):
        if top == r:
            break
        nz = np.flatnonzero(R[top:, col])
        if nz.size == 0:
            continue
        piv = top + int(nz[0])
        if piv != top:
            R[[top, piv]] = R[[piv, top]]
        lead = int(R[top, col])
        if lead != 1:
            R[top] = f.np_mul(f.inv_int(lead), R[top])
        factors = R[:, col].copy()
        factors[top] = 0
        if factors.any():
            R = f.np_sub(R, f.np_mul(factors[:, None], R[top][None, :]))
        pivots.append(col)
        top += 1
    return R[:top], pivots


def rref(M: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the shape of ``M``, its
    first ``rank`` rows nonzero and the rest zero.
    """
    rows, pivots = _rref_array(M.field, M.data)
    R = np.zeros(M.shape, dtype=np.int64)
    R[: len(pivots)] = rows
    return MatrixGF._wrap(M.field, R), len(pivots), pivots


def rref_nonzero(M: MatrixGF) -> tuple[MatrixGF, list[int]]:
    """Like :func:`rref` but drops the zero rows."""
    rows, pivots = _rref_array(M.field, M.data)
    return MatrixGF._wrap(M.field, rows), pivots


def rank(M: MatrixGF) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if _use_bits(M.field, M.cols):
        return rank_gf2_packed(pack_gf2(M.data))
    return len(_rref_array(M.field, M.data)[1])


def kernel(M: MatrixGF) -> MatrixGF:
    """Basis rows of the right null space {x : M x^T = 0}."""
    f, c = M.field, M.cols
    R, pivots = _rref_array(f, M.data)
    free = [j for j in range(c) if j not in set(pivots)]
    K = np.zeros((len(free), c), dtype=np.int64)
    for i, j in enumerate(free):
        K[i, j] = 1
        for row, pc in enumerate(pivots):
            K[i, pc] = f.neg_int(int(R[row, j]))
    return MatrixGF._wrap(f, K)


# -- random matrices ------------------------------------------------------------

def random_matrix(r: int, c: int, field: FieldSpec, seed: SeedLike = None) -> MatrixGF:
    rng = as_rng(seed)
    return MatrixGF._wrap(field, rng.integers(0, field.order, size=(r, c), dtype=np.int64))


def random_max_rank(r: int, c: int, field: FieldSpec, seed: SeedLike = None) -> MatrixGF:
    """Uniform ``r x c`` matrix of rank ``min(r, c)`` by rejection sampling."""
    rng = as_rng(seed)
    target = min(r, c)
    while True:
        M = random_matrix(r, c, field, rng)
        if rank(M) == target:
            return M


def random_full_rank(n: int, field: FieldSpec, seed: SeedLike = None) -> MatrixGF:
    """Uniform invertible ``n x n`` matrix."""
    if n < 1:
        raise ParamViolation(f"n must be positive, got {n}")
    return random_max_rank(n, n, field, seed)


# -- exhaustive enumeration helpers ---------------------------------------------

@lru_cache(maxsize=64)
def all_matrices(field: FieldSpec, r: int, c: int) -> np.ndarray:
    """Every ``r x c`` matrix over ``field`` as a read-only (q^(rc), r, c) array.

    Index ``i`` holds the matrix whose row-major entries are the base-q digits
    of ``i`` (entry 0 least significant).
    """
    q, n = field.order, r * c
    idx = np.arange(q ** n, dtype=np.int64)
    digits = (idx[:, None] // (q ** np.arange(n, dtype=np.int64))[None, :]) % q
    out = digits.reshape(q ** n, r, c)
    out.setflags(write=False)
    return out


def encode_matrices(field: FieldSpec, batch: np.ndarray) -> np.ndarray:
    """Inverse of the :func:`all_matrices` indexing for a (K, r, c) batch."""
    K = batch.shape[0]
    flat = batch.reshape(K, -1)
    weights = field.order ** np.arange(flat.shape[1], dtype=np.int64)
    return flat @ weights


@lru_cache(maxsize=64)
def all_matrix_ranks(field: FieldSpec, r: int, c: int) -> np.ndarray:
    mats = all_matrices(field, r, c)
    out = np.fromiter((rank(MatrixGF._wrap(field, m)) for m in mats), dtype=np.int64,
                      count=mats.shape[0])
    out.setflags(write=False)
    return out
