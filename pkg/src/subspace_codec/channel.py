"""Operator channel ``Y = A X + D Z`` and minimum-delta_rho decoding.

``X`` (n x N) carries a basis of the sent codeword, ``A`` (N_rx x n) is the
transfer matrix with rank at least ``n - rho``, and the ``t`` rows of ``Z``
are error packets entering through ``D`` (N_rx x t).
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    EmptyCode,
    FieldMismatch,
    NegativeRho,
    ParamViolation,
    SearchSpaceTooLarge,
)
from .finite_field import FieldSpec
from .gabidulin import DEFAULT_ENUMERATION_CAP, GabidulinParams, SubspaceCode, enumerate_code
from .gf_linalg import (
    MatrixGF,
    SeedLike,
    all_matrices,
    all_matrix_ranks,
    as_rng,
    matadd,
    matmul,
    random_matrix,
    random_max_rank,
    rank,
)
from .subspace import delta_rho, subspace_from_rows

ADVERSARY_SEARCH_CAP = 1 << 22


class Outcome(enum.Enum):
    AMBIGUOUS = "ambiguous"
    FAIL = "fail"


@dataclass(frozen=True)
class ChannelInstance:
    A: MatrixGF
    Dm: MatrixGF
    Z: MatrixGF
    rho_declared: int

    def __post_init__(self):
        if self.rho_declared < 0:
            raise NegativeRho(f"rho must be non-negative, got {self.rho_declared}")
        if not self.A.field == self.Dm.field == self.Z.field:
            raise FieldMismatch("A, D and Z must share a field")
        if self.Dm.cols != self.Z.rows:
            raise DimensionMismatch(f"D has {self.Dm.cols} columns but Z has {self.Z.rows} rows")
        if self.A.rows != self.Dm.rows:
            raise DimensionMismatch(f"A has {self.A.rows} rows but D has {self.Dm.rows}")
        if rank(self.A) < self.A.cols - self.rho_declared:
            raise ParamViolation(f"rank(A) < n - rho = {self.A.cols - self.rho_declared}")

    @property
    def t(self) -> int:
        return self.Z.rows


def random_transfer(N_rx: int, n: int, rho: int, field: FieldSpec, seed: SeedLike = None,
                    deficiency: int | None = None) -> MatrixGF:
    """Random ``N_rx x n`` transfer matrix of rank ``n - delta``.

    ``delta`` is uniform on ``[max(0, n - N_rx), min(rho, n)]`` unless forced by
    ``deficiency``. The matrix is a product of a random full-column-rank
    ``N_rx x (n - delta)`` and a random full-row-rank ``(n - delta) x n`` factor.
    """
    if rho < 0:
        raise NegativeRho(f"rho must be non-negative, got {rho}")
    if N_rx < n - rho:
        raise ParamViolation(f"N_rx = {N_rx} < n - rho = {n - rho}")
    rng = as_rng(seed)
    lo, hi = max(0, n - N_rx), min(rho, n)
    if deficiency is None:
        delta = int(rng.integers(lo, hi + 1))
    elif lo <= deficiency <= hi:
        delta = deficiency
    else:
        raise ParamViolation(f"deficiency {deficiency} outside [{lo}, {hi}]")
    s = n - delta
    if s == 0:
        return MatrixGF.zeros(field, N_rx, n)
    return matmul(random_max_rank(N_rx, s, field, rng), random_max_rank(s, n, field, rng))


def random_channel(N_rx: int, n: int, packet_len: int, t: int, rho: int, field: FieldSpec,
                   seed: SeedLike = None) -> ChannelInstance:
    rng = as_rng(seed)
    A = random_transfer(N_rx, n, rho, field, rng)
    Dm = random_matrix(N_rx, t, field, rng)
    Z = random_matrix(t, packet_len, field, rng)
    return ChannelInstance(A, Dm, Z, rho)


def transmit(X: MatrixGF, inst: ChannelInstance) -> MatrixGF:
    if X.rows != inst.A.cols:
        raise DimensionMismatch(f"X has {X.rows} rows, A expects {inst.A.cols}")
    if X.cols != inst.Z.cols:
        raise DimensionMismatch(f"X packets have length {X.cols}, Z packets {inst.Z.cols}")
    return matadd(matmul(inst.A, X), matmul(inst.Dm, inst.Z))


def decode_distances(Y: MatrixGF, code: SubspaceCode, rho: int) -> list[int]:
    if len(code) == 0:
        raise EmptyCode("cannot decode with an empty code")
    if Y.cols != code.ambient_dim:
        raise AmbientMismatch(f"received packets of length {Y.cols}, code ambient {code.ambient_dim}")
    Ys = subspace_from_rows(Y)
    return [delta_rho(X, Ys, rho) for X in code.codewords]


def decode(Y: MatrixGF, code: SubspaceCode, rho: int, radius: int | None = None) -> int | Outcome:
    """Index of the unique codeword minimizing delta_rho against row_space(Y).

    Returns ``Outcome.AMBIGUOUS`` on a tie, and ``Outcome.FAIL`` when a
    ``radius`` is given and the minimum exceeds it.
    """
    dists = decode_distances(Y, code, rho)
    best = min(dists)
    if radius is not None and best > radius:
        return Outcome.FAIL
    winners = [i for i, d in enumerate(dists) if d == best]
    if len(winners) > 1:
        return Outcome.AMBIGUOUS
    return winners[0]


@dataclass(frozen=True)
class TrialReport:
    trials: int
    failures: int
    ambiguous: int
    t: int
    rho: int
    d_I: int | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


def correction_guarantee_trials(params: GabidulinParams, t: int, rho: int, trials: int,
                                seed: SeedLike = 0, n_rx: int | None = None,
                                cap: int = DEFAULT_ENUMERATION_CAP,
                                code: SubspaceCode | None = None) -> TrialReport:
    """Send random codewords through random channels and decode.

    Each trial draws its own generator from a spawned seed sequence, so the
    report depends only on ``seed``. ``failures`` counts wrong decisions;
    ties are counted in ``ambiguous``.
    """
    if t < 0 or rho < 0:
        raise ParamViolation(f"t and rho must be non-negative, got t={t}, rho={rho}")
    if code is None:
        code = enumerate_code(params, cap)
    F, n, N = code.field, params.l, code.ambient_dim
    n_rx = n if n_rx is None else n_rx
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(
        seed if not isinstance(seed, np.random.Generator) else seed.integers(1 << 63))
    failures = ambiguous = 0
    for child in root.spawn(trials):
        rng = np.random.default_rng(child)
        j = int(rng.integers(len(code)))
        inst = random_channel(n_rx, n, N, t, rho, F, rng)
        out = decode(transmit(code[j].basis, inst), code, rho)
        if out is Outcome.AMBIGUOUS:
            ambiguous += 1
        elif out != j:
            failures += 1
    return TrialReport(trials, failures, ambiguous, t, rho, code.declared_type.D)


@dataclass(frozen=True)
class AdversaryWitness:
    codeword: int
    A: MatrixGF
    Dm: MatrixGF
    Z: MatrixGF
    outcome: int | Outcome


def exhaustive_adversary(code: SubspaceCode, t: int, rho: int, n_rx: int | None = None,
                         search_cap: int = ADVERSARY_SEARCH_CAP) -> tuple[TrialReport, AdversaryWitness | None]:
    """Try every codeword and every admissible (A, D, Z).

    Returns a report whose ``trials`` is the number of instances tried, and
    the first instance that was not decoded to the sent codeword (wrong or
    ambiguous), if any.
    """
    F, N = code.field, code.ambient_dim
    if not code.is_equidimensional:
        raise ParamViolation("exhaustive search expects an equidimensional code")
    n = code.max_dim
    n_rx = n if n_rx is None else n_rx
    q = F.order
    work = len(code) * q ** (n_rx * n + n_rx * t + t * N)
    if work > search_cap:
        raise SearchSpaceTooLarge(f"{work} instances exceed cap {search_cap}")
    A_all = all_matrices(F, n_rx, n)[all_matrix_ranks(F, n_rx, n) >= n - rho]
    D_all = all_matrices(F, n_rx, t)
    Z_all = all_matrices(F, t, N)
    cache: dict[bytes, int | Outcome] = {}
    total = failures = ambiguous = 0
    witness = None
    for j, X in enumerate(code.codewords):
        for A in A_all:
            AX = matmul(MatrixGF(F, A), X.basis)
            for Dm in D_all:
                for Z in Z_all:
                    DZ = matmul(MatrixGF(F, Dm), MatrixGF(F, Z))
                    Y = matadd(AX, DZ)
                    key = Y.data.tobytes()
                    out = cache.get(key)
                    if out is None:
                        out = cache[key] = decode(Y, code, rho)
                    total += 1
                    if out == j:
                        continue
                    if out is Outcome.AMBIGUOUS:
                        ambiguous += 1
                    else:
                        failures += 1
                    if witness is None:
                        witness = AdversaryWitness(j, MatrixGF(F, A), MatrixGF(F, Dm),
                                                   MatrixGF(F, Z), out)
    return TrialReport(total, failures, ambiguous, t, rho, code.declared_type.D), witness
