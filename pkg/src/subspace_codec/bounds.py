"""Gaussian coefficients, the Singleton-type bound and the rate table.

Bound values are exact Python integers; logarithms appear only when rates
are rendered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParamViolation
from .gabidulin import example_sequence


def _check_q(q: int) -> None:
    if q < 2:
        raise ParamViolation(f"q must be at least 2, got {q}")


def gaussian_coefficient(N: int, l: int, q: int) -> int:
    """Number of l-dimensional subspaces of F_q^N.

    Multiplies all numerator factors, then divides exactly by the product of
    the denominator factors.
    """
    _check_q(q)
    if not 0 <= l <= N:
        raise ParamViolation(f"need 0 <= l <= N, got l={l}, N={N}")
    num = den = 1
    for i in range(l):
        num *= q ** (N - i) - 1
        den *= q ** (l - i) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def count_subspaces_up_to(N: int, d_max: int, q: int) -> int:
    """Subspaces of F_q^N of dimension at most ``d_max``."""
    if not 0 <= d_max <= N:
        raise ParamViolation(f"need 0 <= d_max <= N, got d_max={d_max}, N={N}")
    return sum(gaussian_coefficient(N, i, q) for i in range(d_max + 1))


def singleton_bound(N: int, l: int, D: int, q: int) -> int:
    """1 + (l - D + 1) [N - D + 1, N - l]_q for codes with l <= N/2.

    Raises:
        ParamViolation: if 2l > N (the bound is trivial there: the Gaussian
            coefficient peaks at l = N/2), or D is outside [1, l].
    """
    _check_q(q)
    if 2 * l > N:
        raise ParamViolation(
            f"l = {l} > N/2 = {N / 2}: the bound is trivial beyond N/2, where "
            "the Gaussian coefficient [N, l]_q is symmetric with its maximum at l = N/2")
    if not 1 <= D <= l:
        raise ParamViolation(f"need 1 <= D <= l, got D={D}, l={l}")
    return 1 + (l - D + 1) * gaussian_coefficient(N - D + 1, N - l, q)


def gabidulin_bound_exact(k: int, m: int, q: int) -> int:
    """1 + k [m + k, m]_q."""
    if k < 1 or m < 1:
        raise ParamViolation(f"k and m must be positive, got k={k}, m={m}")
    return 1 + k * gaussian_coefficient(m + k, m, q)


def gabidulin_bound_loose(k: int, m: int, q: int) -> int:
    """1 + 4k q^(mk)."""
    if k < 1 or m < 1:
        raise ParamViolation(f"k and m must be positive, got k={k}, m={m}")
    _check_q(q)
    return 1 + 4 * k * q ** (m * k)


def lemma4_ratio_exact(N: int, l: int, q: int) -> Fraction:
    """[N, l]_q / q^(l(N - l)) as an exact rational."""
    return Fraction(gaussian_coefficient(N, l, q), q ** (l * (N - l)))


def lemma4_ratio(N: int, l: int, q: int) -> float:
    return float(lemma4_ratio_exact(N, l, q))


def log_q_big(n: int, q: int) -> float:
    """log_q(n) for a positive integer of any size.

    Uses the bit length plus the leading 64 bits as a mantissa so ``n`` is
    never converted to a float as a whole.
    """
    if n < 1:
        raise ParamViolation(f"log of non-positive {n}")
    _check_q(q)
    shift = max(0, n.bit_length() - 64)
    return (shift + math.log2(n >> shift)) / math.log2(q)


def rate(N: int, l: int, logq_size: float | Fraction) -> float:
    """log_q|C| / (N l)."""
    if N < 1 or l < 1:
        raise ParamViolation(f"N and l must be positive, got N={N}, l={l}")
    if isinstance(logq_size, (int, Fraction)):
        return float(Fraction(logq_size, N * l))
    return logq_size / (N * l)


@dataclass(frozen=True)
class RateRow:
    i: int
    m: int
    l: int
    k: int
    N: int
    rate_code: float
    rate_eq_exact: float
    rate_eq_loose: float


CSV_HEADER = ("i", "m", "l", "k", "N", "rate_code", "rate_eq_exact", "rate_eq_loose")


def figure1_table(i_from: int = 4, i_to: int = 30, q: int = 16) -> list[RateRow]:
    """Rates of the GF(16) Gabidulin sequence and of its two bound values."""
    rows = []
    for i, p in zip(range(i_from, i_to + 1), example_sequence(i_from, i_to)):
        N, nl = p.N, p.N * p.l
        exact = gabidulin_bound_exact(p.k, p.m, q)
        loose = gabidulin_bound_loose(p.k, p.m, q)
        rows.append(RateRow(
            i=i, m=p.m, l=p.l, k=p.k, N=N,
            rate_code=rate(N, p.l, Fraction(p.m * p.k)),
            rate_eq_exact=log_q_big(exact, q) / nl,
            rate_eq_loose=log_q_big(loose, q) / nl,
        ))
    return rows


def format_real(x: float) -> str:
    return f"{x:.12g}"


def table_to_csv(rows: list[RateRow]) -> str:
    lines = [",".join(CSV_HEADER)]
    for r in rows:
        lines.append(",".join([str(r.i), str(r.m), str(r.l), str(r.k), str(r.N),
                               format_real(r.rate_code), format_real(r.rate_eq_exact),
                               format_real(r.rate_eq_loose)]))
    return "\n".join(lines) + "\n"
