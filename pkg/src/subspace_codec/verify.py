"""Self-check suite behind ``subspace-codec verify``.

Each check returns a :class:`CheckResult`. The default run uses reduced
grids and finishes in well under a minute; ``full=True`` uses the complete
grids (several minutes).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds
from .channel import correction_guarantee_trials, exhaustive_adversary
from .errors import Infeasible
from .finite_field import galois_field
from .gabidulin import (
    GabidulinParams,
    enumerate_code,
    example_sequence,
    min_injection_distance,
    puncture,
    random_hyperplane,
)
from .gf_linalg import MatrixGF, all_matrices
from .subspace import (
    all_subspaces,
    delta_rho,
    delta_rho_bruteforce,
    dual,
    injection_distance,
    random_subspace,
    subspace_distance,
    subspace_from_rows,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def gabidulin_grid(max_m: int = 4, max_mk: int = 8, q: int = 2) -> list[GabidulinParams]:
    return [GabidulinParams(q, m, l, k)
            for m in range(1, max_m + 1) for l in range(1, m + 1) for k in range(1, l + 1)
            if m * k <= max_mk]


def check_gaussian(full: bool) -> CheckResult:
    F = galois_field(2)
    spaces = all_subspaces(F, 4)
    by_dim = [sum(1 for s in spaces if s.dim == d) for d in range(5)]
    ok = (bounds.gaussian_coefficient(4, 2, 2) == 35 == by_dim[2]
          and bounds.count_subspaces_up_to(4, 4, 2) == 67 == len(spaces))
    return CheckResult("gaussian coefficients match subspace enumeration", ok, f"by dim {by_dim}")


def check_gabidulin_distance(full: bool) -> CheckResult:
    grid = gabidulin_grid(4 if full else 3)
    bad = [p for p in grid if min_injection_distance(enumerate_code(p)) != p.min_distance]
    return CheckResult("lifted Gabidulin minimum distance is l-k+1", not bad,
                       f"{len(grid)} codes" + (f", mismatches {bad}" if bad else ""))


def check_delta_oracle(full: bool) -> CheckResult:
    F = galois_field(2)
    top = 3 if full else 2
    checked = mismatches = 0
    for m, n, N in itertools.product(range(1, top + 1), repeat=3):
        Xs = [MatrixGF(F, x) for x in all_matrices(F, n, m)]
        Ys = [MatrixGF(F, y) for y in all_matrices(F, N, m)]
        Xsp = [subspace_from_rows(x) for x in Xs]
        Ysp = [subspace_from_rows(y) for y in Ys]
        for (X, Xs_), (Y, Ys_) in itertools.product(zip(Xs, Xsp), zip(Ys, Ysp)):
            for rho in (0, 1, 2):
                try:
                    b = delta_rho_bruteforce(X, Y, rho, max_r=3)
                except Infeasible:
                    continue
                checked += 1
                mismatches += b != delta_rho(Xs_, Ys_, rho)
    return CheckResult("delta_rho closed form equals brute force", mismatches == 0,
                       f"{checked} cases, {mismatches} mismatches")


def check_relation(full: bool) -> CheckResult:
    spaces = all_subspaces(galois_field(2), 4 if full else 3)
    bad = sum(2 * injection_distance(U, V) != subspace_distance(U, V) + abs(U.dim - V.dim)
              for U in spaces for V in spaces)
    return CheckResult("2 d_I = d_S + |dim U - dim V|", bad == 0, f"{len(spaces) ** 2} pairs")


def check_duality(full: bool) -> CheckResult:
    F = galois_field(2)
    rng = np.random.default_rng(5)
    bad = 0
    for _ in range(500 if full else 100):
        U = random_subspace(F, 5, int(rng.integers(0, 6)), rng)
        V = random_subspace(F, 5, int(rng.integers(0, 6)), rng)
        bad += injection_distance(U, V) != injection_distance(dual(U), dual(V))
    return CheckResult("d_I invariant under orthogonal complement", bad == 0)


def check_puncture(full: bool) -> CheckResult:
    codes = [p for p in gabidulin_grid(4 if full else 3) if p.min_distance >= 2]
    bad = []
    for s in range(20 if full else 6):
        p = codes[s % len(codes)]
        code = enumerate_code(p)
        out = puncture(code, random_hyperplane(code.field, code.ambient_dim, s), seed=s)
        if not (out.max_dim == p.l - 1 and len(out) == len(code)
                and min_injection_distance(out) >= p.min_distance - 1):
            bad.append(p)
    return CheckResult("puncturing keeps size and loses at most one of distance", not bad)


def check_bound_chain(full: bool) -> CheckResult:
    bad = []
    for p in gabidulin_grid():
        s = bounds.singleton_bound(p.N, p.l, p.min_distance, p.q)
        e = bounds.gabidulin_bound_exact(p.k, p.m, p.q)
        lo = bounds.gabidulin_bound_loose(p.k, p.m, p.q)
        if not (p.size <= s == e < lo):
            bad.append(p)
    for p in example_sequence():
        e = bounds.gabidulin_bound_exact(p.k, p.m, 16)
        lo = bounds.gabidulin_bound_loose(p.k, p.m, 16)
        if not (16 ** (p.m * p.k) <= e < lo and (lo - 1) == 4 * p.k * 16 ** (p.m * p.k)):
            bad.append(p)
    return CheckResult("q^(mk) <= singleton = exact < loose", not bad)


def check_figure1(full: bool) -> CheckResult:
    rows = bounds.figure1_table()
    gaps = [r.rate_eq_loose - r.rate_code for r in rows]
    ok = (len(rows) == 27
          and [r.N for r in rows][:3] == [6, 8, 9] and rows[-1].N == 48
          and all(r.rate_code < r.rate_eq_exact < r.rate_eq_loose for r in rows)
          and abs(rows[-1].rate_code - 450 / 864) < 1e-9
          and gaps[-1] < 0.01 and all(a > b for a, b in zip(gaps, gaps[2:])))
    return CheckResult("rate table structure", ok, f"final gap {gaps[-1]:.6f}")


def check_correction_guarantee(full: bool) -> CheckResult:
    trials = 500 if full else 60
    cells = bad = 0
    for p in gabidulin_grid(4 if full else 3):
        code = enumerate_code(p)
        d = p.min_distance
        for t in range(3):
            for rho in range(3):
                if 2 * t + rho >= d:
                    continue
                cells += 1
                rep = correction_guarantee_trials(p, t, rho, trials, seed=cells, code=code)
                bad += rep.failures + rep.ambiguous
    code = enumerate_code(GabidulinParams(2, 2, 2, 1))
    rep, witness = exhaustive_adversary(code, 1, 0)
    ok = bad == 0 and witness is not None
    return CheckResult("correction guarantee and its converse", ok,
                       f"{cells} cells, converse failures {rep.failures + rep.ambiguous}")


def check_gaussian_ratio(full: bool) -> CheckResult:
    bad = 0
    for q in (2, 3, 4, 16):
        for N in range(2, 25):
            for l in range(1, N):
                g, s = bounds.gaussian_coefficient(N, l, q), q ** (l * (N - l))
                bad += not (s < g < 4 * s)
    return CheckResult("1 < [N, l]_q / q^(l(N-l)) < 4", bad == 0)


CHECKS: list[Callable[[bool], CheckResult]] = [
    check_gaussian, check_gabidulin_distance, check_delta_oracle, check_relation,
    check_duality, check_puncture, check_bound_chain, check_figure1, check_correction_guarantee,
    check_gaussian_ratio,
]


def run_all(full: bool = False) -> list[CheckResult]:
    return [check(full) for check in CHECKS]
