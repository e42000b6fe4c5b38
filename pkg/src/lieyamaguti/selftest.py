"""Seeded battery of structural properties on a randomly transported test system.

The system is the two-dimensional example plus an abelian summand, written
in a random basis; the module is the adjoint module plus a zero module (or
a zero module alone when it is smaller than the algebra), and the operator
is built to be Rota-Baxter by construction.
"""
from __future__ import annotations

import numpy as np

from .cochains import algebra_to_pi, graded_bracket, random_cochain, yamaguti_coboundary
from .core import (LYAlgebra, Representation, abelian, adjoint_representation, direct_sum,
                   direct_sum_representation, two_dim_example, zero_representation)
from .errors import StructureError
from .exact import Q, asarray, inverse, normalize, rank, zeros
from .rb import BigSpaceContext, is_relative_rota_baxter, strict_mc_check, twisted_l, twisted_mc_check
from .rb_cohomology import RBComplex
from .reports import CheckResult, Report


def _rational(rng) -> object:
    return Q(int(rng.integers(-3, 4))) / int(rng.choice([1, 2]))


def _random_matrix(rng, rows, cols):
    out = zeros((rows, cols))
    for idx in np.ndindex(rows, cols):
        out[idx] = _rational(rng)
    return out


def _invertible(rng, n):
    while True:
        P = asarray(rng.integers(-2, 3, size=(n, n)).tolist(), (n, n))
        if rank(P) == n:
            return P


def build_system(n: int, m: int, rng) -> tuple[LYAlgebra, Representation, np.ndarray]:
    """(algebra, module, RB operator) of dimensions n and m in a random basis."""
    if n < 1 or m < 1:
        raise StructureError("selftest dimensions must be positive")
    base = direct_sum(two_dim_example(), abelian(n - 2)) if n >= 2 else abelian(n)
    P = _invertible(rng, n)
    Pi = inverse(P)
    alg = base.transport(P)
    # operators on the base, carried to the new basis below
    if m >= n:
        rep = direct_sum_representation(adjoint_representation(alg), zero_representation(alg, m - n)) \
            if m > n else adjoint_representation(alg)
        core = zeros((n, n))
        if n >= 2:
            core[:2, :2] = [[0, _rational(rng)], [0, _rational(rng)]]
        else:
            core[:, :] = _random_matrix(rng, n, n)
        extra = zeros((n, m - n))
        if n > 2:
            extra[2:, :] = _random_matrix(rng, n - 2, m - n)       # into the central summand
        T = np.concatenate([normalize(P.dot(core).dot(Pi)), normalize(P.dot(extra))], axis=1)
    else:
        rep = zero_representation(alg, m)
        img = zeros((n, m))
        img[0, :] = _random_matrix(rng, 1, m)[0]
        if n > 2:
            img[2:, :] = _random_matrix(rng, n - 2, m)
        T = normalize(P.dot(img))
    return alg, rep, normalize(T)


class _Tally:
    def __init__(self, name):
        self.name, self.ok, self.total, self.first = name, 0, 0, None

    def record(self, passed: bool, witness=None):
        self.total += 1
        self.ok += bool(passed)
        if not passed and self.first is None:
            self.first = witness

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.ok == self.total, self.total - self.ok, self.first,
                           note=f"{self.ok}/{self.total} passed")


def run_selftest(seed: int = 0, dims=(3, 2), degree: int = 2, samples: int = 6) -> Report:
    rng = np.random.default_rng(seed)
    n, m = dims
    alg, rep, T = build_system(n, m, rng)
    report = Report(f"selftest seed={seed} dims={n},{m} degree={degree}")
    report.data["operator_is_rota_baxter"] = is_relative_rota_baxter(T, alg, rep).passed
    sign = lambda k: -1 if k % 2 else 1

    skew, jac = _Tally("graded_skew_symmetry"), _Tally("graded_jacobi")
    for _ in range(samples):
        p, q, r = (int(rng.integers(0, degree + 1)) for _ in range(3))
        A, B, C = (random_cochain(k, n, n, rng) for k in (p, q, r))
        skew.record(graded_bracket(A, B) == graded_bracket(B, A).scale(-sign(p * q)), (p, q))
        lhs = (graded_bracket(A, graded_bracket(B, C))
               - graded_bracket(graded_bracket(A, B), C)
               - graded_bracket(B, graded_bracket(A, C)).scale(sign(p * q)))
        jac.record(lhs.is_zero(), (p, q, r))

    adj = adjoint_representation(alg)
    Pi = algebra_to_pi(alg)
    dd, dbr = _Tally("coboundary_squares_to_zero"), _Tally("coboundary_is_bracket_with_structure")
    for p in range(degree + 1):
        for _ in range(max(1, samples // 2)):
            F = random_cochain(p, n, m, rng)
            if p < degree:
                dd.record(yamaguti_coboundary(alg, rep, yamaguti_coboundary(alg, rep, F)).is_zero(), p)
            G = random_cochain(p, n, n, rng)
            dbr.record(yamaguti_coboundary(alg, adj, G) == graded_bracket(Pi, G).scale(sign(p)), p)

    ctx = BigSpaceContext(alg, rep)
    cx = RBComplex(alg, rep, T)
    tw = twisted_l(ctx, T)
    twl, twsq = _Tally("rb_coboundary_is_twisted_differential_up_to_sign"), _Tally("twisted_differential_squares_to_zero")
    for p in range(degree + 1):
        for _ in range(max(1, samples // 2)):
            F = random_cochain(p, m, n, rng)
            image = cx.coboundary(F, p + 1)      # also cross-checks the two coboundary routes
            l1 = tw.l1(F)
            twl.record(image == l1.scale(sign(p)), p)
            if p < degree:
                twsq.record(tw.l1(l1).is_zero(), p)

    mc, tmc = _Tally("strict_mc_iff_rota_baxter"), _Tally("twisted_mc_iff_sum_is_rota_baxter")
    for k in range(samples):
        # alternate between multiples of T (RB or not) and unstructured operators
        cand = _random_matrix(rng, n, m) if k % 2 else normalize(_rational(rng) * T)
        direct = is_relative_rota_baxter(cand, alg, rep).passed
        smc = strict_mc_check(ctx, cand)
        mc.record(direct == smc.passed and smc.data["closed_forms_agree"], k)
        Tp = _random_matrix(rng, n, m) if k % 2 else _scaled_difference(alg, rep, T, rng)
        tmc.record(twisted_mc_check(ctx, T, Tp).passed == is_relative_rota_baxter(normalize(T + Tp), alg, rep).passed, k)

    for tally in (skew, jac, dd, dbr, twl, twsq, mc, tmc):
        report.add(tally.result())
    report.data["rb_coboundary_sign"] = "(-1)^n times the twisted differential in degree n"
    return report


def _scaled_difference(alg, rep, T, rng):
    """A perturbation T' with T + T' = c T, which is RB exactly when c T is."""
    c = _rational(rng)
    return normalize((c - 1) * T)
