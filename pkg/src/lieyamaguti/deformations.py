"""Linear and order-n deformations of relative Rota-Baxter operators.

"For all t" is always turned into per-coefficient polynomial identities in t,
which are finitely many and exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cochains import Cochain
from .core import D_of_wedge, LYAlgebra, Representation, left_multiplication
from .errors import NotNijenhuis, NotVerifiedDeformation
from .exact import Q, asarray, identity, normalize, zeros
from .reports import CheckResult, Report, residual_check
from .rb import as_operator, bilinear_term, require_rb, trilinear_term
from .rb_cohomology import RBComplex, coboundary_solve
from .tensors import einsum, wedge_dim, wedge_pairs


def _coefficient(alg, rep, ops, s, arity, lower=0, upper=None):
    """Sum of the multilinear terms over index tuples with entries in [lower, upper] summing to s."""
    upper = len(ops) - 1 if upper is None else upper
    m = rep.dim
    out = zeros((m,) * arity + (alg.dim,))
    fn = bilinear_term if arity == 2 else trilinear_term
    for idx in product(range(lower, upper + 1), repeat=arity):
        if sum(idx) == s:
            out = out + fn(alg, rep, *[ops[i] for i in idx])
    return normalize(out)


def coefficient_identities(alg, rep, ops, degrees) -> Report:
    """Per-degree coefficient identities of both operator equations for sum_i ops[i] t^i."""
    report = Report("coefficient identities")
    for s in degrees:
        report.add(residual_check(f"binary_t^{s}", _coefficient(alg, rep, ops, s, 2), 1,
                                  index_labels=["u", "v"]))
        report.add(residual_check(f"ternary_t^{s}", _coefficient(alg, rep, ops, s, 3), 1,
                                  index_labels=["u", "v", "w"]))
    return report


def linear_deformation_check(alg: LYAlgebra, rep: Representation, T, T1, complex_: RBComplex | None = None) -> Report:
    """Whether T + t T1 is a relative Rota-Baxter operator for every t."""
    T = require_rb(T, alg, rep)
    T1 = as_operator(T1, alg, rep)
    report = Report("linear deformation")
    coeff = coefficient_identities(alg, rep, [T, T1], [1, 2, 3])
    for c in coeff.checks:
        if c.name == "binary_t^3":
            continue            # the binary equation is quadratic in t
        report.add(c)
    cx = complex_ or RBComplex(alg, rep, T)
    d = cx.coboundary(Cochain.from_matrix(T1), 1)
    report.add(residual_check("consequence:T1_is_rota_baxter",
                              np.concatenate([bilinear_term(alg, rep, T1, T1).reshape(-1),
                                              trilinear_term(alg, rep, T1, T1, T1).reshape(-1)]), 1))
    report.add(residual_check("consequence:T1_is_1_cocycle", d.to_vector(), 1))
    return report


def order_n_check(alg: LYAlgebra, rep: Representation, coeffs) -> Report:
    """Coefficient identities of degree 0..n for T_t = sum coeffs[i] t^i modulo t^(n+1)."""
    ops = [as_operator(c, alg, rep) for c in coeffs]
    n = len(ops) - 1
    report = coefficient_identities(alg, rep, ops, range(n + 1))
    report.title = f"order-{n} deformation"
    return report


@dataclass
class RBHomomorphism:
    phi_g: np.ndarray
    phi_V: np.ndarray


def rb_homomorphism_check(alg: LYAlgebra, rep: Representation, T, T_source, hom: RBHomomorphism) -> Report:
    """Whether (phi_g, phi_V) is a homomorphism from T_source to T.

    Conditions: phi_g preserves both brackets; T phi_V = phi_g T_source;
    phi_V rho(x) = rho(phi_g x) phi_V; phi_V mu(x, y) = mu(phi_g x, phi_g y) phi_V.
    The induced intertwining of D is reported as well.
    """
    n, m = alg.dim, rep.dim
    T = as_operator(T, alg, rep)
    S = as_operator(T_source, alg, rep)
    pg = asarray(hom.phi_g, (n, n))
    pv = asarray(hom.phi_V, (m, m))
    pgt = pg.T
    e = einsum
    c, d = alg.bracket, alg.ternary
    report = Report("rota-baxter homomorphism")
    r = e("xyk,ok->xyo", c, pg) - e("xa,yb,abo->xyo", pgt, pgt, c)
    report.add(residual_check("phi_g_binary", normalize(r), 1, index_labels=list("xy")))
    r = e("xyzk,ok->xyzo", d, pg) - e("xa,yb,zc,abco->xyzo", pgt, pgt, pgt, d)
    report.add(residual_check("phi_g_ternary", normalize(r), 1, index_labels=list("xyz")))
    report.add(residual_check("operator_intertwining", normalize(np.dot(T, pv) - np.dot(pg, S)).T, 1,
                              index_labels=["v"]))
    r = e("ak,xkb->xab", pv, rep.rho) - e("xy,yak,kb->xab", pgt, rep.rho, pv)
    report.add(residual_check("rho_intertwining", normalize(r), 2, index_labels=["x"]))
    r = e("ak,xykb->xyab", pv, rep.mu) - e("xp,yq,pqak,kb->xyab", pgt, pgt, rep.mu, pv)
    report.add(residual_check("mu_intertwining", normalize(r), 2, index_labels=["x", "y"]))
    r = e("ak,xykb->xyab", pv, rep.D) - e("xp,yq,pqak,kb->xyab", pgt, pgt, rep.D, pv)
    report.add(residual_check("D_intertwining", normalize(r), 2, index_labels=["x", "y"]))
    return report


def nijenhuis_element_check(alg: LYAlgebra, rep: Representation, T, X) -> Report:
    """The six conditions defining a Nijenhuis element X of the wedge square.

    A seventh condition, rho([[X, x]]) D(X) = 0, is reported as a diagnostic:
    it is what the order-t^2 part of the homomorphism witness needs.
    """
    T = as_operator(T, alg, rep)
    X = asarray(X, (wedge_dim(alg.dim),))
    L = left_multiplication(alg, X)
    Lt = L.T
    DX = D_of_wedge(rep, X)
    c, d, mu = alg.bracket, alg.ternary, rep.mu
    e = einsum
    report = Report("nijenhuis element")
    report.add(residual_check("brackets_of_images", normalize(e("xa,yb,abo->xyo", Lt, Lt, c)), 1,
                              index_labels=list("xy")))
    r = (e("xa,yb,abzo->xyzo", Lt, Lt, d) + e("xa,zc,ayco->xyzo", Lt, Lt, d)
         + e("yb,zc,xbco->xyzo", Lt, Lt, d))
    report.add(residual_check("ternary_two_images", normalize(r), 1, index_labels=list("xyz")))
    report.add(residual_check("ternary_three_images", normalize(e("xa,yb,zc,abco->xyzo", Lt, Lt, Lt, d)), 1,
                              index_labels=list("xyz")))
    muL = e("wb,zbpq->zwpq", Lt, mu) + e("za,awpq->zwpq", Lt, mu)
    muLL = e("za,wb,abpq->zwpq", Lt, Lt, mu)
    r = e("zwpq,qr->zwpr", muL, DX) + muLL
    report.add(residual_check("mu_condition", normalize(r), 2, index_labels=list("zw")))
    report.add(residual_check("mu_condition_top", normalize(e("zwpq,qr->zwpr", muLL, DX)), 2,
                              index_labels=list("zw")))
    inner = np.dot(T, DX) - np.dot(L, T)
    report.add(residual_check("operator_condition", normalize(np.dot(L, inner)).T, 1, index_labels=["v"]))
    r = e("xa,apq,qr->xpr", Lt, rep.rho, DX)
    report.add(residual_check("rho_condition", normalize(r), 2, index_labels=["x"]), advisory=True)
    return report


def homomorphism_witness(alg, rep, X, t) -> RBHomomorphism:
    """(Id + t L_X, Id + t D(X))."""
    t = Q(t)
    X = asarray(X)
    return RBHomomorphism(normalize(identity(alg.dim) + t * left_multiplication(alg, X)),
                          normalize(identity(rep.dim) + t * D_of_wedge(rep, X)))


def trivial_deformation_from_nijenhuis(alg, rep, T, X, ts=(1, Q(1) / 2, -2), complex_=None):
    """T1 = delta0(X) together with a report on the deformation and its witnesses."""
    T = require_rb(T, alg, rep)
    nij = nijenhuis_element_check(alg, rep, T, X)
    if not nij.passed:
        raise NotNijenhuis("X is not a Nijenhuis element")
    cx = complex_ or RBComplex(alg, rep, T)
    T1 = cx.delta0(X).to_matrix()
    report = Report("trivial deformation")
    report.extend(linear_deformation_check(alg, rep, T, T1, cx), prefix="linear:")
    for t in ts:
        Tt = normalize(T + Q(t) * T1)
        hom = homomorphism_witness(alg, rep, X, t)
        report.extend(rb_homomorphism_check(alg, rep, T, Tt, hom), prefix=f"witness(t={Q(t)}):")
    report.extend(nij, prefix="nijenhuis:")
    return T1, report


def equivalence_check(alg, rep, T, T1, T2, X, complex_=None) -> Report:
    """Whether T + t T1 and T + t T2 are equivalent through the wedge element X."""
    T = require_rb(T, alg, rep)
    T1, T2 = as_operator(T1, alg, rep), as_operator(T2, alg, rep)
    X = asarray(X, (wedge_dim(alg.dim),))
    cx = complex_ or RBComplex(alg, rep, T)
    report = Report("equivalence of linear deformations")
    for name, S in (("first", T1), ("second", T2)):
        lin = linear_deformation_check(alg, rep, T, S, cx)
        report.add(CheckResult(f"{name}_is_linear_deformation", lin.passed))
    nij = nijenhuis_element_check(alg, rep, T, X)
    for key in ("brackets_of_images", "ternary_two_images", "ternary_three_images",
                "mu_condition", "mu_condition_top"):
        report.add(nij.check(key))
    diff = normalize(T2 - T1)
    report.add(residual_check("difference_is_delta0", normalize(diff - cx.delta0(X).to_matrix()).T, 1,
                              index_labels=["v"]))
    L = left_multiplication(alg, X)
    aux = normalize(np.dot(T1, D_of_wedge(rep, X)) - np.dot(L, T2))
    report.add(residual_check("auxiliary_condition", aux.T, 1, index_labels=["v"]), advisory=True)
    pre, solved = coboundary_solve(cx, Cochain.from_matrix(diff), 1)
    report.add(CheckResult("same_cohomology_class", pre is not None,
                           note="" if pre is not None else "the difference is not a coboundary"))
    return report


@dataclass
class ObstructionResult:
    obstruction: Cochain
    report: Report
    extension: np.ndarray | None = None
    data: dict = field(default_factory=dict)


def obstruction_cochain(alg, rep, coeffs) -> Cochain:
    """The level-2 cochain collecting the t^(n+1) terms that do not involve the next coefficient.

    Binary part: index pairs i + j = n + 1 with 1 <= i, j <= n.  Ternary
    part: index triples i + j + k = n + 1 with 0 <= i, j, k <= n (terms with
    a zero index do contribute here).
    """
    ops = [as_operator(c, alg, rep) for c in coeffs]
    n = len(ops) - 1
    I, J = wedge_pairs(rep.dim)
    b = _coefficient(alg, rep, ops, n + 1, 2, lower=1, upper=n)
    t = _coefficient(alg, rep, ops, n + 1, 3, lower=0, upper=n)
    return Cochain(1, rep.dim, alg.dim, b[I, J], t[I, J])


def obstruction_class(alg, rep, coeffs, complex_=None, require_verified: bool = True) -> ObstructionResult:
    """Obstruction to extending a verified order-n deformation, and an extension if one exists.

    With ``require_verified=False`` an unverified input is analysed anyway;
    the failing coefficient identities then appear in the report.
    """
    ops = [as_operator(c, alg, rep) for c in coeffs]
    n = len(ops) - 1
    base = order_n_check(alg, rep, ops)
    if not base.passed and require_verified:
        raise NotVerifiedDeformation(f"the coefficients do not form an order-{n} deformation")
    cx = complex_ or RBComplex(alg, rep, ops[0])
    ob = obstruction_cochain(alg, rep, ops)
    report = Report(f"obstruction for order {n}")
    if not base.passed:
        report.extend(base, prefix=f"order_{n}:")
    report.add(residual_check("obstruction_is_2_cocycle", cx.coboundary(ob, 2).to_vector(), 1))
    pre, solved = coboundary_solve(cx, -ob, 2)
    report.add(CheckResult("class_is_trivial", pre is not None,
                           note="" if pre is not None else "no level-1 cochain cancels the obstruction"))
    result = ObstructionResult(ob, report)
    I, J = wedge_pairs(rep.dim)
    literal = _coefficient(alg, rep, ops, n + 1, 3, lower=1, upper=n)[I, J]
    result.data["ternary_part_without_zero_indices_agrees"] = bool(np.all(literal == ob.g))
    if pre is not None:
        ext = pre.to_matrix()
        result.extension = ext
        check = order_n_check(alg, rep, ops + [ext])
        report.extend(check, prefix=f"extended_order_{n + 1}:")
    return result
