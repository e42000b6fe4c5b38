"""The cochain complex of a relative Rota-Baxter operator.

Levels: level 0 is the wedge square of g (coefficient vectors), level 1 is
Hom(V, g) (degree-0 cochains V -> g), level l >= 2 holds degree l-1 cochains.
The coboundary is computed two ways and the results must agree exactly:

* route "yamaguti": the generic Yamaguti coboundary of the sub-adjacent
  algebra with coefficients in the induced representation;
* route "explicit": a direct evaluation on basis tuples of the same
  coboundary written out in terms of T, rho, mu and the brackets of g.

Coboundary matrices are assembled from the first route and checked against
the second on dense random inputs.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .cochains import Cochain, _RepTensors, coboundary_matrix, yamaguti_coboundary
from .core import D_of_wedge, LYAlgebra, Representation, left_multiplication
from .errors import DimensionMismatch, InternalConsistencyError, ResourceCapExceeded, StructureError
from .exact import Q, asarray, basis_vector, normalize, rank, solve, zeros
from .reports import CheckResult, Report, residual_check
from .rb import BigSpaceContext, induced_representation, require_rb, sub_adjacent_lya, twisted_l
from .tensors import check_entries, wedge_dim, wedge_pairs

DEFAULT_MAX_LEVEL = 3


class RBComplex:
    def __init__(self, alg: LYAlgebra, rep: Representation, T, max_level: int = DEFAULT_MAX_LEVEL,
                 cross_check: bool = True):
        self.alg = alg
        self.rep = rep
        self.T = require_rb(T, alg, rep)
        self.n = alg.dim
        self.m = rep.dim
        self.max_level = max_level
        self.cross_check = cross_check
        self.sub = sub_adjacent_lya(alg, rep, self.T, check=False)
        self.ind = induced_representation(alg, rep, self.T, check=False)
        self._tensors = _RepTensors(self.sub, self.ind)
        self._matrices = {}

    # sizes and bookkeeping
    def size(self, level: int) -> int:
        if level == 0:
            return wedge_dim(self.n)
        return Cochain.size(level - 1, self.m, self.n)

    def _check_level(self, level):
        if level < 0:
            raise StructureError("levels start at 0")
        if level > self.max_level:
            raise ResourceCapExceeded(f"level {level} exceeds the level cap {self.max_level}")

    def to_vector(self, F, level):
        return asarray(F) if level == 0 else F.to_vector()

    def from_vector(self, vec, level):
        if level == 0:
            return asarray(vec)
        return Cochain.from_vector(vec, level - 1, self.m, self.n)

    # level 0 -> 1
    def delta0(self, X) -> Cochain:
        """v -> T D(X) v - [[X, T v]]."""
        X = asarray(X)
        if X.shape != (wedge_dim(self.n),):
            raise DimensionMismatch(f"wedge element must have {wedge_dim(self.n)} coordinates")
        M = np.dot(self.T, D_of_wedge(self.rep, X)) - np.dot(left_multiplication(self.alg, X), self.T)
        return Cochain.from_matrix(normalize(M))

    def _delta0_pointwise(self, X) -> Cochain:
        from .core import compute_D, eval_ternary
        X = asarray(X)
        I, J = wedge_pairs(self.n)
        cols = []
        for j in range(self.m):
            v = basis_vector(self.m, j)
            Tv = np.dot(self.T, v)
            col = zeros(self.n)
            for a, (i, k) in enumerate(zip(I, J)):
                if X[a] == 0:
                    continue
                ei, ek = basis_vector(self.n, i), basis_vector(self.n, k)
                col = col + X[a] * (np.dot(self.T, np.dot(compute_D(self.rep, ei, ek), v))
                                    - eval_ternary(self.alg, ei, ek, Tv))
            cols.append(col)
        return Cochain.from_matrix(normalize(np.stack(cols, axis=1)) if cols else zeros((self.n, 0)))

    # level >= 1
    def coboundary_yamaguti(self, F: Cochain) -> Cochain:
        return yamaguti_coboundary(self.sub, self.ind, F, self._tensors)

    def coboundary_explicit(self, F: Cochain) -> Cochain:
        return _explicit_coboundary(self.alg, self.rep, self.T, F)

    def coboundary(self, F, level: int):
        """The coboundary at ``level`` (both routes when cross-checking is on)."""
        self._check_level(level)
        if level == 0:
            out = self.delta0(F)
            if self.cross_check and out != self._delta0_pointwise(F):
                raise InternalConsistencyError("level-0 coboundary routes disagree")
            return out
        if not isinstance(F, Cochain) or F.degree != level - 1 or F.dom != self.m or F.cod != self.n:
            raise DimensionMismatch(f"expected a level-{level} cochain V->g")
        out = self.coboundary_yamaguti(F)
        if self.cross_check and out != self.coboundary_explicit(F):
            raise InternalConsistencyError(f"level-{level} coboundary routes disagree")
        return out

    def matrix(self, level: int) -> np.ndarray:
        """Matrix of the coboundary from ``level`` to ``level + 1``."""
        self._check_level(level)
        if level not in self._matrices:
            check_entries((self.size(level + 1), self.size(level)), "coboundary matrix")
            if level == 0:
                cols = [self.delta0(basis_vector(self.size(0), a)).to_vector() for a in range(self.size(0))]
                M = np.stack(cols, axis=1) if cols else zeros((self.size(1), 0))
            else:
                M = coboundary_matrix(self.coboundary_yamaguti, level - 1, self.m, self.n)
                if self.cross_check:
                    self._probe(M, level)
            M.setflags(write=False)
            self._matrices[level] = M
        return self._matrices[level]


    def _probe(self, M, level, probes: int = 2):
        # the coboundary is linear, so dense random inputs exercise every column at once
        rng = np.random.default_rng(level)
        for _ in range(probes):
            x = asarray([Q(int(a)) / int(b) for a, b in zip(rng.integers(-9, 10, M.shape[1]),
                                                             rng.integers(1, 8, M.shape[1]))])
            image = self.coboundary_explicit(self.from_vector(x, level))
            if np.any(normalize(M.dot(x)) != image.to_vector()):
                raise InternalConsistencyError(f"level-{level} coboundary routes disagree")


def rb_coboundary(cx: RBComplex, F, level: int):
    return cx.coboundary(F, level)


def delta0(cx: RBComplex, X) -> Cochain:
    return cx.delta0(X)


def rb_cohomology_dims(cx: RBComplex, level: int) -> dict:
    """dim Z, dim B, dim H at ``level`` >= 1 (B at level 1 is the image of delta0)."""
    if level < 1:
        raise StructureError("cohomology is defined from level 1 on")
    cx._check_level(level)
    d_here = cx.matrix(level)
    d_prev = cx.matrix(level - 1)
    size = cx.size(level)
    r_here = rank(d_here)
    Z = size - r_here
    B = rank(d_prev)
    out = {"level": level, "cochains": size, "Z": Z, "B": B, "H": Z - B, "rank_out": r_here}
    if level == 1:
        out["level0_kernel"] = cx.size(0) - B
    return out


# -- explicit evaluation --------------------------------------------------------------

class _Ops:
    """Small vector-level helpers for the explicit coboundary."""

    def __init__(self, alg, rep, T):
        self.c, self.d = alg.bracket, alg.ternary
        self.rho, self.mu, self.D = rep.rho, rep.mu, rep.D
        self.T = T
        self.n, self.m = alg.dim, rep.dim

    def br(self, x, y):
        return np.tensordot(np.tensordot(x, self.c, 1), y, ([0], [0]))

    def ter(self, x, y, z):
        return np.tensordot(np.tensordot(np.tensordot(x, self.d, 1), y, ([0], [0])), z, ([0], [0]))

    def rho_(self, x, v):
        return np.dot(np.tensordot(x, self.rho, 1), v)

    def mu_(self, x, y, v):
        return np.dot(np.tensordot(np.tensordot(x, self.mu, 1), y, ([0], [0])), v)

    def D_(self, x, y, v):
        return np.dot(np.tensordot(np.tensordot(x, self.D, 1), y, ([0], [0])), v)

    def Tv(self, v):
        return np.dot(self.T, v)

    def sub_br(self, u, v):
        return self.rho_(self.Tv(u), v) - self.rho_(self.Tv(v), u)

    def sub_ter(self, u, v, w):
        Tu, Tv_, Tw = self.Tv(u), self.Tv(v), self.Tv(w)
        return self.D_(Tu, Tv_, w) + self.mu_(Tv_, Tw, u) - self.mu_(Tu, Tw, v)


def _explicit_coboundary(alg, rep, T, F: Cochain) -> Cochain:
    ops = _Ops(alg, rep, T)
    n, m = ops.n, ops.m
    p = F.degree
    wV = wedge_dim(m)
    I, J = wedge_pairs(m)
    E = [basis_vector(m, i) for i in range(m)]
    sgn_p = -1 if p % 2 else 1

    def wedge_of(x, y):
        return normalize(x[I] * y[J] - x[J] * y[I])

    def f_at(args):
        """f on a list of wedge arguments, each a basis index or a coordinate vector."""
        out = F.f
        for A in args:
            out = out[A] if isinstance(A, (int, np.integer)) else np.tensordot(A, out, ([0], [0]))
        return out

    def g_at(args, x):
        out = F.g
        for A in args:
            out = out[A] if isinstance(A, (int, np.integer)) else np.tensordot(A, out, ([0], [0]))
        return np.dot(x, out)

    def circ(k_pair, l_pair):
        (uk, vk), (ul, vl) = k_pair, l_pair
        return wedge_of(ops.sub_ter(uk, vk, ul), vl) + wedge_of(ul, ops.sub_ter(uk, vk, vl))

    out_f = zeros((wV,) * (p + 1) + (n,))
    out_g = zeros((wV,) * (p + 1) + (m, n))
    for idx in product(range(wV), repeat=p + 1):
        pairs = [(E[I[a]], E[J[a]]) for a in idx]
        head = list(idx[:p])
        u1, v1 = pairs[p]
        Tu1, Tv1 = ops.Tv(u1), ops.Tv(v1)
        # first component
        if p >= 1 or True:
            gu, gv = g_at(head, u1), g_at(head, v1)
            val = sgn_p * (ops.br(Tu1, gv) - ops.br(Tv1, gu) - g_at(head, ops.sub_br(u1, v1))
                           + ops.Tv(ops.rho_(gv, u1)) - ops.Tv(ops.rho_(gu, v1)))
            for k in range(p):
                rest = [a for i, a in enumerate(idx) if i != k]
                fk = f_at(rest)
                uk, vk = pairs[k]
                Tuk, Tvk = ops.Tv(uk), ops.Tv(vk)
                term = ops.ter(Tuk, Tvk, fk) - ops.Tv(ops.mu_(Tvk, fk, uk)) + ops.Tv(ops.mu_(Tuk, fk, vk))
                val = val + (1 if k % 2 == 0 else -1) * term
            for k in range(p + 1):
                for l in range(k + 1, p + 1):
                    args = [a for i, a in enumerate(idx) if i != k]
                    args[l - 1] = circ(pairs[k], pairs[l])
                    val = val + (-1 if (k + 1) % 2 else 1) * f_at(args)
            out_f[idx] = val
        # second component
        for j in range(m):
            w = E[j]
            Tw = ops.Tv(w)
            gu, gv = g_at(head, u1), g_at(head, v1)
            val = sgn_p * (ops.ter(gu, Tv1, Tw) - ops.Tv(ops.D_(gu, Tv1, w) - ops.mu_(gu, Tw, v1))
                           - ops.ter(gv, Tu1, Tw) + ops.Tv(ops.D_(gv, Tu1, w) - ops.mu_(gv, Tw, u1)))
            for k in range(p + 1):
                rest = [a for i, a in enumerate(idx) if i != k]
                gk = g_at(rest, w)
                uk, vk = pairs[k]
                Tuk, Tvk = ops.Tv(uk), ops.Tv(vk)
                term = ops.ter(Tuk, Tvk, gk) - ops.Tv(ops.mu_(Tvk, gk, uk) - ops.mu_(Tuk, gk, vk))
                val = val + (1 if k % 2 == 0 else -1) * term
                val = val + (-1 if (k + 1) % 2 else 1) * g_at(rest, ops.sub_ter(uk, vk, w))
            for k in range(p + 1):
                for l in range(k + 1, p + 1):
                    args = [a for i, a in enumerate(idx) if i != k]
                    args[l - 1] = circ(pairs[k], pairs[l])
                    val = val + (-1 if (k + 1) % 2 else 1) * g_at(args, w)
            out_g[idx + (j,)] = val
    return Cochain(p + 1, m, n, normalize(out_f), normalize(out_g))


# -- relation with the twisted differential -----------------------------------------

def theorem_diff_oracle(cx: RBComplex, F: Cochain, ctx: BigSpaceContext | None = None) -> Report:
    """Compare the coboundary of F with the twisted differential l1T(F).

    For graded degree n >= 1 the stated relation is coboundary = (-1)^(n-1) l1T;
    for degree 0 it is coboundary = l1T.  The report also records which sign,
    if any, actually relates the two sides.
    """
    ctx = ctx or BigSpaceContext(cx.alg, cx.rep)
    tw = twisted_l(ctx, cx.T)
    n = F.degree
    lhs = cx.coboundary(F, n + 1)
    rhs = tw.l1(F)
    stated = 1 if n == 0 else (-1 if (n - 1) % 2 else 1)
    report = Report("coboundary versus twisted differential")
    diff = lhs - rhs.scale(stated)
    report.add(residual_check("stated_sign_law", diff.to_vector(), 1))
    if lhs.is_zero() and rhs.is_zero():
        observed = "both zero"
    elif lhs == rhs:
        observed = "+1"
    elif lhs == -rhs:
        observed = "-1"
    else:
        observed = "no sign relates the two sides"
    report.data.update({"degree": n, "stated_sign": stated, "observed_sign": observed})
    return report


# -- membership and solving ---------------------------------------------------------------

def cocycle_membership(cx: RBComplex, F, level: int) -> Report:
    image = cx.coboundary(F, level)
    report = Report(f"level-{level} cocycle")
    report.add(residual_check("coboundary_vanishes", cx.to_vector(image, level + 1), 1))
    return report


def coboundary_solve(cx: RBComplex, G, level: int):
    """Solve coboundary(x) = G for x at ``level - 1``.

    Returns (x or None, Report).  The pivot solution of the exact linear
    system is returned; None certifies that G is not a coboundary.
    """
    if level < 1:
        raise StructureError("coboundaries live at level >= 1")
    M = cx.matrix(level - 1)
    x = solve(M, cx.to_vector(G, level))
    report = Report(f"level-{level} coboundary solve")
    report.add(CheckResult("is_coboundary", x is not None,
                           note="" if x is not None else "linear system is inconsistent over Q"))
    if x is None:
        return None, report
    pre = cx.from_vector(x, level - 1)
    back = cx.coboundary(pre, level - 1)
    report.add(residual_check("preimage_maps_back", np.asarray(cx.to_vector(back, level) - cx.to_vector(G, level),
                                                              dtype=object), 1))
    return pre, report
