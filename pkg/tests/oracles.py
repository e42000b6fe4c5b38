"""Independent reference implementations used as test oracles.

Everything here works on Python Fractions and plain loops, with sympy for
ranks, and shares no code with the package beyond reading structure
constants out of its arrays.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy


def fr(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_lists(arr):
    """Nested lists of Fractions from an object array of exact rationals."""
    if hasattr(arr, "shape") and arr.ndim == 0:
        return fr(arr[()])
    if hasattr(arr, "tolist"):
        arr = arr.tolist()
    if isinstance(arr, list):
        return [to_lists(a) for a in arr]
    return fr(arr)


def unit(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def add(*vs):
    return [sum(c, Fraction(0)) for c in zip(*vs)]


def sub(a, b):
    return [x - y for x, y in zip(a, b)]


def scal(c, v):
    return [c * x for x in v]


def matvec(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(M))]


def sympy_rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


class System:
    """An algebra (c, d), a representation (rho, mu) and an operator T, as Fraction tensors.

    c[i][j][k] is the k-th coordinate of [e_i, e_j]; d[i][j][k][l] that of
    [[e_i, e_j, e_k]]; rho[x] and mu[x][y] are matrices acting on columns;
    T is a matrix from V to g.
    """

    def __init__(self, c, d, rho, mu, T=None):
        self.c, self.d, self.rho, self.mu = c, d, rho, mu
        self.n = len(c)
        self.m = len(rho[0]) if self.n else 0
        self.T = T

    # structure on vectors
    def br(self, x, y):
        out = [Fraction(0)] * self.n
        for i, j in product(range(self.n), repeat=2):
            if x[i] and y[j]:
                out = add(out, scal(x[i] * y[j], self.c[i][j]))
        return out

    def ter(self, x, y, z):
        out = [Fraction(0)] * self.n
        for i, j, k in product(range(self.n), repeat=3):
            if x[i] and y[j] and z[k]:
                out = add(out, scal(x[i] * y[j] * z[k], self.d[i][j][k]))
        return out

    def rho_v(self, x, v):
        out = [Fraction(0)] * self.m
        for i in range(self.n):
            if x[i]:
                out = add(out, scal(x[i], matvec(self.rho[i], v)))
        return out

    def mu_v(self, x, y, v):
        out = [Fraction(0)] * self.m
        for i, j in product(range(self.n), repeat=2):
            if x[i] and y[j]:
                out = add(out, scal(x[i] * y[j], matvec(self.mu[i][j], v)))
        return out

    def D_v(self, x, y, v):
        """mu(y,x) - mu(x,y) + [rho(x), rho(y)] - rho([x,y])."""
        return add(self.mu_v(y, x, v), scal(-1, self.mu_v(x, y, v)),
                   self.rho_v(x, self.rho_v(y, v)), scal(-1, self.rho_v(y, self.rho_v(x, v))),
                   scal(-1, self.rho_v(self.br(x, y), v)))

    def Tv(self, v):
        return matvec(self.T, v)

    # the two operator identities
    def rb_residuals(self):
        out = []
        e = lambda i: unit(self.m, i)
        for u, v in product(range(self.m), repeat=2):
            U, V = e(u), e(v)
            r = sub(self.br(self.Tv(U), self.Tv(V)),
                    self.Tv(sub(self.rho_v(self.Tv(U), V), self.rho_v(self.Tv(V), U))))
            out.append(r)
        for u, v, w in product(range(self.m), repeat=3):
            U, V, W = e(u), e(v), e(w)
            TU, TV, TW = self.Tv(U), self.Tv(V), self.Tv(W)
            inner = add(self.D_v(TU, TV, W), self.mu_v(TV, TW, U), scal(-1, self.mu_v(TU, TW, V)))
            out.append(sub(self.ter(TU, TV, TW), self.Tv(inner)))
        return out

    def is_rb(self):
        return all(all(x == 0 for x in r) for r in self.rb_residuals())

    # sub-adjacent algebra on V and induced representation on g
    def sub_br(self, u, v):
        return sub(self.rho_v(self.Tv(u), v), self.rho_v(self.Tv(v), u))

    def sub_ter(self, u, v, w):
        Tu, Tv, Tw = self.Tv(u), self.Tv(v), self.Tv(w)
        return add(self.D_v(Tu, Tv, w), self.mu_v(Tv, Tw, u), scal(-1, self.mu_v(Tu, Tw, v)))

    def ind_rho(self, u, x):
        return add(self.br(self.Tv(u), x), self.Tv(self.rho_v(x, u)))

    def ind_mu(self, u, v, x):
        Tu, Tv = self.Tv(u), self.Tv(v)
        return sub(self.ter(x, Tu, Tv), self.Tv(sub(self.D_v(x, Tu, v), self.mu_v(x, Tv, u))))

    def ind_D(self, u, v, x):
        Tu, Tv = self.Tv(u), self.Tv(v)
        return sub(self.ter(Tu, Tv, x), self.Tv(sub(self.mu_v(Tv, x, u), self.mu_v(Tu, x, v))))

    def left(self, X, x):
        """[[X, x]] for X given as a list of (coefficient, i, j)."""
        out = [Fraction(0)] * self.n
        for c, i, j in X:
            out = add(out, scal(c, self.ter(unit(self.n, i), unit(self.n, j), x)))
        return out

    def D_wedge(self, X, v):
        out = [Fraction(0)] * self.m
        for c, i, j in X:
            out = add(out, scal(c, self.D_v(unit(self.n, i), unit(self.n, j), v)))
        return out


# -- cochains of the sub-adjacent algebra (on V) with values in g ----------------------

class Cochain:
    """f on n wedge arguments, g on n wedge arguments and one more vector.

    Stored by values on basis tuples: f[(p_1, ..., p_n)] and g[(p_1, ..., p_n, k)]
    with each p = (i, j), i < j.  Degree 0 (level 1) is a plain map V -> g.
    """

    def __init__(self, m, cod, n, f=None, g=None):
        self.m, self.cod, self.n = m, cod, n
        self.f = f or {}
        self.g = g or {}

    def _pairs_expansion(self, wedges):
        """Yield (coefficient, basis pair tuple) for a list of wedges a ^ b."""
        per = []
        for a, b in wedges:
            terms = []
            for i, j in combinations(range(self.m), 2):
                coef = a[i] * b[j] - a[j] * b[i]
                if coef:
                    terms.append((coef, (i, j)))
            per.append(terms)
        for choice in product(*per):
            coef = Fraction(1)
            for cf, _ in choice:
                coef *= cf
            yield coef, tuple(p for _, p in choice)

    def eval_f(self, wedges):
        if self.n == 0:
            (a,) = wedges            # degree 0: a single vector
            out = [Fraction(0)] * self.cod
            for i in range(self.m):
                if a[i]:
                    out = add(out, scal(a[i], self.f.get(i, [Fraction(0)] * self.cod)))
            return out
        out = [Fraction(0)] * self.cod
        for coef, key in self._pairs_expansion(wedges):
            if key in self.f:
                out = add(out, scal(coef, self.f[key]))
        return out

    def eval_g(self, wedges, z):
        out = [Fraction(0)] * self.cod
        for coef, key in self._pairs_expansion(wedges):
            for k in range(self.m):
                if z[k] and key + (k,) in self.g:
                    out = add(out, scal(coef * z[k], self.g[key + (k,)]))
        return out


def _wedge_basis(m):
    return list(combinations(range(m), 2))


def cochain_basis(S: System, level: int, dom=None, cod=None):
    m = S.m if dom is None else dom
    n = S.n if cod is None else cod
    W = _wedge_basis(m)
    if level == 1:
        for i, a in product(range(m), range(n)):
            yield Cochain(m, n, 0, f={i: unit(n, a)})
        return
    deg = level - 1
    for key in product(W, repeat=deg):
        for a in range(n):
            yield Cochain(m, n, deg, f={key: unit(n, a)})
    for key in product(W, repeat=deg):
        for k in range(m):
            for a in range(n):
                yield Cochain(m, n, deg, g={key + (k,): unit(n, a)})


def cochain_coordinates(S: System, C: "tuple", level: int, dom=None):
    """Coordinates of a coboundary (values of delta_I and delta_II on basis tuples)."""
    m = S.m if dom is None else dom
    W = _wedge_basis(m)
    e = lambda i: unit(m, i)
    fpart, gpart = C
    deg = level - 1
    out = []
    for key in product(W, repeat=deg):
        out.extend(fpart([(e(i), e(j)) for i, j in key]))
    for key in product(W, repeat=deg):
        for k in range(m):
            out.extend(gpart([(e(i), e(j)) for i, j in key], e(k)))
    return out


def induced_ops(S: System):
    """Sub-adjacent algebra on V with coefficients in g through the induced representation."""
    return S.ind_rho, S.ind_mu, S.ind_D, S.sub_br, S.sub_ter


def plain_ops(S: System):
    """The algebra g itself with coefficients in V."""
    return S.rho_v, S.mu_v, S.D_v, S.br, S.ter


def yamaguti_delta(S: System, F: Cochain, ops=None):
    """Yamaguti coboundary of F (by default for the sub-adjacent algebra and induced representation).

    Returns the pair of functions (delta_I, delta_II) evaluated on wedge lists.
    """
    rho, mu, D, br, ter = ops or induced_ops(S)
    if F.n == 0:
        f = lambda x: F.eval_f([x])

        def dI(wedges):
            (x, y), = wedges
            return add(rho(x, f(y)), scal(-1, rho(y, f(x))), scal(-1, f(br(x, y))))

        def dII(wedges, z):
            (x, y), = wedges
            return add(D(x, y, f(z)), mu(y, z, f(x)), scal(-1, mu(x, z, f(y))), scal(-1, f(ter(x, y, z))))
        return dI, dII

    n = F.n
    sign = Fraction(-1) ** n

    def circ(Xk, Xl):
        (xk, yk), (xl, yl) = Xk, Xl
        return [(ter(xk, yk, xl), yl), (xl, ter(xk, yk, yl))]

    def f_sub(args, k, l):
        """f with argument k removed and argument l replaced by X_k o X_l (expanded bilinearly)."""
        parts = circ(args[k], args[l])
        total = None
        for part in parts:
            new = [a for i, a in enumerate(args) if i != k]
            new[l - 1] = part
            val = F.eval_f(new)
            total = val if total is None else add(total, val)
        return total

    def g_sub(args, k, l, z):
        parts = circ(args[k], args[l])
        total = None
        for part in parts:
            new = [a for i, a in enumerate(args) if i != k]
            new[l - 1] = part
            val = F.eval_g(new, z)
            total = val if total is None else add(total, val)
        return total

    def dI(args):
        xs, ys = args[n]
        head = args[:n]
        out = scal(sign, add(rho(xs, F.eval_g(head, ys)), scal(-1, rho(ys, F.eval_g(head, xs))),
                             scal(-1, F.eval_g(head, br(xs, ys)))))
        for k in range(n):                   # k = 1..n in the one-based formula
            x, y = args[k]
            rest = [a for i, a in enumerate(args) if i != k]
            out = add(out, scal(Fraction(-1) ** k, D(x, y, F.eval_f(rest))))
        for k in range(n + 1):
            for l in range(k + 1, n + 1):
                out = add(out, scal(Fraction(-1) ** (k + 1), f_sub(args, k, l)))
        return out

    def dII(args, z):
        xs, ys = args[n]
        head = args[:n]
        out = scal(sign, sub(mu(ys, z, F.eval_g(head, xs)), mu(xs, z, F.eval_g(head, ys))))
        for k in range(n + 1):
            x, y = args[k]
            rest = [a for i, a in enumerate(args) if i != k]
            out = add(out, scal(Fraction(-1) ** k, D(x, y, F.eval_g(rest, z))))
            out = add(out, scal(Fraction(-1) ** (k + 1), F.eval_g(rest, ter(x, y, z))))
        for k in range(n + 1):
            for l in range(k + 1, n + 1):
                out = add(out, scal(Fraction(-1) ** (k + 1), g_sub(args, k, l, z)))
        return out

    return dI, dII


def delta0_columns(S: System):
    """Coordinates of v -> T D(X) v - [[X, T v]] for each wedge basis element X of g."""
    cols = []
    for i, j in combinations(range(S.n), 2):
        X = [(Fraction(1), i, j)]
        col = []
        for v in range(S.m):
            V = unit(S.m, v)
            col.extend(sub(S.Tv(S.D_wedge(X, V)), S.left(X, S.Tv(V))))
        cols.append(col)
    return cols


def level1_coordinates(S: System, F: Cochain):
    """Coordinates of a level-1 cochain in the same order as delta0_columns."""
    out = []
    for v in range(S.m):
        out.extend(F.eval_f([unit(S.m, v)]))
    return out


def coboundary_rows(S: System, level: int):
    """The coboundary from ``level`` to ``level + 1`` as a list of columns."""
    if level == 0:
        return delta0_columns(S)
    return [cochain_coordinates(S, yamaguti_delta(S, F), level + 1) for F in cochain_basis(S, level)]


def yamaguti_columns(S: System, level: int):
    """Columns of the Yamaguti coboundary of (g, V) from ``level`` >= 1, cochains g -> V."""
    return [cochain_coordinates(S, yamaguti_delta(S, F, plain_ops(S)), level + 1, dom=S.n)
            for F in cochain_basis(S, level, dom=S.n, cod=S.m)]


def brute_force_dims(S: System, level: int) -> dict:
    """dim Z, B, H of the RB complex at ``level`` >= 1 by direct rank computations."""
    W = len(_wedge_basis(S.m))
    size = S.m * S.n if level == 1 else (W ** (level - 1)) * S.n * (1 + S.m)
    here = coboundary_rows(S, level)
    prev = coboundary_rows(S, level - 1)
    r_here = sympy_rank(here)
    r_prev = sympy_rank(prev)
    return {"cochains": size, "Z": size - r_here, "B": r_prev, "H": size - r_here - r_prev}


# -- Lie-Yamaguti axioms, written out ----------------------------------------------------

def lya_axioms_hold(c, d) -> bool:
    n = len(c)
    S = System(c, d, [[[Fraction(0)]] * 0 for _ in range(n)], [[None] * n for _ in range(n)])
    e = lambda i: unit(n, i)
    for x, y, z in product(range(n), repeat=3):
        X, Y, Z = e(x), e(y), e(z)
        jac = add(S.br(S.br(X, Y), Z), S.br(S.br(Y, Z), X), S.br(S.br(Z, X), Y),
                  S.ter(X, Y, Z), S.ter(Y, Z, X), S.ter(Z, X, Y))
        if any(jac):
            return False
        for w in range(n):
            W = e(w)
            cyc = add(S.ter(S.br(X, Y), Z, W), S.ter(S.br(Y, Z), X, W), S.ter(S.br(Z, X), Y, W))
            if any(cyc):
                return False
            der = sub(S.ter(X, Y, S.br(Z, W)), add(S.br(S.ter(X, Y, Z), W), S.br(Z, S.ter(X, Y, W))))
            if any(der):
                return False
            for t in range(n):
                T = e(t)
                fund = sub(S.ter(X, Y, S.ter(Z, W, T)),
                           add(S.ter(S.ter(X, Y, Z), W, T), S.ter(Z, S.ter(X, Y, W), T),
                               S.ter(Z, W, S.ter(X, Y, T))))
                if any(fund):
                    return False
    return True
