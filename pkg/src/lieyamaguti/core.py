"""Lie-Yamaguti algebras, their representations and the basic constructions on them.

Conventions
-----------
* ``LYAlgebra.bracket[i, j, k]`` is the k-th coordinate of [e_i, e_j] and
  ``LYAlgebra.ternary[i, j, k, l]`` the l-th coordinate of [[e_i, e_j, e_k]].
* Linear maps are matrices ``M[out, in]`` (columns are images of basis vectors).
* ``Representation.rho[i]`` is the matrix of rho(e_i) on V and
  ``Representation.mu[i, j]`` the matrix of mu(e_i, e_j).
* Everything is exact (``gmpy2.mpq`` in object arrays); all indices are 0-based
  in code and 1-based in reports.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .errors import DimensionMismatch, NotAssociative, StructureError
from .exact import ONE, Q, asarray, is_zero, matmul, normalize, zeros
from .tensors import einsum
from .reports import Report, residual_check


def _einsum(spec, *ops):
    return normalize(einsum(spec, *ops))


def _vec(x, n, what="vector"):
    x = asarray(x)
    if x.shape != (n,):
        raise DimensionMismatch(f"{what} has shape {x.shape}, expected ({n},)")
    return x


class LYAlgebra:
    """Finite-dimensional Lie-Yamaguti algebra given by structure constants.

    The constructor only checks shapes and skew-symmetry in the first two slots;
    use :func:`verify_lya` for the axioms.
    """

    def __init__(self, bracket, ternary, name: str = ""):
        c = asarray(bracket)
        d = asarray(ternary)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise StructureError(f"binary structure constants must be n x n x n, got {c.shape}")
        n = c.shape[0]
        if d.shape != (n, n, n, n):
            raise StructureError(f"ternary structure constants must be {n}^4, got {d.shape}")
        if not is_zero(c + c.transpose(1, 0, 2)):
            raise StructureError("binary bracket is not skew-symmetric")
        if not is_zero(d + d.transpose(1, 0, 2, 3)):
            raise StructureError("ternary bracket is not skew-symmetric in its first two slots")
        c.setflags(write=False)
        d.setflags(write=False)
        self.bracket = c
        self.ternary = d
        self.name = name

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    @classmethod
    def from_products(cls, dim: int, binary=None, ternary=None, name: str = ""):
        """Build from the products of basis elements with i < j (0-based).

        ``binary`` maps (i, j) to a coordinate vector of [e_i, e_j];
        ``ternary`` maps (i, j, k) to that of [[e_i, e_j, e_k]].  The remaining
        values follow from skew-symmetry; unlisted products are zero.
        """
        c = zeros((dim, dim, dim))
        d = zeros((dim, dim, dim, dim))
        for (i, j), val in (binary or {}).items():
            if not i < j:
                raise StructureError(f"binary product ({i},{j}) must have i < j")
            v = _vec(val, dim, f"[e{i+1},e{j+1}]")
            c[i, j] += v
            c[j, i] -= v
        for (i, j, k), val in (ternary or {}).items():
            if not i < j:
                raise StructureError(f"ternary product ({i},{j},{k}) must have i < j")
            v = _vec(val, dim, f"[[e{i+1},e{j+1},e{k+1}]]")
            d[i, j, k] += v
            d[j, i, k] -= v
        return cls(c, d, name)

    def __eq__(self, other):
        return (isinstance(other, LYAlgebra) and self.dim == other.dim
                and bool(np.all(self.bracket == other.bracket))
                and bool(np.all(self.ternary == other.ternary)))

    def __repr__(self):
        return f"LYAlgebra(dim={self.dim}{', ' + self.name if self.name else ''})"

    def transport(self, P) -> "LYAlgebra":
        """Structure carried along the linear isomorphism ``P`` (new basis coordinates = P @ old)."""
        from .exact import inverse
        P = asarray(P)
        Pi = inverse(P)
        if Pi is None:
            raise StructureError("transport matrix is singular")
        c = _einsum("ia,jb,abk,lk->ijl", Pi.T, Pi.T, self.bracket, P)
        d = _einsum("ia,jb,kc,abcm,lm->ijkl", Pi.T, Pi.T, Pi.T, self.ternary, P)
        return LYAlgebra(c, d, self.name)


def eval_binary(alg: LYAlgebra, x, y) -> np.ndarray:
    n = alg.dim
    return _einsum("i,j,ijk->k", _vec(x, n), _vec(y, n), alg.bracket)


def eval_ternary(alg: LYAlgebra, x, y, z) -> np.ndarray:
    n = alg.dim
    return _einsum("i,j,k,ijkl->l", _vec(x, n), _vec(y, n), _vec(z, n), alg.ternary)


def left_multiplication(alg: LYAlgebra, X) -> np.ndarray:
    """Matrix of z -> [[X, z]] for X in the wedge square (given by its coordinates)."""
    from .tensors import wedge_pairs
    I, J = wedge_pairs(alg.dim)
    X = asarray(X)
    L = alg.ternary[I, J]          # (a, z, out)
    return _einsum("a,azo->oz", X, L)


def lya_residuals(alg: LYAlgebra) -> dict:
    """Residual tensors of the four axioms, indexed by basis tuples (value axis last)."""
    c, d = alg.bracket, alg.ternary
    cc = lambda s: einsum(s, c, c)
    r1 = (cc("xyk,kzo->xyzo") + cc("yzk,kxo->xyzo") + cc("zxk,kyo->xyzo")
          + d + d.transpose(2, 0, 1, 3) + d.transpose(1, 2, 0, 3))
    r2 = (einsum("xyk,kzwo->xyzwo", c, d) + einsum("yzk,kxwo->xyzwo", c, d)
          + einsum("zxk,kywo->xyzwo", c, d))
    r3 = (einsum("zwk,xyko->xyzwo", c, d) - einsum("xyzk,kwo->xyzwo", d, c)
          - einsum("xywk,zko->xyzwo", d, c))
    r4 = (einsum("zwtk,xyko->xyzwto", d, d) - einsum("xyzk,kwto->xyzwto", d, d)
          - einsum("xywk,zkto->xyzwto", d, d) - einsum("xytk,zwko->xyzwto", d, d))
    return {"jacobi_type": normalize(r1), "cyclic_ternary": normalize(r2),
            "ternary_derivation_of_binary": normalize(r3), "fundamental_identity": normalize(r4)}


_AXIOM_LABELS = {
    "jacobi_type": "xyz",
    "cyclic_ternary": "xyzw",
    "ternary_derivation_of_binary": "xyzw",
    "fundamental_identity": "xyzwt",
}


def verify_lya(alg: LYAlgebra) -> Report:
    """Check the four Lie-Yamaguti axioms on all basis tuples."""
    report = Report("lie-yamaguti axioms")
    for name, R in lya_residuals(alg).items():
        report.add(residual_check(name, R, 1, index_labels=list(_AXIOM_LABELS[name])))
    report.data["dimension"] = alg.dim
    return report


class Representation:
    """A pair (rho, mu) of a Lie-Yamaguti algebra on a space V."""

    def __init__(self, alg: LYAlgebra, rho, mu, name: str = ""):
        n = alg.dim
        rho = asarray(rho)
        mu = asarray(mu)
        if rho.ndim != 3 or rho.shape[0] != n or rho.shape[1] != rho.shape[2]:
            raise StructureError(f"rho must have shape ({n}, m, m), got {rho.shape}")
        m = rho.shape[1]
        if mu.shape != (n, n, m, m):
            raise StructureError(f"mu must have shape ({n}, {n}, {m}, {m}), got {mu.shape}")
        rho.setflags(write=False)
        mu.setflags(write=False)
        self.algebra = alg
        self.rho = rho
        self.mu = mu
        self.name = name
        D = (mu.transpose(1, 0, 2, 3) - mu + einsum("xac,ycb->xyab", rho, rho)
             - einsum("yac,xcb->xyab", rho, rho) - einsum("xyk,kab->xyab", alg.bracket, rho))
        D = normalize(D)
        D.setflags(write=False)
        self.D = D

    @property
    def dim(self) -> int:
        return self.rho.shape[1]

    def __repr__(self):
        return f"Representation(dim={self.dim}, algebra_dim={self.algebra.dim})"


def rho_of(rep: Representation, x) -> np.ndarray:
    return _einsum("i,iab->ab", _vec(x, rep.algebra.dim), rep.rho)


def mu_of(rep: Representation, x, y) -> np.ndarray:
    n = rep.algebra.dim
    return _einsum("i,j,ijab->ab", _vec(x, n), _vec(y, n), rep.mu)


def compute_D(rep: Representation, x, y) -> np.ndarray:
    """D(x, y) = mu(y, x) - mu(x, y) + [rho(x), rho(y)] - rho([x, y])."""
    n = rep.algebra.dim
    return _einsum("i,j,ijab->ab", _vec(x, n), _vec(y, n), rep.D)


def D_of_wedge(rep: Representation, X) -> np.ndarray:
    """D extended linearly to the wedge square."""
    from .tensors import wedge_pairs
    I, J = wedge_pairs(rep.algebra.dim)
    return _einsum("a,aij->ij", asarray(X), rep.D[I, J])


def representation_residuals(rep: Representation) -> tuple[dict, dict]:
    """Residuals of the five defining identities and of three derived ones."""
    c, d = rep.algebra.bracket, rep.algebra.ternary
    rho, mu, D = rep.rho, rep.mu, rep.D
    e = einsum
    defining = {
        "mu_bracket_first": e("xyk,kzab->xyzab", c, mu) - e("xzac,ycb->xyzab", mu, rho)
        + e("yzac,xcb->xyzab", mu, rho),
        "mu_bracket_second": e("yzk,xkab->xyzab", c, mu) - e("yac,xzcb->xyzab", rho, mu)
        + e("zac,xycb->xyzab", rho, mu),
        "rho_of_ternary": e("xyzk,kab->xyzab", d, rho) - e("xyac,zcb->xyzab", D, rho)
        + e("zac,xycb->xyzab", rho, D),
        "mu_mu_relation": e("zwac,xycb->xyzwab", mu, mu) - e("ywac,xzcb->xyzwab", mu, mu)
        - e("yzwk,xkab->xyzwab", d, mu) + e("yzac,xwcb->xyzwab", D, mu),
        "mu_of_ternary": e("xyzk,kwab->xyzwab", d, mu) + e("xywk,zkab->xyzwab", d, mu)
        - e("xyac,zwcb->xyzwab", D, mu) + e("zwac,xycb->xyzwab", mu, D),
    }
    derived = {
        "D_cyclic": e("xyk,kzab->xyzab", c, D) + e("yzk,kxab->xyzab", c, D)
        + e("zxk,kyab->xyzab", c, D),
        "D_of_ternary": e("xyzk,kwab->xyzwab", d, D) + e("xywk,zkab->xyzwab", d, D)
        - e("xyac,zwcb->xyzwab", D, D) + e("zwac,xycb->xyzwab", D, D),
        "mu_of_ternary_product_form": e("xyzk,kwab->xyzwab", d, mu) - e("xwac,zycb->xyzwab", mu, mu)
        + e("ywac,zxcb->xyzwab", mu, mu) + e("zwac,xycb->xyzwab", mu, D),
    }
    return ({k: normalize(v) for k, v in defining.items()},
            {k: normalize(v) for k, v in derived.items()})


def verify_representation(rep: Representation) -> Report:
    """Check the defining identities; derived identities are reported as diagnostics.

    A derived identity failing while every defining one holds points at an
    internal inconsistency and is flagged in the notes.
    """
    report = Report("representation identities")
    defining, derived = representation_residuals(rep)
    for name, R in defining.items():
        report.add(residual_check(name, R, 2, index_labels=list("xyzw"[: R.ndim - 2])))
    for name, R in derived.items():
        report.add(residual_check(name, R, 2, index_labels=list("xyzw"[: R.ndim - 2])), advisory=True)
    if report.passed and any(not report.check(k).passed for k in derived):
        report.notes.append("internal consistency: a derived identity fails although all defining ones hold")
    report.data["module_dimension"] = rep.dim
    return report


def adjoint_representation(alg: LYAlgebra) -> Representation:
    """rho = ad, mu(x, y)z = [[z, x, y]]."""
    rho = alg.bracket.transpose(0, 2, 1)
    mu = alg.ternary.transpose(1, 2, 3, 0)
    return Representation(alg, rho, mu, name="adjoint")


def zero_representation(alg: LYAlgebra, m: int) -> Representation:
    n = alg.dim
    return Representation(alg, zeros((n, m, m)), zeros((n, n, m, m)), name="zero")


def direct_sum_representation(r1: Representation, r2: Representation) -> Representation:
    if r1.algebra is not r2.algebra and r1.algebra != r2.algebra:
        raise DimensionMismatch("representations of different algebras")
    n, m1, m2 = r1.algebra.dim, r1.dim, r2.dim
    rho = zeros((n, m1 + m2, m1 + m2))
    mu = zeros((n, n, m1 + m2, m1 + m2))
    rho[:, :m1, :m1] = r1.rho
    rho[:, m1:, m1:] = r2.rho
    mu[:, :, :m1, :m1] = r1.mu
    mu[:, :, m1:, m1:] = r2.mu
    return Representation(r1.algebra, rho, mu)


def semidirect_product(alg: LYAlgebra, rep: Representation) -> LYAlgebra:
    """Structure on g + V (basis: g first, then V)."""
    n, m = alg.dim, rep.dim
    N = n + m
    c = zeros((N, N, N))
    d = zeros((N, N, N, N))
    c[:n, :n, :n] = alg.bracket
    rT = rep.rho.transpose(0, 2, 1)          # [x, in, out]
    c[:n, n:, n:] = rT
    c[n:, :n, n:] = -rT.transpose(1, 0, 2)
    d[:n, :n, :n, :n] = alg.ternary
    d[:n, :n, n:, n:] = rep.D.transpose(0, 1, 3, 2)
    muT = rep.mu.transpose(0, 1, 3, 2)       # [y, z, in, out]
    d[n:, :n, :n, n:] = muT.transpose(2, 0, 1, 3)
    d[:n, n:, :n, n:] = -muT.transpose(0, 2, 1, 3)
    return LYAlgebra(normalize(c), normalize(d), name="semidirect")


# -- Nijenhuis operators and deformed brackets ------------------------------

def deformed_brackets(alg: LYAlgebra, N) -> LYAlgebra:
    """Brackets [x,y]_N and [[x,y,z]]_N built from a linear map N (not checked)."""
    N = asarray(N, (alg.dim, alg.dim))
    c, d = alg.bracket, alg.ternary
    Nt = N.T  # Nt[in, out]
    e = einsum
    cN = e("xa,ayk->xyk", Nt, c) + e("ya,xak->xyk", Nt, c) - e("xyk,ko->xyo", c, Nt)
    N2t = matmul(N, N).T
    ta = e("xa,yb,abzo->xyzo", Nt, Nt, d) + e("xa,zc,ayco->xyzo", Nt, Nt, d) \
        + e("yb,zc,xbco->xyzo", Nt, Nt, d)
    tb = e("xa,ayzk->xyzk", Nt, d) + e("yb,xbzk->xyzk", Nt, d) + e("zc,xyck->xyzk", Nt, d)
    dN = ta - e("xyzk,ko->xyzo", tb, Nt) + e("xyzk,ko->xyzo", d, N2t)
    return LYAlgebra(normalize(cN), normalize(dN), name="deformed")


def nijenhuis_check(alg: LYAlgebra, N) -> Report:
    """Check [Nx,Ny] = N[x,y]_N and [[Nx,Ny,Nz]] = N[[x,y,z]]_N on basis tuples."""
    N = asarray(N, (alg.dim, alg.dim))
    Nt = N.T
    dfm = deformed_brackets(alg, N)
    e = einsum
    r1 = e("xa,yb,abo->xyo", Nt, Nt, alg.bracket) - e("xyk,ko->xyo", dfm.bracket, Nt)
    r2 = e("xa,yb,zc,abco->xyzo", Nt, Nt, Nt, alg.ternary) - e("xyzk,ko->xyzo", dfm.ternary, Nt)
    report = Report("nijenhuis operator")
    report.add(residual_check("binary_nijenhuis", normalize(r1), 1, index_labels=list("xy")))
    report.add(residual_check("ternary_nijenhuis", normalize(r2), 1, index_labels=list("xyz")))
    return report


def rb_nijenhuis_operator(T, n: int, m: int) -> np.ndarray:
    """The block map (x, u) -> (T u, 0) on g + V."""
    T = asarray(T, (n, m))
    N = zeros((n + m, n + m))
    N[:n, n:] = T
    return N


# -- associative algebras -----------------------------------------------------

class AssocAlgebra:
    """Associative algebra given by mult[i, j, k] = k-th coordinate of e_i e_j."""

    def __init__(self, mult, name: str = ""):
        a = asarray(mult)
        if a.ndim != 3 or len(set(a.shape)) != 1:
            raise StructureError(f"multiplication table must be n x n x n, got {a.shape}")
        a.setflags(write=False)
        self.mult = a
        self.name = name

    @property
    def dim(self):
        return self.mult.shape[0]


def associativity_check(A: AssocAlgebra) -> Report:
    a = A.mult
    R = einsum("xyk,kzo->xyzo", a, a) - einsum("yzk,xko->xyzo", a, a)
    report = Report("associativity")
    report.add(residual_check("associativity", normalize(R), 1, index_labels=list("xyz")))
    return report


def matrix_algebra(k: int) -> AssocAlgebra:
    """k x k matrices with basis E_11, E_12, ..., E_kk (row-major)."""
    n = k * k
    a = zeros((n, n, n))
    for i, j, l in product(range(k), repeat=3):
        a[i * k + j, j * k + l, i * k + l] = ONE
    return AssocAlgebra(a, name=f"M{k}")


def lya_from_associative(A: AssocAlgebra, check: bool = True) -> LYAlgebra:
    """[x,y] = xy - yx and [[x,y,z]] = [[x,y],z]."""
    if check and not associativity_check(A).passed:
        raise NotAssociative("multiplication is not associative")
    a = A.mult
    c = normalize(a - a.transpose(1, 0, 2))
    d = normalize(einsum("xyk,kzo->xyzo", c, c))
    return LYAlgebra(c, d, name=f"commutator({A.name})" if A.name else "commutator")


def truncated_series_rb_example(A: AssocAlgebra, order: int):
    """A[nu]/(nu^(order+1)) as a Lie-Yamaguti algebra, with the integration operator.

    The basis is a_s nu^i in the order (i, s).  The operator sends a nu^i to
    a nu^(i+1) / (i+1), and the top power to zero.  Returns (algebra, operator).
    """
    if order < 0:
        raise StructureError("order must be non-negative")
    k = A.dim
    n = k * (order + 1)
    mult = zeros((n, n, n))
    for i, j in product(range(order + 1), repeat=2):
        if i + j <= order:
            mult[i * k:(i + 1) * k, j * k:(j + 1) * k, (i + j) * k:(i + j + 1) * k] = A.mult
    series = AssocAlgebra(mult, name=f"{A.name}[nu]/nu^{order + 1}")
    alg = lya_from_associative(series)
    Omega = zeros((n, n))
    for i in range(order):
        for s in range(k):
            Omega[(i + 1) * k + s, i * k + s] = Q(1) / (i + 1)
    return alg, Omega


# -- small standard examples ----------------------------------------------------

def two_dim_example() -> LYAlgebra:
    """[e1,e2] = e1, [[e1,e2,e2]] = e1."""
    return LYAlgebra.from_products(2, {(0, 1): [1, 0]}, {(0, 1, 1): [1, 0]}, name="two_dim")


def two_dim_rb_operator(a, b) -> np.ndarray:
    """The operator e1 -> 0, e2 -> a e1 + b e2 on the two-dimensional example."""
    return asarray([[0, a], [0, b]])


def four_dim_example() -> LYAlgebra:
    """[e1,e2] = 2 e4, [[e1,e2,e1]] = e4."""
    return LYAlgebra.from_products(4, {(0, 1): [0, 0, 0, 2]},
                                   {(0, 1, 0): [0, 0, 0, 1]}, name="four_dim")


def abelian(n: int) -> LYAlgebra:
    return LYAlgebra(zeros((n, n, n)), zeros((n, n, n, n)), name="abelian")


def direct_sum(g1: LYAlgebra, g2: LYAlgebra) -> LYAlgebra:
    n1, n2 = g1.dim, g2.dim
    n = n1 + n2
    c = zeros((n, n, n))
    d = zeros((n, n, n, n))
    c[:n1, :n1, :n1] = g1.bracket
    c[n1:, n1:, n1:] = g2.bracket
    d[:n1, :n1, :n1, :n1] = g1.ternary
    d[n1:, n1:, n1:, n1:] = g2.ternary
    return LYAlgebra(c, d)
