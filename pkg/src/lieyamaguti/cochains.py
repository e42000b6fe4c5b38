"""Cochains of degree p, the circle product and graded bracket, and Yamaguti cohomology.

A degree-p cochain (p >= 1) is a pair (f, g):

* ``f`` takes p wedge-square arguments and returns a vector; stored with shape
  (w,)*p + (cod,).
* ``g`` takes p wedge-square arguments and one vector and returns a vector;
  stored with shape (w,)*p + (dom, cod).

A degree-0 cochain is a linear map, kept in the ``g`` slot with shape
(dom, cod) and ``f = None``.  With that convention the general formulas for
the circle product specialise to the degree-0 ones without extra cases.

For cochains on an algebra with values in a module, ``dom`` is the algebra
dimension and ``cod`` the module dimension.  Yamaguti level = degree + 1.
"""
from __future__ import annotations

import numpy as np

from .core import LYAlgebra, Representation
from .errors import DimensionMismatch, NotMaurerCartan, StructureError
from .exact import Q, ZERO, asarray, is_zero, normalize, rank, zeros
from .reports import Report, residual_check
from .tensors import (
    apply_shuffle, arrange, check_entries, derivation_on_wedges, shuffles, wedge_dim, wedge_pairs,
)


class Cochain:
    __slots__ = ("degree", "dom", "cod", "f", "g")

    def __init__(self, degree: int, dom: int, cod: int, f=None, g=None):
        if degree < 0:
            raise StructureError("degree must be non-negative")
        w = wedge_dim(dom)
        if degree == 0:
            if f is not None:
                raise StructureError("a degree-0 cochain has no first component")
            g = zeros((dom, cod)) if g is None else asarray(g)
            if g.shape != (dom, cod):
                raise StructureError(f"degree-0 cochain must have shape {(dom, cod)}, got {g.shape}")
        else:
            fs = (w,) * degree + (cod,)
            gs = (w,) * degree + (dom, cod)
            f = zeros(fs) if f is None else asarray(f)
            g = zeros(gs) if g is None else asarray(g)
            if f.shape != fs or g.shape != gs:
                raise StructureError(f"degree-{degree} cochain needs shapes {fs} and {gs}, "
                                     f"got {f.shape} and {g.shape}")
            f.setflags(write=False)
        g.setflags(write=False)
        self.degree = degree
        self.dom = dom
        self.cod = cod
        self.f = f
        self.g = g

    # construction helpers
    @classmethod
    def zero(cls, degree, dom, cod):
        return cls(degree, dom, cod)

    @classmethod
    def from_matrix(cls, M):
        """Degree-0 cochain from a matrix M[out, in]."""
        M = asarray(M)
        return cls(0, M.shape[1], M.shape[0], g=M.T)

    def to_matrix(self) -> np.ndarray:
        if self.degree != 0:
            raise StructureError("only degree-0 cochains are matrices")
        return self.g.T.copy()

    @property
    def level(self) -> int:
        return self.degree + 1

    def same_space(self, other) -> bool:
        return (self.degree, self.dom, self.cod) == (other.degree, other.dom, other.cod)

    def _require_same(self, other):
        if not isinstance(other, Cochain) or not self.same_space(other):
            raise DimensionMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._require_same(other)
        f = None if self.f is None else normalize(self.f + other.f)
        return Cochain(self.degree, self.dom, self.cod, f, normalize(self.g + other.g))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Q(c)
        f = None if self.f is None else normalize(self.f * c)
        return Cochain(self.degree, self.dom, self.cod, f, normalize(self.g * c))

    __rmul__ = lambda self, c: self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Cochain) or not self.same_space(other):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return (self.f is None or is_zero(self.f)) and is_zero(self.g)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, dom={self.dom}, cod={self.cod})"

    # flattening (used to build coboundary matrices)
    @staticmethod
    def size(degree, dom, cod) -> int:
        w = wedge_dim(dom)
        if degree == 0:
            return dom * cod
        return w**degree * cod + w**degree * dom * cod

    def to_vector(self) -> np.ndarray:
        parts = [] if self.f is None else [self.f.reshape(-1)]
        parts.append(self.g.reshape(-1))
        return np.concatenate(parts) if parts else zeros(0)

    @classmethod
    def from_vector(cls, vec, degree, dom, cod):
        vec = np.asarray(vec, dtype=object)
        if degree == 0:
            return cls(0, dom, cod, g=vec.reshape(dom, cod))
        w = wedge_dim(dom)
        nf = w**degree * cod
        return cls(degree, dom, cod, vec[:nf].reshape((w,) * degree + (cod,)),
                   vec[nf:].reshape((w,) * degree + (dom, cod)))

    @classmethod
    def basis(cls, degree, dom, cod):
        size = cls.size(degree, dom, cod)
        for k in range(size):
            v = zeros(size)
            v[k] = Q(1)
            yield cls.from_vector(v, degree, dom, cod)

    def to_dict(self) -> dict:
        from .exact import to_jsonable
        out = {"degree": self.degree, "dom": self.dom, "cod": self.cod}
        if self.f is not None:
            out["f"] = to_jsonable(self.f)
        out["g"] = to_jsonable(self.g)
        return out

    # evaluation on vectors (slow, for oracles and spot checks)
    def eval_f(self, *pairs):
        """f on wedge arguments given as (x, y) vector pairs."""
        from .tensors import wedge
        T = self.f
        for x, y in pairs:
            T = np.tensordot(wedge(asarray(x), asarray(y)), T, axes=([0], [0]))
        return normalize(T)

    def eval_g(self, *args):
        """g on (x1, y1), ..., (xp, yp), z."""
        from .tensors import wedge
        *pairs, z = args
        T = self.g
        for x, y in pairs:
            T = np.tensordot(wedge(asarray(x), asarray(y)), T, axes=([0], [0]))
        return normalize(np.tensordot(asarray(z), T, axes=([0], [0])))


def random_cochain(degree, dom, cod, rng=None, seed=None, density: float = 1.0) -> Cochain:
    """Seeded random cochain with entries p/q, p in [-3, 3], q in {1, 2}."""
    if rng is None:
        rng = np.random.default_rng(seed)
    size = Cochain.size(degree, dom, cod)
    nums = rng.integers(-3, 4, size=size)
    dens = rng.choice([1, 2], size=size)
    keep = rng.random(size) < density
    vec = np.array([Q(int(a)) / int(b) if k else ZERO for a, b, k in zip(nums, dens, keep)], dtype=object)
    return Cochain.from_vector(vec, degree, dom, cod)


# -- circle product and graded bracket ---------------------------------------

def _slots(prefix, k):
    return [f"{prefix}{i}" for i in range(k)]


def circle(P: Cochain, Q_: Cochain) -> Cochain:
    """The circle product P o Q of degree p + q on cochains of one space."""
    N = P.dom
    if not (P.cod == N and Q_.dom == N and Q_.cod == N):
        raise DimensionMismatch("circle product needs cochains on a single space")
    p, q = P.degree, Q_.degree
    n = p + q
    w = wedge_dim(N)
    check_entries((w,) * n + (N, N), "circle product")
    a, b = _slots("a", p), _slots("b", q)
    out_g = zeros((w,) * n + (N, N))
    out_f = zeros((w,) * n + (N,)) if n >= 1 else None
    sgn_pq = -1 if (p * q) % 2 else 1

    # P_II(X.., Q_II(X.., x))
    R = np.tensordot(Q_.g, P.g, axes=([q + 1], [p]))
    R = arrange(R, b + ["x"] + a + ["o"], a + b + ["x", "o"])
    for perm, sgn in shuffles(p, q):
        out_g = out_g + (sgn_pq * sgn) * apply_shuffle(R, perm, 2)

    # P_II(X.., Q_I(X..)) with the last argument inside Q
    if q >= 1:
        R = np.tensordot(Q_.f, P.g, axes=([q], [p]))
        R = arrange(R, b + a + ["o"], a + b + ["o"])
        for perm, sgn in shuffles(p, q):
            if perm[-1] == n - 1:
                out_f = out_f + (sgn_pq * sgn) * apply_shuffle(R, perm, 1)

    # Q_II acting as a derivation inside the k-th wedge slot of P
    if p >= 1:
        Qder = derivation_on_wedges(Q_.g)      # (w,)*q + (w_in, w_out)
        for k in range(1, p + 1):
            sgn_k = -1 if ((k - 1) * q) % 2 else 1
            rest = [s for i, s in enumerate(a) if i != k - 1]
            order = a[: k - 1] + b + ["W"] + a[k:]
            S = np.tensordot(Qder, P.g, axes=([q + 1], [k - 1]))
            S = arrange(S, b + ["W"] + rest + ["x", "o"], order + ["x", "o"])
            nperm = k - 1 + q
            trailing_g = (n - nperm) + 2
            for perm, sgn in shuffles(k - 1, q):
                out_g = out_g + (sgn_k * sgn) * apply_shuffle(S, perm, trailing_g)
            S = np.tensordot(Qder, P.f, axes=([q + 1], [k - 1]))
            S = arrange(S, b + ["W"] + rest + ["o"], order + ["o"])
            for perm, sgn in shuffles(k - 1, q):
                out_f = out_f + (sgn_k * sgn) * apply_shuffle(S, perm, trailing_g - 1)

    return Cochain(n, N, N, None if out_f is None else normalize(out_f), normalize(out_g))


def graded_bracket(P: Cochain, Q_: Cochain) -> Cochain:
    """[P, Q] = P o Q - (-1)^{pq} Q o P."""
    sign = -1 if (P.degree * Q_.degree) % 2 else 1
    return circle(P, Q_) - circle(Q_, P).scale(sign)


def algebra_to_pi(alg: LYAlgebra) -> Cochain:
    """The degree-1 cochain (bracket, ternary bracket) of an algebra."""
    I, J = wedge_pairs(alg.dim)
    return Cochain(1, alg.dim, alg.dim, alg.bracket[I, J], alg.ternary[I, J])


def pi_to_algebra(Pi: Cochain, check_skew: bool = True) -> LYAlgebra:
    """Inverse of :func:`algebra_to_pi` (skew extension of the stored wedge values)."""
    if Pi.degree != 1 or Pi.dom != Pi.cod:
        raise StructureError("need a degree-1 cochain on one space")
    n = Pi.dom
    I, J = wedge_pairs(n)
    c = zeros((n, n, n))
    d = zeros((n, n, n, n))
    c[I, J] = Pi.f
    c[J, I] = -Pi.f
    d[I, J] = Pi.g
    d[J, I] = -Pi.g
    return LYAlgebra(normalize(c), normalize(d))


def is_mc_element(Pi: Cochain) -> Report:
    """Whether [Pi, Pi] = 0.

    This is equivalent to the two identities saying that the ternary bracket
    acts by derivations of both brackets; it does NOT certify the two cyclic
    axioms.  Use ``verify_lya`` for a full check.
    """
    if Pi.degree != 1:
        raise StructureError("Maurer-Cartan elements have degree 1")
    B = graded_bracket(Pi, Pi)
    report = Report("maurer-cartan")
    report.add(residual_check("bracket_part_vanishes", B.f, 1))
    report.add(residual_check("ternary_part_vanishes", B.g, 1))
    report.notes.append("[Pi,Pi]=0 certifies only the derivation identities, not the cyclic ones")
    return report


def differential_dPi(Pi: Cochain, F: Cochain) -> Cochain:
    """d_Pi(F) = [Pi, F] for a Maurer-Cartan element Pi."""
    if not is_mc_element(Pi).passed:
        raise NotMaurerCartan("Pi is not a Maurer-Cartan element")
    return graded_bracket(Pi, F)


# -- Yamaguti coboundary -------------------------------------------------------

class _RepTensors:
    """Tensors of an algebra/representation pair reshaped for cochain contractions."""

    def __init__(self, alg: LYAlgebra, rep: Representation):
        if rep.algebra.dim != alg.dim:
            raise DimensionMismatch("representation is for another algebra")
        n = alg.dim
        I, J = wedge_pairs(n)
        self.n, self.m = n, rep.dim
        self.I, self.J = I, J
        self.rhoT = rep.rho.transpose(0, 2, 1)              # [x, in, out]
        self.muT = rep.mu.transpose(0, 1, 3, 2)             # [x, y, in, out]
        self.Dw = rep.D[I, J].transpose(0, 2, 1)            # [a, in, out]
        self.brw = alg.bracket[I, J]                        # [a, z]
        self.terw = alg.ternary[I, J]                       # [a, z, out]
        self.lw = derivation_on_wedges(self.terw)           # [a, w_in, w_out]


def yamaguti_coboundary(alg: LYAlgebra, rep: Representation, F: Cochain, _t=None) -> Cochain:
    """Yamaguti coboundary of a cochain on ``alg`` with values in ``rep``.

    Degree 0 (level 1) maps a linear map to a degree-1 cochain; degree p >= 1
    (level p + 1) maps to degree p + 1.
    """
    t = _t or _RepTensors(alg, rep)
    n, m = t.n, t.m
    if F.dom != n or F.cod != m:
        raise DimensionMismatch(f"cochain is {F.dom}->{F.cod}, complex is {n}->{m}")
    p = F.degree
    w = wedge_dim(n)
    check_entries((w,) * (p + 1) + (n, m), "coboundary")
    I, J = t.I, t.J
    sgn_p = -1 if p % 2 else 1
    a = _slots("a", p + 1)          # a[k] is the slot of X_{k+1}
    G = F.g                          # (w,)*p + (n, m)

    # terms coming from the last wedge argument X_{p+1}
    H = np.tensordot(G, t.rhoT, axes=([p + 1], [1]))    # [..., s, x, out]
    out_f = H[..., J, I, :] - H[..., I, J, :]           # [..., a_last, out]
    Bk = np.tensordot(G, t.brw, axes=([p], [1]))         # [..., out, a_last]
    out_f = out_f - np.moveaxis(Bk, p, p + 1)
    out_f = sgn_p * out_f

    H = np.tensordot(G, t.muT, axes=([p + 1], [2]))     # [..., s, x, z, out]
    out_g = H[..., I, J, :, :] - H[..., J, I, :, :]     # [..., a_last, z, out]
    out_g = sgn_p * out_g

    # D(X_k) acting on the value
    if p >= 1:
        for k in range(p):          # X_{k+1} pulled out of f, k+1 <= p
            S = np.tensordot(F.f, t.Dw, axes=([p], [1]))            # [rest.., a, out]
            rest = [s for i, s in enumerate(a) if i != k]
            sign = 1 if k % 2 == 0 else -1
            out_f = out_f + sign * arrange(S, rest + [a[k], "o"], a + ["o"])
    for k in range(p + 1):
        S = np.tensordot(G, t.Dw, axes=([p + 1], [1]))              # [rest.., z, a, out]
        rest = [s for i, s in enumerate(a) if i != k]
        sign = 1 if k % 2 == 0 else -1
        out_g = out_g + sign * arrange(S, rest + ["z", a[k], "o"], a + ["z", "o"])

    # X_k o X_l substituted in place of X_l
    for k in range(p + 1):
        for l in range(k + 1, p + 1):
            sign = -1 if (k + 1) % 2 else 1          # (-1)^(k+1) with 1-based k+1
            rest = [s for i, s in enumerate(a) if i not in (k, l)]
            pos = l - 1                               # slot of X_l once X_k is removed
            if p >= 1:
                S = np.tensordot(F.f, t.lw, axes=([pos], [2]))      # [rest.., out, ak, al]
                out_f = out_f + sign * arrange(S, rest + ["o", a[k], a[l]], a + ["o"])
            S = np.tensordot(G, t.lw, axes=([pos], [2]))            # [rest.., z, out, ak, al]
            out_g = out_g + sign * arrange(S, rest + ["z", "o", a[k], a[l]], a + ["z", "o"])

    # g(..., [[x_k, y_k, z]])
    for k in range(p + 1):
        sign = -1 if (k + 1) % 2 else 1
        rest = [s for i, s in enumerate(a) if i != k]
        S = np.tensordot(G, t.terw, axes=([p], [2]))                # [rest.., out, a, z]
        out_g = out_g + sign * arrange(S, rest + ["o", a[k], "z"], a + ["z", "o"])

    return Cochain(p + 1, n, m, normalize(out_f), normalize(out_g))


def coboundary_matrix(apply, degree: int, dom: int, cod: int) -> np.ndarray:
    """Matrix (rows = target coordinates) of a linear map on cochains, column by column."""
    cols = [apply(B).to_vector() for B in Cochain.basis(degree, dom, cod)]
    if not cols:
        return zeros((Cochain.size(degree + 1, dom, cod), 0))
    return np.stack(cols, axis=1)


def yamaguti_matrix(alg: LYAlgebra, rep: Representation, degree: int) -> np.ndarray:
    t = _RepTensors(alg, rep)
    return coboundary_matrix(lambda F: yamaguti_coboundary(alg, rep, F, t), degree, alg.dim, rep.dim)


def cohomology_dims(alg: LYAlgebra, rep: Representation, level: int, max_level: int = 3) -> dict:
    """dim Z, dim B and dim H of the Yamaguti complex at ``level`` (>= 2)."""
    from .errors import ResourceCapExceeded
    if level < 2:
        raise StructureError("Yamaguti cohomology is reported from level 2 on")
    if level > max_level:
        raise ResourceCapExceeded(f"level {level} exceeds the level cap {max_level}")
    deg = level - 1
    n, m = alg.dim, rep.dim
    check_entries((Cochain.size(deg + 1, n, m), Cochain.size(deg, n, m)), "coboundary matrix")
    d_here = yamaguti_matrix(alg, rep, deg)
    d_prev = yamaguti_matrix(alg, rep, deg - 1)
    dim_c = Cochain.size(deg, n, m)
    Z = dim_c - rank(d_here)
    B = rank(d_prev)
    return {"level": level, "cochains": dim_c, "Z": Z, "B": B, "H": Z - B}
