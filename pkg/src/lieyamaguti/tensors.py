"""Tensor plumbing: wedge-square bases, shuffles, derivation extensions and size caps.

A vector space of dimension ``n`` has the wedge-square basis e_i^e_j (i < j)
in lexicographic order.  Multilinear maps are stored as object arrays with
one axis per argument and the output coordinate last.
"""
from __future__ import annotations

import contextlib
import contextvars
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import ResourceCapExceeded
from .exact import ONE, normalize, zeros

DEFAULT_MAX_TENSOR_ENTRIES = 10**6

_max_entries = contextvars.ContextVar("max_tensor_entries", default=DEFAULT_MAX_TENSOR_ENTRIES)


def einsum(spec, *ops):
    """np.einsum with a contraction path; the naive loop is far too slow on object arrays."""
    return np.einsum(spec, *ops, optimize=True)


def max_tensor_entries() -> int:
    return _max_entries.get()


@contextlib.contextmanager
def tensor_cap(limit: int):
    """Temporarily change the tensor-entry cap (per context/thread)."""
    token = _max_entries.set(int(limit))
    try:
        yield
    finally:
        _max_entries.reset(token)


def check_entries(shape, what="tensor"):
    size = 1
    for s in shape:
        size *= int(s)
    limit = _max_entries.get()
    if size > limit:
        raise ResourceCapExceeded(f"{what} needs {size} entries, cap is {limit}")
    return size


def wedge_dim(n: int) -> int:
    return comb(n, 2)


@lru_cache(maxsize=None)
def wedge_pairs(n: int):
    """(I, J) index arrays of the pairs i < j in lexicographic order."""
    pairs = list(combinations(range(n), 2))
    I = np.array([p[0] for p in pairs], dtype=np.intp)
    J = np.array([p[1] for p in pairs], dtype=np.intp)
    return I, J


@lru_cache(maxsize=None)
def wedge_index(n: int) -> dict:
    return {p: a for a, p in enumerate(combinations(range(n), 2))}


@lru_cache(maxsize=None)
def wedge_tensor(n: int) -> np.ndarray:
    """W[i, j, a]: coordinate of e_i ^ e_j along the a-th wedge basis vector."""
    W = zeros((n, n, wedge_dim(n)))
    for (i, j), a in wedge_index(n).items():
        W[i, j, a] = ONE
        W[j, i, a] = -ONE
    W.setflags(write=False)
    return W


def wedge(x, y) -> np.ndarray:
    """Coordinates of x ^ y in the wedge-square basis."""
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    I, J = wedge_pairs(len(x))
    return normalize(x[I] * y[J] - x[J] * y[I])


def derivation_on_wedges(A: np.ndarray) -> np.ndarray:
    """Extend linear maps to the wedge square as derivations.

    ``A`` has shape (..., n, n) with A[..., z, c] the c-th coordinate of the
    image of e_z.  The result M has shape (..., w, w) where M[..., a, b] is the
    b-th coordinate of A(x)^y + x^A(y) for the a-th basis element x^y.
    """
    n = A.shape[-1]
    W = wedge_tensor(n)
    I, J = wedge_pairs(n)
    if len(I) == 0:
        return zeros(A.shape[:-2] + (0, 0))
    left = np.tensordot(A, W, axes=([-1], [0]))            # (..., i, j, b): A(e_i) ^ e_j
    right = np.tensordot(A, W.transpose(1, 0, 2), axes=([-1], [0]))  # (..., j, i, b): e_i ^ A(e_j)
    return normalize(left[..., I, J, :] + right[..., J, I, :])


@lru_cache(maxsize=None)
def shuffles(i: int, j: int):
    """All (i, j)-shuffles as (permutation tuple, sign)."""
    n = i + j
    out = []
    for first in combinations(range(n), i):
        chosen = set(first)
        rest = [k for k in range(n) if k not in chosen]
        inversions = sum(c - t for t, c in enumerate(first))
        out.append((tuple(first) + tuple(rest), -1 if inversions % 2 else 1))
    return tuple(out)


def inverse_permutation(perm):
    inv = [0] * len(perm)
    for pos, val in enumerate(perm):
        inv[val] = pos
    return inv


def apply_shuffle(R: np.ndarray, perm, trailing: int) -> np.ndarray:
    """Given R whose j-th slot receives argument perm[j], return the array indexed by argument order.

    Only the first ``len(perm)`` axes are permuted; ``trailing`` further axes stay put.
    """
    inv = inverse_permutation(perm)
    nperm = len(perm)
    axes = list(inv) + list(range(nperm, nperm + trailing))
    return R.transpose(axes)


def arrange(T: np.ndarray, labels, order) -> np.ndarray:
    """Transpose ``T`` whose axes carry ``labels`` into the axis order ``order``."""
    labels = list(labels)
    return T.transpose([labels.index(name) for name in order])


def first_nonzero(R: np.ndarray, vector_axes: int = 1):
    """Count of nonzero sub-arrays over the leading axes, plus the first offending index."""
    lead = R.shape[: R.ndim - vector_axes]
    if R.size == 0:
        return 0, None, None
    flat = R.reshape((int(np.prod(lead, dtype=np.int64)) if lead else 1, -1))
    bad = [k for k in range(flat.shape[0]) if any(x != 0 for x in flat[k])]
    if not bad:
        return 0, None, None
    idx = np.unravel_index(bad[0], lead) if lead else ()
    idx = tuple(int(t) for t in idx)
    return len(bad), idx, R[idx] if idx else R
