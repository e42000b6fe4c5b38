"""Exact rational scalars and linear algebra over Q.

Scalars are ``gmpy2.mpq`` stored in numpy object arrays.  Ranks use
fraction-free (Bareiss) elimination on integer rows; solving and kernels use
Gauss-Jordan reduction over Q.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

import gmpy2
import numpy as np

from .errors import StructureError

mpq = gmpy2.mpq
ZERO = mpq(0)
ONE = mpq(1)


def Q(value) -> "gmpy2.mpq":
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions, mpq, and strings such as ``"3"`` or ``"-2/5"``.
    Floats are refused so inexact data cannot leak in.
    """
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, bool):
        raise StructureError(f"boolean {value!r} is not a rational number")
    if isinstance(value, (Integral, Rational)) or type(value).__name__ == "mpz":
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructureError(f"cannot read {value!r} as an exact rational") from exc
        if "." in text or "e" in text.lower():
            raise StructureError(f"decimal literal {value!r} is not allowed; use p/q")
        return mpq(frac.numerator, frac.denominator)
    raise StructureError(f"cannot read {value!r} ({type(value).__name__}) as an exact rational")


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def asarray(data, shape=None) -> np.ndarray:
    """Object array of mpq built from nested sequences (or an array)."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for k in range(flat.size):
        flat[k] = Q(flat[k])
    if shape is not None and arr.shape != tuple(shape):
        raise StructureError(f"expected shape {tuple(shape)}, got {arr.shape}")
    return arr


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(arr) -> bool:
    arr = np.asarray(arr, dtype=object)
    return not any(x != 0 for x in arr.reshape(-1))


def normalize(arr) -> np.ndarray:
    """Force every entry to mpq (sums of empty sets come back as int 0)."""
    arr = np.array(arr, dtype=object)
    flat = arr.reshape(-1)
    for k in range(flat.size):
        if not isinstance(flat[k], type(ZERO)):
            flat[k] = mpq(flat[k])
    return arr


def to_str(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_jsonable(arr):
    """Nested lists of 'p/q' strings (ints as plain strings)."""
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return to_str(arr.item())
    return [to_jsonable(a) for a in arr]


# -- ranks ------------------------------------------------------------------

def _integer_rows(matrix) -> list[list[int]]:
    rows = []
    for row in np.asarray(matrix, dtype=object):
        vals = [Q(x) for x in row]
        den = 1
        for v in vals:
            den = int(gmpy2.lcm(den, v.denominator))
        rows.append([int(v.numerator) * (den // int(v.denominator)) for v in vals])
    return rows


def rank(matrix) -> int:
    """Rank of a rational matrix by fraction-free Bareiss elimination."""
    matrix = np.asarray(matrix, dtype=object)
    if matrix.ndim != 2 or 0 in matrix.shape:
        return 0
    rows = [r for r in _integer_rows(matrix) if any(r)]
    ncols = matrix.shape[1]
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        pivot_row = rows[r]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            a = row[col]
            if a == 0:
                rows[i] = [(p * x) // prev for x in row] if prev != 1 else [p * x for x in row]
                continue
            rows[i] = [(p * x - a * y) // prev for x, y in zip(row, pivot_row)]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def rref(matrix):
    """Reduced row echelon form over Q.  Returns (rows as lists of mpq, pivot columns)."""
    matrix = np.asarray(matrix, dtype=object)
    nrows, ncols = matrix.shape if matrix.ndim == 2 else (0, 0)
    rows = [[Q(x) for x in matrix[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                a = rows[i][col]
                rows[i] = [x - a * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def nullspace(matrix, ncols: int | None = None) -> list[np.ndarray]:
    """Basis of the right kernel, one vector per free column."""
    matrix = np.asarray(matrix, dtype=object)
    if ncols is None:
        ncols = matrix.shape[1]
    if matrix.size == 0:
        return [basis_vector(ncols, j) for j in range(ncols)]
    rows, pivots = rref(matrix)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for j in free:
        v = zeros(ncols)
        v[j] = ONE
        for row, pc in zip(rows, pivots):
            v[pc] = -row[j]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """A particular solution of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    matrix = np.asarray(matrix, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    nrows = rhs.shape[0]
    ncols = matrix.shape[1] if matrix.ndim == 2 else 0
    if nrows == 0:
        return zeros(ncols)
    if ncols == 0:
        return zeros(0) if is_zero(rhs) else None
    aug = np.concatenate([matrix.reshape(nrows, ncols), rhs.reshape(nrows, 1)], axis=1)
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = zeros(ncols)
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


def matmul(a, b) -> np.ndarray:
    return normalize(np.dot(np.asarray(a, dtype=object), np.asarray(b, dtype=object)))


def inverse(matrix):
    """Inverse of a square rational matrix, or None if singular."""
    matrix = np.asarray(matrix, dtype=object)
    n = matrix.shape[0]
    aug = np.concatenate([matrix, identity(n)], axis=1)
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return np.array([row[n:] for row in rows], dtype=object)
