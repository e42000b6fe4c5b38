"""Problem files: YAML (or JSON) documents describing an algebra and related data.

Indices in files are 1-based; rationals are integers or "p/q" strings.
Errors carry the line and column of the offending node.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np
import yaml

from .core import LYAlgebra, Representation
from .errors import LieYamagutiError, ParseError
from .exact import Q, to_str, zeros
from .tensors import wedge_dim, wedge_index

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*[+-]?\d+\s*)?$")
_INT_TAG = "tag:yaml.org,2002:int"
_STR_TAG = "tag:yaml.org,2002:str"


@dataclass
class ProblemFile:
    algebra: LYAlgebra
    basis: list | None = None
    representation: Representation | None = None
    operator: np.ndarray | None = None
    deformation: list = field(default_factory=list)
    wedge_element: np.ndarray | None = None


def _fail(node, message):
    mark = node.start_mark
    raise ParseError(message, mark.line + 1, mark.column + 1)


def _mapping(node, what, required=(), optional=()):
    if not isinstance(node, yaml.MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for knode, vnode in node.value:
        key = knode.value
        if key not in required and key not in optional:
            _fail(knode, f"unknown key {key!r} in {what}")
        if key in out:
            _fail(knode, f"duplicate key {key!r} in {what}")
        out[key] = vnode
    for key in required:
        if key not in out:
            _fail(node, f"{what} is missing {key!r}")
    return out


def _sequence(node, what, length=None):
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, f"{what} must be a list")
    if length is not None and len(node.value) != length:
        _fail(node, f"{what} must have {length} entries, got {len(node.value)}")
    return node.value


def _rational(node, what):
    if not isinstance(node, yaml.ScalarNode) or node.tag not in (_INT_TAG, _STR_TAG):
        _fail(node, f"{what} must be an integer or a 'p/q' string")
    text = node.value
    if not _RATIONAL.match(text):
        _fail(node, f"{what}: cannot read {text!r} as an exact rational")
    if "/" in text and int(text.split("/")[1]) == 0:
        _fail(node, f"{what}: zero denominator")
    return Q(text.replace(" ", ""))


def _int(node, what, lo=None, hi=None):
    if not isinstance(node, yaml.ScalarNode) or node.tag != _INT_TAG:
        _fail(node, f"{what} must be an integer")
    v = int(node.value)
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        _fail(node, f"{what} = {v} out of range [{lo}, {hi}]")
    return v


def _vector(node, length, what):
    return [_rational(x, f"{what}[{k + 1}]") for k, x in enumerate(_sequence(node, what, length))]


def _matrix(node, rows, cols, what):
    out = zeros((rows, cols))
    for a, row in enumerate(_sequence(node, what, rows)):
        out[a] = _vector(row, cols, f"{what} row {a + 1}")
    return out


def _algebra(node):
    sec = _mapping(node, "algebra", required=("dimension",), optional=("basis", "binary", "ternary", "name"))
    n = _int(sec["dimension"], "dimension", lo=0)
    basis = None
    if "basis" in sec:
        basis = [x.value for x in _sequence(sec["basis"], "basis", n)]
    binary, ternary = {}, {}
    for entry in _sequence(sec["binary"], "binary") if "binary" in sec else []:
        e = _mapping(entry, "binary entry", required=("i", "j", "value"))
        i, j = (_int(e[k], k, 1, n) - 1 for k in "ij")
        if i >= j:
            _fail(entry, "binary entries need i < j (the other order follows by skew-symmetry)")
        if (i, j) in binary:
            _fail(entry, f"duplicate binary entry ({i + 1}, {j + 1})")
        binary[(i, j)] = _vector(e["value"], n, "value")
    for entry in _sequence(sec["ternary"], "ternary") if "ternary" in sec else []:
        e = _mapping(entry, "ternary entry", required=("i", "j", "k", "value"))
        i, j, k = (_int(e[x], x, 1, n) - 1 for x in "ijk")
        if i >= j:
            _fail(entry, "ternary entries need i < j (the other order follows by skew-symmetry)")
        if (i, j, k) in ternary:
            _fail(entry, f"duplicate ternary entry ({i + 1}, {j + 1}, {k + 1})")
        ternary[(i, j, k)] = _vector(e["value"], n, "value")
    name = sec["name"].value if "name" in sec else ""
    return LYAlgebra.from_products(n, binary, ternary, name=name), basis


def _representation(node, alg):
    sec = _mapping(node, "representation", required=("module_dim",), optional=("rho", "mu"))
    n = alg.dim
    m = _int(sec["module_dim"], "module_dim", lo=0)
    rho = zeros((n, m, m))
    mu = zeros((n, n, m, m))
    if "rho" in sec:
        for x, mat in enumerate(_sequence(sec["rho"], "rho", n)):
            rho[x] = _matrix(mat, m, m, f"rho[{x + 1}]")
    if "mu" in sec:
        for x, row in enumerate(_sequence(sec["mu"], "mu", n)):
            for y, mat in enumerate(_sequence(row, f"mu row {x + 1}", n)):
                mu[x, y] = _matrix(mat, m, m, f"mu[{x + 1}][{y + 1}]")
    return Representation(alg, rho, mu)


def _wedge(node, n):
    vec = zeros((wedge_dim(n),))
    idx = wedge_index(n)
    for entry in _sequence(node, "wedge_element"):
        e = _mapping(entry, "wedge_element entry", required=("i", "j", "coeff"))
        i, j = (_int(e[k], k, 1, n) - 1 for k in "ij")
        if i == j:
            _fail(entry, "wedge entries need i != j")
        c = _rational(e["coeff"], "coeff")
        vec[idx[(min(i, j), max(i, j))]] += c if i < j else -c
    return vec


def loads(text: str) -> ProblemFile:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(exc.problem or str(exc), mark.line + 1 if mark else 0,
                         mark.column + 1 if mark else 0) from None
    if root is None:
        raise ParseError("empty document", 1, 1)
    sec = _mapping(root, "document", required=("algebra",),
                   optional=("representation", "operator", "deformation", "wedge_element"))
    try:
        alg, basis = _algebra(sec["algebra"])
        n = alg.dim
        rep = _representation(sec["representation"], alg) if "representation" in sec else None
        m = rep.dim if rep is not None else n
        op = _matrix(sec["operator"], n, m, "operator") if "operator" in sec else None
        defm = []
        if "deformation" in sec:
            defm = [_matrix(x, n, m, f"deformation[{k + 1}]")
                    for k, x in enumerate(_sequence(sec["deformation"], "deformation"))]
        wedge = _wedge(sec["wedge_element"], n) if "wedge_element" in sec else None
    except ParseError:
        raise
    except LieYamagutiError as exc:
        _fail(root, str(exc))
    return ProblemFile(alg, basis, rep, op, defm, wedge)


def load(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# -- serialization ------------------------------------------------------------

def _mat(M):
    return [[to_str(x) for x in row] for row in M]


def problem_to_dict(p: ProblemFile) -> dict:
    alg = p.algebra
    n = alg.dim
    out = {"algebra": {"dimension": n}}
    if p.basis:
        out["algebra"]["basis"] = list(p.basis)
    binary = [{"i": i + 1, "j": j + 1, "value": [to_str(x) for x in alg.bracket[i, j]]}
              for i in range(n) for j in range(i + 1, n) if any(x != 0 for x in alg.bracket[i, j])]
    ternary = [{"i": i + 1, "j": j + 1, "k": k + 1, "value": [to_str(x) for x in alg.ternary[i, j, k]]}
               for i in range(n) for j in range(i + 1, n) for k in range(n)
               if any(x != 0 for x in alg.ternary[i, j, k])]
    if binary:
        out["algebra"]["binary"] = binary
    if ternary:
        out["algebra"]["ternary"] = ternary
    if p.representation is not None:
        rep = p.representation
        out["representation"] = {
            "module_dim": rep.dim,
            "rho": [_mat(rep.rho[x]) for x in range(n)],
            "mu": [[_mat(rep.mu[x, y]) for y in range(n)] for x in range(n)],
        }
    if p.operator is not None:
        out["operator"] = _mat(p.operator)
    if p.deformation:
        out["deformation"] = [_mat(M) for M in p.deformation]
    if p.wedge_element is not None:
        out["wedge_element"] = [{"i": i + 1, "j": j + 1, "coeff": to_str(c)}
                                for (i, j), k in wedge_index(n).items()
                                for c in [p.wedge_element[k]] if c != 0]
    return out


def dumps(p: ProblemFile) -> str:
    return yaml.safe_dump(problem_to_dict(p), sort_keys=False, default_flow_style=None)
