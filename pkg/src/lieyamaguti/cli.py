"""Command-line entry point: ``lieyamaguti <command> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cochains import cohomology_dims
from .core import adjoint_representation, verify_lya, verify_representation
from .deformations import (linear_deformation_check, nijenhuis_element_check, obstruction_class,
                           order_n_check, trivial_deformation_from_nijenhuis)
from .errors import (InternalConsistencyError, LieYamagutiError, NotNijenhuis, NotRotaBaxter,
                     NotVerifiedDeformation, ParseError, ResourceCapExceeded)
from .exact import basis_vector, to_jsonable
from .fileformat import load
from .rb import BigSpaceContext, is_relative_rota_baxter, strict_mc_check, twisted_mc_check
from .rb_cohomology import DEFAULT_MAX_LEVEL, RBComplex, rb_cohomology_dims
from .reports import CheckResult, Report
from .selftest import run_selftest
from .tensors import DEFAULT_MAX_TENSOR_ENTRIES, tensor_cap, wedge_dim, wedge_pairs

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(LieYamagutiError):
    pass


def _representation(problem, args):
    if args.adjoint:
        return adjoint_representation(problem.algebra)
    if problem.representation is None:
        raise InputError("the file has no representation section (pass --adjoint for the adjoint module)")
    return problem.representation


def _operator(problem):
    if problem.operator is None:
        raise InputError("the file has no operator section")
    return problem.operator


def _require_rb(problem, rep):
    T = _operator(problem)
    rb = is_relative_rota_baxter(T, problem.algebra, rep)
    if not rb.passed:
        raise NotRotaBaxter("the base operator is not a relative Rota-Baxter operator", report=rb)
    return T


def _wedge_elements(problem):
    n = problem.algebra.dim
    if problem.wedge_element is not None:
        return [("given", problem.wedge_element)]
    I, J = wedge_pairs(n)
    return [(f"e{i + 1}^e{j + 1}", basis_vector(wedge_dim(n), a)) for a, (i, j) in enumerate(zip(I, J))]


# -- commands ---------------------------------------------------------------------

def cmd_verify(args):
    p = load(args.file)
    reports = [verify_lya(p.algebra)]
    if args.adjoint or p.representation is not None:
        reports.append(verify_representation(_representation(p, args)))
    return reports


def cmd_rb_check(args):
    p = load(args.file)
    rep = _representation(p, args)
    T = _operator(p)
    direct = is_relative_rota_baxter(T, p.algebra, rep)
    mc = strict_mc_check(BigSpaceContext(p.algebra, rep), T)
    if direct.passed != mc.passed or not mc.data["closed_forms_agree"]:
        raise InternalConsistencyError("the direct operator check and the Maurer-Cartan check disagree")
    return [direct, mc]


def cmd_cohomology(args):
    p = load(args.file)
    rep = _representation(p, args)
    report = Report(f"{args.complex} cohomology")
    rows = []
    if args.complex == "rb":
        T = _require_rb(p, rep)
        cx = RBComplex(p.algebra, rep, T, max_level=args.max_level)
        levels = [args.level] if args.level is not None else range(1, args.max_level + 1)
        for lvl in levels:
            rows.append(rb_cohomology_dims(cx, lvl))
    else:
        levels = [args.level] if args.level is not None else range(2, args.max_level + 1)
        for lvl in levels:
            rows.append(cohomology_dims(p.algebra, rep, lvl, max_level=args.max_level))
    for row in rows:
        ok = row["Z"] - row["B"] == row["H"] and 0 <= row["B"] <= row["Z"] <= row["cochains"]
        report.add(CheckResult(f"rank_nullity_level_{row['level']}", ok))
    report.data["table"] = rows
    return [report]


def cmd_deform(args):
    p = load(args.file)
    rep = _representation(p, args)
    alg = p.algebra
    reports = []
    if args.action == "check-linear":
        T = _require_rb(p, rep)
        if not p.deformation:
            raise InputError("check-linear needs one matrix in the deformation section")
        T1 = p.deformation[0]
        reports.append(linear_deformation_check(alg, rep, T, T1))
        tw = twisted_mc_check(BigSpaceContext(alg, rep), T, T1)
        tw.title = "twisted maurer-cartan (T + T' is Rota-Baxter)"
        reports.append(tw)
    elif args.action == "nijenhuis":
        T = _require_rb(p, rep)
        cx = RBComplex(alg, rep, T)
        for label, X in _wedge_elements(p):
            nij = nijenhuis_element_check(alg, rep, T, X)
            nij.title = f"nijenhuis element {label}"
            if nij.passed:
                T1, triv = trivial_deformation_from_nijenhuis(alg, rep, T, X, complex_=cx)
                nij.data["trivial_deformation"] = to_jsonable(T1)
                nij.extend(triv, prefix="trivial_deformation:")
            reports.append(nij)
    elif args.action == "order-n":
        _require_rb(p, rep)
        coeffs = [p.operator] + list(p.deformation)
        rep_n = order_n_check(alg, rep, coeffs)
        if rep_n.passed:
            ob = obstruction_class(alg, rep, coeffs)
            rep_n.data["extension"] = None if ob.extension is None else to_jsonable(ob.extension)
        reports.append(rep_n)
    else:
        _require_rb(p, rep)
        coeffs = [p.operator] + list(p.deformation)
        ob = obstruction_class(alg, rep, coeffs, require_verified=False)
        ob.report.data["obstruction"] = ob.obstruction.to_dict()
        ob.report.data["extension"] = None if ob.extension is None else to_jsonable(ob.extension)
        reports.append(ob.report)
    return reports


def cmd_selftest(args):
    try:
        n, m = (int(x) for x in args.dims.split(","))
    except ValueError:
        raise InputError(f"--dims expects 'n,m', got {args.dims!r}") from None
    return [run_selftest(seed=args.seed, dims=(n, m), degree=args.degree, samples=args.samples)]


# -- plumbing -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-tensor-entries", type=int, default=DEFAULT_MAX_TENSOR_ENTRIES,
                        help="cap on the size of any dense intermediate tensor")
    filed = argparse.ArgumentParser(add_help=False, parents=[common])
    filed.add_argument("--adjoint", action="store_true", help="use the adjoint representation")

    parser = argparse.ArgumentParser(prog="lieyamaguti", description="Exact computations with Lie-Yamaguti algebras.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[filed], help="check the algebra and representation axioms").add_argument("file")
    sub.add_parser("rb-check", parents=[filed], help="check a relative Rota-Baxter operator two ways").add_argument("file")
    coh = sub.add_parser("cohomology", parents=[filed], help="cohomology dimension table")
    coh.add_argument("file")
    coh.add_argument("--complex", choices=("yamaguti", "rb"), default="rb")
    coh.add_argument("--level", type=int)
    coh.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    dfm = sub.add_parser("deform", parents=[filed], help="deformation checks")
    dfm.add_argument("action", choices=("check-linear", "nijenhuis", "order-n", "obstruction"))
    dfm.add_argument("file")
    st = sub.add_parser("selftest", parents=[common], help="seeded property battery")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--dims", default="3,2")
    st.add_argument("--degree", type=int, default=2)
    st.add_argument("--samples", type=int, default=6)
    return parser


COMMANDS = {"verify": cmd_verify, "rb-check": cmd_rb_check, "cohomology": cmd_cohomology,
            "deform": cmd_deform, "selftest": cmd_selftest}


def _emit(args, document, out):
    if args.format == "text":
        for rep in document.get("_reports", []):
            print(rep.render_text(), file=out)
        if "error" in document:
            print(f"error: {document['error']['message']}", file=out)
    else:
        doc = {k: v for k, v in document.items() if k != "_reports"}
        print(json.dumps(doc, indent=2), file=out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    document = {"command": args.command}
    code = EXIT_PASS
    try:
        with tensor_cap(args.max_tensor_entries):
            reports = COMMANDS[args.command](args)
        passed = all(r.passed for r in reports)
        document.update(passed=passed, reports=[r.to_dict() for r in reports], _reports=reports)
        code = EXIT_PASS if passed else EXIT_FAIL
    except ResourceCapExceeded as exc:
        code = EXIT_CAP
        document["error"] = {"type": "ResourceCapExceeded",
                             "message": f"{exc}; raise --max-level or --max-tensor-entries to proceed"}
    except (NotRotaBaxter, NotVerifiedDeformation, NotNijenhuis, InternalConsistencyError) as exc:
        code = EXIT_FAIL
        document["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "report", None) is not None:
            document["_reports"] = [exc.report]
            document["reports"] = [exc.report.to_dict()]
    except ParseError as exc:
        code = EXIT_INPUT
        document["error"] = {"type": "ParseError", "message": str(exc), "line": exc.line, "column": exc.column}
    except (LieYamagutiError, OSError) as exc:
        code = EXIT_INPUT
        document["error"] = {"type": type(exc).__name__, "message": str(exc)}
    if "error" in document:
        document["passed"] = False
        print(f"lieyamaguti: {document['error']['message']}", file=sys.stderr)
    _emit(args, document, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
