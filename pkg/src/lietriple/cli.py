"""Command-line frontend.

Exit codes: 0 when the command succeeds and every checked property holds,
1 when an input is well formed but mathematically fails (not a cocycle,
not Nijenhuis, not equivalent, ...), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .cochains import (Cochain, cohomology_dim, comparison_sign, is_3_cocycle,
                       loday_delta, yamaguti_delta)
from .deformation import (check_infinitesimal_deformation, compatibility_report, is_nijenhuis,
                          matrix_power, nijenhuis_violations, operator_polynomial, trivial_deformation)
from .errors import InputError, LieTripleError, NotNijenhuisError
from .extension import (are_equivalent, base_system, build_extension, classify_extensions,
                        equivalence_map, induced_data)
from .fundamental import verify_leibniz
from .lts import LieTripleSystem, verify_lts
from .parallel import set_threads
from .representation import Representation, adjoint_rep, validated, verify_representation

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2
MAX_LISTED = 20


# ---------------------------------------------------------------------------
# loading


def _lts(path, validate=True) -> LieTripleSystem:
    return io.lts_from_json(io.load(path), validate=validate, source=str(path))


def _rep(args, T: LieTripleSystem, path) -> Representation:
    if args.adjoint:
        if path is not None:
            raise InputError("give either a representation file or --adjoint, not both")
        return adjoint_rep(T)
    if path is None:
        raise InputError("a representation file (or --adjoint) is required")
    return validated(T, io.rep_from_json(io.load(path), T, source=str(path)))


def _cochain(path, T: LieTripleSystem, rep: Representation | None = None) -> Cochain:
    return io.cochain_from_json(io.load(path), T.field, T.dim, rep.dim_v if rep else None, source=str(path))


def _operator(path, field, shape):
    return io.operator_from_json(io.load(path), field, shape, source=str(path))[1]


def _split_rep(args, paths: list, needed: int):
    """Positional files after the system: an optional representation then ``needed`` more."""
    want = needed if args.adjoint else needed + 1
    if len(paths) != want:
        raise InputError(f"expected {want} file arguments after the system, got {len(paths)}")
    return (None, paths) if args.adjoint else (paths[0], paths[1:])


def _header(command: str, T: LieTripleSystem, rep: Representation | None = None) -> dict:
    out = {"command": command, "field": T.field.to_json(), "dim": T.dim}
    if rep is not None:
        out["dimV"] = rep.dim_v
    return out


def _violations(pairs) -> dict:
    pairs = list(pairs)
    return {"count": len(pairs), "first": [[name, list(idx)] for name, idx in pairs[:MAX_LISTED]]}


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> dict:
    T = _lts(args.lts, validate=False)
    lts = verify_lts(T.dim, T.c, T.field)
    report = _header("validate", T)
    report["lts"] = {"ok": lts.ok, "axioms": lts.axioms, "violations": _violations(lts.violations)}
    ok = lts.ok
    if lts.ok:
        leib = verify_leibniz(T)
        report["leibniz"] = {"ok": leib}
        ok = ok and leib
    if args.rep:
        rep = io.rep_from_json(io.load(args.rep), T, source=str(args.rep))
        rr = verify_representation(T, rep)
        report["dimV"] = rep.dim_v
        report["representation"] = {"ok": rr.ok, "axioms": rr.axioms,
                                    "violations": _violations(rr.violations)}
        ok = ok and rr.ok
    report["ok"] = ok
    return report


def cmd_cohomology(args) -> dict:
    T = _lts(args.lts)
    rep = _rep(args, T, args.rep)
    res = cohomology_dim(T, rep, args.degree)
    report = _header("cohomology", T, rep)
    report.update({"degree": args.degree, "h_dim": res.dim, "cochain_dim": res.cochain_dim,
                   "cocycle_dim": res.cocycle_dim, "coboundary_dim": res.coboundary_dim,
                   "representatives": [io.cochain_to_json(w) for w in res.representatives], "ok": True})
    return report


def cmd_delta(args) -> dict:
    T = _lts(args.lts)
    rep_path, (cpath,) = _split_rep(args, args.files, 1)
    rep = _rep(args, T, rep_path)
    omega = _cochain(cpath, T, rep)
    out = yamaguti_delta(T, rep, omega)
    report = _header("delta", T, rep)
    report.update({"level": omega.level, "degree": 2 * omega.level + 1, "result": io.cochain_to_json(out)})
    ok = True
    if args.loday:
        d = loday_delta(T, rep, omega)
        sign = comparison_sign(omega.level)
        holds = out == d.scaled(T.field(sign))
        report["loday"] = {"result": io.cochain_to_json(d), "sign": sign, "relation_holds": holds}
        ok = holds
    report["ok"] = ok
    if args.output:
        io.save(args.output, io.cochain_to_json(out))
    return report


def _parse_poly(text: str, field):
    return [io.parse_scalar(field, part.strip(), f"--poly[{k}]") for k, part in enumerate(text.split(","))]


def cmd_nijenhuis(args) -> dict:
    T = _lts(args.lts)
    N = _operator(args.op, T.field, (T.dim, T.dim))
    bad = nijenhuis_violations(T, N)
    report = _header("nijenhuis", T)
    report["operator"] = {"nijenhuis": not bad, "violations": _violations(bad)}
    ok = not bad
    if args.power is not None:
        if args.power < 0:
            raise InputError("--power must be non-negative")
        P = matrix_power(N, args.power)
        holds = is_nijenhuis(T, P)
        report["power"] = {"k": args.power, "matrix": io.matrix_to_json(P, T.field), "nijenhuis": holds}
        ok = ok and holds
    if args.poly is not None:
        coeffs = _parse_poly(args.poly, T.field)
        P = operator_polynomial(N, coeffs)
        holds = is_nijenhuis(T, P)
        report["poly"] = {"coefficients": [T.field.format(c) for c in coeffs],
                          "matrix": io.matrix_to_json(P, T.field), "nijenhuis": holds}
        ok = ok and holds
    if args.compatible is not None:
        N2 = _operator(args.compatible, T.field, (T.dim, T.dim))
        try:
            r = compatibility_report(T, N, N2)
        except NotNijenhuisError as exc:
            report["compatible"] = {"compatible": None, "reason": str(exc)}
            ok = False
        else:
            report["compatible"] = {"compatible": r.compatible, "n12_1": r.n12_1,
                                    "n12_2_stated": r.n12_2_stated, "n12_2_expanded": r.n12_2_expanded,
                                    "sum_is_nijenhuis": r.sum_is_nijenhuis}
            ok = ok and r.compatible
    report["ok"] = ok
    return report


def _deformation_json(r) -> dict:
    return {"ok": r.ok, "lts_ok": r.lts_ok, "cocycle_ok": r.cocycle_ok, "violations": _violations(r.violations)}


def cmd_deform(args) -> dict:
    T = _lts(args.lts)
    omega = _cochain(args.cochain, T)
    report = _header("deform", T)
    r = check_infinitesimal_deformation(T, omega)
    report.update(_deformation_json(r))
    return report


def cmd_trivial_deform(args) -> dict:
    T = _lts(args.lts)
    N = _operator(args.op, T.field, (T.dim, T.dim))
    omega = trivial_deformation(T, N)
    check = check_infinitesimal_deformation(T, omega)
    report = _header("trivial-deform", T)
    report.update({"cochain": io.cochain_to_json(omega), "check": _deformation_json(check), "ok": check.ok})
    if args.output:
        io.save(args.output, io.cochain_to_json(omega))
    return report


def cmd_extend(args) -> dict:
    T = _lts(args.lts)
    rep_path, (cpath,) = _split_rep(args, args.files, 1)
    rep = _rep(args, T, rep_path)
    E = build_extension(T, rep, _cochain(cpath, T, rep))
    data = io.extension_to_json(E)
    report = _header("extend", T, rep)
    report.update({"extension": data, "ok": True})
    if args.output:
        io.save(args.output, data)
    return report


def cmd_extract(args) -> dict:
    E = io.extension_from_json(io.load(args.ext), source=str(args.ext))
    sigma = None
    if args.section:
        sigma = _operator(args.section, E.field, (E.total.dim, E.dim_g))
    T = base_system(E)
    rep, omega = induced_data(E, sigma)
    rr = verify_representation(T, rep)
    coc = is_3_cocycle(T, rep, omega)
    report = _header("extract", T, rep)
    report.update({"lts": io.lts_to_json(T), "rep": io.rep_to_json(rep), "cochain": io.cochain_to_json(omega),
                   "representation_ok": rr.ok, "cocycle_ok": coc, "ok": rr.ok and coc})
    for path, obj in ((args.lts_out, report["lts"]), (args.rep_out, report["rep"]),
                      (args.cochain_out, report["cochain"])):
        if path:
            io.save(path, obj)
    return report


def cmd_equivalent(args) -> dict:
    T = _lts(args.lts)
    rep_path, (p1, p2) = _split_rep(args, args.files, 2)
    rep = _rep(args, T, rep_path)
    w1, w2 = _cochain(p1, T, rep), _cochain(p2, T, rep)
    nu = are_equivalent(T, rep, w1, w2)
    report = _header("equivalent", T, rep)
    if nu is None:
        report.update({"equivalent": False, "witness": None, "ok": False})
        return report
    equivalence_map(T, rep, w1, w2, nu)
    report.update({"equivalent": True, "witness": io.operator_to_json(nu, "witness"), "ok": True})
    if args.output:
        io.save(args.output, io.operator_to_json(nu, "witness"))
    return report


def cmd_classify(args) -> dict:
    T = _lts(args.lts)
    rep = _rep(args, T, args.rep)
    cl = classify_extensions(T, rep)
    report = _header("classify", T, rep)
    report.update({"h3_dim": cl.h3_dim, "cochain_dim": cl.cochain_dim, "cocycle_dim": cl.cocycle_dim,
                   "coboundary_dim": cl.coboundary_dim,
                   "representatives": [io.cochain_to_json(w) for w in cl.representatives],
                   "pairwise_inequivalent": cl.pairwise_inequivalent, "ok": cl.pairwise_inequivalent})
    return report


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable JSON report")
    common.add_argument("--threads", type=int, default=1, help="worker threads for matrix assembly")
    common.add_argument("-o", "--output", help="write the primary result to this file")

    parser = argparse.ArgumentParser(prog="lietriple", description="Exact computations with Lie triple systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, "check the axioms of a system and optionally a representation")
    p.add_argument("lts")
    p.add_argument("--rep")

    p = add("cohomology", cmd_cohomology, "cohomology dimension and representatives in degree 1, 3 or 5")
    p.add_argument("lts")
    p.add_argument("rep", nargs="?")
    p.add_argument("--degree", type=int, required=True, choices=(1, 3, 5))
    p.add_argument("--adjoint", action="store_true", help="use the adjoint representation")

    p = add("delta", cmd_delta, "apply the coboundary operator to a cochain")
    p.add_argument("lts")
    p.add_argument("files", nargs="+", metavar="rep cochain")
    p.add_argument("--loday", action="store_true", help="also apply the Leibniz coboundary and compare signs")
    p.add_argument("--adjoint", action="store_true")

    p = add("nijenhuis", cmd_nijenhuis, "check the Nijenhuis identities for an operator")
    p.add_argument("lts")
    p.add_argument("op")
    p.add_argument("--power", type=int)
    p.add_argument("--poly", help="comma separated coefficients c1,c2,... of c1 N + c2 N^2 + ...")
    p.add_argument("--compatible", metavar="OP2")

    p = add("deform", cmd_deform, "check an infinitesimal deformation direction")
    p.add_argument("lts")
    p.add_argument("cochain")

    p = add("trivial-deform", cmd_trivial_deform, "deformation direction generated by a Nijenhuis operator")
    p.add_argument("lts")
    p.add_argument("op")

    p = add("extend", cmd_extend, "build the abelian extension of a 3-cocycle")
    p.add_argument("lts")
    p.add_argument("files", nargs="+", metavar="rep cochain")
    p.add_argument("--adjoint", action="store_true")

    p = add("extract", cmd_extract, "representation and 3-cocycle induced by an extension")
    p.add_argument("ext")
    p.add_argument("--section")
    p.add_argument("--lts-out")
    p.add_argument("--rep-out")
    p.add_argument("--cochain-out")

    p = add("equivalent", cmd_equivalent, "decide whether two 3-cocycles give equivalent extensions")
    p.add_argument("lts")
    p.add_argument("files", nargs="+", metavar="rep c1 c2")
    p.add_argument("--adjoint", action="store_true")

    p = add("classify", cmd_classify, "classify abelian extensions by the third cohomology")
    p.add_argument("lts")
    p.add_argument("rep", nargs="?")
    p.add_argument("--adjoint", action="store_true")
    return parser


# ---------------------------------------------------------------------------
# output


_PAYLOAD_KEYS = {"bracket", "entries", "theta", "inj", "matrix"}


def _is_payload(value) -> bool:
    if isinstance(value, dict):
        return bool(_PAYLOAD_KEYS & set(value))
    return isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)


def _human(report: dict, indent: str = "") -> list[str]:
    """Readable summary; file payloads are only shown by --json or written with -o."""
    lines = []
    for key, value in report.items():
        if key == "field":
            lines.append(f"{indent}field: {io.field_name(io.field_from_json(value))}")
        elif _is_payload(value):
            size = f" ({len(value)} items)" if isinstance(value, list) else ""
            lines.append(f"{indent}{key}: <see --json>{size}")
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += _human(value, indent + "  ")
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {', '.join(_plain(v) for v in value) or '-'}")
        else:
            lines.append(f"{indent}{key}: {_plain(value)}")
    return lines


def _plain(value) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "-"
    return str(value)


def _emit(report: dict, as_json: bool, stream) -> None:
    if as_json:
        stream.write(io.dumps(report))
    else:
        stream.write("\n".join(_human(report)) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        set_threads(args.threads)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    try:
        report = args.func(args)
    except LieTripleError as exc:
        code = EXIT_INPUT if isinstance(exc, InputError) else EXIT_FALSE
        if args.json:
            sys.stdout.write(io.dumps({"command": args.command, "ok": False,
                                       "error": {"type": type(exc).__name__, "message": str(exc)}}))
        sys.stderr.write(f"error: {exc}\n")
        return code
    finally:
        set_threads(1)
    _emit(report, args.json, sys.stdout)
    return EXIT_OK if report.get("ok", True) else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
