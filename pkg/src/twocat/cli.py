"""Command-line front end.  Exit codes: 0 pass, 1 check failure, 2 usage or parse error."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import builders as B
from .cells import cell_structure
from .cone import cell_algebra_of, search_goodness, verify_goodness, witness_from_dict, witness_to_dict
from .errors import ConfigurationError, ParseError, SemanticError, TwoCatError
from .findim import identity_bimodule_report, verify_mab, zigzag_algebra, dual_numbers
from .formats import (
    Report, emit_dot, file_hash, load_bundled_algebra, load_rep, load_table, parse_dims, parse_graph,
    print_rep, print_table, resolve_path,
)
from .multitable import validate
from .scalars import format_scalar, parse_field, parse_scalar
from .suite import run_suite
from .tworep import (
    apex, cross_extension_certificate, dext_filters, diagram, principal_rep, recheck_certificate,
    self_extension_certificate, ses_split,
)


class UsageError(Exception):
    pass


def _emit(args, report: Report, text: str = "") -> int:
    if args.json:
        print(report.to_json())
    else:
        if text:
            print(text, end="" if text.endswith("\n") else "\n")
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


def _dot(args, obj, name: str) -> None:
    if args.dot:
        Path(args.dot).write_text(emit_dot(obj, name), encoding="utf-8")


def _table(args, report: Report):
    report.inputs[args.table] = file_hash(resolve_path(args.table))
    return load_table(args.table)


def cmd_validate(args) -> int:
    rep = Report("validate")
    t = _table(args, rep)
    bad = validate(t)
    rep.add("table-valid", not bad, [v._asdict() for v in bad] or None)
    return _emit(args, rep)


def _cells_text(cs) -> str:
    lines = [f"{cs.kind} cells:"]
    lines += [f"  {i}: {{{', '.join(c)}}}" for i, c in enumerate(cs.cells)]
    lines += ["hasse:"] + [f"  {i} < {j}" for i, j in cs.hasse]
    return "\n".join(lines)


def cmd_cells(args) -> int:
    rep = Report(f"cells --kind {args.kind}")
    t = _table(args, rep)
    cs = cell_structure(t, args.kind)
    rep.add("cells", True, {"cells": cs.cells, "hasse": cs.hasse})
    _dot(args, cs, f"{t.name} {args.kind} cells")
    return _emit(args, rep, _cells_text(cs))


def cmd_hasse(args) -> int:
    rep = Report(f"hasse --kind {args.kind}")
    t = _table(args, rep)
    cs = cell_structure(t, args.kind)
    rep.add("hasse", True, cs.hasse)
    _dot(args, cs, f"{t.name} {args.kind} order")
    return _emit(args, rep, emit_dot(cs, f"{t.name} {args.kind} order"))


def cmd_goodness(args) -> int:
    rep = Report("goodness")
    t = _table(args, rep)
    alg = cell_algebra_of(t, args.cell)
    if args.witness:
        w = witness_from_dict(alg, _load_json(args.witness, rep))
        res = verify_goodness(w)
        resid = None if res.ok else {k: format_scalar(v) for k, v in res.residual.items()}
        rep.add("goodness-identity", res.ok, {"relation": w.relation_text(), "residual": resid})
    elif args.search:
        w = search_goodness(alg, strategies=tuple(args.strategies.split(",")))
        rep.add("goodness-search", w is not None, witness_to_dict(w) if w else None)
    else:
        raise UsageError("goodness needs --witness FILE or --search")
    return _emit(args, rep, w.relation_text() if w else "no witness found")


def _rep(args, report: Report):
    if args.principal:
        report.inputs[args.rep] = "principal"
        return principal_rep(load_table(args.rep))
    p = resolve_path(args.rep)
    report.inputs[args.rep] = file_hash(p)
    return load_rep(p)


def cmd_diagram(args) -> int:
    rep = Report("diagram")
    r = _rep(args, rep)
    d = diagram(r)
    rep.add("diagram", True, {"classes": d.classes,
                              "edges": [[list(d.classes[i]), list(d.classes[j]), sorted(d.decorations[(i, j)])]
                                        for i, j in d.hasse]})
    _dot(args, d, r.name or "diagram")
    return _emit(args, rep, emit_dot(d, r.name or "diagram", decorated=not args.plain))


def cmd_apex(args) -> int:
    rep = Report("apex")
    r = _rep(args, rep)
    J = apex(r)
    rep.add("apex", True, list(J))
    return _emit(args, rep, "{" + ", ".join(J) + "}")


def _sub(args) -> list[str]:
    if not args.sub:
        raise UsageError("--sub LABELS is required")
    return [s.strip() for s in args.sub.split(",") if s.strip()]


def cmd_ses(args) -> int:
    rep = Report("ses")
    r = _rep(args, rep)
    s = ses_split(r, _sub(args))
    rep.add("action-closed", True, {"theta": sorted(s.theta)})
    return _emit(args, rep, "theta = {" + ", ".join(sorted(s.theta)) + "}")


def _witness_for(args, r, report):
    t = r.table
    J = apex(r)
    alg = cell_algebra_of(t, J[0])
    if args.witness:
        return witness_from_dict(alg, _load_json(args.witness, report))
    w = search_goodness(alg)
    if w is None:
        raise UsageError("no goodness witness found for the apex; pass --witness")
    return w


def cmd_dext(args) -> int:
    rep = Report(f"dext {args.mode}")
    if args.mode == "filters":
        r = _rep(args, rep)
        s = ses_split(r, _sub(args))
        for f in dext_filters(s.K, s.N, s.theta):
            rep.add(f.check, f.status == "pass", f.witness)
        return _emit(args, rep, "theta = {" + ", ".join(sorted(s.theta)) + "}")
    if args.mode == "self":
        r = _rep(args, rep)
        cert = self_extension_certificate(r, _witness_for(args, r, rep))
    elif args.mode == "cross":
        if not args.quotient:
            raise UsageError("dext cross needs --quotient REP")
        K = _rep(args, rep)
        rep.inputs[args.quotient] = file_hash(resolve_path(args.quotient))
        N = load_rep(resolve_path(args.quotient), K.table)
        cert = cross_extension_certificate(K, N, _witness_for(args, K, rep))
    else:  # recheck
        if not args.table:
            raise UsageError("dext recheck needs --table")
        data = _load_json(args.rep, rep)
        ok = recheck_certificate(data, load_table(args.table))
        rep.add("certificate-recheck", ok, data.get("conclusion"))
        return _emit(args, rep)
    d = cert.to_dict()
    rep.certificates.append(d)
    rep.add("certificate", True, {"kind": d["kind"], "conclusion": d["conclusion"]})
    return _emit(args, rep, json.dumps({k: d[k] for k in ("kind", "hypotheses", "conclusion")}, indent=2))


def _cartan(path: str) -> B.CartanData:
    return parse_dims(resolve_path(path).read_text(encoding="utf-8"))


def _load_json(ref: str, report: Report):
    p = resolve_path(ref)
    report.inputs[ref] = file_hash(p)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{ref}: {exc.msg}", exc.lineno, exc.colno) from None


def _write(args, stem: str, table_text: str, rep_text: str | None) -> str:
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        tpath = out.with_suffix(".tbl")
        tpath.write_text(table_text, encoding="utf-8")
        if rep_text is not None:
            out.with_suffix(".rep").write_text(rep_text.replace("table: " + stem, "table: " + tpath.name, 1),
                                               encoding="utf-8")
        return f"wrote {tpath}" + (f" and {out.with_suffix('.rep')}" if rep_text else "")
    return table_text + ("\n" + rep_text if rep_text else "")


def cmd_build(args) -> int:
    rep = Report(f"build {args.kind}")
    if not args.dims:
        raise UsageError("build needs --dims FILE")
    rep.inputs[args.dims] = file_hash(resolve_path(args.dims))
    c = _cartan(args.dims)
    if args.kind == "ca":
        t = B.build_ca_table(c)
        rep.add("table-valid", not validate(t))
        r = B.build_cell_rep(c, t)
        msg = _write(args, t.name, print_table(t), print_rep(r, t.name))
        if args.out:
            # the identity rep C_L0, the sub in a cross-extension certificate
            out = Path(args.out)
            idp = out.with_name(out.stem + "-id.rep")
            text = print_rep(B.build_identity_rep(c, t), t.name)
            idp.write_text(text.replace("table: " + t.name, "table: " + out.with_suffix(".tbl").name, 1),
                           encoding="utf-8")
            msg += f" and {idp}"
        return _emit(args, rep, msg)
    if args.kind == "da":
        t = B.build_da_table(c)
        chk = B.da_cells_check(t)
        rep.add("table-valid", not validate(t))
        rep.add("diamond-cells", chk["diamond"], chk["kinds"])
        return _emit(args, rep, _write(args, "", print_table(t), None))
    t = B.build_ca_table(c)
    if args.kind == "sig":
        if not args.dimvec:
            raise UsageError("build sig needs --dimvec")
        dv = tuple(int(x) for x in args.dimvec.split(","))
        r, ses = B.build_signature_extension(B.SignatureInput(c, dv), t)
        expect = B.signature_theta(c, dv)
        rep.add("theta-equals-signature-cells", ses.theta == expect, sorted(ses.theta))
    else:  # bipartite
        if not args.graph:
            raise UsageError("build bipartite needs --graph FILE")
        rep.inputs[args.graph] = file_hash(resolve_path(args.graph))
        g = parse_graph(resolve_path(args.graph).read_text(encoding="utf-8"))
        r = B.build_bipartite_rep(c, g)
        from .suite import graph_selfcheck

        rep.add("diagram-equals-graph", graph_selfcheck(c, g))
    return _emit(args, rep, _write(args, t.name, print_table(t), print_rep(r, t.name)))


def _scalar(text: str, spec):
    try:
        return parse_scalar(text, spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_a2(args) -> int:
    spec = parse_field(args.field)
    a, b = _scalar(args.a, spec), _scalar(args.b, spec)
    rep = Report(f"verify-a2 --a {args.a} --b {args.b}")
    r = verify_mab(a, b)
    rep.add("determinant-zero", r.precondition, format_scalar(r.determinant))
    for k, v in r.checks.items():
        rep.add(k, v, None)
    return _emit(args, rep, json.dumps({k: v for k, v in r.details.items()}, default=str))


def cmd_verify_zigzag(args) -> int:
    rep = Report(f"verify-zigzag --n {args.n}")
    if args.n == 1:
        A = dual_numbers()
    elif args.n in (2, 3):
        A = load_bundled_algebra(f"zigzag-{args.n}.alg")
    elif args.n > 3:
        raise UsageError("zigzag verification is bounded to n <= 3")
    else:
        A = zigzag_algebra(args.n)
    r = identity_bimodule_report(A)
    rep.add("stable-end-dim-1", r["stable_end_dim"] == 1,
            {k: r[k] for k in ("end_dim", "factoring_dim", "stable_end_dim")})
    return _emit(args, rep)


def cmd_run_suite(args) -> int:
    rep = run_suite(args.name, args.data_dir, args.seed)
    return _emit(args, rep)


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, suppress: bool):
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        parser.add_argument("--json", action="store_true", help="print a JSON report", **kw)
        parser.add_argument("--dot", metavar="PATH", help="also write a DOT rendering",
                            **(kw or {"default": None}))
        parser.add_argument("--seed", type=int, help="seed for randomized checks", **(kw or {"default": 0}))

    # subcommands accept the global flags too; suppressed defaults keep the top-level values
    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, True)
    p = argparse.ArgumentParser(prog="twocat", description=__doc__)
    global_flags(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, help="check a table file")
    sp.add_argument("table")
    for name, fn in (("cells", cmd_cells), ("hasse", cmd_hasse)):
        sp = add(name, fn, help=f"{name} of a table")
        sp.add_argument("table")
        sp.add_argument("--kind", choices=("left", "right", "twosided"), default="twosided")
    sp = add("goodness", cmd_goodness, help="verify or search a goodness witness")
    sp.add_argument("table")
    sp.add_argument("--cell", required=True, help="any generator in the two-sided cell")
    sp.add_argument("--witness")
    sp.add_argument("--search", action="store_true")
    sp.add_argument("--strategies", default="ones,perron,grid")
    for name, fn in (("diagram", cmd_diagram), ("apex", cmd_apex), ("ses", cmd_ses)):
        sp = add(name, fn)
        sp.add_argument("rep", help="rep file, or a table file with --principal")
        sp.add_argument("--principal", action="store_true")
        if name == "diagram":
            sp.add_argument("--plain", action="store_true", help="omit decorations")
        if name == "ses":
            sp.add_argument("--sub", help="comma separated sub labels")
    sp = add("dext", cmd_dext, help="filters and emptiness certificates")
    sp.add_argument("mode", choices=("filters", "self", "cross", "recheck"))
    sp.add_argument("rep", help="rep file (sub rep for cross, certificate JSON for recheck)")
    sp.add_argument("--principal", action="store_true")
    sp.add_argument("--sub")
    sp.add_argument("--witness")
    sp.add_argument("--quotient")
    sp.add_argument("--table")
    sp = add("build", cmd_build, help="build C_A, D_A and their representations")
    sp.add_argument("kind", choices=("ca", "sig", "bipartite", "da"))
    sp.add_argument("--dims")
    sp.add_argument("--dimvec")
    sp.add_argument("--graph")
    sp.add_argument("--out", help="output prefix for .tbl/.rep files")
    sp = add("verify-a2", cmd_verify_a2, help="coinvariant module checks for (a, b)")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--field", default="quad 1 -1")
    sp = add("verify-zigzag", cmd_verify_zigzag, help="stable End of the identity bimodule")
    sp.add_argument("--n", type=int, default=2)
    sp = add("run-suite", cmd_run_suite)
    sp.add_argument("name", choices=("paper", "smoke"))
    sp.add_argument("--data-dir")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ParseError, SemanticError, ConfigurationError, UsageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TwoCatError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
