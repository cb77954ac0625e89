"""Command-line front end.

Exit codes: 0 success, 1 bad input or failed validation, 2 a check that
must always hold did not (a bug in this library), 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import limits, set_limits
from .errors import Nach1Error, SizeLimitExceeded, TheoremCheckFailed

EXIT_OK, EXIT_INPUT, EXIT_THEOREM, EXIT_CAP = 0, 1, 2, 3


class Output:
    """Collects either text lines or one JSON document."""

    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, data: dict, lines: Sequence[str]) -> None:
        if self.as_json:
            self.stream.write(json.dumps(data, indent=2) + "\n")
        else:
            self.stream.write("\n".join(lines) + "\n")


def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> list[str]:
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*r) for r in rows)
    return [line.rstrip() for line in out]


def _vals(t) -> str:
    return "[" + ", ".join(map(str, t)) + "]"


def _module_source(path: str):
    from .io import load_json, module_from_definition

    p = Path(path)
    if p.is_file():
        return module_from_definition(load_json(p), p.parent)
    return module_from_definition(path)


def _describe_group(G) -> str:
    label = f"{G.label} " if G.label else ""
    kind = "abelian" if G.is_abelian else "non-abelian"
    return f"{label}(order {G.order}, {kind})"


# -- subcommands -----------------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    from .io import (
        detect_kind,
        group_from_definition,
        group_to_dict,
        load_json,
        module_from_definition,
        module_to_dict,
        sequence_from_definition,
        sequence_to_dict,
    )

    p = Path(args.file)
    defn = load_json(p)
    kind = detect_kind(defn)
    if kind == "group":
        G = group_from_definition(defn, p.parent)
        data = {"kind": kind, "valid": True, "order": G.order, "abelian": G.is_abelian,
                "definition": group_to_dict(G)}
        lines = [f"valid group {_describe_group(G)}"]
    elif kind == "module":
        M = module_from_definition(defn, p.parent)
        data = {"kind": kind, "valid": True, "group_order": M.G.order,
                "coefficient_order": M.A.order, "trivial_action": M.is_trivial,
                "definition": module_to_dict(M)}
        lines = [f"valid module: G {_describe_group(M.G)} acting on A {_describe_group(M.A)}"
                 + (" trivially" if M.is_trivial else "")]
    else:
        S = sequence_from_definition(defn, p.parent)
        data = {"kind": kind, "valid": True, "central": S.central,
                "orders": [S.A.A.order, S.B.A.order, S.C.A.order],
                "definition": sequence_to_dict(S)}
        lines = [f"valid short exact sequence 1 -> A({S.A.A.order}) -> B({S.B.A.order})"
                 f" -> C({S.C.A.order}) -> 1" + (", central" if S.central else "")]
    out.emit(data, lines)
    return EXIT_OK


def cmd_h0(args, out: Output) -> int:
    from .cohomology import h0

    M = _module_source(args.module)
    F = h0(M)
    data = {"order": F.order, "elements": list(F.members)}
    lines = [f"H0(G, A): {F.order} element(s)", f"fixed points: {_vals(F.members)}"]
    if M.A.is_abelian:
        from .cohomology import hu_cohomology

        st = hu_cohomology(M, 0)
        data["structure"] = str(st)
        lines.append(f"structure: {st}")
    out.emit(data, lines)
    return EXIT_OK


def cmd_h1(args, out: Output) -> int:
    from .cohomology import h1

    M = _module_source(args.module)
    H = h1(M)
    n = len(H)
    data = {
        "class_count": n,
        "derivation_count": H.derivation_count,
        "basepoint": 0,
        "representatives": [list(c.key) for c in H.classes],
    }
    lines = [f"H1(G, A): {n} class{'es' if n != 1 else ''} "
             f"({H.derivation_count} derivation{'s' if H.derivation_count != 1 else ''})"]
    rows = []
    for i, c in enumerate(H.classes):
        size = len(c.members) if c.members is not None else "?"
        rows.append([str(i), _vals(c.key), str(size), "yes" if i == 0 else ""])
    lines += _table(rows, ["class", "representative", "size", "basepoint"])
    if args.witnesses:
        data["members"] = [
            [list(d.values) for d in c.members] if c.members is not None else None
            for c in H.classes
        ]
        for i, c in enumerate(H.classes):
            if c.members is not None:
                lines.append(f"class {i}: " + " ".join(_vals(d.values) for d in c.members))
    out.emit(data, lines)
    return EXIT_OK


def cmd_hn(args, out: Output) -> int:
    from .cohomology import hu_cohomology

    M = _module_source(args.module)
    st = hu_cohomology(M, args.n)
    data = {"degree": args.n, "structure": str(st),
            "invariant_factors": list(st.cyclic_orders), "order": st.order}
    out.emit(data, [f"H{args.n}(G, A) = {st} (order {st.order})"])
    return EXIT_OK


def cmd_derivations(args, out: Output) -> int:
    from .cohomology import enumerate_derivations

    M = _module_source(args.module)
    ders = enumerate_derivations(M)
    data = {"count": len(ders), "derivations": [list(d.values) for d in ders]}
    lines = [f"{len(ders)} derivation{'s' if len(ders) != 1 else ''}"]
    lines += [_vals(d.values) for d in ders]
    out.emit(data, lines)
    return EXIT_OK


def _report_lines(report, witnesses: bool) -> list[str]:
    rows = []
    for j in report.junctions:
        w = "" if j.witness is None else str(j.witness)
        rows.append([j.name, j.kind, "exact" if j.holds and j.kind == "exact"
                     else ("holds" if j.holds else "FAILS"), w])
    lines = _table(rows, ["junction", "kind", "verdict", "witness"])
    if witnesses:
        for j in report.junctions:
            lines.append(f"{j.name}: left {list(j.left)} right {list(j.right)}")
    return lines


def cmd_ses(args, out: Output) -> int:
    from .cohomology import hu_cohomology
    from .io import load_json, sequence_from_definition
    from .sequences import make_section, seven_term, six_term

    p = Path(args.file)
    S = sequence_from_definition(load_json(p), p.parent)
    if args.seven:
        section = make_section(S, args.section) if args.section else None
        seq = seven_term(S, section)
        title = "seven-term exactness"
    else:
        seq = six_term(S)
        title = "six-term exactness"
    report = seq.report
    data = {
        "check": title,
        "central": S.central,
        "terms": {k: len(v) for k, v in seq.terms.items()},
        **report.to_dict(),
    }
    if args.seven:
        data["delta1"] = {
            "values": {json.dumps(list(k)): v for k, v in seq.maps["delta1"].mapping.items()},
        }
        try:
            data["h2_structure"] = str(hu_cohomology(S.A, 2))
        except SizeLimitExceeded:
            data["h2_structure"] = None
    verdict = "all junctions exact" if report.all_exact else "EXACTNESS FAILS"
    lines = [f"{title}: {len(report)} junctions, {verdict}"]
    lines += [f"  |{k}| = {len(v)}" for k, v in seq.terms.items()]
    if data.get("h2_structure"):
        lines.append(f"  H2(G,A) = {data['h2_structure']}")
    lines += _report_lines(report, args.witnesses)
    out.emit(data, lines)
    return EXIT_OK if report.all_exact else EXIT_THEOREM


def cmd_infres(args, out: Output) -> int:
    from .group import make_subgroup
    from .io import parse_elements
    from .sequences import inf_res_check, quotient_action_on_h1N

    M = _module_source(args.module)
    N = make_subgroup(M.G, parse_elements(args.normal))
    report = inf_res_check(M, N)
    action = quotient_action_on_h1N(M, N)
    fixed = action.fixed_points()
    data = {
        "check": "inflation-restriction",
        "normal": list(N.members),
        "h1_N_classes": len(action.h1),
        "fixed_classes": [list(k) for k in fixed],
        **report.to_dict(),
    }
    verdict = "all junctions hold" if report.all_exact else "CHECK FAILS"
    lines = [
        f"inflation-restriction for N = {_vals(N.members)}: {verdict}",
        f"  H1(N, A) has {len(action.h1)} class(es), {len(fixed)} fixed by G/N",
    ]
    lines += _report_lines(report, args.witnesses)
    out.emit(data, lines)
    return EXIT_OK if report.all_exact else EXIT_THEOREM


def cmd_semidirect(args, out: Output) -> int:
    from .group import center
    from .semidirect import check_correspondence, complement_classes, complements_bruteforce, semidirect

    M = _module_source(args.module)
    SP = semidirect(M)
    E = SP.E
    pairs = lambda X: [list(SP.pair(e)) for e in X.members]  # noqa: E731
    if args.what == "product":
        inv = sum(1 for x in E.elements if E.element_order(x) == 2)
        data = {"order": E.order, "center_order": center(E).order, "involutions": inv,
                "abelian": E.is_abelian}
        lines = [f"semidirect product of order {E.order}: center of order "
                 f"{center(E).order}, {inv} involution(s)"
                 + (", abelian" if E.is_abelian else "")]
        status = EXIT_OK
    elif args.what == "complements":
        comps = complements_bruteforce(SP)
        corr = check_correspondence(SP, comps)
        data = {"check": "complement correspondence", "count": len(comps),
                "complements": [pairs(X) for X in comps],
                "derivations": corr.derivations, "bijection": corr.holds,
                "witness": corr.witness}
        lines = [f"{len(comps)} complement(s), {corr.derivations} derivation(s); "
                 f"complement correspondence {'holds' if corr.holds else 'FAILS'}"]
        lines += ["  {" + ", ".join(f"({g},{a})" for g, a in pairs(X)) + "}" for X in comps]
        status = EXIT_OK if corr.holds else EXIT_THEOREM
    else:
        cc = complement_classes(SP)
        data = {
            "check": "complement classes",
            "h1_classes": len(cc.h1),
            "conjugacy_classes": [[pairs(X) for X in cls] for cls in cc.classes],
            "map": [[list(k), v] for k, v in cc.mapping.items()],
            "surjective": cc.surjective,
            "injective": cc.injective,
            "collisions": [[list(k) for k in c] for c in cc.collisions],
        }
        lines = [f"{len(cc.h1)} H1 class(es), {len(cc.classes)} conjugacy class(es) of "
                 f"complements; map is {'onto' if cc.surjective else 'NOT onto'}"
                 f"{', one to one' if cc.injective else ', not one to one'}"]
        rows = [[_vals(k), str(v), str(len(cc.classes[v]))] for k, v in cc.mapping.items()]
        lines += _table(rows, ["H1 representative", "class", "complements in class"])
        status = EXIT_OK
    out.emit(data, lines)
    return status


def cmd_corpus(args, out: Output) -> int:
    from .suite import run_all

    report = run_all()
    data = report.to_dict()
    lines = ["corpus run-all"]
    lines += [f"  {k}: {v}" for k, v in report.counts.items()]
    rows = [[t.name, str(t.passed), str(t.instances), "pass" if t.ok else "FAIL"]
            for t in report.tallies]
    lines += _table(rows, ["check", "passed", "instances", "verdict"])
    for t in report.tallies:
        for label, w in t.failures[:5]:
            lines.append(f"FAIL {t.name}: {label} ({w})")
        for note in t.notes:
            lines.append(f"note {t.name}: {note}")
    out.emit(data, lines)
    return EXIT_OK if report.ok else EXIT_THEOREM


# -- parser --------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands must not overwrite flags given before the subcommand name
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text", **kw)
    common.add_argument("--witnesses", action="store_true",
                        help="include witness tables and sets", **kw)
    common.add_argument("--max-order", type=_positive, help="cap on group orders", **kw)
    common.add_argument("--max-enum", type=_positive,
                        help="cap on enumerated candidate maps", **kw)
    common.add_argument("--trust-table", action="store_true",
                        help="skip sampled associativity checks above order 256", **kw)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(True)
    parser = argparse.ArgumentParser(
        prog="nach1",
        description="Non-abelian H0/H1 of finite groups, exact sequences and complements.",
        parents=[_common_flags(False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a definition file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    module_help = "module definition file or built-in module name"
    for name, func, doc in (
        ("h0", cmd_h0, "fixed points"),
        ("h1", cmd_h1, "first cohomology as classes of derivations"),
        ("derivations", cmd_derivations, "list all derivations"),
    ):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("--module", required=True, help=module_help)
        p.set_defaults(func=func)

    p = sub.add_parser("hn", parents=[common], help="cohomology in degree n (abelian A)")
    p.add_argument("--module", required=True, help=module_help)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("ses", parents=[common], help="short exact sequences")
    ses = p.add_subparsers(dest="ses_command", required=True)
    q = ses.add_parser("check", parents=[common], help="check the induced exact sequence")
    q.add_argument("file")
    q.add_argument("--seven", action="store_true", help="continue into H2 (central sequences)")
    q.add_argument("--section", type=lambda s: [int(t) for t in s.replace(",", " ").split()],
                   help="section values s(0), s(1), ... as B elements")
    q.set_defaults(func=cmd_ses)

    p = sub.add_parser("infres", parents=[common], help="inflation-restriction check")
    p.add_argument("--module", required=True, help=module_help)
    p.add_argument("--normal", required=True, help="elements of N, e.g. '0,2'")
    p.set_defaults(func=cmd_infres)

    p = sub.add_parser("semidirect", parents=[common], help="semidirect product and complements")
    p.add_argument("what", nargs="?", default="product",
                   choices=("product", "complements", "classes"))
    p.add_argument("--module", required=True, help=module_help)
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("corpus", parents=[common], help="built-in corpus")
    cs = p.add_subparsers(dest="corpus_command", required=True)
    q = cs.add_parser("run-all", parents=[common], help="run every property check")
    q.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    changes = {}
    if args.max_order is not None:
        changes["max_order"] = args.max_order
    if args.max_enum is not None:
        changes["max_enum"] = args.max_enum
    if args.trust_table:
        changes["trust_tables"] = True
    old = set_limits(**changes) if changes else limits()
    out = Output(args.json)
    try:
        return args.func(args, out)
    except SizeLimitExceeded as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TheoremCheckFailed as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except Nach1Error as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        set_limits(**vars(old))


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
