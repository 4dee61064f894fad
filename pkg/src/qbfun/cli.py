"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse errors,
3 mathematical errors (e.g. a pair that labels no invariant),
4 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bfun import a_function, b_multivariate, b_one_variable
from .diagrams import complete_diagram, exact_diagram
from .errors import (
    BudgetExceededError,
    DiagnosticError,
    NotAnInvariantError,
    OracleIdentityError,
    QuiverParseError,
    ShapeError,
)
from .invariants import enumerate_invariants, invariant_index
from .jsonio import (
    afun_to_json,
    bfun_to_json,
    diagram_to_json,
    format_afun_text,
    format_bfun_text,
    fset_to_json,
    parse_dims,
    parse_pq,
    rank_to_json,
    slice_to_json,
)
from .oracle import (
    Budget,
    apply_bernstein_multi,
    a_function_check,
    grad_log_check,
    oracle_b_function,
)
from .quiver import parse_quiver
from .ranks import (
    rank_parameter,
    restricted_invariant_shape,
    slice_representation,
)
from .bfun import f_set
from .diagrams import diagram_to_matrices
from .render import LabeledDiagram, render_ascii, render_svg, superposed_diagram, labeled_exact_diagram


def _add_common(sub):
    sub.add_argument("--quiver", required=True, help="orientation, e.g. '1->2<-3' or 'R,L'")
    sub.add_argument("--dims", required=True, help="dimension vector, e.g. '2,5,6,6,2'")
    sub.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbfun")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("invariants", help="enumerate the invariant index pairs")
    _add_common(sub)

    sub = subs.add_parser("bfun", help="one-variable b-function of one invariant")
    _add_common(sub)
    sub.add_argument("--pq", required=True, help="invariant pair, e.g. '1,5'")

    sub = subs.add_parser("bfun-multi", help="several-variable b-function")
    _add_common(sub)

    sub = subs.add_parser("afun", help="a-function monomial")
    _add_common(sub)

    sub = subs.add_parser("diagram", help="lace diagrams (json, ascii, or svg)")
    _add_common(sub)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--pq", help="exact diagram of this invariant")
    group.add_argument("--complete", action="store_true", help="complete diagram")
    group.add_argument("--superposed", action="store_true", help="labeled superposition of all exact diagrams")
    sub.add_argument("--render", choices=("json", "ascii", "svg"), default="json")
    sub.add_argument("--out", help="write output to this path (required sink for svg files)")

    sub = subs.add_parser("ranks", help="rank parameter and F-set of an invariant's orbit")
    _add_common(sub)
    sub.add_argument("--pq", required=True)

    sub = subs.add_parser("slice", help="slice representation and restricted invariants")
    _add_common(sub)
    sub.add_argument("--pq", required=True)

    sub = subs.add_parser("verify", help="run the symbolic oracle against the engine")
    _add_common(sub)
    sub.add_argument("--pq", help="restrict to one invariant")
    sub.add_argument("--budget", help="term budgets, e.g. '200,20000' or '200,20000,6'")
    sub.add_argument("--multi", help="also check the several-variable identity at these shifts, e.g. '1,0'")
    sub.add_argument("--grad", action="store_true", help="also check grad-log against exact diagrams")
    sub.add_argument("--afun", action="store_true", help="also check the a-function symbolically")
    return parser


def _emit(args, data, text):
    print(text if args.format == "text" else json.dumps(data, indent=2))


def _cmd_invariants(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    pairs = [[idx.p, idx.q] for idx in enumerate_invariants(q, n)]
    _emit(args, pairs, "\n".join(f"{p},{qq}" for p, qq in pairs) if pairs else "(none)")
    return 0


def _cmd_bfun(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    p, qq = parse_pq(args.pq)
    b = b_one_variable(q, n, invariant_index(q, p, qq))
    _emit(args, {"pq": [p, qq], "b": bfun_to_json(b)}, format_bfun_text(b))
    return 0


def _cmd_bfun_multi(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    labels = [[idx.p, idx.q] for idx in enumerate_invariants(q, n)]
    b = b_multivariate(q, n)
    _emit(args, {"labels": labels, "b": bfun_to_json(b)}, format_bfun_text(b))
    return 0


def _cmd_afun(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    labels = [[idx.p, idx.q] for idx in enumerate_invariants(q, n)]
    a = a_function(q, n)
    _emit(args, {"labels": labels, "a": afun_to_json(a)}, format_afun_text(a))
    return 0


def _cmd_diagram(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    if args.complete:
        ld = LabeledDiagram(q, complete_diagram(q, n))
    elif args.superposed:
        ld = superposed_diagram(q, n)
    else:
        p, qq = parse_pq(args.pq)
        ld = labeled_exact_diagram(q, n, invariant_index(q, p, qq))
    if args.render == "json":
        output = json.dumps(diagram_to_json(ld.diagram), indent=2)
    elif args.render == "ascii":
        output = render_ascii(ld).rstrip("\n")
    else:
        output = render_svg(ld).rstrip("\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(output + "\n")
    else:
        print(output)
    return 0


def _cmd_ranks(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    p, qq = parse_pq(args.pq)
    idx = invariant_index(q, p, qq)
    N = rank_parameter(q, n, diagram_to_matrices(q, n, exact_diagram(q, n, idx)))
    fs = f_set(N)
    data = {"pq": [p, qq], "rank_parameter": rank_to_json(N), "fset": fset_to_json(fs)}
    lines = ["  ".join(str(x) for x in row) for row in N.rows]
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_slice(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    p, qq = parse_pq(args.pq)
    idx = invariant_index(q, p, qq)
    srep = slice_representation(q, n, idx)
    restrictions = []
    for other in enumerate_invariants(q, n):
        shape = restricted_invariant_shape(q, n, idx, other)
        item = {"pq": [other.p, other.q], "constant": shape.constant}
        if not shape.constant:
            item.update(
                quiver=str(shape.quiver),
                dims=list(shape.dims.entries),
                local_pq=[shape.index.p, shape.index.q],
                b=bfun_to_json(shape.local_b()),
            )
        restrictions.append(item)
    data = {"pq": [p, qq], "slice": slice_to_json(srep), "restrictions": restrictions}
    group = " x ".join(f"GL({m})" for m in srep.group_factors())
    w = " + ".join(f"M({a},{b})" for a, b in srep.w_summands())
    _emit(args, data, f"{group}\nW = {w if w else '0'}")
    return 0


def _cmd_verify(args):
    q = parse_quiver(args.quiver)
    n = parse_dims(args.dims)
    budget = Budget.parse(args.budget) if args.budget else Budget.from_env()
    if args.pq:
        p, qq = parse_pq(args.pq)
        targets = [invariant_index(q, p, qq)]
    else:
        targets = list(enumerate_invariants(q, n))
    checks = []
    for idx in targets:
        engine = b_one_variable(q, n, idx)
        result = oracle_b_function(q, n, idx, budget)
        checks.append(
            {
                "check": f"bernstein({idx.p},{idx.q})",
                "ok": result.b == engine,
                "engine": format_bfun_text(engine),
                "oracle": format_bfun_text(result.b),
                "normalization": str(result.constant),
            }
        )
        if args.grad:
            verdict = grad_log_check(q, n, idx)
            checks.append({"check": f"grad-log({idx.p},{idx.q})", "ok": verdict.ok})
    if args.multi:
        try:
            shifts = tuple(int(tok) for tok in args.multi.split(","))
        except ValueError as exc:
            raise QuiverParseError(f"cannot parse shifts {args.multi!r}") from exc
        result = apply_bernstein_multi(q, n, shifts, budget)
        checks.append(
            {"check": f"bernstein-multi{shifts}", "ok": result.ok, "normalization": str(result.constant)}
        )
    if args.afun:
        verdict = a_function_check(q, n, budget)
        checks.append({"check": "a-function", "ok": verdict.ok})
    all_ok = all(item["ok"] for item in checks)
    if args.format == "text":
        for item in checks:
            print(("ok   " if item["ok"] else "FAIL ") + item["check"])
    else:
        print(json.dumps({"ok": all_ok, "checks": checks}, indent=2))
    return 0 if all_ok else 1


_COMMANDS = {
    "invariants": _cmd_invariants,
    "bfun": _cmd_bfun,
    "bfun-multi": _cmd_bfun_multi,
    "afun": _cmd_afun,
    "diagram": _cmd_diagram,
    "ranks": _cmd_ranks,
    "slice": _cmd_slice,
    "verify": _cmd_verify,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _COMMANDS[args.command](args)
    except QuiverParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (NotAnInvariantError, ShapeError, DiagnosticError, OracleIdentityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
