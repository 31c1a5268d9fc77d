"""Command-line interface.

Exit codes: 0 success / verified, 1 verified false (e.g. a map is not a
quasi-isometry), 2 semantic violation or refusal, 3 parse error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import generators, pace
from .compress import ClaimError, PreconditionError, build_compressing
from .graph import as_scalar, format_scalar, graph_power
from .oracles import BudgetExceeded, SmallGraphBudget, counterexample_check, exact_pathwidth, exact_treewidth
from .qi import QIError, check_qi, qi_to_bounded_width_pipeline
from .serialize import DocumentError, compression_doc, dumps, load_qi, pipeline_doc
from .treedecomp import DecompositionError, TreeDecomposition, heuristic_pd, heuristic_td, root_at, validate
from .verify import verify_result

OK, FALSE, VIOLATION, PARSE = 0, 1, 2, 3


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def _rational(text):
    try:
        return as_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_pair(gr, td):
    g = pace.read_gr(gr)
    d = pace.read_td(td)
    if d.n is not None and d.n != g.n:
        raise pace.PaceFormatError(f".td header says {d.n} vertices, graph has {g.n}")
    return g, d


def cmd_validate(args):
    g, td = _load_pair(args.gr, args.td)
    report = validate(g, td)
    if report.ok:
        print(f"width: {report.width}")
        return OK
    for v in report.violations:
        print(f"violation {v}")
    return VIOLATION


def cmd_compress(args):
    g, td = _load_pair(args.gr, args.td)
    if args.ell < 0:
        print("error: --ell must be nonnegative", file=sys.stderr)
        return VIOLATION
    report = validate(g, td)
    if not report.ok:
        for v in report.violations:
            print(f"violation {v}", file=sys.stderr)
        return VIOLATION
    rtd = root_at(TreeDecomposition(td.tree, td.bags, n=g.n), args.root - 1)
    res = build_compressing(g, rtd, args.ell)
    check = verify_result(g, rtd, res, res.k, args.ell)
    doc = compression_doc(res)
    doc["bound"] = format_scalar(res.bound)
    doc["root"] = args.root
    doc["verification"] = "ok" if check.ok else check.summary()
    _emit(dumps(doc), args.out)
    return OK if check.ok else VIOLATION


def cmd_pipeline(args):
    g = pace.read_gr(args.gr_g)
    h = pace.read_gr(args.gr_h)
    td = pace.read_td(args.td_h)
    m = load_qi(Path(args.qi).read_text(), g, h)
    bad = check_qi(m)
    if bad:
        for v in bad[:10]:
            print(f"not a quasi-isometry: {v}", file=sys.stderr)
        return FALSE
    pr = qi_to_bounded_width_pipeline(m, TreeDecomposition(td.tree, td.bags, n=h.n), args.mode, args.root - 1)
    _emit(dumps(pipeline_doc(pr)), args.out)
    return OK if pr.ok else VIOLATION


def cmd_counterexample(args):
    verdict = counterexample_check(args.d, SmallGraphBudget(args.max_vertices))
    doc = {"d": args.d, "tree_height": args.d + 1, "examined": verdict.examined,
           "compressing_partition_exists": verdict.found}
    if verdict.found:
        doc["witness"] = [[v + 1 for v in p] for p in verdict.witness]
    _emit(dumps(doc), args.out)
    return FALSE if verdict.found else OK


def _exact(args, fn):
    g = pace.read_gr(args.gr)
    result = fn(g, SmallGraphBudget(args.max_vertices))
    print(f"width: {result.width}")
    if args.td_out:
        pace.write_td(result.decomposition, args.td_out, g.n)
    return OK


def cmd_exact_tw(args):
    return _exact(args, exact_treewidth)


def cmd_exact_pw(args):
    return _exact(args, exact_pathwidth)


def cmd_power(args):
    g = pace.read_gr(args.gr)
    _emit(pace.dump_gr(graph_power(g, args.ell)), args.out)
    return OK


def cmd_qi_verify(args):
    g = pace.read_gr(args.gr_g)
    h = pace.read_gr(args.gr_h)
    m = load_qi(Path(args.qi).read_text(), g, h)
    bad = check_qi(m)
    if not bad:
        print(f"ok: {format_scalar(m.c)}-quasi-isometry")
        return OK
    for v in bad:
        print(f"violation {v.condition} at {tuple(x + 1 for x in v.witness)}: {v.lhs} > {v.rhs}")
    return FALSE


_FAMILIES = ("tree", "gnp", "ktree", "path", "cycle", "star", "binary-tree", "grid")


def cmd_generate(args):
    rng = random.Random(args.seed)
    n = args.n
    if args.family == "tree":
        g = generators.random_tree(n, rng)
    elif args.family == "gnp":
        g = generators.gnp(n, float(args.p), rng)
    elif args.family == "ktree":
        g = generators.random_partial_ktree(n, args.k, float(args.p), rng)
    elif args.family == "path":
        g = generators.path(n)
    elif args.family == "cycle":
        g = generators.cycle(n)
    elif args.family == "star":
        g = generators.star(n - 1)
    elif args.family == "binary-tree":
        g = generators.complete_binary_tree(n)
    else:
        g = generators.grid(n, n)
    _emit(pace.dump_gr(g), args.out)
    if args.td:
        td = heuristic_pd(g) if args.path else heuristic_td(g, args.strategy)
        pace.write_td(td, args.td, g.n)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coarsetw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a tree-decomposition and report its width")
    s.add_argument("gr")
    s.add_argument("td")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compress", help="build and verify an ell-compressing partition")
    s.add_argument("gr")
    s.add_argument("td")
    s.add_argument("--ell", type=_rational, required=True, help="scale as p/q or an integer")
    s.add_argument("--root", type=int, default=1, help="root bag id (1-based, default 1)")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("pipeline", help="quasi-isometry to a bounded-width partition of G")
    s.add_argument("gr_g", help="graph G (.gr)")
    s.add_argument("gr_h", help="graph H (.gr)")
    s.add_argument("qi", help="map G -> H (.json)")
    s.add_argument("td_h", help="decomposition of H (.td)")
    s.add_argument("--mode", choices=("treewidth", "pathwidth"), default="treewidth")
    s.add_argument("--root", type=int, default=1)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("counterexample", help="exhaustive connected-partition search on a binary tree")
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--max-vertices", type=int, default=8)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_counterexample)

    for name, fn in (("exact-tw", cmd_exact_tw), ("exact-pw", cmd_exact_pw)):
        s = sub.add_parser(name, help=f"exact {'treewidth' if name == 'exact-tw' else 'pathwidth'}")
        s.add_argument("gr")
        s.add_argument("--max-vertices", type=int, default=15)
        s.add_argument("--td-out", help="write the witness decomposition here")
        s.set_defaults(func=fn)

    s = sub.add_parser("power", help="write the ell-th power of a graph")
    s.add_argument("gr")
    s.add_argument("--ell", type=_rational, required=True)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_power)

    s = sub.add_parser("qi-verify", help="check a c-quasi-isometry G -> H")
    s.add_argument("gr_g")
    s.add_argument("gr_h")
    s.add_argument("qi")
    s.set_defaults(func=cmd_qi_verify)

    s = sub.add_parser("generate", help="write a graph (and optionally a heuristic decomposition)")
    s.add_argument("family", choices=_FAMILIES)
    s.add_argument("--n", type=int, default=10, help="vertices (height for binary-tree, side for grid)")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--p", type=_rational, default=as_scalar("1/2"), help="edge probability as p/q")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--td", help="also write a heuristic decomposition here")
    s.add_argument("--path", action="store_true", help="make the decomposition a path")
    s.add_argument("--strategy", choices=("min-fill", "min-degree"), default="min-fill")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (pace.PaceFormatError, DocumentError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return VIOLATION
    except (QIError, DecompositionError, PreconditionError, ClaimError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
