"""Command-line interface.

Subcommands
    extract    intersection graph of a representation file
    verify     check a representation against a graph (exit 1 on mismatch)
    canon      canonicalize a unit representation, or --check one
    recognize  exact recognition; exit 0=accept, 1=reject, 2=budget exceeded
    bound      minimum boundary semiperimeter over canonical representations
    reduce     build a reduction bundle from an extended DIMACS instance
    synth      synthesize a representation for a bundle and assignment
    treegen    generate the n-th tree of the lower-bound family
    svg        render a representation file as SVG
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Dict, Optional

from . import __version__
from .canonical import canonicalize, check_canonical
from .formats import (
    ParseError,
    emit_graph,
    emit_instance,
    emit_rep,
    parse_graph,
    parse_instance,
    parse_rational,
    parse_rep,
)
from .geometry import extract_graph, verify
from .recognizer import (
    Accept,
    BudgetExceeded,
    SearchOptions,
    TrivialAccept,
    min_boundary,
    recognize_gig,
    recognize_ugig,
)
from .reduction import build_gf
from .svg import DEFAULT_SCALE, render_svg
from .synth import synth_representation
from .trees import gen_tree

BUNDLE_HEADER = "gfbundle"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _cmd_extract(args) -> int:
    rep = parse_rep(_read(args.rep))
    _write(args.out, emit_graph(extract_graph(rep)))
    return 0


def _cmd_verify(args) -> int:
    rep = parse_rep(_read(args.rep))
    g = parse_graph(_read(args.graph))
    report = verify(rep, g)
    if report.ok:
        print(f"ok: {g.n} vertices, {g.m} edges")
        return 0
    for u, v in report.missing_edges:
        print(f"missing edge: {u} {v}")
    for u, v in report.spurious_intersections:
        print(f"spurious intersection: {u} {v}")
    return 1


def _cmd_canon(args) -> int:
    rep = parse_rep(_read(args.rep))
    if args.check:
        ok, violations = check_canonical(rep)
        for line in violations:
            print(line)
        if ok:
            print("canonical")
        return 0 if ok else 1
    _write(args.out, emit_rep(canonicalize(rep)))
    return 0


def _options(args) -> SearchOptions:
    opts = SearchOptions()
    if getattr(args, "budget_nodes", None):
        opts.node_budget = args.budget_nodes
    if getattr(args, "budget_seconds", None):
        opts.time_budget = args.budget_seconds
    return opts


def _cmd_recognize(args) -> int:
    g = parse_graph(_read(args.graph))
    fn = recognize_ugig if args.klass == "ugig" else recognize_gig
    try:
        result = fn(g, _options(args))
    except BudgetExceeded:
        print("budget exceeded")
        return 2
    if isinstance(result, (Accept, TrivialAccept)):
        print("accept")
        if args.emit:
            _write(args.emit, emit_rep(result.representation))
        return 0
    print(f"reject ({result.reason.value})" if result.reason else "reject")
    return 1


def _cmd_bound(args) -> int:
    g = parse_graph(_read(args.graph))
    try:
        found = min_boundary(g, parse_rational(args.cap), _options(args))
    except BudgetExceeded:
        print("budget exceeded")
        return 2
    if found is None:
        print(f"no representation with boundary < {args.cap}")
        return 1
    rep, bound = found
    print(f"optimal boundary: {bound}")
    if args.emit:
        _write(args.emit, emit_rep(rep))
    return 0


def _cmd_reduce(args) -> int:
    inst = parse_instance(_read(args.cnf))
    gf = build_gf(inst, args.girth, args.variant.upper(), relaxed=args.relaxed)
    bundle = (
        f"{BUNDLE_HEADER} {gf.variant} {gf.girth_param} "
        f"{1 if args.relaxed else 0}\n" + emit_instance(inst)
    )
    _write(args.out, bundle)
    if args.graph_out:
        _write(args.graph_out, emit_graph(gf.graph))
    if args.roles_out:
        lines = [f"{vid} {role}" for vid, role in sorted(gf.roles.items())]
        _write(args.roles_out, "\n".join(lines) + "\n")
    print(
        f"{gf.variant}: {gf.graph.n} vertices, {gf.graph.m} edges, "
        f"girth parameter {gf.girth_param}",
        file=sys.stderr,
    )
    return 0


def _parse_bundle(text: str):
    head, _, rest = text.partition("\n")
    parts = head.split()
    if len(parts) != 4 or parts[0] != BUNDLE_HEADER:
        raise ParseError("bundle must start with 'gfbundle VARIANT GIRTH RELAXED'", 1)
    inst = parse_instance(rest)
    return inst, parts[1], int(parts[2]), parts[3] == "1"


def _cmd_synth(args) -> int:
    inst, variant, g, relaxed = _parse_bundle(_read(args.bundle))
    gf = build_gf(inst, g, variant, relaxed=relaxed)
    bits = [b.strip() for b in args.assign.split(",")]
    variables = sorted(inst.variables())
    if len(bits) != len(variables) or any(b not in ("0", "1") for b in bits):
        raise SystemExit(
            f"--assign needs {len(variables)} comma-separated 0/1 values"
        )
    assignment: Dict[int, bool] = {
        v: b == "1" for v, b in zip(variables, bits)
    }
    rep = synth_representation(gf, assignment)
    _write(args.out, emit_rep(rep))
    return 0


def _cmd_treegen(args) -> int:
    _write(args.out, emit_graph(gen_tree(args.n)))
    return 0


def _cmd_svg(args) -> int:
    rep = parse_rep(_read(args.rep))
    roles = None
    if args.roles:
        roles = {}
        for line in _read(args.roles).splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            vid, role = line.split()
            roles[int(vid)] = role
    scale = parse_rational(args.scale) if args.scale else DEFAULT_SCALE
    _write(args.out, render_svg(rep, roles, scale))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridlab", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"gridlab {__version__}")
    p.add_argument(
        "--seed", type=int, default=None, help="seed the process RNG"
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("extract", help="intersection graph of a representation")
    q.add_argument("rep")
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_extract)

    q = sub.add_parser("verify", help="check a representation against a graph")
    q.add_argument("rep")
    q.add_argument("graph")
    q.set_defaults(fn=_cmd_verify)

    q = sub.add_parser("canon", help="canonicalize a unit representation")
    q.add_argument("rep")
    q.add_argument("--check", action="store_true", help="report violations only")
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_canon)

    q = sub.add_parser("recognize", help="exact recognition search")
    q.add_argument("graph")
    q.add_argument(
        "--class", dest="klass", choices=("ugig", "gig"), default="ugig"
    )
    q.add_argument("--budget-nodes", type=int, default=None)
    q.add_argument("--budget-seconds", type=float, default=None)
    q.add_argument("--emit", default=None, help="write an accepted representation")
    q.set_defaults(fn=_cmd_recognize)

    q = sub.add_parser("bound", help="minimum boundary semiperimeter")
    q.add_argument("graph")
    q.add_argument("--cap", required=True, help="rational upper bound to search under")
    q.add_argument("--budget-nodes", type=int, default=None)
    q.add_argument("--budget-seconds", type=float, default=None)
    q.add_argument("--emit", default=None)
    q.set_defaults(fn=_cmd_bound)

    q = sub.add_parser("reduce", help="build a reduction bundle from a formula")
    q.add_argument("cnf")
    q.add_argument(
        "--variant", choices=("ugig5", "gig4", "string8"), default="ugig5"
    )
    q.add_argument("--girth", type=int, required=True)
    q.add_argument("--relaxed", action="store_true",
                   help="accept variables with fewer than 3 occurrences")
    q.add_argument("--out", default=None)
    q.add_argument("--graph-out", default=None)
    q.add_argument("--roles-out", default=None)
    q.set_defaults(fn=_cmd_reduce)

    q = sub.add_parser("synth", help="representation for a satisfying assignment")
    q.add_argument("bundle")
    q.add_argument("--assign", required=True,
                   help="comma-separated 0/1 per variable, ascending")
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_synth)

    q = sub.add_parser("treegen", help="n-th tree of the lower-bound family")
    q.add_argument("n", type=int)
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_treegen)

    q = sub.add_parser("svg", help="render a representation as SVG")
    q.add_argument("rep")
    q.add_argument("--roles", default=None, help="role file: 'vid role' per line")
    q.add_argument("--scale", default=None, help="units per coordinate (rational)")
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_svg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.fn(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
