"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 guard
refusal, 4 fixture mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import census as census_mod
from .errors import GuardError, UsageError, ValidationError
from .fixtures import E32_333_CLASS_COUNT, EQUIVALENCE_CLASS_COUNTS
from .graphs import adjacency, canonical_form, cycle_indices, is_isomorphic, to_dot
from .mealy import branching, build_machine, signature
from .perms import direct_sum, endo_formula
from .sigma_io import dumps_sigma_json, dumps_sigma_text, load_sigma
from .words import format_letters, parse_word

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_GUARD, EXIT_MISMATCH = range(5)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def cmd_branch(args, out) -> int:
    sigma = load_sigma(args.sigma)
    machine = build_machine(sigma)
    for text in args.input:
        law = branching(machine, parse_word(text, sigma.N))
        line = str(law)
        if law.periodic_input:
            line += "  [periodic input]"
        print(line, file=out)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    sigma = load_sigma(args.sigma)
    A = adjacency(sigma)
    print(f"N={sigma.N} l={sigma.l}", file=out)
    print("A_sigma:", file=out)
    for row in A.rows:
        print("  " + " ".join(str(x) for x in row), file=out)
    print(f"diagonal signature: {_fmt(A.diagonal_signature())}", file=out)
    for k, c in enumerate(cycle_indices(A, args.max_k), 1):
        print(f"c{k} = {c}", file=out)
    return EXIT_OK


def cmd_graph(args, out) -> int:
    sigma = load_sigma(args.sigma)
    if args.format == "json":
        print(adjacency(sigma).to_json(sigma.N), file=out)
    elif args.matrix:
        out.write(to_dot(adjacency(sigma)))
    else:
        out.write(to_dot(build_machine(sigma)))
    return EXIT_OK


def cmd_endo(args, out) -> int:
    sigma = load_sigma(args.sigma)
    print(str(endo_formula(sigma)), file=out)
    return EXIT_OK


def cmd_sum(args, out) -> int:
    parts = [load_sigma(p) for p in args.sigma]
    tau = direct_sum(parts)
    out.write(dumps_sigma_json(tau) + "\n" if args.format == "json" else dumps_sigma_text(tau))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    if len(args.sigma) != 2:
        raise UsageError("classify needs exactly two --sigma files")
    s1, s2 = (load_sigma(p) for p in args.sigma)
    if s1.N != s2.N:
        raise UsageError(f"cannot compare endomorphisms of O_{s1.N} and O_{s2.N}")
    A1, A2 = adjacency(s1), adjacency(s2)
    c1, c2 = cycle_indices(A1), cycle_indices(A2)
    if s1.l == s2.l:
        same_graph, _ = is_isomorphic(A1, A2)
        if not same_graph:
            p = 2 if c1[:2] != c2[:2] else 4
            names = ",".join(f"c{k}" for k in range(1, p + 1))
            print(f"INEQUIVALENT: graphs differ, ({names})={_fmt(c1[:p])} vs {_fmt(c2[:p])}", file=out)
            return EXIT_OK
    elif c1 != c2:
        print(f"INEQUIVALENT: cycle indices differ, (c1,c2,c3,c4)={_fmt(c1)} vs {_fmt(c2)}", file=out)
        return EXIT_OK
    sig1, sig2 = signature(s1, args.depth), signature(s2, args.depth)
    key = sig1.first_difference(sig2)
    if key is not None:
        w = format_letters(key, s1.N)
        l1, l2 = branching(s1, key), branching(s2, key)
        print(f"INEQUIVALENT: branching laws differ at P({w})", file=out)
        print(f"  first:  {l1}", file=out)
        print(f"  second: {l2}", file=out)
        return EXIT_OK
    print(f"UNDECIDED: same graph class and branching laws agree up to depth {args.depth}", file=out)
    print("  (these are necessary conditions for equivalence only)", file=out)
    return EXIT_OK


def cmd_census(args, out) -> int:
    table = census_mod.run_census(args.N, args.l, jobs=args.jobs)
    status = EXIT_OK
    if args.out:
        fmt = args.format or "csv"
        text = {"csv": census_mod.table_to_csv, "json": census_mod.table_to_json,
                "text": lambda t: census_mod.format_table(t) + "\n"}[fmt](table)
        Path(args.out).write_text(text)
    elif args.format in ("csv", "json"):
        out.write(census_mod.table_to_csv(table) if args.format == "csv" else census_mod.table_to_json(table))
    else:
        print(census_mod.format_table(table), file=out)

    if args.fixture_check:
        report = census_mod.verify_against_fixture(table)
        if report is None:
            print(f"no reference table for (N, l) = ({args.N}, {args.l}); fixture check skipped", file=out)
        else:
            for line in report.lines():
                print(line, file=out)
            if not report.ok:
                status = EXIT_MISMATCH
    if args.completeness:
        for line in census_mod.completeness_check(table).lines():
            print(line, file=out)
    if args.signatures:
        graph_class = table.row_by_label(args.class_label).graph_class.canonical if args.class_label else None
        part = census_mod.partition_by_signature(args.N, args.l, args.depth, graph_class=graph_class,
                                                 force=args.force)
        scope = f"class {args.class_label}" if args.class_label else "all tables"
        print(f"signature blocks at depth {args.depth} ({scope}, {part.total} tables): {len(part.blocks)}", file=out)
        known = None
        if args.class_label is None:
            known = EQUIVALENCE_CLASS_COUNTS.get((args.N, args.l))
        elif (args.N, args.l, args.class_label) == (3, 2, "(3,3,3)"):
            known = E32_333_CLASS_COUNT
        if known is not None:
            print(f"known number of equivalence classes: {known}", file=out)
            if len(part.blocks) > known:
                status = EXIT_MISMATCH
    return status


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pesect", description="Branching laws and sector invariants of permutative endomorphisms")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    b = sub.add_parser("branch", help="branching law of P(J) for each --input J")
    b.add_argument("--sigma", required=True)
    b.add_argument("--input", required=True, action="append")
    b.set_defaults(func=cmd_branch)

    inv = sub.add_parser("invariants", help="adjacency matrix and cycle indices")
    inv.add_argument("--sigma", required=True)
    inv.add_argument("--max-k", type=int, default=4)
    inv.set_defaults(func=cmd_invariants)

    g = sub.add_parser("graph", help="Mealy diagram as DOT, or the adjacency matrix as JSON")
    g.add_argument("--sigma", required=True)
    g.add_argument("--format", choices=["dot", "json"], default="dot")
    g.add_argument("--matrix", action="store_true", help="DOT of the unlabeled multigraph")
    g.set_defaults(func=cmd_graph)

    e = sub.add_parser("endo", help="psi_sigma(s_i) as sums of s_{J,K}")
    e.add_argument("--sigma", required=True)
    e.set_defaults(func=cmd_endo)

    s = sub.add_parser("sum", help="table of the sector sum of N endomorphisms")
    s.add_argument("--sigma", required=True, nargs="+", action="extend")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_sum)

    c = sub.add_parser("classify", help="compare two endomorphisms")
    c.add_argument("--sigma", required=True, action="append")
    c.add_argument("--depth", type=int, default=3)
    c.set_defaults(func=cmd_classify)

    cen = sub.add_parser("census", help="classify all of S_{N,l}")
    cen.add_argument("--N", type=int, required=True)
    cen.add_argument("--l", type=int, required=True)
    cen.add_argument("--jobs", type=int, default=1)
    cen.add_argument("--fixture-check", action="store_true")
    cen.add_argument("--completeness", action="store_true")
    cen.add_argument("--signatures", action="store_true")
    cen.add_argument("--depth", type=int, default=None)
    cen.add_argument("--class", dest="class_label", default=None,
                     help="restrict --signatures to one graph class, by reference label e.g. '(3,3,3)'")
    cen.add_argument("--force", action="store_true", help="lift the signature-partition work guard")
    cen.add_argument("--out")
    cen.add_argument("--format", choices=["csv", "json", "text"], default=None)
    cen.set_defaults(func=cmd_census)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if args.command == "census" and args.signatures and args.depth is None:
            args.depth = 4 if (args.N, args.l) == (2, 2) else 3
        return args.func(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except GuardError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
