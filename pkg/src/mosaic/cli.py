"""Command-line front end.

Exit codes: 0 on success, 2 when a displayed cross-check disagrees or a
verification fails, 64 for usage errors (bad flags, out-of-range
arguments).  All output is deterministic for fixed flags.
"""

import argparse
import json
import sys
from math import factorial

from . import acceptance, moduli, quasibraid
from .errors import MosaicError, RangeError
from .moduli import DOUBLE_COVER, PROJECTIVE
from .polygon import cayley_count, enumerate_diagonal_sets

USAGE = 64
MISMATCH = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _label_set(text):
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated label list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty label set")
    return frozenset(values)


def build_parser():
    parser = _Parser(prog="mosaic",
                     description="tessellations of labeled-polygon moduli")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("counts", help="cell counts and Euler characteristics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--enumerate", action="store_true",
                   help="force full enumeration (n <= 8)")
    _format_flags(p, ("table", "json"))
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("complex", help="emit one cell complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=(PROJECTIVE, DOUBLE_COVER), default=PROJECTIVE)
    _format_flags(p, ("table", "json", "dot"))
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("divisor", help="check a divisor against its product model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", type=_label_set, required=True, dest="subset")
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("quasibraid", help="generators, relations, phi, export")
    p.add_argument("action", choices=("gens", "relations", "phi", "export"))
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_quasibraid)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--n-max", type=int, default=6, dest="n_max")
    p.set_defaults(func=cmd_verify)
    return parser


def _format_flags(p, choices):
    p.add_argument("--format", choices=choices, default="table")
    for name in choices:
        p.add_argument(f"--{name}", action="store_const", const=name,
                       dest="format", help=f"shorthand for --format {name}")


# ---------------------------------------------------------------------------
# counts


def cmd_counts(args):
    n = args.n
    if not 3 <= n <= 10:
        raise RangeError(f"counts supports 3 <= n <= 10, got {n}")
    if args.enumerate and n > 8:
        raise RangeError(f"full enumeration supports n <= 8, got {n}")
    built = {}
    if n <= 8:
        built[PROJECTIVE] = moduli.build_complex(n, PROJECTIVE)
        built[DOUBLE_COVER] = moduli.build_complex(n, DOUBLE_COVER)

    ks = range(n - 2) if args.k is None else (args.k,)
    if args.k is not None and not 0 <= args.k <= n - 3:
        raise RangeError(f"need 0 <= k <= {n - 3}, got {args.k}")
    proj_formula = moduli.closed_form_f_vector(n, PROJECTIVE)
    cover_formula = moduli.closed_form_f_vector(n, DOUBLE_COVER)
    mismatches = []

    rows = []
    for k in ks:
        counted = len(enumerate_diagonal_sets(n, k))
        row = {"k": k, "diagonal_sets": cayley_count(n, k),
               "diagonal_sets_counted": counted,
               "projective_cells": proj_formula[k],
               "double_cover_cells": cover_formula[k]}
        if counted != cayley_count(n, k):
            mismatches.append(f"diagonal sets at k={k}")
        if built:
            row["projective_cells_built"] = len(built[PROJECTIVE].cells_at(k))
            row["double_cover_cells_built"] = len(built[DOUBLE_COVER].cells_at(k))
            if row["projective_cells_built"] != proj_formula[k]:
                mismatches.append(f"projective cells at k={k}")
            if row["double_cover_cells_built"] != cover_formula[k]:
                mismatches.append(f"double cover cells at k={k}")
        rows.append(row)

    euler = {"proof_sum": moduli.euler_proof_sum(n),
             "closed_form": moduli.euler_closed_form(n)} if n >= 4 else {}
    if built and n >= 4:
        euler["enumerated"] = built[PROJECTIVE].euler_characteristic()
    if euler and len(set(euler.values())) != 1:
        mismatches.append("Euler characteristic")

    if args.format == "json":
        payload = {"n": n, "rows": rows, "euler": euler,
                   "tiles": {"projective": factorial(n - 1) // 2,
                             "double-cover": factorial(n - 1)},
                   "agree": not mismatches}
        print(json.dumps(payload, sort_keys=True))
    else:
        header = f"{'k':>2} {'sets':>8} {'counted':>8} {'proj':>10} {'double':>10}"
        if built:
            header += f" {'proj built':>10} {'dbl built':>10}"
        print(f"n = {n}")
        print(header)
        for row in rows:
            line = (f"{row['k']:>2} {row['diagonal_sets']:>8} "
                    f"{row['diagonal_sets_counted']:>8} "
                    f"{row['projective_cells']:>10} {row['double_cover_cells']:>10}")
            if built:
                line += (f" {row['projective_cells_built']:>10} "
                         f"{row['double_cover_cells_built']:>10}")
            print(line)
        for name, value in euler.items():
            print(f"euler {name}: {value}")
    if mismatches:
        print("MISMATCH: " + "; ".join(mismatches), file=sys.stderr)
        return MISMATCH
    return 0


# ---------------------------------------------------------------------------
# complex


def complex_payload(complex_):
    cells = [{"id": cell.index, "codim": cell.codim,
              "representative": {"labels": list(cell.labels),
                                 "diagonals": [list(d) for d in cell.diagonals]}}
             for cell in complex_.cells]
    boundary = sorted({(p, c) for p, c, _ in complex_.boundary_pairs()})
    return {"n": complex_.n, "mode": complex_.mode, "cells": cells,
            "boundary": [list(pair) for pair in boundary],
            "tiles": [cell.index for cell in complex_.tiles()]}


def render_dot(complex_):
    graph = complex_.tile_adjacency()
    name = f"tiles_n{complex_.n}_{complex_.mode.replace('-', '_')}"
    lines = [f"graph {name} {{"]
    by_index = {cell.index: cell for cell in complex_.tiles()}
    for gid in graph.tiles:
        label = " ".join(str(x) for x in by_index[gid].labels)
        lines.append(f'  t{gid} [label="{label}"];')
    for u, v, facet in graph.edges:
        lines.append(f"  t{u} -- t{v};  // facet {facet}")
    lines.append("}")
    return "\n".join(lines)


def cmd_complex(args):
    complex_ = moduli.build_complex(args.n, args.mode)
    if args.format == "json":
        print(json.dumps(complex_payload(complex_), sort_keys=True))
    elif args.format == "dot":
        print(render_dot(complex_))
    else:
        f = complex_.f_vector()
        print(f"n = {complex_.n}, mode = {complex_.mode}")
        print(f"cells by codim: {f} (total {sum(f)})")
        print(f"tiles: {len(complex_.tiles())}")
        if complex_.n >= 4:
            print(f"euler: {complex_.euler_characteristic()}")
    return 0


# ---------------------------------------------------------------------------
# divisor


def cmd_divisor(args):
    complex_ = moduli.build_complex(args.n, PROJECTIVE)
    report = moduli.verify_divisor_factorization(complex_, args.subset)
    m1, m2 = report.factor_sizes
    print(f"divisor {sorted(report.subset)} of the {report.n}-gon complex")
    print(f"factors: {m1}-gon x {m2}-gon")
    top = report.sub_f_vector[0] if report.sub_f_vector else 0
    print(f"cells by codim: {report.sub_f_vector} ({top} top cells)")
    print(f"cells checked: {report.cells_checked}, "
          f"incidences checked: {report.incidences_checked}")
    if report.passed:
        print("PASS: subcomplex is isomorphic to the product")
        return 0
    for failure in report.failures:
        print(f"FAIL: {failure}")
    return MISMATCH


# ---------------------------------------------------------------------------
# quasibraid


def cmd_quasibraid(args):
    n = args.n
    if not 4 <= n <= 9:
        raise RangeError(f"quasibraid commands support 4 <= n <= 9, got {n}")
    if args.action == "gens":
        for t, g in enumerate(quasibraid.generators(n)):
            free = " ".join(str(x) for x in g.free_part)
            print(f"g{t + 1}: diagonal {g.diagonal} free part ({free})")
        return 0
    if args.action == "relations":
        gens = quasibraid.generators(n)
        names = {g: f"g{t + 1}" for t, g in enumerate(gens)}
        for rel in quasibraid.relations(n):
            left = " ".join(names[g] for g in rel.left)
            right = " ".join(names[g] for g in rel.right) or "1"
            print(f"{rel.kind}: {left} = {right}")
        return 0
    if args.action == "phi":
        report = quasibraid.check_phi(n)
        print(report)
        for failure in report.failures:
            print(f"FAIL: {failure}")
        return 0 if report.passed else MISMATCH
    sys.stdout.write(quasibraid.export_presentation(n))
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args):
    if args.n_max > 8:
        raise RangeError(f"verify supports --n-max <= 8, got {args.n_max}")
    results = acceptance.run_all(args.n_max, emit=print)
    return 0 if all(r.passed for r in results) else MISMATCH


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MosaicError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
