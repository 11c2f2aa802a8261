"""Command line interface: ``knotgraph <command> [flags]``.

Exit codes: 0 success, 1 a requested check failed, 2 usage or input error,
3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import GraphSyntaxError, GraphValidationError, ResourceGuardError, UnsupportedBackboneError
from .graph import BACKBONES, PARITIES, SIGN_CONVENTIONS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_SEED = 20240


def conventions_hash():
    blob = json.dumps(SIGN_CONVENTIONS, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _meta():
    return {"version": __version__, "sign_conventions": conventions_hash()}


def _emit(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read(path):
    return sys.stdin.read() if path == "-" else Path(path).read_text()


# -- commands -----------------------------------------------------------------


def cmd_basis(args):
    from .cohomology import basis
    from .io import serialize

    b = basis(args.backbone, args.parity, args.k, args.m)
    if args.json:
        _emit(_json({**_meta(), "backbone": b.backbone, "parity": b.parity, "k": b.k, "m": b.m,
                     "size": len(b), "graphs": [serialize(g) for g in b]}), args.output)
    else:
        text = f"# {b.backbone} {b.parity} k={b.k} m={b.m}: {len(b)} graphs\n"
        text += "".join(f"graph b{i + 1}\n{serialize(g)}end\n" for i, g in enumerate(b))
        _emit(text, args.output)
    return EXIT_OK


def cmd_delta(args):
    from .complex import Chain, delta_any
    from .io import parse_chain, serialize_chain

    c = parse_chain(_read(args.input))
    if not isinstance(c, Chain):
        raise GraphSyntaxError(1, 1, "delta expects a chain, not a tensor chain")
    image = delta_any(c)
    _emit(serialize_chain(image), args.output)
    if args.check_square:
        square = delta_any(image)
        if square:
            sys.stderr.write(f"delta_squared failed; witness:\n{serialize_chain(square)}")
            return EXIT_FAIL
    return EXIT_OK


def cmd_product(args):
    from .algebra import shuffle_product
    from .io import parse_chain, serialize_chain

    out = parse_chain(_read(args.inputs[0]))
    for path in args.inputs[1:]:
        out = shuffle_product(out, parse_chain(_read(path)))
    _emit(serialize_chain(out), args.output)
    return EXIT_OK


def cmd_coproduct(args):
    from . import axioms
    from .algebra import coproduct
    from .io import parse_chain, serialize_chain

    if args.input:
        _emit(serialize_chain(coproduct(parse_chain(_read(args.input)))), args.output)
    if args.verify_hopf:
        results = axioms.check_hopf(args.kmax)
        report = {**_meta(), "kmax": args.kmax, "axioms": [r.as_dict() for r in results]}
        _emit(_json(report), args.report)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if not args.input:
        raise GraphSyntaxError(0, 0, "coproduct needs --input or --verify-hopf")
    return EXIT_OK


def cmd_antipode(args):
    from .algebra import antipode
    from .io import parse_chain, serialize_chain

    _emit(serialize_chain(antipode(parse_chain(_read(args.input)))), args.output)
    return EXIT_OK


def cmd_cohomology_table(args):
    from .cohomology import basis, cohomology_dim, delta_matrix

    rows = []
    for k in range(args.kmax + 1):
        for m in range(args.mmax + 1):
            rows.append({"k": k, "m": m, "basis": len(basis(args.backbone, args.parity, k, m)),
                         "dim": cohomology_dim(args.backbone, args.parity, k, m)})
            if args.emit_matrix:
                d = Path(args.emit_matrix)
                d.mkdir(parents=True, exist_ok=True)
                M = delta_matrix(basis(args.backbone, args.parity, k, m),
                                 basis(args.backbone, args.parity, k, m + 1))
                (d / f"delta_{args.backbone}_{args.parity}_k{k}_m{m}.txt").write_text(M.to_triplets())
    tsv = "k\tm\tbasis\tdim\n" + "".join(f"{r['k']}\t{r['m']}\t{r['basis']}\t{r['dim']}\n" for r in rows)
    report = {**_meta(), "backbone": args.backbone, "parity": args.parity, "table": rows}
    if args.tsv:
        Path(args.tsv).write_text(tsv)
    if args.json:
        Path(args.json).write_text(_json(report))
    if not args.tsv and not args.json:
        sys.stdout.write(tsv)
    return EXIT_OK


def cmd_prop4(args):
    from .cocycles import prop4_report, psi_power
    from .errors import NontrivialityError
    from .io import serialize_chain

    try:
        report = {**_meta(), **prop4_report(args.lmax)}
    except NontrivialityError as exc:
        sys.stderr.write(f"nontriviality violated: {exc}\n")
        return EXIT_FAIL
    if args.json:
        _emit(_json(report), args.output)
    else:
        lines = [f"l={r['l']} closed={r['closed']} coefficient={r['gamma_coefficient']}"
                 + (f" contributions={r['contributing_shuffles']} placements={r['contributing_placements']}"
                    if "contributing_shuffles" in r else "")
                 for r in report["rows"]]
        _emit("\n".join(lines) + "\n", args.output)
    if args.dump_chain:
        Path(args.dump_chain).write_text(serialize_chain(psi_power(args.lmax)))
    return EXIT_OK


def cmd_verify_axioms(args):
    from . import axioms

    results = axioms.run_all(args.kmax, seed=args.seed, samples=args.samples)
    report = {**_meta(), "kmax": args.kmax, "seed": args.seed,
              "axioms": [r.as_dict() for r in results]}
    _emit(_json(report), args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_export_dot(args):
    from .graph import canonicalize
    from .io import parse_graph, to_dot

    sg = canonicalize(parse_graph(_read(args.input)))
    if sg.is_zero:
        sys.stderr.write("the graph is zero in its complex\n")
        return EXIT_FAIL
    _emit(to_dot(sg.graph), args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="knotgraph", description=__doc__.splitlines()[0], allow_abbrev=False
    )
    p.add_argument("--version", action="version", version=f"knotgraph {__version__}")
    p.add_argument("--max-raw-graphs", type=int, help="resource guard on basis enumeration")
    p.add_argument("--max-matrix-dim", type=int, help="resource guard on matrix size")
    sub = p.add_subparsers(dest="command", required=True)

    def complex_flags(sp):
        sp.add_argument("--backbone", choices=BACKBONES, required=True)
        sp.add_argument("--parity", choices=PARITIES, required=True)

    sp = sub.add_parser("basis", help="list the basis graphs of one bidegree")
    complex_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("delta", help="apply the coboundary to a chain file")
    sp.add_argument("--input", required=True)
    sp.add_argument("-o", "--output")
    sp.add_argument("--check-square", action="store_true")
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("product", help="shuffle product of chain files")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("coproduct", help="coproduct of a line chain file")
    sp.add_argument("--input")
    sp.add_argument("-o", "--output")
    sp.add_argument("--verify-hopf", action="store_true")
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_coproduct)

    sp = sub.add_parser("antipode", help="antipode of a line chain file")
    sp.add_argument("--input", required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_antipode)

    sp = sub.add_parser("cohomology-table", help="cohomology dimensions over Q")
    complex_flags(sp)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--tsv")
    sp.add_argument("--json")
    sp.add_argument("--emit-matrix", metavar="DIR")
    sp.set_defaults(func=cmd_cohomology_table)

    sp = sub.add_parser("prop4", help="closedness and nontriviality of the powers of Ψ")
    sp.add_argument("--lmax", type=int, default=2)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--dump-chain")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_prop4)

    sp = sub.add_parser("verify-axioms", help="run the full axiom battery")
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_verify_axioms)

    sp = sub.add_parser("export-dot", help="Graphviz rendering of a graph file")
    sp.add_argument("--input", required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export_dot)
    return p


def _validate(args, parser):
    for name in ("k", "m", "kmax", "mmax", "lmax"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            parser.error(f"--{name} must be non-negative")
    if getattr(args, "lmax", 1) is not None and args.command == "prop4" and args.lmax < 1:
        parser.error("--lmax must be at least 1")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    saved = dict(os.environ)
    if args.max_raw_graphs:
        os.environ["KNOTGRAPH_MAX_RAW_GRAPHS"] = str(args.max_raw_graphs)
    if args.max_matrix_dim:
        os.environ["KNOTGRAPH_MAX_MATRIX_DIM"] = str(args.max_matrix_dim)
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return EXIT_GUARD
    except (GraphSyntaxError, GraphValidationError, UnsupportedBackboneError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    finally:
        os.environ.clear()
        os.environ.update(saved)


if __name__ == "__main__":
    sys.exit(main())
