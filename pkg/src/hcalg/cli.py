"""Command line front end: ``hcalg <subcommand> [options]``.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on a
usage error (bad flags, a lambda that is not strict or not in the right row).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import __version__
from .bratteli import paths_to
from .clifford_module import EVEN, ODD, build_graph_cached, build_module
from .core_arith import default_tolerance
from .shifted_combinatorics import StrictPartition, multiplicity, parse_partition, stembridge_details

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ALGEBRAS = ("H_ev", "H_od", "extragenerators")
ORACLE_CHECKS = ("sergeev", "casimir", "specialize", "quotient", "spectrum", "kappa", "all")


class UsageError(Exception):
    pass


# -- parameter handling ---------------------------------------------------------

def _partition(text: str) -> StrictPartition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid partition {text!r}: {exc}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _tolerance(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _lambda_in_row(n: int, p: int, d: int, lam: Optional[StrictPartition]) -> StrictPartition:
    if lam is None:
        raise UsageError("--lambda is required")
    row = build_graph_cached(n, p, d).row(d)
    if lam not in row:
        raise UsageError(f"lambda {lam} is not in row {d} of the graph for n={n}, p={p}; "
                         f"row {d} is {', '.join(map(repr, row))}")
    return lam


def _variant(args) -> str:
    if args.variant:
        return args.variant
    return EVEN if args.n % 2 == 0 else ODD


# -- output ---------------------------------------------------------------------

def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        body = json.dumps({"hcalg_version": __version__, **payload}, indent=2, sort_keys=True)
    else:
        body = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        sys.stdout.write(body + "\n")


def _reports_payload(reports) -> dict:
    return {"passed": all(r.passed for r in reports), "reports": [r.to_json() for r in reports]}


def _reports_text(reports) -> str:
    return "\n".join(r.text() for r in reports)


# -- subcommands ----------------------------------------------------------------

def cmd_bratteli(args) -> int:
    g = build_graph_cached(args.n, args.p, args.d)
    lines = [f"Bratteli graph n={g.n} p={g.p} d={g.d}",
             "row sizes: " + ", ".join(str(len(g.row(i))) for i in range(0, g.d + 1))]
    for i in range(-1, g.d + 1):
        lines.append(f"row {i}: " + " ".join(repr(v) for v in g.row(i)))
    # edge_list entries are (target row, source index, target index)
    for row, a, b in g.edge_list():
        if row >= 1:
            lines.append(f"edge {g.row(row - 1)[a]!r} -> {g.row(row)[b]!r}")
    _emit(args, "\n".join(lines), {"graph": g.to_json()})
    return EXIT_OK


def cmd_paths(args) -> int:
    g = build_graph_cached(args.n, args.p, args.d)
    lam = _lambda_in_row(args.n, args.p, args.d, args.lam)
    paths = paths_to(g, lam)
    lines = [f"{len(paths)} paths to {lam!r}"]
    lines += [f"{k}: {T}    tableau {T.tableau}" for k, T in enumerate(paths)]
    _emit(args, "\n".join(lines), {
        "lambda": list(lam),
        "paths": [[list(v) for v in T.vertices] for T in paths],
        "tableaux": [T.tableau.rows() for T in paths],
    })
    return EXIT_OK


def cmd_module(args) -> int:
    g = build_graph_cached(args.n, args.p, args.d)
    lam = _lambda_in_row(args.n, args.p, args.d, args.lam)
    rep = build_module(g, lam, _variant(args))
    lines = [f"module {rep.variant}^{lam!r} n={rep.n} p={rep.p} d={rep.d}: dim {rep.dim}, {len(rep.paths)} paths",
             "generators: " + " ".join(sorted(rep.generators))]
    lines += [f"  {k}: {lab} (parity {int(par)})" for k, (lab, par) in enumerate(zip(rep.basis_labels(), rep.parity))]
    _emit(args, "\n".join(lines), {"module": rep.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    from .relation_verifier import (
        calibrated_spectrum_check,
        commutant_dimension,
        intertwiner_check,
        relation_set,
        tilde_relation_report,
        verify_extragenerators,
        verify_relations,
        VerificationReport,
    )

    g = build_graph_cached(args.n, args.p, args.d)
    lam = _lambda_in_row(args.n, args.p, args.d, args.lam)
    variant = _variant(args)
    algebra = args.algebra or ("H_ev" if variant == EVEN else "H_od")
    if algebra == "H_od" and variant != ODD:
        raise UsageError("H_od acts on the odd variant E; pass --variant E")
    rep = build_module(g, lam, variant)
    tol = args.tolerance
    reports = []
    if algebra == "extragenerators":
        reports.append(verify_extragenerators(rep, tol))
        reports.append(tilde_relation_report(rep, tol))
    else:
        reports.append(verify_relations(rep, relation_set(algebra, args.d, args.n, args.p), tol))
    even, odd = commutant_dimension(rep)
    want = (1, 0) if variant == EVEN else (1, 1)
    comm = VerificationReport("commutant dimension", None, info={"even": even, "odd": odd})
    comm.add(f"(even, odd) = {want}", 0 if (even, odd) == want else 1, (even, odd) == want)
    reports.append(comm)
    spec = VerificationReport("calibrated spectrum", tol)
    ok = calibrated_spectrum_check(rep, g, lam, tol)
    spec.add("z_i diagonal with eigenvalues +-kappa_T(i)", 0 if ok else 1, ok)
    reports.append(spec)
    for i in range(1, args.d):
        reports.append(intertwiner_check(rep, i, tol))
    _emit(args, _reports_text(reports), _reports_payload(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_oracle(args) -> int:
    from . import qn_oracle as qo
    from .relation_verifier import VerificationReport, relation_set

    checks = ORACLE_CHECKS[:-1] if args.check == "all" else (args.check,)
    reports = []
    for c in checks:
        if c == "sergeev":
            rep = qo.sergeev_rep(args.n, args.d)
            reports.append(qo.verify_exact(rep, relation_set("Sergeev", args.d)))
            reports.append(qo.supercommutation_report(rep))
        elif c == "casimir":
            reports.append(qo.casimir_identity_report(args.n))
        elif c == "specialize":
            reports.append(qo.specialize_report(args.n, args.d))
        elif c == "quotient":
            reports.append(qo.quotient_relation_report(args.n, args.p, args.d))
        elif c == "kappa":
            reports.append(qo.kappa_minimal_polynomial_report(args.n, args.p))
        elif c == "spectrum":
            r = VerificationReport(f"isotypic spectra n={args.n} p={args.p} d=1", 1e-8)
            for comp in qo.isotypic_spectra(args.n, args.p, 1):
                r.add(f"L{tuple(comp.lam)}: hw dim {comp.hw_dim}, pair multiplicity {comp.multiplicity}",
                      0 if comp.passed else 1, comp.passed)
            reports.append(r)
    _emit(args, _reports_text(reports), _reports_payload(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_identities(args) -> int:
    from .identity_checker import kappa_report, listing_suite_builders, run_all, run_suite

    if args.suite == "all":
        reports = run_all()
    elif args.suite == "kappa":
        reports = [kappa_report(perturb=args.perturb)]
    else:
        builders = dict(listing_suite_builders())
        if args.suite not in builders:
            raise UsageError(f"unknown suite {args.suite!r}; known: all, kappa, " + ", ".join(builders))
        reports = [run_suite(builders[args.suite]())]
    _emit(args, _reports_text(reports), _reports_payload(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_stembridge(args) -> int:
    if args.lam is None or args.mu is None or args.gamma is None:
        raise UsageError("stembridge needs --lambda, --mu and --gamma")
    res = stembridge_details(args.lam, args.mu, args.gamma)
    mult = multiplicity(args.lam, args.mu, args.gamma)
    lines = [f"f^{args.gamma!r}_{args.lam!r},{args.mu!r} = {res.coefficient}",
             f"multiplicity of L{args.gamma!r} in L{args.lam!r} x L{args.mu!r} = {mult}",
             f"{len(res.candidates)} semistandard fillings of content {args.mu!r}"]
    lines += [f"  witness: {T}   reading word {' '.join(map(str, T.reading_word()))}" for T in res.survivors]
    _emit(args, "\n".join(lines), {
        "lambda": list(args.lam), "mu": list(args.mu), "gamma": list(args.gamma),
        "coefficient": res.coefficient, "multiplicity": mult,
        "candidates": [T.rows() for T in res.candidates],
        "witnesses": [T.rows() for T in res.survivors],
    })
    return EXIT_OK


def cmd_report(args) -> int:
    from .acceptance import run_all

    which = None
    if args.criteria:
        try:
            which = [int(x) for x in args.criteria.split(",")]
        except ValueError:
            raise UsageError("--criteria takes comma-separated integers")
        if any(k < 1 or k > 10 for k in which):
            raise UsageError("criteria are numbered 1..10")
    results = run_all(which)
    text = "\n".join(r.line() for r in results)
    text += f"\n{sum(r.passed for r in results)}/{len(results)} criteria pass"
    _emit(args, text, {"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--tolerance", type=_tolerance, default=None,
                        help="numerical tolerance (default from HCALG_TOLERANCE or 1e-9)")

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument("--n", type=_positive, required=True)
    shape.add_argument("--p", type=_positive, default=1)
    shape.add_argument("--d", type=_positive, default=1)

    parser = argparse.ArgumentParser(prog="hcalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bratteli", parents=[common, shape], help="rows and edges of the Bratteli graph")
    s.set_defaults(func=cmd_bratteli)

    s = sub.add_parser("paths", parents=[common, shape], help="paths to a vertex of the last row")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.set_defaults(func=cmd_paths)

    s = sub.add_parser("module", parents=[common, shape], help="build D or E and export its matrices")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--variant", choices=(EVEN, ODD))
    s.set_defaults(func=cmd_module)

    s = sub.add_parser("verify", parents=[common, shape], help="relations, commutant, spectrum, intertwiners")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--variant", choices=(EVEN, ODD))
    s.add_argument("--algebra", choices=ALGEBRAS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common, shape], help="exact checks on tensor space")
    s.add_argument("--check", choices=ORACLE_CHECKS, default="all")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("identities", parents=[common], help="exact quotient-ring identity suites")
    s.add_argument("--suite", default="all", help="all, kappa, or a listing suite name")
    s.add_argument("--perturb", action="store_true", help="negative control for the kappa suite")
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("stembridge", parents=[common], help="shifted structure constant with witnesses")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--mu", type=_partition)
    s.add_argument("--gamma", type=_partition)
    s.set_defaults(func=cmd_stembridge)

    s = sub.add_parser("report", parents=[common], help="run the acceptance criteria")
    s.add_argument("--criteria", help="comma-separated subset, default all ten")
    s.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tolerance is None:
            args.tolerance = default_tolerance()
        return args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"hcalg {args.command}: error: {exc}\n")
    except (ValueError, MemoryError) as exc:
        parser.exit(EXIT_USAGE, f"hcalg {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
