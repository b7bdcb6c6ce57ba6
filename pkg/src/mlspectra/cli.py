"""Command line front end.

Loads a subspace from JSON (or by builtin name), dispatches the requested
computation, and emits a JSON document. Exit codes: 0 on success, 1 on
solver failure, 2 when a report contains consistency violations, 64 on
malformed input or bad usage. Identical arguments produce byte-identical
output for a given tracking backend.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import badness, builtin, geometry, repro, track
from .epsmat import EpsRing, eps_adjugate_leading_term, perturbation
from .solve import PathFailureError, SolveOptions
from .subspace import LinearSubspace, SubspaceError, sample_generic_subspace
from .symmat import RATIONAL, SymMat

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_INCONSISTENT = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_space_args(p: _Parser):
    p.add_argument("--input", help="path to a subspace JSON document")
    p.add_argument("--builtin", help="name of an embedded example subspace")


def _add_common_args(p: _Parser):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-rank", type=float, default=1e-8, dest="tol_rank")
    p.add_argument("--tol-residual", type=float, default=1e-9, dest="tol_residual")
    p.add_argument("--paths-debug", dest="paths_debug",
                   help="file receiving one JSON line per tracked path")
    p.add_argument("--output", help="write the JSON document here instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="mlspectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    specs = [
        ("report", "full likelihood-geometry report", _cmd_report, True),
        ("mldeg", "critical point count for generic scatter", _cmd_mldeg, True),
        ("recdeg", "degree of the closure of inverses", _cmd_recdeg, True),
        ("tangency", "rank n-1 tangency witnesses", _cmd_tangency, True),
        ("ckn", "XY = 0 witness across the pairing", _cmd_ckn, True),
        ("bad", "closedness certificate for the PSD projection", _cmd_bad, True),
        ("blowup", "leading terms of adjugates of perturbations", _cmd_blowup, False),
        ("sample", "seeded generic subspace as JSON", _cmd_sample, False),
        ("repro", "run the named reproduction checks", _cmd_repro, False),
    ]
    for name, help_text, fn, takes_space in specs:
        p = sub.add_parser(name, help=help_text)
        if takes_space:
            _add_space_args(p)
        _add_common_args(p)
        if name == "blowup":
            p.add_argument("--input", help="JSON with keys x and dirs (row-major entries)")
        if name == "sample":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
        if name == "repro":
            p.add_argument("--only", action="append",
                           help="criterion name; repeat or comma-separate for several")
        p.set_defaults(func=fn)
    return parser


def _validate_tols(args, parser_error):
    for name in ("tol_rank", "tol_residual"):
        if getattr(args, name) <= 0:
            parser_error(f"--{name.replace('_', '-')} must be positive")


def _options(args) -> SolveOptions:
    opts = SolveOptions(residual_tol=args.tol_residual, rank_tol=args.tol_rank)
    if getattr(args, "paths_debug", None):
        opts.debug_sink = open(args.paths_debug, "w")
    return opts


def _load_space(args) -> LinearSubspace:
    if bool(args.input) == bool(args.builtin):
        raise SubspaceError("exactly one of --input or --builtin is required")
    if args.builtin:
        try:
            return builtin.get_builtin(args.builtin)
        except KeyError as exc:
            raise SubspaceError(str(exc.args[0])) from None
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SubspaceError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SubspaceError(f"{args.input} is not valid JSON: {exc}") from None
    return LinearSubspace.from_json_dict(doc)


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_report(args) -> int:
    space = _load_space(args)
    rep = geometry.ml_report(space, seed=args.seed, options=_options(args))
    _emit(rep.to_json_dict(), args)
    return EXIT_INCONSISTENT if rep.consistency_violations else EXIT_OK


def _cmd_mldeg(args) -> int:
    space = _load_space(args)
    res = geometry.ml_degree(space, seed=args.seed, options=_options(args))
    _emit({"ml_degree": res.count,
           "bezout_bound": res.solutions.bezout_bound,
           "path_statuses": res.solutions.status_counts(),
           "draws": res.draws,
           "backend": track.BACKEND}, args)
    return EXIT_OK


def _cmd_recdeg(args) -> int:
    space = _load_space(args)
    res = geometry.reciprocal_degree(space, seed=args.seed, options=_options(args))
    _emit({"reciprocal_degree": res.count,
           "bezout_bound": res.solutions.bezout_bound,
           "path_statuses": res.solutions.status_counts(),
           "draws": res.draws,
           "backend": track.BACKEND}, args)
    return EXIT_OK


def _cmd_tangency(args) -> int:
    space = _load_space(args)
    wits = geometry.tangency_witnesses(space, seed=args.seed, options=_options(args))
    _emit({"count": len(wits),
           "witnesses": [geometry.matrix_json(w) for w in wits]}, args)
    return EXIT_OK


def _cmd_ckn(args) -> int:
    space = _load_space(args)
    wit = geometry.ckn_witness(space, seed=args.seed, options=_options(args))
    _emit({"witness": None if wit is None else wit.to_json_dict()}, args)
    return EXIT_OK


def _cmd_bad(args) -> int:
    space = _load_space(args)
    cert = badness.pataki_certificate(space, seed=args.seed)
    _emit(cert.to_json_dict(), args)
    return EXIT_SOLVER if cert.verdict == "undetermined" else EXIT_OK


def _parse_blowup_input(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
        flat = doc["x"]
        dirs_flat = doc["dirs"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise SubspaceError(f"bad blow-up input: {exc}") from None

    def mat(entries):
        n = round(len(entries) ** 0.5)
        if n * n != len(entries):
            raise SubspaceError("matrix entry count is not a square")
        rows = [[Fraction(str(v)) for v in entries[i * n:(i + 1) * n]] for i in range(n)]
        return SymMat.from_rows(rows, RATIONAL)

    return mat(flat), [mat(d) for d in dirs_flat]


def _cmd_blowup(args) -> int:
    if args.input:
        x0, dirs = _parse_blowup_input(args.input)
        names = tuple(f"b{i}" for i in range(len(dirs)))
    else:
        x0, dirs = builtin.blowup_base(), builtin.blowup_directions()
        names = ("b01", "b02", "b1", "b2")
    ring = EpsRing(names)
    coeffs = ring.symbols
    pert = perturbation(x0, dirs, coeffs, ring)
    d, z = eps_adjugate_leading_term(x0, dirs, coeffs, ring)
    _emit({
        "symbols": list(names),
        "perturbation": pert.entry_strings(),
        "adjugate": pert.adjugate().entry_strings(),
        "leading_order": d,
        "leading_matrix": z.entry_strings(),
    }, args)
    return EXIT_OK


def _cmd_sample(args) -> int:
    try:
        space = sample_generic_subspace(args.n, args.k, args.seed)
    except ValueError as exc:
        raise SubspaceError(str(exc)) from None
    _emit(space.to_json_dict(), args)
    return EXIT_OK


def _cmd_repro(args) -> int:
    only = None
    if args.only:
        only = [part for item in args.only for part in item.split(",") if part]
    try:
        results = repro.run_all(seed=args.seed, only=only)
    except KeyError as exc:
        raise SubspaceError(str(exc.args[0])) from None
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        budget = "no budget" if res.budget is None else f"budget {res.budget:.0f}s"
        print(f"{mark} {res.name} ({res.elapsed:.1f}s, {budget})")
        if not res.passed:
            for line in res.failures:
                print(f"     - {line}")
    doc = {"backend": track.BACKEND,
           "all_passed": all(r.passed for r in results),
           "criteria": [r.to_json_dict() for r in results]}
    if args.output:
        _emit(doc, args)
    return EXIT_OK if doc["all_passed"] else EXIT_SOLVER


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_tols(args, parser.error)
    try:
        return args.func(args)
    except SubspaceError as exc:
        print(f"mlspectra: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PathFailureError, geometry.CountInstabilityError,
            geometry.NonRegularError) as exc:
        print(f"mlspectra: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
