"""Command line interface.

Exit codes: 0 satisfiable (or report/rebase success), 1 unsatisfiable (or
planes not transversal), 2 bad input, 3 resource limit exceeded, 4 internal
route divergence.  With --solver-codes the check command uses the solver
convention instead: 10 satisfiable, 20 unsatisfiable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .algebra import ResourceLimitError, zero_test_splits
from .cnf import Assignment, CnfFormula, DimacsError, TautologyError, parse_dimacs
from .encoding import count_models, encode_formula, models
from .geometry import (
    cover_verdict,
    formula_patterns,
    mtnp_of_assignment,
    tnp_of_clause,
)
from .oracle import SAT, UNSAT, dpll
from .ortho import (
    NonOrthogonalMatrixError,
    NonTransversalError,
    OrthogonalMatrix,
    matrices_from_text,
    orthogonal_cover_report,
    rebase_residuals,
    witt_rebase,
)
from .selftest import run_all

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_DIVERGE = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_formula(path: str) -> CnfFormula:
    return parse_dimacs(_read_text(path))


def _term_budget(args) -> int | None:
    if args.limit is not None:
        return args.limit
    raw = os.environ.get("WITTSAT_LIMIT", "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"WITTSAT_LIMIT must be an integer, got {raw!r}") from None


def _verdict_name(unsat: bool) -> str:
    return UNSAT if unsat else SAT


def _cmd_check(args) -> int:
    f = _load_formula(args.file)
    route = args.route or ("all" if f.n <= 16 else "dpll")
    verdicts: dict[str, bool] = {}
    timings: dict[str, float] = {}
    stats: dict[str, int] = {}
    model = None
    if route in ("algebra", "all"):
        start = time.perf_counter()
        element = encode_formula(f, term_budget=_term_budget(args), order=args.order)
        zero, splits = zero_test_splits(element)
        timings["algebra"] = (time.perf_counter() - start) * 1000.0
        verdicts["algebra"] = zero
        stats["patterns"] = element.term_count
        stats["splits"] = splits
    if route in ("cover", "all"):
        start = time.perf_counter()
        covered, witness = cover_verdict(f)
        timings["cover"] = (time.perf_counter() - start) * 1000.0
        verdicts["cover"] = covered
        if witness is not None:
            model = witness
    if route in ("dpll", "all"):
        start = time.perf_counter()
        result = dpll(f)
        timings["dpll"] = (time.perf_counter() - start) * 1000.0
        verdicts["dpll"] = result.verdict == UNSAT
        if result.model is not None:
            model = result.model
    if len(set(verdicts.values())) > 1:
        detail = ", ".join(
            f"{k}={_verdict_name(v)}" for k, v in sorted(verdicts.items())
        )
        print(f"error: routes disagree: {detail}", file=sys.stderr)
        return EXIT_DIVERGE
    unsat = next(iter(verdicts.values()))
    if model is not None and not model.satisfies(f):
        print("error: model failed verification", file=sys.stderr)
        return EXIT_DIVERGE
    if args.solver_codes:
        print(f"s {'UNSATISFIABLE' if unsat else 'SATISFIABLE'}")
        if model is not None:
            print("v " + " ".join(str(i) for i in model.to_ints()) + " 0")
        return 20 if unsat else 10
    if args.json:
        # timings are wall-clock milliseconds and vary run to run; every
        # other field is deterministic for a given input
        payload = {
            "n": f.n,
            "m": f.m,
            "routes": {k: _verdict_name(v) for k, v in verdicts.items()},
            "status": _verdict_name(unsat),
            "timings": {k: round(v, 3) for k, v in timings.items()},
            "stats": stats,
        }
        if model is not None:
            payload["model"] = list(model.to_ints())
        print(json.dumps(payload, sort_keys=True))
    else:
        for name in sorted(verdicts):
            print(f"{name}: {_verdict_name(verdicts[name])}")
        print(f"status: {_verdict_name(unsat)}")
        if model is not None:
            print(f"model: {model}")
        if stats:
            print(f"patterns: {stats['patterns']}  splits: {stats['splits']}")
    return EXIT_UNSAT if unsat else EXIT_SAT


def _cmd_models(args) -> int:
    f = _load_formula(args.file)
    budget = _term_budget(args)
    total = count_models(f, term_budget=budget)
    enumerated = 0 < total <= args.max_enum
    listing = None
    if enumerated:
        found = models(f, term_budget=budget)
        if len(found) != total:
            print("error: enumeration disagrees with the count", file=sys.stderr)
            return EXIT_DIVERGE
        listing = sorted(found, key=lambda a: a.primitive_index())
    if args.json:
        payload = {
            "n": f.n,
            "m": f.m,
            "count": total,
            "models": None if listing is None else [list(a.to_ints()) for a in listing],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"models: {total}")
        if listing is not None:
            for a in listing:
                print(a)
        elif total:
            print(f"(more than --max-enum {args.max_enum}, not listed)")
    return EXIT_SAT if total else EXIT_UNSAT


def _cmd_cover(args) -> int:
    f = _load_formula(args.file)
    patterns = [p.to_text() for p in formula_patterns(f)]
    covered, witness = cover_verdict(f)
    if args.json:
        payload = {
            "n": f.n,
            "covered": covered,
            "patterns": patterns,
            "witness": None if witness is None else list(witness.to_ints()),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for pattern in patterns:
            print(pattern)
        print(f"covered: {'yes' if covered else 'no'}")
        if witness is not None:
            print(f"witness: {witness}")
    return EXIT_UNSAT if covered else EXIT_SAT


# Sign-vector listings grow as 2^n; above this only the clause planes print.
_SIGN_DUMP_MAX_N = 6


def _cmd_geometry(args) -> int:
    f = _load_formula(args.file)
    clause_rows: list[tuple[str, list[str] | None]] = []
    for clause in f.clauses:
        try:
            gens = [str(v) for v in tnp_of_clause(clause, f.n).generators]
        except TautologyError:
            gens = None
        clause_rows.append((str(clause).strip(), gens))
    sign_rows = None
    if f.n <= _SIGN_DUMP_MAX_N:
        sign_rows = [
            (a, mtnp_of_assignment(a).to_text())
            for a in (Assignment.from_mask(m, f.n) for m in range(1 << f.n))
        ]
    report = None
    if args.samples > 0:
        report = orthogonal_cover_report(f, args.samples, args.seed)
    if args.json:
        payload = {
            "n": f.n,
            "clauses": [
                {"clause": text, "generators": gens} for text, gens in clause_rows
            ],
            "assignments": None
            if sign_rows is None
            else [
                {"assignment": list(a.to_ints()), "signs": s} for a, s in sign_rows
            ],
        }
        if report is not None:
            payload.update(report)
        print(json.dumps(payload, sort_keys=True))
    else:
        for text, gens in clause_rows:
            if gens is None:
                print(f"clause {text}: (tautology, no plane)")
            else:
                print(f"clause {text}: {' '.join(gens) or '(zero plane)'}")
        if sign_rows is None:
            print(f"(sign vectors not listed for n > {_SIGN_DUMP_MAX_N})")
        else:
            for a, s in sign_rows:
                print(f"assignment {a}: {s}")
        if report is not None:
            for key in sorted(report):
                print(f"{key}: {report[key]}")
    return EXIT_SAT


def _cmd_rebase(args) -> int:
    arrays = matrices_from_text(_read_text(args.file))
    if args.file2 is not None:
        arrays += matrices_from_text(_read_text(args.file2))
    if len(arrays) != 2:
        raise ValueError(f"need exactly two matrices, got {len(arrays)}")
    t1 = OrthogonalMatrix.from_array(arrays[0], tol=args.tol)
    t2 = OrthogonalMatrix.from_array(arrays[1], tol=args.tol)
    try:
        basis = witt_rebase(t1, t2)
    except NonTransversalError as e:
        print(f"not transversal: planes meet in dimension {e.intersection_dim}",
              file=sys.stderr)
        return EXIT_UNSAT
    res = rebase_residuals(basis, t1, t2)
    if args.json:
        payload = {
            "n": t1.n,
            "residuals": res,
            "p_rows": basis.p_vectors.tolist(),
            "q_rows": basis.q_vectors.tolist(),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"n: {t1.n}")
        for key in sorted(res):
            print(f"{key} residual: {res[key]:.3e}")
        for i, row in enumerate(basis.p_vectors):
            print(f"p{i + 1}: " + " ".join(f"{x: .6f}" for x in row))
        for i, row in enumerate(basis.q_vectors):
            print(f"q{i + 1}: " + " ".join(f"{x: .6f}" for x in row))
    return EXIT_SAT


def _cmd_selftest(args) -> int:
    return EXIT_SAT if run_all(quick=args.quick) else EXIT_UNSAT


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittsat",
        description="CNF satisfiability through null-plane algebra, "
        "sign-pattern covers, and orthogonal-matrix geometry.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide satisfiability")
    check.add_argument("file", help="DIMACS CNF file, or - for stdin")
    check.add_argument(
        "--route",
        choices=("algebra", "cover", "dpll", "all"),
        default=None,
        help="decision route (default: all for n <= 16, dpll above)",
    )
    check.add_argument(
        "--order",
        choices=("input", "activity"),
        default="input",
        help="clause multiplication order for the algebra route",
    )
    check.add_argument(
        "--limit",
        type=int,
        default=None,
        help="sparse term budget (default: WITTSAT_LIMIT env or built-in)",
    )
    check.add_argument("--json", action="store_true")
    check.add_argument(
        "--solver-codes",
        action="store_true",
        help="emit s/v lines and exit 10 or 20",
    )
    check.set_defaults(func=_cmd_check)

    mdl = sub.add_parser("models", help="count and list satisfying assignments")
    mdl.add_argument("file", help="DIMACS CNF file, or - for stdin")
    mdl.add_argument("--limit", type=int, default=None)
    mdl.add_argument(
        "--max-enum",
        type=int,
        default=1024,
        help="list models only when the count is at most this (default 1024)",
    )
    mdl.add_argument("--json", action="store_true")
    mdl.set_defaults(func=_cmd_models)

    cov = sub.add_parser("cover", help="sign-pattern cover view of a formula")
    cov.add_argument("file", help="DIMACS CNF file, or - for stdin")
    cov.add_argument("--json", action="store_true")
    cov.set_defaults(func=_cmd_cover)

    geo = sub.add_parser(
        "geometry",
        help="dump clause planes and assignment sign vectors; optionally "
        "sample the isometry group against them",
    )
    geo.add_argument("file", help="DIMACS CNF file, or - for stdin")
    geo.add_argument(
        "--samples",
        type=int,
        default=0,
        help="isometries to sample for the cover report (0 = dump only)",
    )
    geo.add_argument("--seed", type=int, default=0)
    geo.add_argument("--json", action="store_true")
    geo.set_defaults(func=_cmd_geometry)

    reb = sub.add_parser(
        "rebase", help="joint Witt basis for two orthogonal matrices"
    )
    reb.add_argument("file", help="matrix file (may hold both), or - for stdin")
    reb.add_argument("file2", nargs="?", default=None, help="second matrix file")
    reb.add_argument(
        "--tol",
        type=float,
        default=1e-9,
        help="orthogonality tolerance for the inputs (default 1e-9)",
    )
    reb.add_argument("--json", action="store_true")
    reb.set_defaults(func=_cmd_rebase)

    st = sub.add_parser("selftest", help="run the built-in acceptance checks")
    st.add_argument("--quick", action="store_true", help="reduced sample sizes")
    st.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DimacsError, NonOrthogonalMatrixError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
