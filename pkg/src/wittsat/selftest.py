"""Embedded acceptance checks, runnable without a test harness.

Each check is a callable that raises AssertionError on failure and returns a
short stats string.  ``run_all`` prints one line per check; the pytest
acceptance module runs the same callables at full scale, so the CLI and the
test suite share one implementation.
"""

from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import (
    D_ID,
    D_PQ,
    D_QP,
    DiagonalElement,
    EFBTerm,
    WittVector,
    diag_mul,
    eval_at,
    mtnp_of_spinor,
    vector_action,
)
from .cnf import Assignment, Clause, CnfFormula
from .encoding import is_unsatisfiable, models
from .geometry import (
    assignment_of_sign_vector,
    check_intersection,
    compatible,
    cover_verdict,
    covers,
    formula_patterns,
    induced_pattern,
    mtnp_of_assignment,
    witness_uncovered,
)
from .oracle import UNSAT, brute_force, build_gamma, dpll
from .ortho import (
    NonTransversalError,
    OrthogonalMatrix,
    eigenvalue_one_multiplicity,
    intersect_dim,
    mtnp_from_isometry,
    orthogonal_cover_report,
    rebase_residuals,
    witt_rebase,
    _sample,
)


def clause_universe(n: int) -> list[tuple[int, ...]]:
    """All non-tautological clauses over variables 1..n, as literal tuples."""
    out = []
    for width in range(1, n + 1):
        for vars_ in itertools.combinations(range(1, n + 1), width):
            for signs in itertools.product((1, -1), repeat=width):
                out.append(tuple(v * s for v, s in zip(vars_, signs)))
    return out


def _random_clause(rng: np.random.Generator, n: int, width: int) -> tuple[int, ...]:
    vars_ = rng.choice(n, size=width, replace=False) + 1
    signs = rng.integers(0, 2, size=width)
    return tuple(int(v) if s else -int(v) for v, s in zip(vars_, signs))


def _random_formula(
    rng: np.random.Generator, n: int, m: int, max_width: int | None = None
) -> CnfFormula:
    top = min(n, 3 if max_width is None else max_width)
    clauses = []
    for _ in range(m):
        width = int(rng.integers(1, top + 1))
        clauses.append(_random_clause(rng, n, width))
    return CnfFormula.from_ints(n, clauses)


def check_unsat_equivalence(n3_cases: int = 1000, seed: int = 101) -> str:
    """Algebraic verdict equals the truth table: exhaustively over every
    clause subset on two variables, then on seeded three-variable formulas."""
    t0 = time.perf_counter()
    universe = clause_universe(2)
    assert len(universe) == 8
    for mask in range(1 << len(universe)):
        chosen = [c for i, c in enumerate(universe) if (mask >> i) & 1]
        f = CnfFormula.from_ints(2, chosen)
        assert is_unsatisfiable(f) == (brute_force(f).verdict == UNSAT)
    rng = np.random.default_rng(seed)
    for _ in range(n3_cases):
        f = _random_formula(rng, 3, int(rng.integers(1, 5)))
        assert is_unsatisfiable(f) == (brute_force(f).verdict == UNSAT)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"took {elapsed:.1f}s, budget is 10s"
    return f"256 exhaustive + {n3_cases} seeded formulas, {elapsed:.1f}s"


def check_route_agreement(cases: int = 500, seed: int = 102) -> str:
    """Three independent verdict routes agree on seeded 3-SAT at n=12."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    unsat_count = 0
    for _ in range(cases):
        m = int(rng.integers(12, 61))
        f = _random_formula(rng, 12, m, max_width=3)
        algebraic = is_unsatisfiable(f)
        covered, witness = cover_verdict(f)
        solver = dpll(f).verdict == UNSAT
        assert algebraic == covered == solver, f"routes diverge on {f}"
        if witness is not None:
            assert witness.satisfies(f)
        unsat_count += algebraic
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"took {elapsed:.1f}s, budget is 120s"
    return f"{cases} instances ({unsat_count} unsat), {elapsed:.1f}s"


def check_model_sets(cases: int = 200, seed: int = 103) -> str:
    """The primitive expansion enumerates exactly the brute-force models."""
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(1, 11))
        m = int(rng.integers(0, 3 * n + 1))
        f = _random_formula(rng, n, m)
        expected = set(brute_force(f).models)
        assert models(f) == expected
    return f"{cases} seeded instances, n <= 10"


def _random_element(rng: np.random.Generator, n: int) -> DiagonalElement:
    terms: dict[int, int] = {}
    for _ in range(int(rng.integers(1, 5))):
        pat = 0
        for i in range(n):
            pat |= int(rng.choice((D_QP, D_PQ, D_ID))) << (2 * i)
        c = int(rng.integers(1, 4)) * (1 if rng.integers(0, 2) else -1)
        terms[pat] = terms.get(pat, 0) + c
    return DiagonalElement(n, terms)


def check_matrix_backend(pairs: int = 1000, seed: int = 104) -> str:
    """Exact matrix image: generator relations, product homomorphism, and
    evaluations equal to diagonal entries, all with zero tolerance."""
    reps = {n: build_gamma(n) for n in range(1, 5)}
    for rep in reps.values():
        assert rep.check_generator_relations()
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        n = int(rng.integers(1, 5))
        rep = reps[n]
        a = _random_element(rng, n)
        b = _random_element(rng, n)
        ma, mb = rep.matrix_of(a), rep.matrix_of(b)
        assert np.array_equal(rep.matrix_of(diag_mul(a, b)), np.dot(ma, mb))
        for mask in range(1 << n):
            sigma = Assignment.from_mask(mask, n)
            idx = sigma.primitive_index()
            assert ma[idx, idx] == eval_at(a, sigma)
    return f"relations n<=4 + {pairs} product/evaluation pairs, exact"


def check_annihilation_planes() -> str:
    """For every basis term at n=3: a null vector kills it from the left
    exactly when the vector lies in the term's plane, per the symbols and per
    the matrix backend, and surviving actions match matrices exactly."""
    n = 3
    rep = build_gamma(n)
    vectors = [WittVector(i, k) for i in range(1, n + 1) for k in ("p", "q")]
    checked = 0
    for bits in range(1 << (2 * n)):
        term = EFBTerm(n, bits, 1)
        plane = set(mtnp_of_spinor(term))
        term_matrix = rep.matrix_of(term)
        for v in vectors:
            acted = vector_action(v, term)
            symbolic_zero = acted is None
            assert symbolic_zero == (v in plane)
            product = np.dot(rep.matrix_of(v), term_matrix)
            assert symbolic_zero == (not product.any())
            if acted is not None:
                assert np.array_equal(product, rep.matrix_of(acted))
            checked += 1
    return f"{checked} vector/term actions at n=3, symbolic == matrix"


def check_clause_plane_intersection(cases: int = 200, seed: int = 106) -> str:
    """The expansion planes of a narrow clause meet exactly in its plane."""
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(4, 9))
        k = int(rng.integers(1, n - 2))
        clause = Clause.from_ints(_random_clause(rng, n, k))
        assert check_intersection(clause, n)
    return f"{cases} seeded clauses with width < n-2, n <= 8"


def check_cover_equivalence(
    sampled_per_n: int = 5000, seed: int = 107, minimum: int = 10_000
) -> str:
    """Pattern cover of the sign hypercube == unsatisfiability, exhaustively
    for tiny variable counts and on seeded families above that."""
    total = 0
    for n in (1, 2):
        universe = clause_universe(n)
        for mask in range(1 << len(universe)):
            chosen = [c for i, c in enumerate(universe) if (mask >> i) & 1]
            f = CnfFormula.from_ints(n, chosen)
            total += _assert_cover_matches(f)
    rng = np.random.default_rng(seed)
    for n in (3, 4):
        for _ in range(sampled_per_n):
            m = int(rng.integers(0, 4 * n + 1))
            f = _random_formula(rng, n, m, max_width=n)
            total += _assert_cover_matches(f)
    assert total >= minimum, f"only {total} formulas exercised"
    return f"{total} formulas, covers == UNSAT with verified witnesses"


def _assert_cover_matches(f: CnfFormula) -> int:
    patterns = formula_patterns(f)
    covered = covers(patterns, f.n)
    assert covered == (brute_force(f).verdict == UNSAT)
    if not covered:
        witness = witness_uncovered(patterns, f.n)
        assert assignment_of_sign_vector(witness).satisfies(f)
    return 1


def check_witt_rebase(pairs_per_n: int = 100, seed: int = 108) -> str:
    """Transversal graph planes rebase to a Witt pair within 1e-9; meeting
    planes are rejected with the exact intersection dimension."""
    accepted = 0
    for n in range(2, 7):
        rng = np.random.default_rng(seed + n)
        count = 0
        while count < pairs_per_n:
            t1, t2 = _sample(n, rng), _sample(n, rng)
            try:
                basis = witt_rebase(t1, t2)
            except NonTransversalError:
                continue
            res = rebase_residuals(basis, t1, t2)
            assert max(res.values()) <= 1e-9, f"residuals {res} at n={n}"
            count += 1
            accepted += 1
        for r in range(1, n + 1):
            t1 = _sample(n, rng)
            flip = np.diag([1.0] * r + [-1.0] * (n - r))
            t2 = OrthogonalMatrix(n, t1.entries @ flip)
            m = t1.entries.T @ t2.entries
            assert eigenvalue_one_multiplicity(m) == r
            assert intersect_dim(mtnp_from_isometry(t1), mtnp_from_isometry(t2)) == r
            try:
                witt_rebase(t1, t2)
            except NonTransversalError as e:
                assert e.intersection_dim == r
                assert str(r) in str(e)
            else:
                raise AssertionError(f"rebase accepted a pair meeting in dim {r}")
    return f"{accepted} transversal pairs over n=2..6, residuals <= 1e-9"


def check_group_sampling(samples: int = 1000, seed: int = 109) -> str:
    """Deterministic sampling report on a fixed unsatisfiable instance:
    discrete cover holds and mirrors the pattern cover, strict membership of
    continuous samples is the measure-zero control, and almost every sample
    rebases against a coordinate plane."""
    clauses = list(itertools.product((1, -1), repeat=3))
    f = CnfFormula.from_ints(3, [tuple(s * v for v, s in zip((1, 2, 3), signs))
                                 for signs in clauses])
    report = orthogonal_cover_report(f, samples, seed)
    again = orthogonal_cover_report(f, samples, seed)
    assert report == again, "report is not deterministic for a fixed seed"
    assert report["discrete_cover"] is True
    assert report["discrete_cover"] == covers(formula_patterns(f), f.n)
    assert report["strict_fraction"] == 0.0
    assert report["transversal_fraction"] >= 0.99
    return (
        f"{samples} samples: strict={report['strict_fraction']:.3f}, "
        f"rebasable={report['transversal_fraction']:.3f}"
    )


def check_compatibility_triangle(max_n: int = 4) -> str:
    """The three falsification readings agree on every clause/assignment
    pair, and match the sign-pattern test, exhaustively for n <= 4."""
    pairs = 0
    for n in range(1, max_n + 1):
        for ints in clause_universe(n):
            clause = Clause.from_ints(ints)
            pattern = induced_pattern(clause, n)
            for mask in range(1 << n):
                a = Assignment.from_mask(mask, n)
                agreed = compatible(clause, a, verify=True)
                assert agreed == clause.falsified_by(a)
                assert agreed == mtnp_of_assignment(a).matches(pattern)
                pairs += 1
    return f"{pairs} clause/assignment pairs, three definitions + patterns"


@dataclass(frozen=True)
class Check:
    name: str
    runner: Callable[..., str]
    full: dict
    quick: dict


CHECKS: tuple[Check, ...] = (
    Check("unsat-equivalence", check_unsat_equivalence, {}, {"n3_cases": 100}),
    Check("route-agreement", check_route_agreement, {}, {"cases": 40}),
    Check("model-sets", check_model_sets, {}, {"cases": 40}),
    Check("matrix-backend", check_matrix_backend, {}, {"pairs": 120}),
    Check("annihilation-planes", check_annihilation_planes, {}, {}),
    Check(
        "clause-plane-intersection",
        check_clause_plane_intersection,
        {},
        {"cases": 40},
    ),
    Check(
        "cover-equivalence",
        check_cover_equivalence,
        {},
        {"sampled_per_n": 300, "minimum": 0},
    ),
    Check("witt-rebase", check_witt_rebase, {}, {"pairs_per_n": 10}),
    Check("group-sampling", check_group_sampling, {}, {"samples": 150}),
    Check("compatibility-triangle", check_compatibility_triangle, {}, {"max_n": 3}),
)


def run_all(quick: bool = False, out=None) -> bool:
    """Run every check, print one line each, return overall success."""
    stream = sys.stdout if out is None else out
    ok = True
    for check in CHECKS:
        kwargs = check.quick if quick else check.full
        try:
            info = check.runner(**kwargs)
        except AssertionError as e:
            ok = False
            print(f"FAIL {check.name}: {e}", file=stream)
        else:
            print(f"ok   {check.name}: {info}", file=stream)
    return ok
