"""Boolean formulas as products in the idempotent subalgebra.

A clause maps to the idempotent selecting its unique falsifying partial
assignment; a formula maps to the product over clauses of (identity minus
that falsifier).  The product evaluates to 1 exactly on satisfying
assignments, so the formula is unsatisfiable precisely when the product is
the zero element.
"""

from __future__ import annotations

import warnings

from .algebra import (
    D_PQ,
    D_QP,
    DiagonalElement,
    EXPAND_LIMIT,
    ResourceLimitError,
    _all_identity,
    eval_at,
    expand_primitive,
    identity_count,
    is_zero_element,
    pattern_alive,
    pattern_bits,
    pattern_field,
)
from .cnf import Assignment, Clause, CnfFormula, TautologyError

DEFAULT_TERM_BUDGET = 1 << 20


class TermBudgetError(ResourceLimitError):
    """The running product exceeded the configured pattern budget."""


class DroppedClauseWarning(UserWarning):
    """A tautological clause was skipped while encoding."""


def encode_clause(clause: Clause, n: int) -> DiagonalElement:
    """The idempotent selecting the clause's unique falsifying pattern.

    A positive literal contributes the variable-false factor p_iq_i, a
    negated literal the variable-true factor q_ip_i; untouched positions keep
    the identity factor.  Tautological clauses have no falsifier and are
    rejected.
    """
    if clause.is_tautological:
        raise TautologyError(f"tautological clause {clause} has no falsifier")
    fixed = {}
    for lit in clause.literals:
        if lit.var > n:
            raise ValueError(f"variable {lit.var} exceeds n={n}")
        fixed[lit.var] = D_QP if lit.negated else D_PQ
    return DiagonalElement(n, {pattern_bits(n, fixed): 1})


def _clause_pattern(clause: Clause, n: int) -> int:
    fixed = {lit.var: (D_QP if lit.negated else D_PQ) for lit in clause.literals}
    return pattern_bits(n, fixed)


def ordered_clauses(f: CnfFormula, order: str = "input") -> tuple[Clause, ...]:
    """Clause ordering for the product; semantically irrelevant, sometimes
    helpful for intermediate sparsity.  "activity" sorts by descending total
    frequency of a clause's variables, stable on ties."""
    if order == "input":
        return f.clauses
    if order == "activity":
        freq: dict[int, int] = {}
        for c in f.clauses:
            for v in c.variables:
                freq[v] = freq.get(v, 0) + 1
        return tuple(
            sorted(
                f.clauses,
                key=lambda c: -sum(freq[v] for v in c.variables),
            )
        )
    raise ValueError(f"unknown clause order {order!r}")


def encode_formula(
    f: CnfFormula,
    *,
    term_budget: int | None = None,
    order: str = "input",
) -> DiagonalElement:
    """Product over clauses of (identity - falsifier), kept sparse throughout.

    Like patterns merge after every factor.  Whenever the sparse form grows
    past 2^n the running product is rewritten in canonical primitive form,
    which is never larger and stays closed under further factors; this keeps
    long products over few variables from blowing up combinatorially.
    Exceeding the pattern budget raises :class:`TermBudgetError`.
    """
    budget = DEFAULT_TERM_BUDGET if term_budget is None else int(term_budget)
    if budget < 1:
        raise ValueError("term budget must be positive")
    n = f.n
    if f.has_empty_clause:
        return DiagonalElement(n, {})
    terms: dict[int, int] = {_all_identity(n): 1}
    primitive_cap = 1 << n
    primitive = False
    for clause in ordered_clauses(f, order):
        if clause.is_tautological:
            warnings.warn(
                f"dropping tautological clause {clause}", DroppedClauseWarning
            )
            continue
        z = _clause_pattern(clause, n)
        if primitive:
            # Full patterns either match the falsifier outright or miss it.
            terms = {pat: c for pat, c in terms.items() if (pat & z) != pat}
        else:
            delta: dict[int, int] = {}
            for pat, c in terms.items():
                r = pat & z
                if not pattern_alive(r, n):
                    continue
                delta[r] = delta.get(r, 0) - c
            for pat, c in delta.items():
                nc = terms.get(pat, 0) + c
                if nc:
                    terms[pat] = nc
                elif pat in terms:
                    del terms[pat]
            if len(terms) > primitive_cap and primitive_cap <= budget:
                terms = _expand_to_primitive(terms, n)
                primitive = True
        if len(terms) > budget:
            raise TermBudgetError(
                f"{len(terms)} patterns exceed the budget of {budget}"
            )
    return DiagonalElement(n, terms)


def _expand_to_primitive(terms: dict[int, int], n: int) -> dict[int, int]:
    expanded = expand_primitive(DiagonalElement(n, terms), limit=max(n, EXPAND_LIMIT))
    return dict(expanded.terms)


def is_unsatisfiable(
    f: CnfFormula, *, term_budget: int | None = None, order: str = "input"
) -> bool:
    """Algebraic route: the encoded product is the zero element."""
    return is_zero_element(encode_formula(f, term_budget=term_budget, order=order))


def substitute(assignment: Assignment, element: DiagonalElement) -> int:
    """Evaluate an element on a total assignment."""
    if assignment.n != element.n:
        raise ValueError(
            f"assignment over {assignment.n} variables, element over {element.n}"
        )
    return eval_at(element, assignment)


def models(
    f: CnfFormula,
    *,
    expand_limit: int = EXPAND_LIMIT,
    term_budget: int | None = None,
) -> set[Assignment]:
    """The satisfying assignments, read off the primitive expansion."""
    element = encode_formula(f, term_budget=term_budget)
    expanded = expand_primitive(element, limit=expand_limit)
    out: set[Assignment] = set()
    for pat, c in expanded.terms.items():
        if c != 1:
            raise RuntimeError(
                f"encoded product is not 0/1-valued (coefficient {c}); "
                "this indicates a defect in the term engine"
            )
        out.add(
            Assignment(tuple(pattern_field(pat, i) == D_QP for i in range(f.n)))
        )
    return out


def count_models(f: CnfFormula, *, term_budget: int | None = None) -> int:
    """Number of satisfying assignments, by linearity over the sparse form.

    Each pattern matches 2^(identity positions) assignments, and the encoded
    product evaluates to 0 or 1 everywhere, so summing coefficient * 2^free
    counts models exactly without expanding.
    """
    element = encode_formula(f, term_budget=term_budget)
    total = 0
    for pat, c in element.terms.items():
        total += c << identity_count(pat, f.n)
    return total
