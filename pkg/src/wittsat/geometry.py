"""Assignments and clauses as null planes, clause-induced sign patterns,
and the cover test over the discrete group of axis sign flips.

The cover engine here is a deliberately separate code path from the term
engine's zero test: the two are compared against each other (and against a
plain solver) by the differential suites.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import (
    EFBTerm,
    S_PQ,
    S_QP,
    WittVector,
    assignment_element,
    diag_mul,
    mtnp_of_spinor,
)
from .cnf import Assignment, Clause, CnfFormula, TautologyError
from .encoding import encode_clause

FREE = 0


@dataclass(frozen=True)
class SignVector:
    """A diagonal isometry, one sign per axis.

    +1 keeps p_i inside the mapped reference plane, -1 swaps in q_i; the
    all-plus vector is the reference plane itself.
    """

    eps: tuple[int, ...]

    def __post_init__(self):
        if not self.eps:
            raise ValueError("sign vectors need at least one position")
        if any(e not in (1, -1) for e in self.eps):
            raise ValueError("sign entries must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.eps)

    def matches(self, pattern: "TernaryPattern") -> bool:
        if pattern.n != self.n:
            raise ValueError("dimension mismatch")
        return all(s == FREE or s == e for s, e in zip(pattern.slots, self.eps))

    def to_text(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.eps)

    @classmethod
    def from_text(cls, text: str) -> "SignVector":
        return cls(tuple(1 if ch == "+" else -1 for ch in text.strip()))


@dataclass(frozen=True)
class TernaryPattern:
    """Sign constraints with free slots; stands for 2^(free) sign vectors."""

    slots: tuple[int, ...]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("patterns need at least one position")
        if any(s not in (1, -1, FREE) for s in self.slots):
            raise ValueError("slots must be +1, -1 or free (0)")

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def fixed_count(self) -> int:
        return sum(1 for s in self.slots if s != FREE)

    def members(self) -> Iterator[SignVector]:
        free = [i for i, s in enumerate(self.slots) if s == FREE]
        base = list(self.slots)
        for combo in itertools.product((1, -1), repeat=len(free)):
            for pos, val in zip(free, combo):
                base[pos] = val
            yield SignVector(tuple(base))

    def to_text(self) -> str:
        return "".join("+" if s == 1 else "-" if s == -1 else "*" for s in self.slots)

    @classmethod
    def from_text(cls, text: str) -> "TernaryPattern":
        table = {"+": 1, "-": -1, "*": FREE}
        try:
            return cls(tuple(table[ch] for ch in text.strip()))
        except KeyError as e:
            raise ValueError(f"bad pattern character {e.args[0]!r}") from None


@dataclass(frozen=True)
class TotallyNullPlane:
    """A plane spanned by basis null vectors, at most one per position."""

    generators: tuple[WittVector, ...]

    def __post_init__(self):
        positions = [v.index for v in self.generators]
        if len(set(positions)) != len(positions):
            raise ValueError(
                "generators clash: two vectors at one position cannot both "
                "lie in a totally null plane"
            )

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def generator_set(self) -> frozenset[tuple[int, str]]:
        return frozenset((v.index, v.kind) for v in self.generators)

    def contains(self, other: "TotallyNullPlane") -> bool:
        return other.generator_set <= self.generator_set


def is_totally_null(vectors: Iterable[WittVector]) -> bool:
    """All pairings vanish: no position carries both a p and a q vector."""
    kinds: dict[int, str] = {}
    for v in vectors:
        prev = kinds.setdefault(v.index, v.kind)
        if prev != v.kind:
            return False
    return True


def mtnp_of_assignment(a: Assignment) -> SignVector:
    """Sign vector of the assignment's annihilating plane: -1 where true.

    A true variable puts q_ip_i in the assignment's basis term, whose first
    factor is q_i, and q_i is the -1 side of the sign convention.
    """
    return SignVector(tuple(-1 if v else 1 for v in a.values))


def assignment_of_sign_vector(s: SignVector) -> Assignment:
    return Assignment(tuple(e == -1 for e in s.eps))


def plane_of_sign_vector(s: SignVector) -> TotallyNullPlane:
    """The maximal plane the sign vector stands for: p_i at +1, q_i at -1."""
    return TotallyNullPlane(
        tuple(
            WittVector(i + 1, "p" if e == 1 else "q") for i, e in enumerate(s.eps)
        )
    )


def tnp_of_clause(clause: Clause, n: int) -> TotallyNullPlane:
    """The clause's falsifier plane: p_i for a positive literal, q_i for a
    negated one, nothing at untouched positions."""
    if clause.is_tautological:
        raise TautologyError(f"tautological clause {clause} has no plane")
    gens = []
    for lit in sorted(clause.literals, key=lambda l: l.var):
        if lit.var > n:
            raise ValueError(f"variable {lit.var} exceeds n={n}")
        gens.append(WittVector(lit.var, "q" if lit.negated else "p"))
    return TotallyNullPlane(tuple(gens))


def compatible(clause: Clause, assignment: Assignment, *, verify: bool = False) -> bool:
    """True when the assignment falsifies the clause.

    Three equivalent readings exist: literal containment of the falsifier in
    the assignment, absorption of the clause idempotent by the assignment
    idempotent, and inclusion of the clause plane in the assignment plane.
    With ``verify=True`` all three are computed and must agree.
    """
    containment = clause.falsified_by(assignment)
    if verify:
        z = encode_clause(clause, assignment.n)
        sigma = assignment_element(assignment)
        absorption = diag_mul(sigma, z) == sigma
        inclusion = plane_of_sign_vector(mtnp_of_assignment(assignment)).contains(
            tnp_of_clause(clause, assignment.n)
        )
        if not (containment == absorption == inclusion):
            raise RuntimeError(
                f"compatibility definitions diverge on {clause} / {assignment}: "
                f"containment={containment} absorption={absorption} "
                f"inclusion={inclusion}"
            )
    return containment


def induced_pattern(clause: Clause, n: int) -> TernaryPattern:
    """Sign vectors of the isometries whose plane holds the clause plane.

    A positive literal pins its slot to +1 (the p side), a negated literal
    to -1; untouched variables are free.  Exactly the assignments falsifying
    the clause correspond to matching sign vectors.
    """
    if clause.is_tautological:
        raise TautologyError(f"tautological clause {clause} induces no pattern")
    slots = [FREE] * n
    for lit in clause.literals:
        if lit.var > n:
            raise ValueError(f"variable {lit.var} exceeds n={n}")
        slots[lit.var - 1] = -1 if lit.negated else 1
    return TernaryPattern(tuple(slots))


def witness_uncovered(
    patterns: Sequence[TernaryPattern], n: int
) -> SignVector | None:
    """A sign vector matched by no pattern, or None when covered.

    Recursive sign splitting on the position fixed by the most patterns;
    a pattern with no remaining fixed slot matches the whole subspace.
    """
    fixed: list[dict[int, int]] = []
    for p in patterns:
        if p.n != n:
            raise ValueError("pattern width mismatch")
        fixed.append({i: s for i, s in enumerate(p.slots) if s != FREE})
    found = _uncovered(fixed, {}, n)
    return None if found is None else SignVector(found)


def _uncovered(
    pats: list[dict[int, int]], assigned: dict[int, int], n: int
) -> tuple[int, ...] | None:
    for p in pats:
        if not p:
            return None  # this pattern matches every completion
    if not pats:
        return tuple(assigned.get(i, 1) for i in range(n))
    counts: dict[int, int] = {}
    for p in pats:
        for i in p:
            counts[i] = counts.get(i, 0) + 1
    best = min(sorted(counts), key=lambda i: -counts[i])
    for s in (1, -1):
        sub = [
            {k: v for k, v in p.items() if k != best}
            for p in pats
            if p.get(best, s) == s
        ]
        w = _uncovered(sub, {**assigned, best: s}, n)
        if w is not None:
            return w
    return None


def covers(patterns: Sequence[TernaryPattern], n: int) -> bool:
    """True when the patterns jointly match every sign vector."""
    return witness_uncovered(patterns, n) is None


def formula_patterns(f: CnfFormula) -> list[TernaryPattern]:
    """Clause-induced patterns of a formula.  Tautologies induce nothing and
    are skipped; an empty clause matches everything."""
    pats: list[TernaryPattern] = []
    if f.has_empty_clause:
        pats.append(TernaryPattern((FREE,) * f.n))
    for c in f.clauses:
        if c.is_tautological:
            continue
        pats.append(induced_pattern(c, f.n))
    return pats


def cover_verdict(f: CnfFormula) -> tuple[bool, Assignment | None]:
    """(covered, satisfying assignment built from the uncovered witness).

    Covered means unsatisfiable; an uncovered sign vector translates back to
    an assignment falsifying no clause.
    """
    w = witness_uncovered(formula_patterns(f), f.n)
    if w is None:
        return True, None
    return False, assignment_of_sign_vector(w)


def psi_z_expansion(clause: Clause, n: int) -> list[EFBTerm]:
    """All simple basis terms whose planes contain the clause plane.

    The clause's own positions stay pinned to the falsifier's factors while
    every free position ranges over both even factors, giving 2^(n - width)
    terms; a width-n clause yields the single assignment term.
    """
    if clause.is_tautological:
        raise TautologyError(f"tautological clause {clause} has no expansion")
    fixed: dict[int, int] = {}
    for lit in clause.literals:
        if lit.var > n:
            raise ValueError(f"variable {lit.var} exceeds n={n}")
        fixed[lit.var - 1] = S_QP if lit.negated else S_PQ
    free = [i for i in range(n) if i not in fixed]
    base = 0
    for pos, code in fixed.items():
        base |= code << (2 * pos)
    out = []
    for combo in itertools.product((S_QP, S_PQ), repeat=len(free)):
        bits = base
        for pos, code in zip(free, combo):
            bits |= code << (2 * pos)
        out.append(EFBTerm(n, bits, 1))
    return out


def check_intersection(clause: Clause, n: int) -> bool:
    """The expansion terms' planes intersect exactly in the clause plane."""
    planes = [
        frozenset((v.index, v.kind) for v in mtnp_of_spinor(t))
        for t in psi_z_expansion(clause, n)
    ]
    common = frozenset.intersection(*planes)
    return common == tnp_of_clause(clause, n).generator_set


def clause_plane_certified(clause: Clause, n: int) -> bool:
    """Width regime in which the expansion-plane correspondence is
    established; wider clauses still compute but sit outside it."""
    return clause.width < n - 2
