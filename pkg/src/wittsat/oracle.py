"""Independent ground truth: truth tables, a small DPLL solver, and an exact
matrix image of the algebra on 2^n-dimensional column space.

Nothing here reuses the term engine's product or sign rules; the matrix
backend multiplies honest matrices built from generator ladders, which is
what makes it a meaningful cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    D_ID,
    DiagonalElement,
    EFBTerm,
    ResourceLimitError,
    WittVector,
    pattern_field,
)
from .cnf import Assignment, CnfFormula

SAT = "SAT"
UNSAT = "UNSAT"

BRUTE_FORCE_LIMIT = 24
GAMMA_LIMIT = 5
_CHUNK = 1 << 20


@dataclass(frozen=True)
class BruteForceResult:
    verdict: str
    models: tuple[Assignment, ...]


def brute_force(f: CnfFormula) -> BruteForceResult:
    """Exhaustive truth-table run; the model list is complete."""
    if f.n > BRUTE_FORCE_LIMIT:
        raise ResourceLimitError(
            f"truth table over n={f.n} exceeds limit {BRUTE_FORCE_LIMIT}"
        )
    if f.has_empty_clause:
        return BruteForceResult(UNSAT, ())
    masks = []
    for c in f.clauses:
        pos = neg = 0
        for lit in c.literals:
            if lit.negated:
                neg |= 1 << (lit.var - 1)
            else:
                pos |= 1 << (lit.var - 1)
        masks.append((pos, neg))
    total = 1 << f.n
    hits: list[int] = []
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        sigma = np.arange(start, stop, dtype=np.int64)
        ok = np.ones(stop - start, dtype=bool)
        for pos, neg in masks:
            ok &= ((sigma & pos) != 0) | ((~sigma & neg) != 0)
        hits.extend(int(x) for x in np.flatnonzero(ok) + start)
    models = tuple(Assignment.from_mask(m, f.n) for m in hits)
    return BruteForceResult(SAT if models else UNSAT, models)


@dataclass(frozen=True)
class DpllResult:
    verdict: str
    model: Assignment | None


def dpll(f: CnfFormula) -> DpllResult:
    """Unit propagation, pure-literal elimination, then branching on the
    lowest still-occurring variable trying True first.  A returned model is
    re-verified by direct evaluation."""
    if f.has_empty_clause:
        return DpllResult(UNSAT, None)
    clauses = [frozenset(c.to_ints()) for c in f.clauses]
    found = _dpll_solve(clauses, {})
    if found is None:
        return DpllResult(UNSAT, None)
    values = tuple(found.get(v, True) for v in range(1, f.n + 1))
    model = Assignment(values)
    if not model.satisfies(f):
        raise RuntimeError("solver produced a non-model; this is a defect")
    return DpllResult(SAT, model)


def _dpll_assign(clauses: list[frozenset[int]], lit: int):
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out


def _dpll_solve(clauses: list[frozenset[int]], assign: dict[int, bool]):
    while True:
        if not clauses:
            return assign
        unit = next((next(iter(c)) for c in clauses if len(c) == 1), None)
        if unit is not None:
            nxt = _dpll_assign(clauses, unit)
            if nxt is None:
                return None
            clauses = nxt
            assign[abs(unit)] = unit > 0
            continue
        lits = set().union(*clauses)
        pure = next((l for l in sorted(lits, key=abs) if -l not in lits), None)
        if pure is not None:
            clauses = _dpll_assign(clauses, pure)
            assign[abs(pure)] = pure > 0
            continue
        v = min(abs(l) for l in lits)
        for lit in (v, -v):
            nxt = _dpll_assign(clauses, lit)
            if nxt is not None:
                got = _dpll_solve(nxt, {**assign, v: lit > 0})
                if got is not None:
                    return got
        return None


def _frac_matrix(rows) -> np.ndarray:
    return np.array(
        [[Fraction(v) for v in row] for row in rows], dtype=object
    )


def _frac_eye(dim: int) -> np.ndarray:
    m = np.full((dim, dim), Fraction(0), dtype=object)
    for i in range(dim):
        m[i, i] = Fraction(1)
    return m


def _kron_all(blocks) -> np.ndarray:
    out = blocks[0]
    for b in blocks[1:]:
        out = np.kron(out, b)
    return out


class GammaRep:
    """Exact matrix image of the algebra, dimension 2^n (n <= 5).

    Generators use the standard ladder: position i carries the real 2x2
    blocks X = [[0,1],[1,0]] (square +1) and Y = [[0,-1],[1,0]] (square -1),
    prefixed by sign-alternating blocks so distinct positions anticommute.
    Entries are exact fractions, so every check against this backend is a
    zero-tolerance comparison.

    With this choice the variable-true idempotent q_ip_i is diagonal with
    support on indices whose i-th bit (variable 1 most significant) is 0,
    matching ``Assignment.primitive_index``.
    """

    def __init__(self, n: int):
        if not isinstance(n, int) or not 1 <= n <= GAMMA_LIMIT:
            raise ValueError(f"matrix backend supports 1 <= n <= {GAMMA_LIMIT}")
        self.n = n
        self.dim = 1 << n
        x = _frac_matrix([[0, 1], [1, 0]])
        y = _frac_matrix([[0, -1], [1, 0]])
        z = _frac_matrix([[1, 0], [0, -1]])
        eye2 = _frac_matrix([[1, 0], [0, 1]])
        gammas = []
        for i in range(n):
            before, after = [z] * i, [eye2] * (n - 1 - i)
            gammas.append(_kron_all(before + [x] + after))
            gammas.append(_kron_all(before + [y] + after))
        self.gamma = tuple(gammas)
        half = Fraction(1, 2)
        self._p = tuple(
            (self.gamma[2 * i] + self.gamma[2 * i + 1]) * half for i in range(n)
        )
        self._q = tuple(
            (self.gamma[2 * i] - self.gamma[2 * i + 1]) * half for i in range(n)
        )
        self._symbols: dict[tuple[int, str], np.ndarray] = {}
        self._patterns: dict[int, np.ndarray] = {}

    def identity(self) -> np.ndarray:
        return _frac_eye(self.dim)

    def p(self, i: int) -> np.ndarray:
        return self._p[i - 1]

    def q(self, i: int) -> np.ndarray:
        return self._q[i - 1]

    def vector_matrix(self, v: WittVector) -> np.ndarray:
        if v.index > self.n:
            raise ValueError(f"vector index {v.index} exceeds n={self.n}")
        return self.p(v.index) if v.kind == "p" else self.q(v.index)

    def _symbol_matrix(self, pos: int, text: str) -> np.ndarray:
        key = (pos, text)
        got = self._symbols.get(key)
        if got is None:
            p, q = self.p(pos), self.q(pos)
            got = {
                "qp": lambda: np.dot(q, p),
                "pq": lambda: np.dot(p, q),
                "p": lambda: p,
                "q": lambda: q,
                "1": lambda: np.dot(q, p) + np.dot(p, q),
            }[text]()
            self._symbols[key] = got
        return got

    def term_matrix(self, t: EFBTerm) -> np.ndarray:
        if t.n != self.n:
            raise ValueError(f"term over n={t.n}, backend over n={self.n}")
        out = None
        for i, text in enumerate(t.symbols(), start=1):
            m = self._symbol_matrix(i, text)
            out = m if out is None else np.dot(out, m)
        return out * t.coeff

    def _pattern_matrix(self, pattern: int) -> np.ndarray:
        got = self._patterns.get(pattern)
        if got is None:
            got = self.identity()
            for i in range(self.n):
                code = pattern_field(pattern, i)
                if code == D_ID:
                    continue
                text = "qp" if code == 0b01 else "pq"
                got = np.dot(got, self._symbol_matrix(i + 1, text))
            self._patterns[pattern] = got
        return got

    def element_matrix(self, a: DiagonalElement) -> np.ndarray:
        if a.n != self.n:
            raise ValueError(f"element over n={a.n}, backend over n={self.n}")
        out = np.full((self.dim, self.dim), Fraction(0), dtype=object)
        for pat, c in a.terms.items():
            out = out + self._pattern_matrix(pat) * c
        return out

    def matrix_of(self, x) -> np.ndarray:
        if isinstance(x, DiagonalElement):
            return self.element_matrix(x)
        if isinstance(x, EFBTerm):
            return self.term_matrix(x)
        if isinstance(x, WittVector):
            return self.vector_matrix(x)
        raise TypeError(f"cannot map {type(x).__name__} to a matrix")

    def check_generator_relations(self) -> bool:
        """gamma_i gamma_j + gamma_j gamma_i == 2 delta_ij (-1)^(i+1), exactly."""
        eye = self.identity()
        for i, gi in enumerate(self.gamma, start=1):
            for j, gj in enumerate(self.gamma, start=1):
                anti = np.dot(gi, gj) + np.dot(gj, gi)
                if i == j:
                    want = eye * (2 if i % 2 == 1 else -2)
                else:
                    want = eye * 0
                if not np.array_equal(anti, want):
                    return False
        return True


def build_gamma(n: int) -> GammaRep:
    return GammaRep(n)


def is_zero_matrix(m: np.ndarray) -> bool:
    return not m.any()
