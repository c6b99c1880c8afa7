"""Exact term engine for the Clifford algebra of R^{n,n} in its null basis.

The algebra is generated by 2n null vectors p_i, q_i with p_i^2 = q_i^2 = 0
and {p_i, q_j} = delta_ij.  Basis terms are products s_1 s_2 ... s_n with one
factor per position i drawn from q_i p_i, p_i q_i, p_i, q_i.  Terms whose
factors avoid the bare vectors form a commutative subalgebra of idempotent
patterns; that subalgebra is where Boolean structure lives and is what
:class:`DiagonalElement` implements, with exact integer coefficients.

Both term kinds pack their symbol strings into an int, two bits per
position, so products, parity prefixes and cofactor splits are cheap bit
work.  Diagonal patterns use a code with a deliberate property: the
positionwise product is bitwise AND, and a dead position (two opposite
idempotents multiplied) shows up as a 00 field.
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# Diagonal pattern fields, two bits per position.  AND implements the
# positionwise product: the identity factor keeps anything, equal idempotents
# are stable, opposite idempotents annihilate (field -> 00).
D_QP = 0b01  # q_i p_i   (variable i true)
D_PQ = 0b10  # p_i q_i   (variable i false)
D_ID = 0b11  # {q_i, p_i}, the identity factor

# Full-term symbols, two bits per position; the high bit marks odd grade.
S_QP = 0b00  # q_i p_i
S_PQ = 0b01  # p_i q_i
S_P = 0b10   # p_i
S_Q = 0b11   # q_i

_TERM_TEXT = {S_QP: "qp", S_PQ: "pq", S_P: "p", S_Q: "q"}
_TERM_CODE = {text: code for code, text in _TERM_TEXT.items()}
_DIAG_TEXT = {D_QP: "qp", D_PQ: "pq", D_ID: "1"}
_DIAG_CODE = {text: code for code, text in _DIAG_TEXT.items()}

# Default cap on n for anything that walks all 2^n primitive patterns.
EXPAND_LIMIT = 24


class ResourceLimitError(RuntimeError):
    """A configured size budget was exceeded."""


class ExpansionLimitError(ResourceLimitError):
    """Primitive expansion would enumerate more positions than allowed."""


def _check_n(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"positive variable count required, got {n!r}")


@lru_cache(maxsize=None)
def _all_identity(n: int) -> int:
    return (1 << (2 * n)) - 1


@lru_cache(maxsize=None)
def _low_field_bits(n: int) -> int:
    # bit 0 of every 2-bit field
    m = 0
    for i in range(n):
        m |= 1 << (2 * i)
    return m


def pattern_field(pattern: int, pos: int) -> int:
    """The 2-bit code of *pattern* at 0-based position *pos*."""
    return (pattern >> (2 * pos)) & 0b11


def pattern_alive(pattern: int, n: int) -> bool:
    """False when some position of the packed pattern is the dead field 00."""
    low = _low_field_bits(n)
    return ((pattern | (pattern >> 1)) & low) == low


def _drop_field(pattern: int, pos: int) -> int:
    low = pattern & ((1 << (2 * pos)) - 1)
    return low | ((pattern >> (2 * pos + 2)) << (2 * pos))


def pattern_bits(n: int, fixed: Mapping[int, int]) -> int:
    """Pack a pattern: identity everywhere except the given 1-based positions."""
    _check_n(n)
    pat = _all_identity(n)
    for var, code in fixed.items():
        if not 1 <= var <= n:
            raise ValueError(f"position {var} outside 1..{n}")
        if code not in (D_QP, D_PQ, D_ID):
            raise ValueError(f"bad field code {code!r}")
        shift = 2 * (var - 1)
        pat = (pat & ~(0b11 << shift)) | (code << shift)
    return pat


def identity_count(pattern: int, n: int) -> int:
    """Number of identity fields in a packed diagonal pattern."""
    return (pattern & (pattern >> 1) & _low_field_bits(n)).bit_count()


@dataclass(frozen=True, order=True)
class WittVector:
    """One basis null vector, p_i or q_i; the index is the 1-based position."""

    index: int
    kind: str

    def __post_init__(self):
        if self.kind not in ("p", "q"):
            raise ValueError(f"kind must be 'p' or 'q', got {self.kind!r}")
        if self.index < 1:
            raise ValueError("positions are numbered from 1")

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class EFBTerm:
    """A single basis term with an integer coefficient.

    ``bits`` packs the n symbols two bits per position using the S_* codes;
    position i sits at bits [2(i-1), 2i).
    """

    n: int
    bits: int
    coeff: int = 1

    def __post_init__(self):
        _check_n(self.n)
        if self.coeff == 0:
            raise ValueError("terms carry nonzero coefficients; use None for zero")
        if not 0 <= self.bits < (1 << (2 * self.n)):
            raise ValueError("symbol bits out of range")

    @classmethod
    def from_symbols(cls, symbols: Iterable[str], coeff: int = 1) -> "EFBTerm":
        syms = list(symbols)
        bits = 0
        for i, s in enumerate(syms):
            try:
                bits |= _TERM_CODE[s] << (2 * i)
            except KeyError:
                raise ValueError(f"unknown symbol {s!r}") from None
        return cls(len(syms), bits, coeff)

    def symbol(self, i: int) -> str:
        """Symbol text at 1-based position *i*."""
        return _TERM_TEXT[pattern_field(self.bits, i - 1)]

    def symbols(self) -> tuple[str, ...]:
        return tuple(_TERM_TEXT[pattern_field(self.bits, i)] for i in range(self.n))

    def odd_before(self, i: int) -> int:
        """Count of odd-grade symbols strictly left of 1-based position *i*."""
        prefix = self.bits & ((1 << (2 * (i - 1))) - 1)
        return ((prefix >> 1) & _low_field_bits(self.n)).bit_count()

    @property
    def parity(self) -> int:
        """0 for even terms, 1 for odd ones."""
        return self.odd_before(self.n + 1) & 1

    def __str__(self) -> str:
        return f"{self.coeff} * " + " ".join(self.symbols())

    @classmethod
    def from_text(cls, line: str) -> "EFBTerm":
        coeff_text, _, sym_text = line.partition("*")
        return cls.from_symbols(sym_text.split(), int(coeff_text.strip()))


def assignment_term(values: Sequence[bool], coeff: int = 1) -> EFBTerm:
    """The primitive even term of a truth assignment (q_ip_i where true)."""
    bits = 0
    for i, v in enumerate(values):
        bits |= (S_QP if v else S_PQ) << (2 * i)
    return EFBTerm(len(values), bits, coeff)


# Left action of a bare null vector on the symbol at its own position.
# Missing entries annihilate: p (p q) = p p = 0 and q (q p) = q q = 0.
_LEFT_ACTION = {
    "p": {S_QP: S_P, S_Q: S_PQ},
    "q": {S_PQ: S_Q, S_P: S_QP},
}


def vector_action(v: WittVector, t: EFBTerm) -> EFBTerm | None:
    """Left Clifford product v t, or None when the product vanishes.

    The vector anticommutes past every odd symbol left of its position,
    hence the (-1)^(odd prefix) sign on the surviving term.
    """
    if v.index > t.n:
        raise ValueError(f"vector index {v.index} exceeds term size {t.n}")
    pos = v.index - 1
    new = _LEFT_ACTION[v.kind].get(pattern_field(t.bits, pos))
    if new is None:
        return None
    sign = -1 if t.odd_before(v.index) & 1 else 1
    bits = (t.bits & ~(0b11 << (2 * pos))) | (new << (2 * pos))
    return EFBTerm(t.n, bits, sign * t.coeff)


def annihilates(v: WittVector, t: EFBTerm) -> bool:
    """True when left multiplication by the vector kills the term."""
    return vector_action(v, t) is None


_FIRST_FACTOR = {S_QP: "q", S_PQ: "p", S_P: "p", S_Q: "q"}


def mtnp_of_spinor(t: EFBTerm) -> tuple[WittVector, ...]:
    """The annihilating null plane of a basis term: one generator per position.

    Each symbol is killed from the left exactly by its own first factor
    (q_ip_i by q_i, p_iq_i by p_i, bare vectors by themselves), so the
    generators can be read off positionwise.
    """
    return tuple(
        WittVector(i + 1, _FIRST_FACTOR[pattern_field(t.bits, i)]) for i in range(t.n)
    )


class DiagonalElement:
    """Sparse integer combination of commuting idempotent patterns.

    ``terms`` maps packed patterns to nonzero integer coefficients.  Instances
    are not mutated after construction.  Equality is semantic: two elements
    are equal when they evaluate to the same integer on every one of the 2^n
    assignments, whatever sparse form each is stored in.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, int] | None = None):
        _check_n(n)
        clean: dict[int, int] = {}
        if terms:
            top = 1 << (2 * n)
            for pat, c in terms.items():
                if not 0 <= pat < top or not pattern_alive(pat, n):
                    raise ValueError(f"invalid pattern {pat:#x} for n={n}")
                if not isinstance(c, numbers.Integral):
                    raise TypeError(f"coefficients are integers, got {c!r}")
                if c:
                    clean[pat] = int(c)
        self.n = n
        self.terms = clean

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return zero_test_splits(self)[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DiagonalElement):
            return NotImplemented
        if self.n != other.n:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __add__(self, other: "DiagonalElement") -> "DiagonalElement":
        if not isinstance(other, DiagonalElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} != {other.n}")
        merged = dict(self.terms)
        for pat, c in other.terms.items():
            nc = merged.get(pat, 0) + c
            if nc:
                merged[pat] = nc
            elif pat in merged:
                del merged[pat]
        return DiagonalElement(self.n, merged)

    def __neg__(self) -> "DiagonalElement":
        return DiagonalElement(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "DiagonalElement") -> "DiagonalElement":
        if not isinstance(other, DiagonalElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DiagonalElement):
            return diag_mul(self, other)
        if isinstance(other, numbers.Integral):
            k = int(other)
            if k == 0:
                return DiagonalElement(self.n, {})
            return DiagonalElement(self.n, {p: c * k for p, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"DiagonalElement(n={self.n}, terms={self.term_count})"

    def to_text(self) -> str:
        """One term per line, ``coeff * s_1 s_2 ... s_n`` with s in qp/pq/1."""
        lines = []
        for pat in sorted(self.terms):
            syms = " ".join(_DIAG_TEXT[pattern_field(pat, i)] for i in range(self.n))
            lines.append(f"{self.terms[pat]} * {syms}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "DiagonalElement":
        terms: dict[int, int] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff_text, _, sym_text = line.partition("*")
            syms = sym_text.split()
            if n is None:
                n = len(syms)
            elif len(syms) != n:
                raise ValueError("inconsistent symbol counts across lines")
            pat = 0
            for i, s in enumerate(syms):
                try:
                    pat |= _DIAG_CODE[s] << (2 * i)
                except KeyError:
                    raise ValueError(f"unknown symbol {s!r}") from None
            terms[pat] = terms.get(pat, 0) + int(coeff_text.strip())
        if n is None:
            raise ValueError("cannot infer dimension from empty text")
        return cls(n, terms)


def diag_mul(a: DiagonalElement, b: DiagonalElement) -> DiagonalElement:
    """Product in the idempotent subalgebra (positionwise AND of patterns)."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} != {b.n}")
    out: dict[int, int] = {}
    n = a.n
    for p1, c1 in a.terms.items():
        for p2, c2 in b.terms.items():
            r = p1 & p2
            if not pattern_alive(r, n):
                continue
            nc = out.get(r, 0) + c1 * c2
            if nc:
                out[r] = nc
            elif r in out:
                del out[r]
    return DiagonalElement(n, out)


def _values_of(assignment) -> tuple[bool, ...]:
    vals = getattr(assignment, "values", assignment)
    return tuple(bool(v) for v in vals)


def _sigma_pattern(values: Sequence[bool]) -> int:
    bits = 0
    for i, v in enumerate(values):
        bits |= (D_QP if v else D_PQ) << (2 * i)
    return bits


def eval_at(a: DiagonalElement, assignment) -> int:
    """Value of the element on one assignment (its primitive-idempotent slot).

    A pattern contributes its coefficient when every fixed position agrees
    with the assignment; identity positions match either truth value.
    """
    values = _values_of(assignment)
    if len(values) != a.n:
        raise ValueError(f"assignment has {len(values)} values, element has {a.n}")
    sig = _sigma_pattern(values)
    return sum(c for pat, c in a.terms.items() if sig & pat == sig)


def identity_element(n: int) -> DiagonalElement:
    """The multiplicative unit: the all-identity pattern."""
    _check_n(n)
    return DiagonalElement(n, {_all_identity(n): 1})


def omega_element(n: int, limit: int = EXPAND_LIMIT) -> DiagonalElement:
    """The volume element gamma_1 ... gamma_2n as a product of commutators.

    Each position contributes q_ip_i - p_iq_i, so the expansion carries one
    full pattern per assignment with sign (-1)^(number of false positions).
    """
    _check_n(n)
    if n > limit:
        raise ExpansionLimitError(f"volume element over n={n} exceeds limit {limit}")
    terms = {0: 1}
    for i in range(n):
        nxt: dict[int, int] = {}
        for pat, c in terms.items():
            nxt[pat | (D_QP << (2 * i))] = c
            nxt[pat | (D_PQ << (2 * i))] = -c
        terms = nxt
    return DiagonalElement(n, terms)


def literal_element(n: int, var: int, positive: bool = True) -> DiagonalElement:
    """q_vp_v (the variable-true idempotent) or p_vq_v (variable-false)."""
    return DiagonalElement(
        n, {pattern_bits(n, {var: D_QP if positive else D_PQ}): 1}
    )


def assignment_element(assignment) -> DiagonalElement:
    """The primitive idempotent selecting exactly one assignment."""
    values = _values_of(assignment)
    return DiagonalElement(len(values), {_sigma_pattern(values): 1})


# Dense expansion works on a 3^n table; past this the table would not fit.
_DENSE_EXPAND_MAX_N = 14


def _expand_terms_dense(terms: Mapping[int, int], n: int) -> dict[int, int]:
    """Vectorized expansion: one zeta-transform pass per position.

    Raises OverflowError when coefficients do not safely fit an int64
    (the sums along any position stay below 2^62 by the magnitude guard).
    """
    pats = np.fromiter(terms.keys(), dtype=np.int64, count=len(terms))
    coeffs = np.fromiter(terms.values(), dtype=np.int64, count=len(terms))
    if np.abs(coeffs).max() >= (1 << 62) >> n:
        raise OverflowError("coefficients too large for the dense path")
    # ternary digit per position: 0 = qp, 1 = pq, 2 = identity
    tern = np.zeros(len(terms), dtype=np.int64)
    weight = 1
    for i in range(n):
        tern += (((pats >> (2 * i)) & 3) - 1) * weight
        weight *= 3
    table = np.zeros(3**n, dtype=np.int64)
    np.add.at(table, tern, coeffs)
    # Contract one position per pass: its identity lane folds into both
    # diagonal lanes, and the fresh binary digit stacks above earlier ones.
    for k in range(n):
        t = table.reshape(3 ** (n - k - 1), 3, 1 << k)
        out = np.empty((3 ** (n - k - 1), 2, 1 << k), dtype=np.int64)
        out[:, 0] = t[:, 0] + t[:, 2]
        out[:, 1] = t[:, 1] + t[:, 2]
        table = out.reshape(-1)
    nz = np.flatnonzero(table)
    packed = np.zeros_like(nz)
    for i in range(n):
        packed |= (((nz >> i) & 1) + 1) << (2 * i)
    return dict(zip(packed.tolist(), table[nz].tolist()))


def _expand_terms(terms: Mapping[int, int], n: int) -> dict[int, int]:
    if 0 < n <= _DENSE_EXPAND_MAX_N and len(terms) >= 64:
        try:
            return _expand_terms_dense(terms, n)
        except OverflowError:
            pass
    out: dict[int, int] = {}
    for pat, c in terms.items():
        free = [i for i in range(n) if pattern_field(pat, i) == D_ID]
        if not free:
            nc = out.get(pat, 0) + c
            if nc:
                out[pat] = nc
            elif pat in out:
                del out[pat]
            continue
        for combo in itertools.product((D_QP, D_PQ), repeat=len(free)):
            bits = pat
            for pos, code in zip(free, combo):
                bits = (bits & ~(0b11 << (2 * pos))) | (code << (2 * pos))
            nc = out.get(bits, 0) + c
            if nc:
                out[bits] = nc
            elif bits in out:
                del out[bits]
    return out


def expand_primitive(a: DiagonalElement, limit: int = EXPAND_LIMIT) -> DiagonalElement:
    """Canonical form over full patterns (no identity factors anywhere).

    Idempotent under repetition and evaluation-preserving; guarded because
    the result can hold up to 2^n patterns.
    """
    if a.n > limit:
        raise ExpansionLimitError(
            f"expansion over n={a.n} positions exceeds limit {limit}"
        )
    return DiagonalElement(a.n, _expand_terms(a.terms, a.n))


def zero_test_splits(a: DiagonalElement) -> tuple[bool, int]:
    """Semantic zero test; also reports how many cofactor splits were taken."""
    stats = [0]
    return _zero_recursive(dict(a.terms), a.n, stats), stats[0]


def is_zero_element(a: DiagonalElement) -> bool:
    """True when the element evaluates to 0 on every assignment."""
    return zero_test_splits(a)[0]


def _zero_recursive(terms: dict[int, int], n: int, stats: list[int]) -> bool:
    if not terms:
        return True
    if len(terms) == 1:
        return False  # a single pattern matches at least one assignment
    has_pos = has_neg = False
    for c in terms.values():
        if c > 0:
            has_pos = True
        else:
            has_neg = True
    if not (has_pos and has_neg):
        return False  # coefficients of one sign cannot cancel anywhere
    # Split on the most constrained position: fewest identity fields.
    counts = [0] * n
    for pat in terms:
        for i in range(n):
            if pattern_field(pat, i) == D_ID:
                counts[i] += 1
    total = len(terms)
    best = -1
    best_ids = total + 1
    for i in range(n):
        if counts[i] < total and counts[i] < best_ids:
            best, best_ids = i, counts[i]
    stats[0] += 1
    for keep in (D_QP, D_PQ):
        sub: dict[int, int] = {}
        for pat, c in terms.items():
            f = pattern_field(pat, best)
            if f == keep or f == D_ID:
                r = _drop_field(pat, best)
                nc = sub.get(r, 0) + c
                if nc:
                    sub[r] = nc
                elif r in sub:
                    del sub[r]
        if not _zero_recursive(sub, n - 1, stats):
            return False
    return True


def primitive_assignments(a: DiagonalElement) -> Iterator[tuple[tuple[bool, ...], int]]:
    """(values, coefficient) pairs of a fully expanded element's patterns."""
    for pat, c in a.terms.items():
        if identity_count(pat, a.n):
            raise ValueError("element is not in primitive form")
        yield tuple(pattern_field(pat, i) == D_QP for i in range(a.n)), c
