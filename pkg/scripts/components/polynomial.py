"""Exact sparse multivariate polynomials over Q in the observable indeterminates.

An indeterminate is an observable multi-index (one 0-based state per observed
node). Comparing multi-indices lexicographically is the same as comparing
their row-major linear ids, so monomials sort without knowing the table shape.
"""

import logging
import math
import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from itertools import permutations, product
from types import MappingProxyType

from scripts.components.constants import MARGINAL_TOKEN, MAX_DETERMINANT_SIZE, ArithmeticMode
from scripts.components.errors import ShapeMismatchError
from scripts.components.network import NetworkSpec
from scripts.components.tables import ProbabilityTable

logger = logging.getLogger(__name__)

Index = tuple[int, ...]
# Sorted (indeterminate, exponent) pairs with positive exponents
Monomial = tuple[tuple[Index, int], ...]


def linear_id(index: Index, cards: Sequence[int]) -> int:
    """Row-major position of a multi-index."""
    if len(index) != len(cards) or any(not 0 <= i < c for i, c in zip(index, cards, strict=True)):
        raise ShapeMismatchError(f"Multi-index {index} outside shape {tuple(cards)}")
    position = 0
    for i, card in zip(index, cards, strict=True):
        position = position * card + i
    return position


def _normalize_monomial(pairs: Iterable[tuple[Index, int]]) -> Monomial:
    exponents: dict[Index, int] = {}
    for index, exp in pairs:
        if exp < 0:
            raise ValueError(f"Negative exponent {exp} for t{list(index)}")
        exponents[tuple(index)] = exponents.get(tuple(index), 0) + exp
    return tuple(sorted((index, exp) for index, exp in exponents.items() if exp))


def _monomial_degree(monomial: Monomial) -> int:
    return sum(exp for _, exp in monomial)


def _multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    return _normalize_monomial(a + b)


def monomial_order_key(monomial: Monomial) -> tuple:
    """Graded order: higher degree first, then ascending lexicographic on the expanded ids."""
    expanded = tuple(index for index, exp in monomial for _ in range(exp))
    return (-len(expanded), expanded)


class Polynomial:
    """Immutable polynomial with nonzero Fraction coefficients keyed by monomial."""

    __slots__ = ("_terms", "_degree")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        merged: dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            key = _normalize_monomial(monomial)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        self._terms = {m: c for m, c in merged.items() if c != 0}
        self._degree = max((_monomial_degree(m) for m in self._terms), default=-1)

    @classmethod
    def _from_canonical(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = {m: c for m, c in terms.items() if c != 0}
        poly._degree = max((_monomial_degree(m) for m in poly._terms), default=-1)
        return poly

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_canonical({})

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls._from_canonical({(): Fraction(value)})

    @classmethod
    def variable(cls, index: Sequence[int]) -> "Polynomial":
        return cls._from_canonical({((tuple(index), 1),): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._degree

    def is_zero(self) -> bool:
        return not self._terms

    def indeterminates(self) -> set[Index]:
        return {index for monomial in self._terms for index, _ in monomial}

    def coefficient_norm(self) -> Fraction:
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: monomial_order_key(item[0]))

    def leading_term(self) -> tuple[Monomial, Fraction] | None:
        terms = self.sorted_terms()
        return terms[0] if terms else None

    def normalized_sign(self) -> "Polynomial":
        """Return ±self so the leading coefficient is positive."""
        lead = self.leading_term()
        if lead is not None and lead[1] < 0:
            return -self
        return self

    @staticmethod
    def _coerce(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
        return Polynomial._from_canonical(terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_canonical({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = _multiply_monomials(m1, m2)
                terms[monomial] = terms.get(monomial, Fraction(0)) + c1 * c2
        return Polynomial._from_canonical(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Polynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Polynomial({canonical_text(self)!r})"

    def __str__(self) -> str:
        return canonical_text(self)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion of a square polynomial matrix of size 1..4."""
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("Determinant needs a nonempty square matrix")
    if size > MAX_DETERMINANT_SIZE:
        raise ValueError(f"Determinant size {size} exceeds the supported maximum {MAX_DETERMINANT_SIZE}")

    result = Polynomial.zero()
    for perm in permutations(range(size)):
        term = Polynomial.constant(_permutation_sign(perm))
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
            if term.is_zero():
                break
        result = result + term
    return result


def evaluate(p: Polynomial, table: ProbabilityTable):
    """Substitute table cells for the indeterminates; exact for rational tables."""
    for index in p.indeterminates():
        if len(index) != table.ndim or any(not 0 <= i < c for i, c in zip(index, table.cards, strict=True)):
            raise ShapeMismatchError(f"Indeterminate t{list(index)} does not fit table shape {table.cards}")

    if table.mode is ArithmeticMode.RATIONAL:
        total = Fraction(0)
        for monomial, coeff in p.terms.items():
            total += coeff * math.prod((table.cells[index] ** exp for index, exp in monomial), start=Fraction(1))
        return total

    total = 0.0
    for monomial, coeff in p.terms.items():
        total += float(coeff) * math.prod((float(table.cells[index]) ** exp for index, exp in monomial), start=1.0)
    return total


def marginal_coordinate(net: NetworkSpec, pattern: Sequence[int | str]) -> Polynomial:
    """Linear form summing observable indeterminates over the "+" positions of `pattern`."""
    cards = net.observed_cards
    if len(pattern) != len(cards):
        raise ShapeMismatchError(f"Pattern {list(pattern)} has {len(pattern)} entries, {len(cards)} observed nodes")

    ranges = []
    for entry, card in zip(pattern, cards, strict=True):
        if entry == MARGINAL_TOKEN:
            ranges.append(range(card))
        elif isinstance(entry, int) and not isinstance(entry, bool) and 0 <= entry < card:
            ranges.append((entry,))
        else:
            raise ShapeMismatchError(f"invalid pattern entry {entry!r} for cardinality {card}")

    return Polynomial._from_canonical({((index, 1),): Fraction(1) for index in product(*ranges)})


def _format_coefficient(coeff: Fraction) -> str:
    sign = "-" if coeff < 0 else "+"
    magnitude = abs(coeff)
    if magnitude.denominator == 1:
        return f"{sign}{magnitude.numerator}"
    return f"{sign}{magnitude.numerator}/{magnitude.denominator}"


def _format_monomial(monomial: Monomial) -> str:
    parts = []
    for index, exp in monomial:
        text = f"t[{','.join(str(i) for i in index)}]"
        parts.append(f"{text}^{exp}" if exp > 1 else text)
    return "".join(parts)


def canonical_text(p: Polynomial) -> str:
    """Stable text form, e.g. "+1 t[0,0]t[1,1] -1 t[0,1]t[1,0]"; "0" for zero."""
    if p.is_zero():
        return "0"
    chunks = []
    for monomial, coeff in p.sorted_terms():
        chunks.append(_format_coefficient(coeff))
        if monomial:
            chunks.append(_format_monomial(monomial))
    return " ".join(chunks)


_COEFF_RE = re.compile(r"[+-]\d+(?:/\d+)?")
_MONOMIAL_RE = re.compile(r"(?:t\[\d+(?:,\d+)*\](?:\^\d+)?)+")
_FACTOR_RE = re.compile(r"t\[(\d+(?:,\d+)*)\](?:\^(\d+))?")


def parse_canonical_text(text: str) -> Polynomial:
    """Inverse of canonical_text."""
    tokens = text.split()
    if tokens == ["0"]:
        return Polynomial.zero()
    if not tokens:
        raise ValueError("Empty polynomial text")

    terms: dict[Monomial, Fraction] = {}
    pos = 0
    while pos < len(tokens):
        coeff_token = tokens[pos]
        if not _COEFF_RE.fullmatch(coeff_token):
            raise ValueError(f"Expected a signed coefficient, got '{coeff_token}'")
        coeff = Fraction(coeff_token)
        pos += 1

        pairs = []
        if pos < len(tokens) and tokens[pos][0] not in "+-":
            monomial_token = tokens[pos]
            if not _MONOMIAL_RE.fullmatch(monomial_token):
                raise ValueError(f"Malformed monomial '{monomial_token}'")
            for match in _FACTOR_RE.finditer(monomial_token):
                index = tuple(int(i) for i in match.group(1).split(","))
                pairs.append((index, int(match.group(2) or 1)))
            pos += 1

        monomial = _normalize_monomial(pairs)
        terms[monomial] = terms.get(monomial, Fraction(0)) + coeff

    return Polynomial._from_canonical(terms)
