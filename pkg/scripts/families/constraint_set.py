"""Constraint sets, bipartitions of the observed nodes and flattening matrices."""

import json
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any

from scripts.components.constants import FORMAT_TAG, ConstraintFamily
from scripts.components.errors import NetworkParseError, ShapeMismatchError
from scripts.components.network import NetworkSpec
from scripts.components.polynomial import Polynomial, canonical_text, determinant, parse_canonical_text

logger = logging.getLogger(__name__)

PolynomialMatrix = list[list[Polynomial]]


@dataclass(frozen=True)
class ConstraintSet:
    """Generators of one constraint family on observable tables of shape `cards`.

    `provenance[i]` labels the slice, bipartition or pair that produced
    `polynomials[i]`.
    """

    family: ConstraintFamily
    degree: int
    cards: tuple[int, ...]
    polynomials: tuple[Polynomial, ...] = ()
    provenance: tuple[str, ...] = ()
    conjectural: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", ConstraintFamily(self.family))
        if len(self.polynomials) != len(self.provenance):
            raise ValueError("Every polynomial needs exactly one provenance label")
        wrong = [i for i, p in enumerate(self.polynomials) if p.degree != self.degree]
        if wrong:
            raise ValueError(f"Polynomials {wrong} do not have the declared degree {self.degree}")
        texts = [canonical_text(p) for p in self.polynomials]
        if len(set(texts)) != len(texts):
            raise ValueError("Constraint set contains duplicate canonical forms")

    @classmethod
    def build(
        cls,
        family: ConstraintFamily,
        degree: int,
        cards: Sequence[int],
        labelled: Iterable[tuple[str, Polynomial]],
        conjectural: bool = False,
    ) -> "ConstraintSet":
        """Normalize signs, drop zero generators and deduplicate, keeping first occurrences."""
        seen = set()
        polynomials, provenance = [], []
        dropped = 0
        for label, poly in labelled:
            if poly.is_zero():
                dropped += 1
                continue
            poly = poly.normalized_sign()
            text = canonical_text(poly)
            if text in seen:
                dropped += 1
                continue
            seen.add(text)
            polynomials.append(poly)
            provenance.append(label)

        logger.debug(f"{family.value}: kept {len(polynomials)} generators, dropped {dropped}")
        return cls(family, degree, tuple(cards), tuple(polynomials), tuple(provenance), conjectural)

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polynomials)

    def texts(self) -> list[str]:
        return [canonical_text(p) for p in self.polynomials]

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": FORMAT_TAG,
            "family": self.family.value,
            "degree": self.degree,
            "cards": list(self.cards),
            "conjectural": self.conjectural,
            "provenance": list(self.provenance),
            "polys": self.texts(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ConstraintSet":
        if not isinstance(doc, dict):
            raise NetworkParseError("Constraint document must be a JSON object")
        fmt = doc.get("format")
        if fmt is not None and fmt != FORMAT_TAG:
            raise NetworkParseError(f"Unsupported format '{fmt}' (expected {FORMAT_TAG})")
        try:
            polys = tuple(parse_canonical_text(text) for text in doc.get("polys", []))
            provenance = tuple(doc.get("provenance") or [""] * len(polys))
            return cls(
                family=ConstraintFamily(doc["family"]),
                degree=int(doc["degree"]),
                cards=tuple(int(c) for c in doc.get("cards", [])),
                polynomials=polys,
                provenance=provenance,
                conjectural=bool(doc.get("conjectural", False)),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise NetworkParseError(f"Invalid constraint document: {e}") from e


@dataclass(frozen=True)
class Bipartition:
    """Split of the observed nodes into two nonempty blocks of node indices."""

    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(sorted(self.first)))
        object.__setattr__(self, "second", tuple(sorted(self.second)))
        if not self.first or not self.second:
            raise ShapeMismatchError("Bipartition blocks must be nonempty")
        if set(self.first) & set(self.second):
            raise ShapeMismatchError("Bipartition blocks must be disjoint")

    def validate_for(self, net: NetworkSpec) -> None:
        if set(self.first) | set(self.second) != set(net.observed) or len(self.first) + len(self.second) != len(
            net.observed
        ):
            raise ShapeMismatchError(f"Bipartition {self.first}|{self.second} does not cover the observed nodes")

    def swapped(self) -> "Bipartition":
        return Bipartition(self.second, self.first)

    def label(self, net: NetworkSpec) -> str:
        def block(indices):
            return ",".join(net.nodes[idx].name for idx in indices)

        return f"{block(self.first)}|{block(self.second)}"

    @classmethod
    def all_for(cls, net: NetworkSpec) -> list["Bipartition"]:
        """Unordered bipartitions; the first observed node always sits in the first block."""
        observed = net.observed
        if len(observed) < 2:
            return []
        anchor, rest = observed[0], observed[1:]
        result = []
        for size in range(0, len(rest)):
            for extra in combinations(rest, size):
                first = (anchor, *extra)
                second = tuple(idx for idx in observed if idx not in first)
                result.append(cls(first, second))
        return result


def flatten_indeterminates(net: NetworkSpec, bp: Bipartition) -> PolynomialMatrix:
    """Matrix of observable indeterminates, rows over first-block states, columns over second-block states."""
    bp.validate_for(net)
    position = {node: pos for pos, node in enumerate(net.observed)}
    cards = net.observed_cards

    def states(block):
        return list(product(*(range(cards[position[node]]) for node in block)))

    matrix = []
    for row_state in states(bp.first):
        row = []
        for col_state in states(bp.second):
            index = [0] * len(cards)
            for node, state in zip(bp.first, row_state, strict=True):
                index[position[node]] = state
            for node, state in zip(bp.second, col_state, strict=True):
                index[position[node]] = state
            row.append(Polynomial.variable(index))
        matrix.append(row)
    return matrix


def minors(matrix: PolynomialMatrix, size: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Polynomial]]:
    """All size×size minors as (rows, cols, determinant), rows then columns in combination order."""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    for rows in combinations(range(n_rows), size):
        for cols in combinations(range(n_cols), size):
            yield rows, cols, determinant([[matrix[r][c] for c in cols] for r in rows])
