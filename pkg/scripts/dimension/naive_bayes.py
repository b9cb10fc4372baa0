"""Naive Bayes models (r : r_1, ..., r_n) and their closed-form dimension results."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

from scripts.components.constants import Classification
from scripts.components.network import NetworkSpec, Node

logger = logging.getLogger(__name__)

HIDDEN_CLASS_NAME = "H"


@dataclass(frozen=True)
class NaiveBayesSpec:
    """Hidden class node with `r` states and `n` conditionally independent features."""

    r: int
    cards: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cards", tuple(int(c) for c in self.cards))
        if self.r < 2:
            raise ValueError(f"Naive Bayes needs at least 2 classes, got {self.r}")
        if len(self.cards) < 2:
            raise ValueError(f"Naive Bayes needs at least 2 features, got {len(self.cards)}")
        if any(c < 2 for c in self.cards):
            raise ValueError(f"Feature cardinalities must be >= 2, got {self.cards}")

    @property
    def n(self) -> int:
        return len(self.cards)

    @property
    def label(self) -> str:
        return f"({self.r}:{','.join(str(c) for c in self.cards)})"

    @classmethod
    def parse(cls, values: Sequence[int | str]) -> "NaiveBayesSpec":
        """Build from "r r_1 ... r_n" tokens."""
        try:
            numbers = [int(v) for v in values]
        except ValueError as e:
            raise ValueError(f"Naive Bayes parameters must be integers: {e}") from e
        if len(numbers) < 3:
            raise ValueError("Expected r followed by at least two feature cardinalities")
        return cls(numbers[0], tuple(numbers[1:]))

    def to_network(self) -> NetworkSpec:
        """Features X1..Xn in order, then the hidden class node as their only parent."""
        hidden_idx = self.n
        features = tuple(Node(f"X{i + 1}", card, parents=(hidden_idx,)) for i, card in enumerate(self.cards))
        return NetworkSpec(features + (Node(HIDDEN_CLASS_NAME, self.r, hidden=True),))

    @classmethod
    def from_network(cls, net: NetworkSpec) -> "NaiveBayesSpec | None":
        """Recognize a network whose single hidden root is the only parent of every observed node."""
        if len(net.hidden) != 1 or len(net.observed) < 2:
            return None
        hidden = net.hidden[0]
        if net.nodes[hidden].parents:
            return None
        if any(net.nodes[idx].parents != (hidden,) for idx in net.observed):
            return None
        return cls(net.nodes[hidden].card, net.observed_cards)


@dataclass(frozen=True)
class CatalisanoVerdict:
    classification: Classification
    value: int | None
    rule: str


def segre_dimension(cards: Sequence[int]) -> int:
    """Dimension d = Σ(r_i - 1) of the Segre product of the feature simplices."""
    if any(c < 2 for c in cards):
        raise ValueError(f"Cardinalities must be >= 2, got {tuple(cards)}")
    return sum(c - 1 for c in cards)


def naive_bayes_standard_dimension(nb: NaiveBayesSpec) -> int:
    return nb.r * segre_dimension(nb.cards) + nb.r - 1


def naive_bayes_complete_dimension(nb: NaiveBayesSpec) -> int:
    return math.prod(nb.cards) - 1


def expected_dimension(nb: NaiveBayesSpec) -> int:
    """min{∏r_i - 1, r·d + r - 1}."""
    return min(naive_bayes_complete_dimension(nb), naive_bayes_standard_dimension(nb))


def feature_bipartitions(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered splits of range(n) into two nonempty blocks; feature 0 stays in the first."""
    splits = []
    for size in range(0, n - 1):
        for extra in combinations(range(1, n), size):
            first = (0, *extra)
            splits.append((first, tuple(i for i in range(n) if i not in first)))
    return splits


def dp_bound(nb: NaiveBayesSpec) -> int:
    """Minimum over two-block flattenings of the rank-r matrix variety dimension, projective convention.

    The rank on an R x C flattening is clamped to min(r, R, C).
    """
    best = None
    for first, second in feature_bipartitions(nb.n):
        rows = math.prod(nb.cards[i] for i in first)
        cols = math.prod(nb.cards[i] for i in second)
        rank = min(nb.r, rows, cols)
        bound = min(rank * (rows + cols) - rank**2, rows * cols) - 1
        logger.debug(f"{nb.label} flattening {first}|{second}: {rows}x{cols} -> {bound}")
        best = bound if best is None else min(best, bound)
    return best


def classify_catalisano(nb: NaiveBayesSpec) -> CatalisanoVerdict:
    """Classify by the secant-defectivity propositions, checked in a fixed order.

    Feature cardinalities are sorted ascending first. The defectivity bounds
    and the ceiling criterion only apply for n >= 3; n = 2 is settled by the
    two matrix cases.
    """
    cards = sorted(nb.cards)
    n, r = nb.n, nb.r
    total = sum(cards)

    if n >= 3:
        head = cards[:-1]
        lower = math.prod(head) - sum(c - 1 for c in head) + 1
        upper = min(cards[-1], math.prod(head) - 1)
        if lower <= r <= upper:
            return CatalisanoVerdict(Classification.DEFECTIVE_BY_3_3, None, "defective-range")

    if n == 2 and r == min(cards):
        return CatalisanoVerdict(Classification.EQUALS_COMPLETE, cards[0] * cards[1] - 1, "two-features-full-rank")
    if n == 2 and r < min(cards):
        value = r * (cards[0] + cards[1]) - r**2 - 1
        return CatalisanoVerdict(Classification.EQUALS_STANDARD, value, "two-features-low-rank")

    standard_value = r * (total - n + 1) - 1
    if n >= 3 and r <= min(cards):
        return CatalisanoVerdict(Classification.EQUALS_STANDARD, standard_value, "classes-below-cards")
    if n >= 3 and -(-(total - n + 1) // 2) >= max(cards[-1], r):
        return CatalisanoVerdict(Classification.EQUALS_STANDARD, standard_value, "ceiling-criterion")

    return CatalisanoVerdict(Classification.UNKNOWN, None, "none")
