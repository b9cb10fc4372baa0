"""Base class for constraint families."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from functools import cached_property
from typing import ClassVar

from scripts.components.constants import ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.components.network import NetworkSpec, Node
from scripts.families.constraint_set import ConstraintSet


class BaseFamily(ABC):
    """A generator of observable constraints bound to a network of the right shape."""

    family: ClassVar[ConstraintFamily]
    degree: ClassVar[int]

    def __init__(self, net: NetworkSpec, **options):
        self.net = net
        self.options = options
        self.check_shape()

    @abstractmethod
    def check_shape(self) -> None:
        """Raise ShapeMismatchError when the network does not fit the family."""

    @abstractmethod
    def generate(self) -> ConstraintSet:
        """Build the constraint set."""

    @cached_property
    def constraints(self) -> ConstraintSet:
        return self.generate()

    def cache_options(self) -> dict:
        """Options that change the output and must be part of a cache key."""
        return dict(sorted(self.options.items()))


class HiddenTripleFamily(BaseFamily):
    """Families on three observed nodes X1, X2, X3 plus one hidden node X4.

    The family is keyed on the cardinality pattern; `MODEL_PARENTS` gives the
    network used to sample model distributions.
    """

    MODEL_PARENTS: ClassVar[dict[str, tuple[str, ...]]]
    # Set when the closed form is not counted like the Jacobian rank
    FORMULA_CONVENTION: ClassVar[str | None] = None

    @property
    def observed_cards(self) -> tuple[int, ...]:
        return self.net.observed_cards

    @property
    def hidden_card(self) -> int:
        return self.net.nodes[self.net.hidden[0]].card

    def check_shape(self) -> None:
        if len(self.net.hidden) != 1 or len(self.net.observed) != 3:
            raise ShapeMismatchError(
                f"{self.family.value} needs three observed nodes and one hidden node, "
                f"got {len(self.net.observed)} observed and {len(self.net.hidden)} hidden"
            )

    @classmethod
    def model_network(cls, cards: Sequence[int], hidden_card: int) -> NetworkSpec:
        names = ("X1", "X2", "X3", "X4")
        all_cards = (*cards, hidden_card)
        nodes = tuple(
            Node(
                name,
                card,
                parents=tuple(sorted(names.index(p) for p in cls.MODEL_PARENTS.get(name, ()))),
                hidden=name == "X4",
            )
            for name, card in zip(names, all_cards, strict=True)
        )
        return NetworkSpec(nodes)

    @classmethod
    def matches_model(cls, net: NetworkSpec) -> bool:
        """True when `net` has the structure of `model_network` for its own cardinalities (names ignored)."""
        if len(net.nodes) != 4 or len(net.hidden) != 1 or net.hidden[0] != 3:
            return False
        model = cls.model_network(net.observed_cards, net.nodes[3].card)
        return all(
            (node.card, node.parents, node.hidden) == (expected.card, expected.parents, expected.hidden)
            for node, expected in zip(net.nodes, model.nodes, strict=True)
        )

    @classmethod
    def formula_dimension(cls, cards: Sequence[int], hidden_card: int) -> int | None:
        """Closed-form dimension of the observable model, when one is known."""
        return None
