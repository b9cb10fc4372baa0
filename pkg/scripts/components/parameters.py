"""Conditional probability tables, seeded sampling and the forward parametrization map."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from scripts.components.constants import FLOAT_SUM_TOLERANCE, SAMPLE_NUMERATOR_RANGE, ArithmeticMode
from scripts.components.errors import ShapeMismatchError
from scripts.components.network import NetworkSpec
from scripts.components.tables import JointTable

logger = logging.getLogger(__name__)

# (node index, parent configuration, state)
FreeParameter = tuple[int, tuple[int, ...], int]


@dataclass(frozen=True)
class ParameterAssignment:
    """Entries w_ijk: one probability row per node and parent configuration.

    `rows[i]` maps a parent configuration j (tuple over the sorted parents'
    states) to the probability vector over the states of node i.
    """

    rows: tuple[dict[tuple[int, ...], tuple], ...]
    mode: ArithmeticMode = ArithmeticMode.RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "mode", ArithmeticMode(self.mode))
        for node_idx, table in enumerate(self.rows):
            for config, row in table.items():
                if any(value < 0 or value > 1 for value in row):
                    raise ValueError(f"Entries outside [0, 1] in row {config} of node {node_idx}")
                total = sum(row)
                if self.mode is ArithmeticMode.RATIONAL:
                    if total != 1:
                        raise ValueError(f"Row {config} of node {node_idx} sums to {total}, expected exactly 1")
                elif abs(total - 1.0) > FLOAT_SUM_TOLERANCE:
                    raise ValueError(f"Row {config} of node {node_idx} sums to {total!r}")

    def value(self, node: int, config: tuple[int, ...], state: int):
        return self.rows[node][config][state]

    def validate_for(self, net: NetworkSpec) -> None:
        """Raise ShapeMismatchError unless every row matches the network's shape."""
        if len(self.rows) != len(net.nodes):
            raise ShapeMismatchError(f"Parameters cover {len(self.rows)} nodes, network has {len(net.nodes)}")
        for idx, node in enumerate(net.nodes):
            expected = set(net.parent_configurations(idx))
            if set(self.rows[idx]) != expected:
                raise ShapeMismatchError(f"Parent configurations of node '{node.name}' do not match the network")
            if any(len(row) != node.card for row in self.rows[idx].values()):
                raise ShapeMismatchError(f"Rows of node '{node.name}' must have {node.card} entries")

    def is_strictly_positive(self) -> bool:
        return all(value > 0 for table in self.rows for row in table.values() for value in row)

    def to_float(self) -> "ParameterAssignment":
        if self.mode is ArithmeticMode.FLOAT:
            return self
        rows = tuple(
            {config: tuple(float(v) for v in row) for config, row in table.items()} for table in self.rows
        )
        return ParameterAssignment(rows, ArithmeticMode.FLOAT)


def free_parameters(net: NetworkSpec) -> list[FreeParameter]:
    """Free coordinates in Jacobian column order; the last state of every row is dropped."""
    return [
        (idx, config, state)
        for idx, node in enumerate(net.nodes)
        for config in net.parent_configurations(idx)
        for state in range(node.card - 1)
    ]


def sample_parameters(
    net: NetworkSpec, seed: int, mode: ArithmeticMode = ArithmeticMode.RATIONAL
) -> ParameterAssignment:
    """Draw strictly positive rows deterministically from `seed`.

    Numerators are uniform integers in 1..1000, normalized per row. Float mode
    returns the float image of the same rational draw.
    """
    mode = ArithmeticMode(mode)
    rng = np.random.default_rng(seed)
    low, high = SAMPLE_NUMERATOR_RANGE

    rows = []
    for idx, node in enumerate(net.nodes):
        table = {}
        for config in net.parent_configurations(idx):
            numerators = [int(v) for v in rng.integers(low, high + 1, size=node.card)]
            total = sum(numerators)
            if mode is ArithmeticMode.RATIONAL:
                table[config] = tuple(Fraction(v, total) for v in numerators)
            else:
                table[config] = tuple(v / total for v in numerators)
        rows.append(table)

    return ParameterAssignment(tuple(rows), mode)


def parent_state(net: NetworkSpec, node: int, index: tuple[int, ...]) -> tuple[int, ...]:
    """Parent configuration selected by a full multi-index."""
    return tuple(index[p] for p in net.parents_of(node))


def forward_map(net: NetworkSpec, params: ParameterAssignment) -> JointTable:
    """Joint table θ_x = ∏_i w_{i, j(x), x_i} over all full multi-indices, row-major."""
    params.validate_for(net)

    values = []
    for index in product(*(range(card) for card in net.cards)):
        values.append(
            math.prod(params.value(i, parent_state(net, i, index), index[i]) for i in range(len(net.nodes)))
        )

    dtype = object if params.mode is ArithmeticMode.RATIONAL else np.float64
    cells = np.array(values, dtype=dtype).reshape(net.cards)
    return JointTable(net.names, net.cards, cells, params.mode)
