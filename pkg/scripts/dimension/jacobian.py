"""Jacobian of the observable parametrization with respect to the free parameters."""

import logging
import math
from itertools import product

import numpy as np

from scripts.components.constants import ArithmeticMode
from scripts.components.network import NetworkSpec
from scripts.components.parameters import ParameterAssignment, free_parameters, parent_state
from scripts.components.polynomial import linear_id

logger = logging.getLogger(__name__)


def jacobian(net: NetworkSpec, params: ParameterAssignment) -> np.ndarray:
    """Matrix of ∂θ_y/∂w over observable cells y (row-major) and free parameters w.

    The last state of every CPT row is eliminated as 1 minus the others, so a
    joint cell with x_i equal to the last state contributes the negated
    cofactor to every free state of that row.

    Returns:
        Object array of Fraction for rational parameters, float64 otherwise

    Raises:
        ValueError: if any parameter is not strictly positive
    """
    params.validate_for(net)
    if not params.is_strictly_positive():
        raise ValueError("Jacobian needs strictly positive parameters")

    columns = {param: col for col, param in enumerate(free_parameters(net))}
    observed = net.observed
    obs_cards = net.observed_cards
    n_rows = math.prod(obs_cards)
    rational = params.mode is ArithmeticMode.RATIONAL

    matrix = np.zeros((n_rows, len(columns)), dtype=object if rational else np.float64)
    if rational:
        matrix[:] = 0

    for index in product(*(range(card) for card in net.cards)):
        row = linear_id(tuple(index[pos] for pos in observed), obs_cards)
        factors = [params.value(i, parent_state(net, i, index), index[i]) for i in range(len(net.nodes))]

        for i, node in enumerate(net.nodes):
            cofactor = math.prod(factors[:i] + factors[i + 1 :])
            config = parent_state(net, i, index)
            state = index[i]
            if state < node.card - 1:
                matrix[row, columns[(i, config, state)]] += cofactor
            else:
                for free_state in range(node.card - 1):
                    matrix[row, columns[(i, config, free_state)]] -= cofactor

    logger.debug(f"Jacobian has shape {matrix.shape}")
    return matrix
