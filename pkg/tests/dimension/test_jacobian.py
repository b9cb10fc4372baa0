"""Unit tests for the analytic Jacobian of the observable map."""

from fractions import Fraction

import numpy as np
import pytest

from scripts.components.constants import ArithmeticMode
from scripts.components.network import NetworkSpec, Node, standard_dimension
from scripts.components.parameters import ParameterAssignment, forward_map, free_parameters, sample_parameters
from scripts.components.tables import marginalize
from scripts.dimension import exact_rank, jacobian, rank_at_seed

STEP = 1e-6


def _observable(net, params):
    return marginalize(forward_map(net, params), net.hidden).cells.reshape(-1)


def _shifted(params, param, delta):
    node, config, state = param
    rows = [dict(table) for table in params.rows]
    row = list(rows[node][config])
    row[state] += delta
    row[-1] -= delta
    rows[node][config] = tuple(row)
    return ParameterAssignment(tuple(rows), ArithmeticMode.FLOAT)


def _finite_differences(net, params):
    columns = []
    for param in free_parameters(net):
        forward = _observable(net, _shifted(params, param, STEP))
        backward = _observable(net, _shifted(params, param, -STEP))
        columns.append((forward - backward) / (2 * STEP))
    return np.column_stack(columns)


def _random_network(seed):
    """Two to four nodes of card 2 or 3 with parents among earlier nodes; at most one hidden."""
    rng = np.random.default_rng(seed)
    size = int(rng.integers(2, 5))
    hidden = int(rng.integers(0, size)) if size > 2 and rng.random() < 0.5 else None
    nodes = []
    for idx in range(size):
        parents = tuple(j for j in range(idx) if rng.random() < 0.5)
        nodes.append(Node(f"V{idx}", int(rng.integers(2, 4)), parents=parents, hidden=idx == hidden))
    return NetworkSpec(tuple(nodes))


class TestJacobian:
    """Test shape, values and rank of the Jacobian."""

    def test_single_binary_node(self):
        net = NetworkSpec((Node("A", 2),))
        params = ParameterAssignment(({(): (Fraction(1, 3), Fraction(2, 3))},))
        assert jacobian(net, params).tolist() == [[1], [-1]]

    def test_rejects_zero_parameter(self):
        net = NetworkSpec((Node("A", 2),))
        params = ParameterAssignment(({(): (Fraction(0), Fraction(1))},))
        with pytest.raises(ValueError, match="strictly positive"):
            jacobian(net, params)

    def test_shape_and_dtype(self, nb_233_net):
        exact = jacobian(nb_233_net, sample_parameters(nb_233_net, 1))
        approx = jacobian(nb_233_net, sample_parameters(nb_233_net, 1, ArithmeticMode.FLOAT))
        assert exact.shape == approx.shape == (9, standard_dimension(nb_233_net))
        assert exact.dtype == object
        assert approx.dtype == np.float64
        assert np.allclose(exact.astype(float), approx)

    def test_columns_of_probability_map_sum_to_zero(self, nb_233_net):
        matrix = jacobian(nb_233_net, sample_parameters(nb_233_net, 2))
        assert all(value == 0 for value in matrix.sum(axis=0))

    def test_matches_finite_differences_on_chain(self, chain_net):
        params = sample_parameters(chain_net, 7, ArithmeticMode.FLOAT)
        difference = np.abs(jacobian(chain_net, params) - _finite_differences(chain_net, params))
        assert difference.max() < 1e-6

    def test_matches_finite_differences_with_hidden_node(self, nb_233_net):
        params = sample_parameters(nb_233_net, 8, ArithmeticMode.FLOAT)
        difference = np.abs(jacobian(nb_233_net, params) - _finite_differences(nb_233_net, params))
        assert difference.max() < 1e-6

    def test_fully_observed_rank_is_standard(self, chain_net):
        matrix = jacobian(chain_net, sample_parameters(chain_net, 3))
        assert exact_rank(matrix) == standard_dimension(chain_net) == 5


class TestRandomNetworks:
    """Jacobian checks on small random DAGs."""

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_finite_differences(self, seed):
        net = _random_network(seed)
        params = sample_parameters(net, seed, ArithmeticMode.FLOAT)
        difference = np.abs(jacobian(net, params) - _finite_differences(net, params))
        assert difference.max() < 1e-6

    @pytest.mark.parametrize("seed", range(10))
    def test_exact_and_numeric_rank_agree(self, seed):
        _, exact, numeric = rank_at_seed(_random_network(seed), seed)
        assert exact == numeric
