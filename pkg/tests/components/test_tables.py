"""Unit tests for probability tables, parameters and the forward map."""

from fractions import Fraction

import numpy as np
import pytest

from scripts.components.constants import ArithmeticMode
from scripts.components.errors import NetworkParseError, ShapeMismatchError
from scripts.components.parameters import (
    ParameterAssignment,
    forward_map,
    free_parameters,
    sample_parameters,
)
from scripts.components.tables import (
    ObservableTable,
    marginalize,
    mix_tables,
    product_table,
    random_simplex_table,
    table_from_dict,
    table_to_dict,
    uniform_table,
    univariate_marginals,
)

F = Fraction


@pytest.fixture
def chain_params():
    return ParameterAssignment(
        (
            {(0,): (F(1, 2), F(1, 2)), (1,): (F(1, 4), F(3, 4))},
            {(0,): (F(1, 3), F(2, 3)), (1,): (F(1), F(0))},
            {(): (F(1, 5), F(4, 5))},
        )
    )


class TestProbabilityTable:
    """Test table construction and validation."""

    def test_rational_sum_must_be_exact(self):
        with pytest.raises(ValueError, match="expected exactly 1"):
            ObservableTable(("X1",), (2,), np.array([F(1, 2), F(1, 3)], dtype=object))

    def test_negative_entries_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            ObservableTable(("X1",), (2,), np.array([F(3, 2), F(-1, 2)], dtype=object))

    def test_float_cells_rejected_in_rational_table(self):
        with pytest.raises(ValueError, match="Float cell"):
            ObservableTable(("X1",), (2,), np.array([0.5, 0.5], dtype=object))

    def test_shape_checked(self):
        with pytest.raises(ShapeMismatchError):
            ObservableTable(("X1", "X2"), (2, 2), np.array([F(1, 3)] * 3, dtype=object))

    def test_cells_are_read_only(self):
        table = uniform_table((2, 2))
        with pytest.raises(ValueError):
            table.cells[0, 0] = F(1)

    def test_to_float(self):
        table = uniform_table((2, 3)).to_float()
        assert table.mode is ArithmeticMode.FLOAT
        assert table.cells.dtype == np.float64
        assert abs(table.total() - 1.0) < 1e-12

    def test_random_simplex_deterministic(self):
        assert random_simplex_table((2, 3, 3), 5) == random_simplex_table((2, 3, 3), 5)
        assert random_simplex_table((2, 3, 3), 5) != random_simplex_table((2, 3, 3), 6)
        assert random_simplex_table((2, 3, 3), 5).total() == 1

    def test_product_table_marginals(self):
        table = product_table([[F(1, 3), F(2, 3)], [F(1, 4), F(1, 4), F(1, 2)]])
        first, second = univariate_marginals(table)
        assert list(first) == [F(1, 3), F(2, 3)]
        assert list(second) == [F(1, 4), F(1, 4), F(1, 2)]
        assert table.cell((1, 2)) == F(1, 3)

    def test_mix_tables_exact(self):
        mixed = mix_tables(uniform_table((2,)), product_table([[F(1), F(0)]]), F(1, 2))
        assert list(mixed.cells) == [F(3, 4), F(1, 4)]

    def test_table_document(self):
        table = random_simplex_table((2, 2), 3)
        doc = table_to_dict(table)
        assert doc["format"] == "bnalg-v1"
        assert all(isinstance(c, str) and "/" in c for c in doc["cells"])
        assert table_from_dict(doc) == table

    def test_table_document_rejects_bad_cells(self):
        with pytest.raises(NetworkParseError, match="Invalid table cell"):
            table_from_dict({"mode": "rational", "cards": [2], "cells": ["1/2", "x"]})

    def test_table_document_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            table_from_dict({"mode": "rational", "cards": [3], "cells": ["1/2", "1/2"]})


class TestParameters:
    """Test parameter validation, sampling and the forward map."""

    def test_row_must_sum_to_one(self):
        with pytest.raises(ValueError, match="expected exactly 1"):
            ParameterAssignment(({(): (F(1, 2), F(1, 3))},))

    def test_entries_in_unit_interval(self):
        with pytest.raises(ValueError, match=r"outside \[0, 1\]"):
            ParameterAssignment(({(): (F(3, 2), F(-1, 2))},))

    def test_shape_mismatch(self, chain_net):
        params = ParameterAssignment(({(): (F(1, 2), F(1, 2))},))
        with pytest.raises(ShapeMismatchError):
            forward_map(chain_net, params)

    def test_free_parameters_drop_last_state(self, chain_net):
        assert free_parameters(chain_net) == [(0, (0,), 0), (0, (1,), 0), (1, (0,), 0), (1, (1,), 0), (2, (), 0)]

    def test_forward_map_cells(self, chain_net, chain_params):
        joint = forward_map(chain_net, chain_params)
        assert joint.total() == 1
        # theta_x = w3[x3] * w1[x3][x1] * w2[x1][x2]
        assert joint.cell((0, 0, 0)) == F(1, 5) * F(1, 2) * F(1, 3)
        assert joint.cell((1, 1, 1)) == 0
        assert joint.cell((1, 0, 1)) == F(4, 5) * F(3, 4)

    def test_sampling_is_deterministic(self, chain_net):
        assert sample_parameters(chain_net, 11) == sample_parameters(chain_net, 11)
        assert sample_parameters(chain_net, 11).is_strictly_positive()

    def test_float_sample_is_image_of_rational(self, chain_net):
        exact = sample_parameters(chain_net, 4)
        approx = sample_parameters(chain_net, 4, ArithmeticMode.FLOAT)
        assert approx.mode is ArithmeticMode.FLOAT
        assert approx == exact.to_float()

    def test_marginalize_drops_hidden(self, nb_233_net):
        params = sample_parameters(nb_233_net, 2)
        observable = marginalize(forward_map(nb_233_net, params), nb_233_net.hidden)
        assert observable.names == ("X1", "X2")
        assert observable.cards == (3, 3)
        assert observable.total() == 1

    def test_marginalize_rejects_bad_position(self, chain_net, chain_params):
        with pytest.raises(ValueError, match="out of range"):
            marginalize(forward_map(chain_net, chain_params), [5])
