"""Unit tests for network parsing, dimensions and d-separation."""

import json

import pytest

from scripts.components.errors import NetworkParseError
from scripts.components.network import (
    CIStatement,
    NetworkSpec,
    Node,
    complete_dimension,
    d_separated,
    local_markov_statements,
    network_digest,
    observable_complete_dimension,
    parse_network,
    parse_statement,
    serialize_network,
    standard_dimension,
)


def _doc(nodes):
    return json.dumps({"format": "bnalg-v1", "nodes": nodes})


@pytest.fixture
def collider_net():
    """A -> C <- B, C -> D."""
    return NetworkSpec(
        (
            Node("A", 2),
            Node("B", 2),
            Node("C", 2, parents=(0, 1)),
            Node("D", 2, parents=(2,)),
        )
    )


class TestParseNetwork:
    """Test network document parsing."""

    def test_parse_valid(self):
        net = parse_network(
            _doc(
                [
                    {"name": "X1", "card": 2, "parents": ["X3"]},
                    {"name": "X2", "card": 3, "parents": ["X1"]},
                    {"name": "X3", "card": 2},
                    {"name": "H", "card": 2, "hidden": True},
                ]
            )
        )
        assert net.names == ("X1", "X2", "X3", "H")
        assert net.cards == (2, 3, 2, 2)
        assert net.observed == (0, 1, 2)
        assert net.hidden == (3,)
        assert net.parents_of(1) == (0,)

    def test_cycle_rejected(self):
        nodes = [{"name": "A", "card": 2, "parents": ["B"]}, {"name": "B", "card": 2, "parents": ["A"]}]
        with pytest.raises(NetworkParseError, match="cycle detected"):
            parse_network(_doc(nodes))

    def test_duplicate_name_rejected(self):
        with pytest.raises(NetworkParseError, match="duplicate name"):
            parse_network(_doc([{"name": "A", "card": 2}, {"name": "A", "card": 3}]))

    def test_cardinality_below_two_rejected(self):
        with pytest.raises(NetworkParseError, match="cardinality < 2"):
            parse_network(_doc([{"name": "A", "card": 1}]))

    def test_unknown_parent_rejected(self):
        with pytest.raises(NetworkParseError, match="unknown parent"):
            parse_network(_doc([{"name": "A", "card": 2, "parents": ["Z"]}]))

    def test_malformed_json(self):
        with pytest.raises(NetworkParseError, match="Malformed network JSON"):
            parse_network('{"nodes": [')

    def test_wrong_format_tag(self):
        with pytest.raises(NetworkParseError, match="Unsupported format"):
            parse_network(json.dumps({"format": "other", "nodes": []}))

    def test_serialize_round_trip(self, chain_net):
        assert parse_network(serialize_network(chain_net)) == chain_net

    def test_digest_tracks_content(self, chain_net):
        same = parse_network(serialize_network(chain_net))
        bigger = NetworkSpec((Node("X1", 3, parents=(2,)), Node("X2", 2, parents=(0,)), Node("X3", 2)))
        assert network_digest(same) == network_digest(chain_net)
        assert network_digest(bigger) != network_digest(chain_net)


class TestDimensions:
    """Test parameter and simplex dimension counts."""

    def test_chain(self, chain_net):
        assert standard_dimension(chain_net) == 5
        assert complete_dimension(chain_net) == 7
        assert observable_complete_dimension(chain_net) == 7

    def test_hidden_class(self, nb_233_net):
        assert standard_dimension(nb_233_net) == 9
        assert complete_dimension(nb_233_net) == 17
        assert observable_complete_dimension(nb_233_net) == 8

    def test_parent_configurations_row_major(self):
        net = NetworkSpec((Node("A", 2), Node("B", 3), Node("C", 2, parents=(1, 0))))
        assert net.parent_configurations(2) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


class TestStatements:
    """Test CI statements, d-separation and local Markov statements."""

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            CIStatement(frozenset({0}), frozenset({0, 1}), frozenset())

    def test_empty_block_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            CIStatement(frozenset(), frozenset({1}))

    def test_parse_statement(self, chain_net):
        stmt = parse_statement(chain_net, "X2|X3|X1")
        assert stmt == CIStatement(frozenset({1}), frozenset({2}), frozenset({0}))
        assert stmt.label(chain_net) == "X2 _||_ X3 | X1"

    def test_parse_statement_unknown_name(self, chain_net):
        with pytest.raises(ValueError, match="Unknown node name"):
            parse_statement(chain_net, "X2|X9|X1")

    def test_chain_separation(self, chain_net):
        assert d_separated(chain_net, parse_statement(chain_net, "X2|X3|X1"))
        assert not d_separated(chain_net, parse_statement(chain_net, "X2|X3|"))

    def test_collider(self, collider_net):
        assert d_separated(collider_net, parse_statement(collider_net, "A|B|"))
        assert not d_separated(collider_net, parse_statement(collider_net, "A|B|C"))
        assert not d_separated(collider_net, parse_statement(collider_net, "A|B|D"))
        assert d_separated(collider_net, parse_statement(collider_net, "A|D|C"))

    def test_local_markov_chain(self, chain_net):
        assert local_markov_statements(chain_net) == [CIStatement(frozenset({1}), frozenset({2}), frozenset({0}))]

    def test_local_markov_statements_hold(self, collider_net):
        for stmt in local_markov_statements(collider_net):
            assert d_separated(collider_net, stmt)
