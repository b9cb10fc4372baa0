"""Shared networks for the test suite."""

import json

import pytest

from scripts.components.network import NetworkSpec, Node, network_to_dict
from scripts.dimension.naive_bayes import NaiveBayesSpec


@pytest.fixture
def chain_net():
    """Chain X3 -> X1 -> X2, all binary and observed."""
    return NetworkSpec(
        (
            Node("X1", 2, parents=(2,)),
            Node("X2", 2, parents=(0,)),
            Node("X3", 2),
        )
    )


@pytest.fixture
def nb_233_net():
    return NaiveBayesSpec(2, (3, 3)).to_network()


@pytest.fixture
def write_network(tmp_path):
    """Write a network document to tmp_path and return its path."""

    def _write(net, name="net.json"):
        path = tmp_path / name
        path.write_text(json.dumps(network_to_dict(net), indent=2))
        return path

    return _write
