"""Discrete Bayesian network structure, its JSON document format and graph queries."""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any

import networkx as nx

from scripts.components.constants import FORMAT_TAG
from scripts.components.errors import NetworkParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    """A network variable with `card` states."""

    name: str
    card: int
    parents: tuple[int, ...] = ()
    hidden: bool = False


@dataclass(frozen=True)
class NetworkSpec:
    """DAG with node cardinalities and a hidden/observed split.

    Node order is document order and fixes the row-major linearization used by
    every table, indeterminate and flattening in the toolkit.
    """

    nodes: tuple[Node, ...]

    def __post_init__(self):
        names = [node.name for node in self.nodes]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise NetworkParseError(f"duplicate name: {', '.join(duplicates)}")

        for node in self.nodes:
            if node.card < 2:
                raise NetworkParseError(f"cardinality < 2 for node '{node.name}' (got {node.card})")
            for parent in node.parents:
                if not 0 <= parent < len(self.nodes):
                    raise NetworkParseError(f"unknown parent index {parent} for node '{node.name}'")

        if not nx.is_directed_acyclic_graph(self.graph):
            raise NetworkParseError("cycle detected")

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        for idx, node in enumerate(self.nodes):
            graph.add_edges_from((parent, idx) for parent in node.parents)
        return graph

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(node.name for node in self.nodes)

    @property
    def cards(self) -> tuple[int, ...]:
        return tuple(node.card for node in self.nodes)

    @property
    def observed(self) -> tuple[int, ...]:
        return tuple(idx for idx, node in enumerate(self.nodes) if not node.hidden)

    @property
    def hidden(self) -> tuple[int, ...]:
        return tuple(idx for idx, node in enumerate(self.nodes) if node.hidden)

    @property
    def observed_cards(self) -> tuple[int, ...]:
        return tuple(self.nodes[idx].card for idx in self.observed)

    @property
    def observed_names(self) -> tuple[str, ...]:
        return tuple(self.nodes[idx].name for idx in self.observed)

    @property
    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"Unknown node name: {name}") from None

    def parents_of(self, idx: int) -> tuple[int, ...]:
        """Parents of node `idx`, sorted by node index."""
        return tuple(sorted(self.nodes[idx].parents))

    def parent_configurations(self, idx: int) -> list[tuple[int, ...]]:
        """Joint parent states of node `idx` in row-major order over sorted parents."""
        return list(product(*(range(self.nodes[p].card) for p in self.parents_of(idx))))

    def descendants(self, idx: int) -> set[int]:
        return nx.descendants(self.graph, idx)

    def ancestors(self, nodes: set[int]) -> set[int]:
        result = set(nodes)
        for node in nodes:
            result |= nx.ancestors(self.graph, node)
        return result


@dataclass(frozen=True)
class CIStatement:
    """Conditional independence statement A ⊥ B | C over node indices."""

    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        object.__setattr__(self, "C", frozenset(self.C))
        if not self.A or not self.B:
            raise ValueError("CI statement needs nonempty A and B blocks")
        if self.A & self.B or self.A & self.C or self.B & self.C:
            raise ValueError("overlap among A, B, C in CI statement")

    @property
    def nodes(self) -> frozenset[int]:
        return self.A | self.B | self.C

    def validate_for(self, net: NetworkSpec) -> None:
        invalid = sorted(idx for idx in self.nodes if not 0 <= idx < len(net.nodes))
        if invalid:
            raise ValueError(f"CI statement refers to unknown node indices {invalid}")

    def label(self, net: NetworkSpec) -> str:
        def block(indices):
            return ",".join(net.nodes[idx].name for idx in sorted(indices)) or "{}"

        return f"{block(self.A)} _||_ {block(self.B)} | {block(self.C)}"


def network_from_dict(doc: dict[str, Any]) -> NetworkSpec:
    """Build a NetworkSpec from a decoded network document."""
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise NetworkParseError("Network document must be an object with a 'nodes' list")

    fmt = doc.get("format")
    if fmt is None:
        logger.warning(f"Network document has no 'format' field, assuming {FORMAT_TAG}")
    elif fmt != FORMAT_TAG:
        raise NetworkParseError(f"Unsupported format '{fmt}' (expected {FORMAT_TAG})")

    raw_nodes = doc["nodes"]
    names = []
    for raw in raw_nodes:
        if not isinstance(raw, dict) or not isinstance(raw.get("name"), str):
            raise NetworkParseError(f"Every node needs a string 'name': {raw!r}")
        names.append(raw["name"])

    index = {}
    for idx, name in enumerate(names):
        if name in index:
            raise NetworkParseError(f"duplicate name: {name}")
        index[name] = idx

    nodes = []
    for raw in raw_nodes:
        card = raw.get("card")
        if isinstance(card, bool) or not isinstance(card, int):
            raise NetworkParseError(f"Node '{raw['name']}' needs an integer 'card'")
        if card < 2:
            raise NetworkParseError(f"cardinality < 2 for node '{raw['name']}' (got {card})")

        parent_names = raw.get("parents", [])
        if not isinstance(parent_names, list):
            raise NetworkParseError(f"Node '{raw['name']}' has non-list 'parents'")
        parents = []
        for parent in parent_names:
            if parent not in index:
                raise NetworkParseError(f"unknown parent '{parent}' for node '{raw['name']}'")
            parents.append(index[parent])

        hidden = raw.get("hidden", False)
        if not isinstance(hidden, bool):
            raise NetworkParseError(f"Node '{raw['name']}' has non-boolean 'hidden'")

        nodes.append(Node(name=raw["name"], card=card, parents=tuple(sorted(set(parents))), hidden=hidden))

    return NetworkSpec(tuple(nodes))


def parse_network(text: str) -> NetworkSpec:
    """Parse a network-spec JSON document.

    Args:
        text: Document text, {"format": "bnalg-v1", "nodes": [...]}

    Returns:
        Validated NetworkSpec in document order

    Raises:
        NetworkParseError: malformed JSON, cycle, duplicate name, cardinality < 2, unknown parent
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(f"Malformed network JSON: {e}") from e

    net = network_from_dict(doc)
    logger.debug(f"Parsed network with {len(net.nodes)} nodes and {net.num_edges} edges")
    return net


def network_to_dict(net: NetworkSpec) -> dict[str, Any]:
    return {
        "format": FORMAT_TAG,
        "nodes": [
            {
                "name": node.name,
                "card": node.card,
                "parents": [net.nodes[p].name for p in sorted(node.parents)],
                "hidden": node.hidden,
            }
            for node in net.nodes
        ],
    }


def serialize_network(net: NetworkSpec) -> str:
    return json.dumps(network_to_dict(net), indent=2)


def network_digest(net: NetworkSpec) -> str:
    """Content hash of the canonical network document."""
    return hashlib.sha256(serialize_network(net).encode("utf-8")).hexdigest()


def standard_dimension(net: NetworkSpec) -> int:
    """Number of free parameters: sum over nodes of (r_i - 1) times the parent state count."""
    return sum(
        (node.card - 1) * math.prod(net.nodes[p].card for p in node.parents) for node in net.nodes
    )


def complete_dimension(net: NetworkSpec) -> int:
    """Dimension of the simplex over all joint states, hidden nodes included."""
    return math.prod(net.cards) - 1


def observable_complete_dimension(net: NetworkSpec) -> int:
    """Dimension of the simplex over observed joint states."""
    return math.prod(net.observed_cards) - 1


def d_separated(net: NetworkSpec, stmt: CIStatement) -> bool:
    """Check whether A and B are d-separated given C (Bayes ball reachability).

    A trail leaves A and is tracked with the direction it entered each node.
    It passes a non-collider only if that node is outside C, and a collider
    only if the collider has a descendant in C.
    """
    stmt.validate_for(net)
    graph = net.graph

    # Colliders are open when they are ancestors of (or in) C
    shaded = net.ancestors(set(stmt.C))

    from_child, from_parent = "child", "parent"
    schedule = [(node, from_child) for node in sorted(stmt.A)]
    visited = set()

    while schedule:
        node, direction = schedule.pop()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))

        if node in stmt.B:
            return False

        if direction == from_child and node not in stmt.C:
            schedule.extend((parent, from_child) for parent in graph.predecessors(node))
            schedule.extend((child, from_parent) for child in graph.successors(node))

        if direction == from_parent:
            if node in shaded:
                schedule.extend((parent, from_child) for parent in graph.predecessors(node))
            if node not in stmt.C:
                schedule.extend((child, from_parent) for child in graph.successors(node))

    return True


def local_markov_statements(net: NetworkSpec) -> list[CIStatement]:
    """Statements X_i ⊥ nondescendants(X_i) minus parents | parents, empty second blocks omitted."""
    statements = []
    all_nodes = set(range(len(net.nodes)))
    for idx in range(len(net.nodes)):
        parents = set(net.parents_of(idx))
        nondescendants = all_nodes - net.descendants(idx) - {idx}
        rest = nondescendants - parents
        if rest:
            statements.append(CIStatement(frozenset({idx}), frozenset(rest), frozenset(parents)))
    return statements


def parse_statement(net: NetworkSpec, text: str) -> CIStatement:
    """Parse "A|B|C" with comma-separated node names per block; C may be empty."""
    blocks = text.split("|")
    if len(blocks) == 2:
        blocks.append("")
    if len(blocks) != 3:
        raise ValueError(f"Statement must look like 'A|B|C', got '{text}'")

    def indices(block: str) -> frozenset[int]:
        return frozenset(net.index_of(name.strip()) for name in block.split(",") if name.strip())

    return CIStatement(*(indices(block) for block in blocks))
