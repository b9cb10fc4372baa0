"""2×2 minors generating conditional independence ideals on observable tables."""

import logging
from itertools import product

from scripts.components.constants import MARGINAL_TOKEN, ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.components.network import CIStatement, NetworkSpec, local_markov_statements, parse_statement
from scripts.components.polynomial import Polynomial, marginal_coordinate
from scripts.families.base_family import BaseFamily
from scripts.families.constraint_set import ConstraintSet, minors

logger = logging.getLogger(__name__)


def _statement_minors(net: NetworkSpec, stmt: CIStatement) -> list[tuple[str, Polynomial]]:
    stmt.validate_for(net)
    hidden = sorted(idx for idx in stmt.nodes if net.nodes[idx].hidden)
    if hidden:
        names = ", ".join(net.nodes[idx].name for idx in hidden)
        raise ShapeMismatchError(f"CI minors need observed nodes only; {names} hidden")

    position = {node: pos for pos, node in enumerate(net.observed)}
    a_nodes, b_nodes, c_nodes = sorted(stmt.A), sorted(stmt.B), sorted(stmt.C)

    def states(nodes):
        return list(product(*(range(net.nodes[idx].card) for idx in nodes)))

    labelled = []
    for c_state in states(c_nodes):
        matrix = []
        for a_state in states(a_nodes):
            row = []
            for b_state in states(b_nodes):
                # Observed nodes outside the statement are summed out
                pattern: list[int | str] = [MARGINAL_TOKEN] * len(net.observed)
                for nodes, values in ((a_nodes, a_state), (b_nodes, b_state), (c_nodes, c_state)):
                    for node, value in zip(nodes, values, strict=True):
                        pattern[position[node]] = value
                row.append(marginal_coordinate(net, pattern))
            matrix.append(row)

        given = ",".join(f"{net.nodes[n].name}={s}" for n, s in zip(c_nodes, c_state, strict=True)) or "-"
        for rows, cols, minor in minors(matrix, 2):
            labelled.append((f"{stmt.label(net)}; given {given}; rows {list(rows)}; cols {list(cols)}", minor))
    return labelled


def ci_minor_ideal(net: NetworkSpec, stmt: CIStatement) -> ConstraintSet:
    """All 2×2 minors of the A-by-B matrices, one matrix per joint state of C.

    Args:
        net: Network whose observed nodes index the indeterminates
        stmt: Statement over observed nodes only

    Returns:
        CI_MINORS constraint set of degree 2
    """
    cs = ConstraintSet.build(ConstraintFamily.CI_MINORS, 2, net.observed_cards, _statement_minors(net, stmt))
    logger.info(f"Generated {len(cs)} CI minors for {stmt.label(net)}")
    return cs


class CIMinorsFamily(BaseFamily):
    """CI minors for one statement, or for every fully observed local Markov statement."""

    family = ConstraintFamily.CI_MINORS
    degree = 2

    def check_shape(self) -> None:
        if len(self.net.observed) < 2:
            raise ShapeMismatchError("CI minors need at least two observed nodes")
        statement = self.options.get("statement")
        if statement is not None:
            stmt = parse_statement(self.net, statement) if isinstance(statement, str) else statement
            if any(self.net.nodes[idx].hidden for idx in stmt.nodes):
                raise ShapeMismatchError(f"Statement {stmt.label(self.net)} mentions hidden nodes")

    def statements(self) -> list[CIStatement]:
        statement = self.options.get("statement")
        if statement is not None:
            return [parse_statement(self.net, statement) if isinstance(statement, str) else statement]
        return [
            stmt
            for stmt in local_markov_statements(self.net)
            if not any(self.net.nodes[idx].hidden for idx in stmt.nodes)
        ]

    def generate(self) -> ConstraintSet:
        labelled = []
        for stmt in self.statements():
            labelled.extend(_statement_minors(self.net, stmt))
        cs = ConstraintSet.build(self.family, self.degree, self.net.observed_cards, labelled)
        if not cs:
            logger.warning("No fully observed CI statement produced a 2x2 minor")
        return cs
