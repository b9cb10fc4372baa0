"""Unit tests for exact polynomial arithmetic."""

from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scripts.components.errors import ShapeMismatchError
from scripts.components.polynomial import (
    Polynomial,
    canonical_text,
    determinant,
    evaluate,
    linear_id,
    marginal_coordinate,
    parse_canonical_text,
)
from scripts.components.tables import random_simplex_table

CARDS = (2, 2)


def x(*index):
    return Polynomial.variable(index)


indices = st.tuples(st.integers(0, 1), st.integers(0, 1))
terms = st.tuples(st.integers(-5, 5), st.lists(indices, max_size=3))
polynomials = st.lists(terms, max_size=4).map(
    lambda items: reduce(
        lambda acc, term: acc + term[0] * reduce(lambda m, idx: m * x(*idx), term[1], Polynomial.constant(1)),
        items,
        Polynomial.zero(),
    )
)


class TestPolynomialBasics:
    """Test construction, degree and ordering."""

    def test_zero(self):
        assert Polynomial.zero().is_zero()
        assert Polynomial.zero().degree == -1
        assert canonical_text(Polynomial.zero()) == "0"

    def test_cancellation(self):
        assert (x(0, 0) * x(1, 1) - x(1, 1) * x(0, 0)).is_zero()

    def test_degree_and_norm(self):
        p = 3 * x(0, 0) ** 2 * x(1, 0) - Fraction(1, 2) * x(0, 1) + 1
        assert p.degree == 3
        assert p.coefficient_norm() == Fraction(9, 2)
        assert p.indeterminates() == {(0, 0), (1, 0), (0, 1)}

    def test_leading_term_and_sign(self):
        p = x(0, 1) * x(1, 0) - x(0, 0) * x(1, 1)
        monomial, coeff = p.leading_term()
        assert monomial == (((0, 0), 1), ((1, 1), 1))
        assert coeff == -1
        assert p.normalized_sign() == -p

    def test_linear_id_row_major(self):
        assert linear_id((1, 0, 1), (2, 2, 2)) == 5
        assert linear_id((0, 2), (2, 3)) == 2
        with pytest.raises(ShapeMismatchError):
            linear_id((2, 0), (2, 3))


class TestCanonicalText:
    """Test the canonical text format and its parser."""

    def test_determinant_text(self):
        p = determinant([[x(0, 0), x(0, 1)], [x(1, 0), x(1, 1)]])
        assert canonical_text(p) == "+1 t[0,0]t[1,1] -1 t[0,1]t[1,0]"

    def test_powers_fractions_and_constants(self):
        p = x(1, 0) ** 2 + Fraction(-2, 3) * x(0, 1) + 5
        assert canonical_text(p) == "+1 t[1,0]^2 -2/3 t[0,1] +5"

    def test_higher_degree_first(self):
        p = x(0, 0) + x(1, 1) * x(1, 1) * x(0, 1)
        assert canonical_text(p) == "+1 t[0,1]t[1,1]^2 +1 t[0,0]"

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_canonical_text("+1 q[0]")
        with pytest.raises(ValueError):
            parse_canonical_text("t[0,0]")

    @given(polynomials)
    def test_text_round_trip(self, p):
        assert parse_canonical_text(canonical_text(p)) == p


class TestRingAxioms:
    """Randomized checks of the ring operations and of evaluation."""

    @given(polynomials, polynomials)
    def test_commutative(self, p, q):
        assert p + q == q + p
        assert p * q == q * p

    @given(polynomials, polynomials, polynomials)
    @settings(max_examples=50)
    def test_distributive(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(polynomials, polynomials, st.integers(0, 50))
    @settings(max_examples=50)
    def test_evaluate_is_homomorphism(self, p, q, seed):
        table = random_simplex_table(CARDS, seed)
        assert evaluate(p + q, table) == evaluate(p, table) + evaluate(q, table)
        assert evaluate(p * q, table) == evaluate(p, table) * evaluate(q, table)


class TestDeterminant:
    """Test the Leibniz determinant."""

    def test_constant_matrix(self):
        values = [[2, 0, 1], [1, 3, 2], [1, 1, 2]]
        matrix = [[Polynomial.constant(v) for v in row] for row in values]
        assert determinant(matrix) == Polynomial.constant(6)

    def test_vandermonde_like(self):
        a, b = x(0, 0), x(0, 1)
        assert determinant([[Polynomial.constant(1), a], [Polynomial.constant(1), b]]) == b - a

    def test_rejects_large_and_non_square(self):
        big = [[Polynomial.constant(int(i == j)) for j in range(5)] for i in range(5)]
        with pytest.raises(ValueError, match="exceeds"):
            determinant(big)
        with pytest.raises(ValueError, match="square"):
            determinant([[x(0, 0), x(0, 1)]])


class TestEvaluate:
    """Test evaluation and marginal coordinates."""

    def test_exact_value(self):
        table = random_simplex_table(CARDS, 1)
        p = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0)
        cells = table.cells
        assert evaluate(p, table) == cells[0, 0] * cells[1, 1] - cells[0, 1] * cells[1, 0]

    def test_float_value(self):
        table = random_simplex_table(CARDS, 1)
        p = x(0, 0) + x(0, 1) + x(1, 0) + x(1, 1)
        assert abs(evaluate(p, table.to_float()) - 1.0) < 1e-12

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            evaluate(x(0, 0, 0), random_simplex_table(CARDS, 1))

    def test_marginal_coordinate(self, chain_net):
        assert marginal_coordinate(chain_net, [0, "+", 1]) == x(0, 0, 1) + x(0, 1, 1)
        assert marginal_coordinate(chain_net, ["+", "+", "+"]).degree == 1

    def test_marginal_coordinate_errors(self, chain_net):
        with pytest.raises(ShapeMismatchError, match="invalid pattern entry"):
            marginal_coordinate(chain_net, [0, 2, "+"])
        with pytest.raises(ShapeMismatchError):
            marginal_coordinate(chain_net, [0, "+"])
