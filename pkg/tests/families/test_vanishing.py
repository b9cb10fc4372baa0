"""Unit tests for vanishing checks, the fit statistic and flattening minors."""

from fractions import Fraction

import pytest

from scripts.components.constants import ArithmeticMode
from scripts.components.errors import ShapeMismatchError
from scripts.components.parameters import forward_map, sample_parameters
from scripts.components.tables import marginalize, mix_tables, product_table, random_simplex_table
from scripts.dimension.naive_bayes import NaiveBayesSpec
from scripts.families import (
    CubicFamily,
    FamilyRegistry,
    NB2FlatteningFamily,
    QuadraticFamily,
    SexticFamily,
    check_vanishing,
    complete_independence_test,
    fit_statistic,
    genericity_sweep,
    nb2_flattening_constraints,
    vanishing_sweep,
)


def _model_table(net, seed, mode=ArithmeticMode.RATIONAL):
    return marginalize(forward_map(net, sample_parameters(net, seed, mode)), net.hidden)


@pytest.fixture
def nb2_constraints():
    return nb2_flattening_constraints(NaiveBayesSpec(2, (3, 3)))


class TestNB2Flattening:
    """3x3 minors of flattenings for two-class naive Bayes."""

    def test_single_determinant(self, nb2_constraints):
        assert len(nb2_constraints) == 1
        assert nb2_constraints.degree == 3

    def test_empty_for_binary_features(self, caplog):
        cs = nb2_flattening_constraints(NaiveBayesSpec(2, (2, 2, 2)))
        assert len(cs) == 0
        assert "empty" in caplog.text

    def test_vanish_on_model(self, nb2_constraints, nb_233_net):
        assert vanishing_sweep(nb2_constraints, nb_233_net, range(100)).all_passed
        assert genericity_sweep(nb2_constraints, range(100)).passed >= 99

    def test_three_features(self):
        nb = NaiveBayesSpec(2, (3, 3, 2))
        cs = nb2_flattening_constraints(nb)
        assert len(cs) > 0
        assert vanishing_sweep(cs, nb.to_network(), range(5)).all_passed

    def test_binary_binary_ternary_features(self):
        nb = NaiveBayesSpec(2, (2, 2, 3))
        cs = nb2_flattening_constraints(nb)
        assert len(cs) == 4
        assert vanishing_sweep(cs, nb.to_network(), range(100)).all_passed

    def test_shape_checks(self, chain_net):
        with pytest.raises(ShapeMismatchError, match="r = 2"):
            nb2_flattening_constraints(NaiveBayesSpec(3, (3, 3)))
        with pytest.raises(ShapeMismatchError, match="binary class"):
            NB2FlatteningFamily(NaiveBayesSpec(3, (3, 3)).to_network())
        with pytest.raises(ShapeMismatchError, match="naive Bayes"):
            NB2FlatteningFamily(chain_net)


class TestCheckVanishing:
    """Test per-generator residual reports."""

    def test_rational_report(self, nb2_constraints, nb_233_net):
        report = check_vanishing(nb2_constraints, _model_table(nb_233_net, 3))
        assert report.all_vanish
        assert report.to_dict()["residuals"] == [{"index": 0, "residual": "0", "vanishes": True}]

    def test_random_table_fails(self, nb2_constraints):
        report = check_vanishing(nb2_constraints, random_simplex_table((3, 3), 1))
        assert not report.all_vanish
        assert report.nonvanishing == [0]
        assert isinstance(report.residuals[0].residual, Fraction)

    def test_float_mode(self, nb2_constraints, nb_233_net):
        table = _model_table(nb_233_net, 3, ArithmeticMode.FLOAT)
        assert check_vanishing(nb2_constraints, table, ArithmeticMode.FLOAT, tol=1e-9).all_vanish
        random = random_simplex_table((3, 3), 1, ArithmeticMode.FLOAT)
        assert not check_vanishing(nb2_constraints, random, ArithmeticMode.FLOAT, tol=1e-9).all_vanish

    def test_rational_mode_needs_rational_table(self, nb2_constraints):
        with pytest.raises(ValueError, match="rational table"):
            check_vanishing(nb2_constraints, random_simplex_table((3, 3), 1, ArithmeticMode.FLOAT))

    def test_shape_mismatch(self, nb2_constraints):
        with pytest.raises(ShapeMismatchError):
            check_vanishing(nb2_constraints, random_simplex_table((2, 2), 1))

    def test_fit_statistic(self, nb2_constraints, nb_233_net):
        assert fit_statistic(nb2_constraints, _model_table(nb_233_net, 5)) < 1e-12
        assert fit_statistic(nb2_constraints, random_simplex_table((3, 3), 5)) > 0
        empty = nb2_flattening_constraints(NaiveBayesSpec(2, (2, 2)))
        assert fit_statistic(empty, random_simplex_table((2, 2), 5)) == 0.0


class TestCompleteIndependence:
    """Product tables are exactly the completely independent ones."""

    def test_product_tables_pass(self):
        for seed in range(100):
            marginals = [random_simplex_table((card,), seed + 1000 * pos).cells for pos, card in enumerate((2, 3, 2))]
            assert complete_independence_test(product_table(marginals))

    def test_two_class_mixtures_fail(self, nb_233_net):
        for seed in range(100):
            assert not complete_independence_test(_model_table(nb_233_net, seed))

    def test_float_tables(self):
        table = product_table([[0.25, 0.75], [0.5, 0.5]], ArithmeticMode.FLOAT)
        assert complete_independence_test(table)


class TestFamilyRegistry:
    """Test family lookup."""

    def test_create_each_family(self, nb_233_net):
        quadratic = QuadraticFamily.model_network((2, 2, 2), 2)
        cubic = CubicFamily.model_network((3, 3, 2), 2)
        sextic = SexticFamily.model_network((2, 3, 3), 2)
        assert isinstance(FamilyRegistry.create("QUADRATIC_5_1", quadratic), QuadraticFamily)
        assert isinstance(FamilyRegistry.create("cubic_5_2", cubic), CubicFamily)
        assert isinstance(FamilyRegistry.create("SEXTIC_5_3", sextic), SexticFamily)
        assert isinstance(FamilyRegistry.create("NB2_FLATTENING", nb_233_net), NB2FlatteningFamily)

    def test_unknown_family(self, nb_233_net):
        with pytest.raises(ValueError, match="Unknown constraint family"):
            FamilyRegistry.create("QUARTIC", nb_233_net)

    def test_shape_mismatch(self, nb_233_net):
        with pytest.raises(ShapeMismatchError):
            FamilyRegistry.create("SEXTIC_5_3", nb_233_net)

    def test_families(self):
        assert set(FamilyRegistry.families()) == {
            "CI_MINORS",
            "NB2_FLATTENING",
            "QUADRATIC_5_1",
            "CUBIC_5_2",
            "SEXTIC_5_3",
        }


class TestFitStatistic:
    """The fit statistic grows as a model table is mixed with noise."""

    def test_monotone_in_noise_weight(self, nb2_constraints, nb_233_net):
        fits = []
        for weight in (0.0, 0.1, 0.2):
            values = [
                fit_statistic(
                    nb2_constraints,
                    mix_tables(
                        _model_table(nb_233_net, seed, ArithmeticMode.FLOAT),
                        random_simplex_table((3, 3), seed + 500, ArithmeticMode.FLOAT),
                        weight,
                    ),
                )
                for seed in range(20)
            ]
            fits.append(sum(values) / len(values))
        assert fits[0] < 1e-12
        assert fits[0] < fits[1] < fits[2]
