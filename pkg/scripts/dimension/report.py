"""Effective dimension by generic Jacobian rank and the aggregated dimension report."""

import logging
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass

from tqdm import tqdm

from scripts.components.constants import DEFAULT_SEEDS, FORMAT_TAG, ArithmeticMode, Classification
from scripts.components.errors import InvariantViolationError, RankDisagreementError
from scripts.components.network import NetworkSpec, observable_complete_dimension, standard_dimension
from scripts.components.parameters import sample_parameters
from scripts.dimension.jacobian import jacobian
from scripts.dimension.naive_bayes import NaiveBayesSpec, classify_catalisano, dp_bound
from scripts.dimension.rank import exact_rank, numeric_rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DimensionReport:
    model: str
    complete: int
    standard: int
    expected: int
    effective_exact: int
    effective_numeric: int
    classification: Classification
    samples_used: int
    dp_bound: int | None = None
    classification_value: int | None = None
    classification_gap: int | None = None
    rule: str | None = None
    family: str | None = None
    family_formula: int | None = None
    family_formula_gap: int | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.effective_exact > self.expected:
            raise InvariantViolationError(
                f"Effective dimension {self.effective_exact} exceeds expected {self.expected}"
            )

    def to_dict(self) -> dict:
        doc = {"format": FORMAT_TAG, **asdict(self)}
        doc["classification"] = Classification(self.classification).value
        doc["notes"] = list(self.notes)
        return doc


def rank_at_seed(net: NetworkSpec, seed: int) -> tuple[int, int, int]:
    """(seed, exact rank, numeric rank) of the Jacobian at rational parameters drawn from `seed`."""
    params = sample_parameters(net, seed, ArithmeticMode.RATIONAL)
    matrix = jacobian(net, params)
    exact = exact_rank(matrix)
    numeric = numeric_rank(matrix.astype(float))
    logger.debug(f"seed {seed}: exact rank {exact}, numeric rank {numeric}")
    return seed, exact, numeric


def effective_dimension(
    net: NetworkSpec, seeds: Iterable[int] = DEFAULT_SEEDS, n_workers: int = 1, show_progress: bool = False
) -> tuple[int, int]:
    """Maximum Jacobian rank over seeds, as (exact, numeric).

    Raises:
        ValueError: if no seeds are given
        RankDisagreementError: if the two backends disagree on the maxima
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("effective_dimension needs at least one seed")

    results = []
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as executor:
            futures = {executor.submit(rank_at_seed, net, seed): seed for seed in seeds}
            progress = tqdm(as_completed(futures), total=len(futures), desc="Jacobian rank", disable=not show_progress)
            for future in progress:
                results.append(future.result())
    else:
        for seed in tqdm(seeds, desc="Jacobian rank", disable=not show_progress):
            results.append(rank_at_seed(net, seed))

    exact = max(r[1] for r in results)
    numeric = max(r[2] for r in results)
    if len({r[1] for r in results}) > 1:
        logger.warning(f"Jacobian rank varies across seeds: {sorted((r[0], r[1]) for r in results)}")
    if exact != numeric:
        raise RankDisagreementError(exact, numeric)
    return exact, numeric


def _general_classification(effective: int, complete: int, standard: int) -> Classification:
    if effective == complete:
        return Classification.EQUALS_COMPLETE
    if effective == standard:
        return Classification.EQUALS_STANDARD
    return Classification.UNKNOWN


def _recognize_family(net: NetworkSpec):
    # deferred: scripts.families imports scripts.dimension
    from scripts.families.family_registry import FamilyRegistry

    return FamilyRegistry.recognize(net)


def dimension_report(
    model: NetworkSpec | NaiveBayesSpec, seeds: Iterable[int] = DEFAULT_SEEDS, n_workers: int = 1
) -> DimensionReport:
    """Complete, standard, expected and effective dimensions plus a classification.

    Naive Bayes inputs (or networks recognized as naive Bayes) also carry the
    flattening bound and the closed-form classification. Model networks of the
    hidden-triple families carry the family's closed-form dimension. Every
    closed form that disagrees with the measured rank is logged and listed in
    `notes`.
    """
    seeds = list(seeds)
    if isinstance(model, NaiveBayesSpec):
        nb, net = model, model.to_network()
    else:
        nb, net = NaiveBayesSpec.from_network(model), model

    complete = observable_complete_dimension(net)
    standard = standard_dimension(net)
    expected = min(complete, standard)
    exact, numeric = effective_dimension(net, seeds, n_workers)
    notes = []

    def note(message: str) -> None:
        logger.warning(message)
        notes.append(message)

    if nb is not None:
        verdict = classify_catalisano(nb)
        bound = dp_bound(nb)
        if exact > bound:
            note(f"{nb.label}: effective dimension {exact} exceeds the flattening bound {bound}")
        gap = None
        if verdict.value is not None:
            gap = verdict.value - exact
            if gap:
                note(
                    f"{nb.label}: {verdict.classification.value} by {verdict.rule} predicts {verdict.value}, "
                    f"Jacobian rank is {exact}"
                )
        report = DimensionReport(
            model=nb.label,
            complete=complete,
            standard=standard,
            expected=expected,
            effective_exact=exact,
            effective_numeric=numeric,
            classification=verdict.classification,
            samples_used=len(seeds),
            dp_bound=bound,
            classification_value=verdict.value,
            classification_gap=gap,
            rule=verdict.rule,
            notes=tuple(notes),
        )
    else:
        family_cls = _recognize_family(net)
        family = formula = formula_gap = None
        if family_cls is not None:
            family = family_cls.family.value
            formula = family_cls.formula_dimension(net.observed_cards, net.nodes[net.hidden[0]].card)
            if formula is not None:
                formula_gap = formula - exact
                if formula_gap:
                    convention = f" ({family_cls.FORMULA_CONVENTION})" if family_cls.FORMULA_CONVENTION else ""
                    note(f"{family}: closed-form dimension {formula}{convention} differs from Jacobian rank {exact}")
        report = DimensionReport(
            model=f"network({','.join(net.names)})",
            complete=complete,
            standard=standard,
            expected=expected,
            effective_exact=exact,
            effective_numeric=numeric,
            classification=_general_classification(exact, complete, standard),
            samples_used=len(seeds),
            family=family,
            family_formula=formula,
            family_formula_gap=formula_gap,
            notes=tuple(notes),
        )

    logger.info(f"Dimension report for {report.model}: effective {exact}, expected {expected}")
    return report
