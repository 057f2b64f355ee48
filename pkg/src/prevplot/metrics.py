"""Closed-form diagnostic accuracy metrics.

Sensitivity and specificity describe an assay independently of disease
prevalence. Everything a clinician actually sees (how many positive results
are false alarms, how many negatives are missed cases, how many patients must
be tested per case found) depends on the prevalence in the tested population.
This module holds the Bayes translation between the two, plus the binomial
confidence intervals used to qualify sensitivity and specificity.

All functions are pure. Probabilities are plain floats validated to lie in
[0, 1]; quantities that are 0/0 at a prevalence endpoint are reported as
``None`` rather than NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

from .errors import (
    Degenerate,
    InvalidCosts,
    InvalidProbability,
    NoDetectableCases,
    NoDiseasedSamples,
    NoHealthySamples,
    NoNegativeTests,
    NoPositiveTests,
    NoTrials,
)

#: Tolerance used for closed-form identities throughout the package.
TOLERANCE = 1e-12


def probability(value: float, name: str = "probability") -> float:
    """Validate that ``value`` is a real number in [0, 1] and return it as float."""
    if isinstance(value, bool):
        raise InvalidProbability(f"{name} must be a number in [0, 1], got {value!r}")
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise InvalidProbability(f"{name} must be a number in [0, 1], got {value!r}") from None
    if not 0.0 <= v <= 1.0:  # also rejects NaN
        raise InvalidProbability(f"{name} must be in [0, 1], got {value!r}")
    return v


@dataclass(frozen=True)
class ConfusionMatrix:
    """Outcome counts from a validation study."""

    true_positives: int
    false_positives: int
    false_negatives: int
    true_negatives: int

    def __post_init__(self):
        for field in ("true_positives", "false_positives", "false_negatives", "true_negatives"):
            v = getattr(self, field)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"{field} must be a non-negative integer, got {v!r}")

    @property
    def n_diseased(self) -> int:
        return self.true_positives + self.false_negatives

    @property
    def n_healthy(self) -> int:
        return self.false_positives + self.true_negatives


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    confidence_level: float = 0.95

    def __post_init__(self):
        probability(self.lower, "lower")
        probability(self.upper, "upper")
        if not 0.0 < self.confidence_level < 1.0:
            raise ValueError(f"confidence_level must be in (0, 1), got {self.confidence_level!r}")
        if self.lower > self.upper:
            raise ValueError(f"lower ({self.lower}) exceeds upper ({self.upper})")

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper


@dataclass(frozen=True)
class TestCharacteristics:
    """Prevalence-independent summary of an assay.

    Attributes
    ----------
    sensitivity, specificity : float
        Point estimates in [0, 1].
    sensitivity_ci, specificity_ci : ConfidenceInterval, optional
        Intervals around the point estimates, when known.
    source_counts : ConfusionMatrix, optional
        The counts the estimates were derived from, when known.
    """

    __test__ = False  # keep pytest from collecting this class

    sensitivity: float
    specificity: float
    sensitivity_ci: ConfidenceInterval | None = None
    specificity_ci: ConfidenceInterval | None = None
    source_counts: ConfusionMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "sensitivity", probability(self.sensitivity, "sensitivity"))
        object.__setattr__(self, "specificity", probability(self.specificity, "specificity"))
        for name, ci in (("sensitivity", self.sensitivity_ci), ("specificity", self.specificity_ci)):
            if ci is not None and not ci.contains(getattr(self, name)):
                raise ValueError(f"{name} interval [{ci.lower}, {ci.upper}] excludes the point estimate")
        cm = self.source_counts
        if cm is not None:
            if abs(self.sensitivity - sensitivity_of(cm)) > TOLERANCE:
                raise ValueError("sensitivity disagrees with source_counts")
            if abs(self.specificity - specificity_of(cm)) > TOLERANCE:
                raise ValueError("specificity disagrees with source_counts")


@dataclass(frozen=True)
class CostWeights:
    """Relative cost of one false alarm and one missed case, in any common unit."""

    cost_per_false_alarm: float
    cost_per_missed_case: float

    def __post_init__(self):
        for name in ("cost_per_false_alarm", "cost_per_missed_case"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise InvalidCosts(f"{name} must be a finite non-negative number, got {v!r}")


@dataclass(frozen=True)
class TranslatedPerformance:
    """Everything that depends on prevalence, at a single prevalence.

    Fields that are 0/0 at this prevalence are ``None``. ``false_alarm_rate``
    is the share of positive tests that are false (1 - PPV) and
    ``missed_case_rate`` the share of negative tests that are false (1 - NPV).
    """

    prevalence: float
    ppv: float | None
    npv: float | None
    false_alarm_rate: float | None
    missed_case_rate: float | None
    tests_per_detected_case: float | None
    positive_test_rate: float
    accuracy: float
    expected_cost: float | None = None


def sensitivity_of(cm: ConfusionMatrix) -> float:
    if cm.n_diseased == 0:
        raise NoDiseasedSamples("sensitivity needs at least one diseased sample (tp + fn > 0)")
    return cm.true_positives / cm.n_diseased


def specificity_of(cm: ConfusionMatrix) -> float:
    if cm.n_healthy == 0:
        raise NoHealthySamples("specificity needs at least one healthy sample (fp + tn > 0)")
    return cm.true_negatives / cm.n_healthy


def _masses(sens, spec, prev):
    """Expected fraction of the population in each cell: (tp, fp, fn, tn)."""
    sens = probability(sens, "sensitivity")
    spec = probability(spec, "specificity")
    prev = probability(prev, "prevalence")
    return sens * prev, (1.0 - spec) * (1.0 - prev), (1.0 - sens) * prev, spec * (1.0 - prev)


def ppv_at(sens: float, spec: float, prev: float) -> float:
    """Positive predictive value at prevalence ``prev`` (Bayes' theorem)."""
    tp, fp, _, _ = _masses(sens, spec, prev)
    if tp + fp == 0:
        raise NoPositiveTests("no positive tests occur at this prevalence")
    return tp / (tp + fp)


def npv_at(sens: float, spec: float, prev: float) -> float:
    """Negative predictive value at prevalence ``prev``."""
    _, _, fn, tn = _masses(sens, spec, prev)
    if tn + fn == 0:
        raise NoNegativeTests("no negative tests occur at this prevalence")
    return tn / (tn + fn)


def false_alarm_rate_at(sens: float, spec: float, prev: float) -> float:
    """Share of positive tests that are false positives, i.e. ``1 - PPV``."""
    tp, fp, _, _ = _masses(sens, spec, prev)
    if tp + fp == 0:
        raise NoPositiveTests("no positive tests occur at this prevalence")
    # computed from the false-positive mass directly; avoids cancellation in 1 - ppv
    return fp / (tp + fp)


def missed_case_rate_at(sens: float, spec: float, prev: float) -> float:
    """Share of negative tests that are false negatives, i.e. ``1 - NPV``."""
    _, _, fn, tn = _masses(sens, spec, prev)
    if tn + fn == 0:
        raise NoNegativeTests("no negative tests occur at this prevalence")
    return fn / (tn + fn)


def tests_per_detected_case(sens: float, prev: float) -> float:
    """Expected number of patients tested per true case found, ``1 / (sens * prev)``.

    Returned at full precision; round only for display.
    """
    hit = probability(sens, "sensitivity") * probability(prev, "prevalence")
    if hit == 0:
        raise NoDetectableCases("sensitivity * prevalence is zero; no cases can be detected")
    per_case = 1.0 / hit
    if math.isinf(per_case):
        raise NoDetectableCases("sensitivity * prevalence underflows; cases are effectively undetectable")
    return per_case


def breakeven_prevalence(sens: float, spec: float) -> float:
    """Prevalence at which PPV equals 0.5 (half of all positives are false alarms).

    Below this prevalence most positive results are false alarms.
    """
    sens = probability(sens, "sensitivity")
    fpr = 1.0 - probability(spec, "specificity")
    if sens + fpr == 0:
        raise Degenerate("a test with sensitivity 0 and specificity 1 never fires")
    return fpr / (fpr + sens)


def positive_test_rate_at(sens: float, spec: float, prev: float) -> float:
    tp, fp, _, _ = _masses(sens, spec, prev)
    return tp + fp


def accuracy_at(sens: float, spec: float, prev: float) -> float:
    tp, _, _, tn = _masses(sens, spec, prev)
    return tp + tn


def wilson_interval(successes: int, trials: int, confidence_level: float = 0.95) -> ConfidenceInterval:
    """Wilson score interval for a binomial proportion.

    The bounds are pinned to exactly 0 at zero successes and exactly 1 when
    every trial succeeds.
    """
    if trials == 0:
        raise NoTrials("Wilson interval needs at least one trial")
    if trials < 0 or successes < 0 or successes > trials:
        raise ValueError(f"need 0 <= successes <= trials, got {successes}/{trials}")
    if not 0.0 < confidence_level < 1.0:
        raise ValueError(f"confidence_level must be in (0, 1), got {confidence_level!r}")

    z = NormalDist().inv_cdf(0.5 + confidence_level / 2.0)
    n = trials
    p = successes / n
    z2 = z * z
    denom = 1.0 + z2 / n
    centre = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom

    lower = 0.0 if successes == 0 else max(0.0, min(p, centre - half))
    upper = 1.0 if successes == trials else min(1.0, max(p, centre + half))
    return ConfidenceInterval(lower, upper, confidence_level)


def characteristics_from_matrix(cm: ConfusionMatrix, confidence_level: float = 0.95) -> TestCharacteristics:
    """Sensitivity and specificity of ``cm`` with Wilson intervals for each."""
    sens = sensitivity_of(cm)
    spec = specificity_of(cm)
    return TestCharacteristics(
        sensitivity=sens,
        specificity=spec,
        sensitivity_ci=wilson_interval(cm.true_positives, cm.n_diseased, confidence_level),
        specificity_ci=wilson_interval(cm.true_negatives, cm.n_healthy, confidence_level),
        source_counts=cm,
    )


def expected_cost_per_person(chars: TestCharacteristics, prev: float, costs: CostWeights) -> float:
    """Expected misclassification cost per person tested.

    ``(1 - spec)(1 - prev) * cost_per_false_alarm + (1 - sens) * prev * cost_per_missed_case``
    """
    _, fp, fn, _ = _masses(chars.sensitivity, chars.specificity, prev)
    return fp * costs.cost_per_false_alarm + fn * costs.cost_per_missed_case


def _or_none(fn, *args):
    try:
        return fn(*args)
    except (NoPositiveTests, NoNegativeTests, NoDetectableCases):
        return None


def translate(
    chars: TestCharacteristics, prev: float, costs: CostWeights | None = None
) -> TranslatedPerformance:
    """Translate test characteristics into clinical performance at one prevalence."""
    prev = probability(prev, "prevalence")
    s, c = chars.sensitivity, chars.specificity
    return TranslatedPerformance(
        prevalence=prev,
        ppv=_or_none(ppv_at, s, c, prev),
        npv=_or_none(npv_at, s, c, prev),
        false_alarm_rate=_or_none(false_alarm_rate_at, s, c, prev),
        missed_case_rate=_or_none(missed_case_rate_at, s, c, prev),
        tests_per_detected_case=_or_none(tests_per_detected_case, s, prev),
        positive_test_rate=positive_test_rate_at(s, c, prev),
        accuracy=accuracy_at(s, c, prev),
        expected_cost=None if costs is None else expected_cost_per_person(chars, prev, costs),
    )
