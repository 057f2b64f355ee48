"""Empirical ROC analysis of scored, labelled samples.

Conventions: a higher score is more disease-like, and a sample is
test-positive when ``score >= threshold``. Tied scores form a single ROC step
and earn half credit in the pairwise AUC, which makes the trapezoidal area
under the empirical curve identical to the Mann-Whitney estimate.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace
from statistics import NormalDist

import numpy as np
from scipy.stats import rankdata

from .errors import OneClassOnly, TooFewSamples
from .metrics import ConfidenceInterval, ConfusionMatrix, TestCharacteristics, characteristics_from_matrix


@dataclass(frozen=True)
class ScoredSample:
    score: float
    diseased: bool

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ValueError(f"score must be finite, got {self.score!r}")


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    true_positive_rate: float
    false_positive_rate: float

    @property
    def sensitivity(self) -> float:
        return self.true_positive_rate

    @property
    def specificity(self) -> float:
        return 1.0 - self.false_positive_rate


@dataclass(frozen=True)
class RocCurve:
    """Empirical ROC curve.

    ``points`` start at (fpr 0, tpr 0) with threshold ``+inf`` and end at
    (1, 1) with the lowest observed score as threshold.
    """

    points: tuple[RocPoint, ...]
    auc: float
    n_diseased: int
    n_healthy: int
    auc_ci: ConfidenceInterval | None = None

    @property
    def fpr(self) -> list[float]:
        return [p.false_positive_rate for p in self.points]

    @property
    def tpr(self) -> list[float]:
        return [p.true_positive_rate for p in self.points]


def samples_from_arrays(scores: Iterable[float], diseased: Iterable[bool]) -> list[ScoredSample]:
    return [ScoredSample(float(s), bool(d)) for s, d in zip(scores, diseased, strict=True)]


def _split(samples: Sequence[ScoredSample]) -> tuple[np.ndarray, np.ndarray]:
    pos = np.array([s.score for s in samples if s.diseased], dtype=float)
    neg = np.array([s.score for s in samples if not s.diseased], dtype=float)
    if pos.size == 0 or neg.size == 0:
        raise OneClassOnly(
            f"ROC analysis needs both classes, got {pos.size} diseased and {neg.size} healthy samples"
        )
    return pos, neg


def empirical_roc(samples: Sequence[ScoredSample]) -> RocCurve:
    """One ROC point per distinct score, thresholds descending.

    The returned curve has ``auc`` set from the trapezoid rule and no interval;
    use :func:`analyze_roc` to attach a DeLong interval.
    """
    pos, neg = _split(samples)
    n1, n0 = pos.size, neg.size
    thresholds = np.unique(np.concatenate([pos, neg]))[::-1]
    # counts of samples with score >= t, for each t
    tp = n1 - np.searchsorted(np.sort(pos), thresholds, side="left")
    fp = n0 - np.searchsorted(np.sort(neg), thresholds, side="left")

    points = [RocPoint(math.inf, 0.0, 0.0)]
    points += [RocPoint(float(t), int(a) / n1, int(b) / n0) for t, a, b in zip(thresholds, tp, fp)]
    curve = RocCurve(points=tuple(points), auc=0.0, n_diseased=int(n1), n_healthy=int(n0))
    return replace(curve, auc=auc_trapezoid(curve))


def auc_trapezoid(curve: RocCurve) -> float:
    """Trapezoidal area under the ordered ROC points."""
    x = curve.fpr
    y = curve.tpr
    area = 0.0
    for i in range(1, len(x)):
        area += (x[i] - x[i - 1]) * (y[i] + y[i - 1]) / 2.0
    return area


def auc_mann_whitney(samples: Sequence[ScoredSample]) -> float:
    """Probability that a diseased sample outscores a healthy one, ties counting half.

    Computed from midranks of the pooled scores, O(n log n).
    """
    pos, neg = _split(samples)
    n1, n0 = pos.size, neg.size
    ranks = rankdata(np.concatenate([pos, neg]), method="average")
    u = ranks[:n1].sum() - n1 * (n1 + 1) / 2.0
    return float(u / (n1 * n0))


def delong_components(samples: Sequence[ScoredSample]) -> tuple[float, float]:
    """DeLong's nonparametric estimate of the Mann-Whitney AUC and its variance.

    Returns ``(auc, variance)``. Structural components are obtained from
    midranks: for a diseased sample, the share of healthy samples it beats
    (ties half) is its pooled midrank minus its within-class midrank, over
    the healthy count; symmetrically for healthy samples.
    """
    pos, neg = _split(samples)
    n1, n0 = pos.size, neg.size
    if n1 < 2 or n0 < 2:
        raise TooFewSamples(f"DeLong variance needs at least 2 samples per class, got {n1} and {n0}")
    pooled = rankdata(np.concatenate([pos, neg]), method="average")
    v10 = (pooled[:n1] - rankdata(pos, method="average")) / n0
    v01 = 1.0 - (pooled[n1:] - rankdata(neg, method="average")) / n1
    auc = float(v10.mean())
    var = float(v10.var(ddof=1) / n1 + v01.var(ddof=1) / n0)
    return auc, max(var, 0.0)


def auc_ci_delong(samples: Sequence[ScoredSample], confidence_level: float = 0.95) -> ConfidenceInterval:
    """Normal-approximation interval for the AUC with DeLong variance, clipped to [0, 1].

    The untransformed interval is simple but can be optimistic when the AUC
    is close to 1.
    """
    if not 0.0 < confidence_level < 1.0:
        raise ValueError(f"confidence_level must be in (0, 1), got {confidence_level!r}")
    auc, var = delong_components(samples)
    z = NormalDist().inv_cdf(0.5 + confidence_level / 2.0)
    half = z * math.sqrt(var)
    return ConfidenceInterval(max(0.0, auc - half), min(1.0, auc + half), confidence_level)


def analyze_roc(samples: Sequence[ScoredSample], confidence_level: float | None = 0.95) -> RocCurve:
    """Empirical ROC curve with a DeLong interval attached when both classes have 2+ samples."""
    curve = empirical_roc(samples)
    if confidence_level is None or min(curve.n_diseased, curve.n_healthy) < 2:
        return curve
    return replace(curve, auc_ci=auc_ci_delong(samples, confidence_level))


def youden_optimal_point(curve: RocCurve) -> RocPoint:
    """Point maximising ``tpr - fpr``.

    Ties go to the lower threshold (the more sensitive cutoff), then to the
    lower fpr. The comparison uses integer counts, so equal Youden indices
    compare equal exactly.
    """
    n1, n0 = curve.n_diseased, curve.n_healthy

    def key(p: RocPoint):
        tp = round(p.true_positive_rate * n1)
        fp = round(p.false_positive_rate * n0)
        return (tp * n0 - fp * n1, -p.threshold, -p.false_positive_rate)

    return max(curve.points, key=key)


def confusion_at(threshold: float, samples: Sequence[ScoredSample]) -> ConfusionMatrix:
    tp = fp = fn = tn = 0
    for s in samples:
        positive = s.score >= threshold
        if s.diseased:
            tp += positive
            fn += not positive
        else:
            fp += positive
            tn += not positive
    return ConfusionMatrix(tp, fp, fn, tn)


def characteristics_at_point(
    point: RocPoint, samples: Sequence[ScoredSample], confidence_level: float = 0.95
) -> TestCharacteristics:
    """Sensitivity/specificity (with Wilson intervals) of the cutoff at ``point``."""
    return characteristics_from_matrix(confusion_at(point.threshold, samples), confidence_level)
