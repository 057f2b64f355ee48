"""Prevalence-aware evaluation of diagnostic and prognostic assays."""

__version__ = "0.1.0"

from .errors import DiagnosticError
from .metrics import (
    ConfidenceInterval,
    ConfusionMatrix,
    CostWeights,
    TestCharacteristics,
    TranslatedPerformance,
    breakeven_prevalence,
    characteristics_from_matrix,
    false_alarm_rate_at,
    missed_case_rate_at,
    npv_at,
    ppv_at,
    sensitivity_of,
    specificity_of,
    tests_per_detected_case,
    translate,
    wilson_interval,
)
from .roc import (
    RocCurve,
    RocPoint,
    ScoredSample,
    analyze_roc,
    auc_ci_delong,
    auc_mann_whitney,
    auc_trapezoid,
    characteristics_at_point,
    empirical_roc,
    youden_optimal_point,
)
from .sweep import PrevalenceCurve, PrevalenceGrid, cost_curve, curve_to_table, expected_cost_per_person, sweep

__all__ = [
    "DiagnosticError",
    "ConfidenceInterval",
    "ConfusionMatrix",
    "CostWeights",
    "TestCharacteristics",
    "TranslatedPerformance",
    "breakeven_prevalence",
    "characteristics_from_matrix",
    "false_alarm_rate_at",
    "missed_case_rate_at",
    "npv_at",
    "ppv_at",
    "sensitivity_of",
    "specificity_of",
    "tests_per_detected_case",
    "translate",
    "wilson_interval",
    "RocCurve",
    "RocPoint",
    "ScoredSample",
    "analyze_roc",
    "auc_ci_delong",
    "auc_mann_whitney",
    "auc_trapezoid",
    "characteristics_at_point",
    "empirical_roc",
    "youden_optimal_point",
    "PrevalenceCurve",
    "PrevalenceGrid",
    "cost_curve",
    "curve_to_table",
    "expected_cost_per_person",
    "sweep",
]
