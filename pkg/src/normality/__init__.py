"""Digit-pattern statistics: sliding and block counts, normality reports, equivalence suites."""

from src.normality.counting import (
    block_counts,
    blocked_symbols,
    count_pattern,
    match_mask,
    sliding_counts,
)
from src.normality.equivalence import (
    equivalence_suite,
    joint_equivalence_suite,
    joint_suite_digit_count,
    suite_digit_count,
)
from src.normality.models import (
    CheckResult,
    CountMode,
    EquivalenceForm,
    EquivalenceReport,
    FormResult,
    FrequencyTable,
    GateSettings,
    JointReport,
    NormalityReport,
    PatternRow,
)
from src.normality.reports import (
    joint_report,
    normality_report,
    normality_report_from_digits,
    pattern_label,
    pattern_target,
    rows_from_table,
    tracked_symbols,
)
from src.normality.statistics import gate_verdict, make_row, resolve_gates, z_score

__all__ = [
    "CheckResult",
    "CountMode",
    "EquivalenceForm",
    "EquivalenceReport",
    "FormResult",
    "FrequencyTable",
    "GateSettings",
    "JointReport",
    "NormalityReport",
    "PatternRow",
    "block_counts",
    "blocked_symbols",
    "count_pattern",
    "equivalence_suite",
    "gate_verdict",
    "joint_equivalence_suite",
    "joint_report",
    "joint_suite_digit_count",
    "make_row",
    "match_mask",
    "normality_report",
    "normality_report_from_digits",
    "pattern_label",
    "pattern_target",
    "resolve_gates",
    "rows_from_table",
    "sliding_counts",
    "suite_digit_count",
    "tracked_symbols",
    "z_score",
]
