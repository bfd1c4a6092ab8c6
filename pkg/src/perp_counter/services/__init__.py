"""Service layer: counting constants, perpendicular counts, ambiguity and settings."""

from .ambiguous import classify, count_ambiguous, count_ambiguous_reciprocal
from .perp_count import bianchi_count, count_perp, ratio_reports
from .settings_manager import SettingsManager

__all__ = [
    "SettingsManager",
    "bianchi_count",
    "classify",
    "count_ambiguous",
    "count_ambiguous_reciprocal",
    "count_perp",
    "ratio_reports",
]
