"""Data models for reports, settings and orbifold data."""

from .base import FigureKind, HeisCase, KField, OutputFormat, PairKind
from .orbifold import OrbifoldData
from .report import AmbiguityReport, CountReport, ErrorEnvelope, ReportEnvelope
from .settings import Settings

__all__ = [
    "FigureKind",
    "HeisCase",
    "KField",
    "OutputFormat",
    "PairKind",
    "OrbifoldData",
    "AmbiguityReport",
    "CountReport",
    "ErrorEnvelope",
    "ReportEnvelope",
    "Settings",
]
