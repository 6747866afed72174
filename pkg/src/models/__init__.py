"""Models for the permstat project."""

from src.models.permutation import (
    DescentProfile,
    GapLevelProfile,
    Permutation,
    StatDescriptor,
    StatFamily,
    pair_label,
)
from src.models.report import JointDistribution, Report, Table1Row, Witness
from src.models.trace import BijectionTrace, TraceStep

__all__ = [
    "Permutation",
    "StatDescriptor",
    "StatFamily",
    "DescentProfile",
    "GapLevelProfile",
    "pair_label",
    "JointDistribution",
    "Report",
    "Witness",
    "Table1Row",
    "BijectionTrace",
    "TraceStep",
]
