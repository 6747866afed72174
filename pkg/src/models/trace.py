"""
Models for step traces of the insertion bijections.

A trace records the case that was taken, every auxiliary quantity of the
construction and a snapshot of the sequence after each step. A star (the empty
slot of the constructions) is stored as None.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class TraceStep(BaseModel):
    """A labeled snapshot of the sequence being transformed."""

    model_config = ConfigDict(populate_by_name=True)

    step_name: str = Field(
        ..., alias="stepName", description="Step label as used by the construction"
    )
    sequence: List[Optional[int]] = Field(
        default_factory=list, description="Letters after the step; None marks the star"
    )
    highlights: List[int] = Field(
        default_factory=list, description="1-based positions touched by the step"
    )

    def render(self) -> str:
        return " ".join("*" if letter is None else str(letter) for letter in self.sequence)


class BijectionTrace(BaseModel):
    """Intermediate data of one application (or inversion) of a map."""

    direction: str = Field("forward", description="forward or inverse")
    case_tag: str = Field(..., description="Case1, Case2 or Case3")
    g: int = Field(1, ge=1)
    h: int = Field(1, ge=1)
    n: int = Field(..., ge=1, description="Size of the image permutation")
    c: Optional[int] = None
    s: int = Field(0, description="Number of (g-gap h-level) excedance-letters of sigma")
    t: int = Field(0, description="Number of remaining positions of sigma")
    d: Optional[int] = None
    exc_letters: List[int] = Field(default_factory=list, description="e_1 < ... < e_s")
    nexcl_positions: List[int] = Field(
        default_factory=list, description="k_1 < ... < k_t of sigma"
    )
    chain_letters: List[int] = Field(
        default_factory=list, description="e_{j_1} < ... < e_{j_x}"
    )
    x: Optional[int] = None
    y: Optional[int] = None
    p: Optional[int] = None
    k_d: Optional[int] = None
    u: Optional[int] = None
    v: Optional[int] = None
    z: Optional[int] = None
    a: Optional[int] = None
    steps: List[TraceStep] = Field(default_factory=list)

    def add_step(self, step_name: str, sequence, highlights=()) -> None:
        self.steps.append(
            TraceStep(
                step_name=step_name,
                sequence=list(sequence),
                highlights=sorted(highlights),
            )
        )

    def to_dict(self) -> Dict[str, Any]:
        """Dict for JSON output, with steps as {stepName, sequence, highlights}."""
        return self.model_dump(by_alias=True)
