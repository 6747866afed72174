"""
Models for joint distributions and verification reports.
"""

import csv
import io
import json
from math import factorial
from typing import Any, Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class JointDistribution(BaseModel):
    """Finite table (a, b) -> count representing sum t^a q^b over S_n."""

    n: int = Field(..., ge=0, description="Size of the symmetric group")
    pair: str = Field("", description="Label of the statistic pair")
    entries: Dict[Tuple[int, int], int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_entries(self):
        for (a, b), count in self.entries.items():
            if a < 0 or b < 0 or count < 0:
                raise ValueError(f"negative entry {(a, b)}: {count}")
        return self

    def total(self) -> int:
        return sum(self.entries.values())

    def is_complete(self) -> bool:
        """True when the table accounts for all n! permutations."""
        return self.total() == factorial(self.n)

    def sorted_entries(self) -> List[Tuple[int, int, int]]:
        return [(a, b, self.entries[(a, b)]) for a, b in sorted(self.entries)]

    def q_marginal(self) -> List[int]:
        """Coefficients of sum q^b after setting t = 1."""
        if not self.entries:
            return []
        coefficients = [0] * (max(b for _, b in self.entries) + 1)
        for (_, b), count in self.entries.items():
            coefficients[b] += count
        return coefficients

    def merge(self, other: "JointDistribution") -> "JointDistribution":
        """Pointwise sum of two tables over the same n."""
        if other.n != self.n:
            raise ValueError(f"cannot merge tables for n={self.n} and n={other.n}")
        merged = dict(self.entries)
        for key, count in other.entries.items():
            merged[key] = merged.get(key, 0) + count
        return JointDistribution(n=self.n, pair=self.pair or other.pair, entries=merged)

    @classmethod
    def merge_all(
        cls, n: int, pair: str, parts: Iterable["JointDistribution"]
    ) -> "JointDistribution":
        result = cls(n=n, pair=pair)
        for part in parts:
            result = result.merge(part)
        return result

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "pair": self.pair,
            "entries": [list(row) for row in self.sorted_entries()],
        }
        return json.dumps(payload)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["a", "b", "count"])
        writer.writerows(self.sorted_entries())
        return buffer.getvalue()

    def to_text(self) -> str:
        lines = [f"n={self.n} pair={self.pair}"]
        lines.extend(f"t^{a} q^{b}: {count}" for a, b, count in self.sorted_entries())
        return "\n".join(lines) + "\n"


class Witness(BaseModel):
    """Minimal evidence for a failed check."""

    kind: Literal["coefficient", "input", "identity"] = "coefficient"
    n: int
    a: Optional[int] = None
    b: Optional[int] = None
    count_a: Optional[int] = None
    count_b: Optional[int] = None
    sigma: Optional[List[int]] = None
    c: Optional[int] = None
    detail: Optional[str] = None

    def describe(self) -> str:
        if self.kind == "coefficient":
            return (
                f"n={self.n}: coefficient of t^{self.a} q^{self.b} is "
                f"{self.count_a} vs {self.count_b}"
            )
        where = f"n={self.n}"
        if self.sigma is not None:
            where += f" sigma={' '.join(map(str, self.sigma))}"
        if self.c is not None:
            where += f" c={self.c}"
        return f"{where}: {self.detail}"


class Report(BaseModel):
    """Verdict of a verification with its swept range and, on failure, a witness."""

    name: str = ""
    verdict: Literal["pass", "fail"]
    checked_range: Dict[str, Any] = Field(default_factory=dict)
    witness: Optional[Witness] = None

    @model_validator(mode="after")
    def check_witness(self):
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "checked_range": self.checked_range,
            "witness": self.witness.model_dump(exclude_none=True) if self.witness else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        line = f"{self.name}: {self.verdict.upper()}"
        if self.checked_range:
            ranges = ", ".join(f"{k}={v}" for k, v in self.checked_range.items())
            line += f" [{ranges}]"
        if self.witness:
            line += f"\n  witness: {self.witness.describe()}"
        return line + "\n"


class Table1Row(BaseModel):
    """One row of the phi_7 table for sigma = 621534."""

    c: int
    image: List[int]
    values: List[Tuple[int, int]] = Field(
        default_factory=list, description="(exc_r, den) of the image for r = 1..6"
    )
