"""
Pydantic models for permutations, statistic descriptors and statistic profiles.

Positions and letters are 1-based everywhere in these models.
"""

import re
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.utils.logging_utils import InvalidDescriptorError, InvalidInputError

_SEPARATORS = re.compile(r"[,\s]+")


class Permutation(BaseModel):
    """A permutation of [n] in one-line notation."""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[int, ...] = Field(
        default=(), description="One-line notation sigma_1 ... sigma_n"
    )

    @field_validator("letters")
    @classmethod
    def validate_letters(cls, v):
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{list(v)} is not a rearrangement of 1..{len(v)}")
        return v

    @property
    def n(self) -> int:
        return len(self.letters)

    @classmethod
    def from_letters(cls, letters) -> "Permutation":
        """Build a permutation, raising InvalidInputError naming the first bad letter."""
        letters = tuple(letters)
        n = len(letters)
        seen = set()
        for letter in letters:
            if not isinstance(letter, int) or not 1 <= letter <= n:
                raise InvalidInputError(
                    f"Letter {letter!r} is outside 1..{n}",
                    {"token": letter, "letters": list(letters)},
                )
            if letter in seen:
                raise InvalidInputError(
                    f"Letter {letter} appears more than once",
                    {"token": letter, "letters": list(letters)},
                )
            seen.add(letter)
        try:
            return cls(letters=letters)
        except ValidationError as e:
            raise InvalidInputError(str(e), {"letters": list(letters)}) from e

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse comma- or whitespace-separated one-line notation.

        A single run of digits with no separators ("621534") is read one digit
        per letter, which covers the compact notation for n <= 9.
        """
        stripped = text.strip()
        if not stripped:
            return cls()
        tokens = [tok for tok in _SEPARATORS.split(stripped) if tok]
        compact = len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit()
        if compact:
            tokens = list(tokens[0])
        letters = []
        for tok in tokens:
            if not tok.isdigit():
                raise InvalidInputError(
                    f"Unparsable permutation token {tok!r}", {"token": tok, "text": text}
                )
            letters.append(int(tok))
        try:
            return cls.from_letters(letters)
        except InvalidInputError as e:
            if not compact:
                raise
            raise InvalidInputError(
                f"{e.message} ({stripped!r} was read as compact notation, one "
                "digit per letter; separate letters with spaces or commas)",
                {**e.context, "text": text},
            ) from e

    def __str__(self) -> str:
        """Space-separated one-line notation."""
        return " ".join(str(letter) for letter in self.letters)


class StatFamily(str, Enum):
    """Statistic families of the unified engine."""

    GAP_DESCENT_COUNT = "gapDescentCount"
    GAP_MAJOR = "gapMajor"
    GAP_LEVEL_EXC_COUNT = "gapLevelExcCount"
    GAP_LEVEL_DEN = "gapLevelDen"
    INV_COUNT = "invCount"
    ZERO_STAT = "zeroStat"


# name -> (family, fixed parameters, accepted parameter -> descriptor field)
_DESCRIPTOR_GRAMMAR: Dict[str, Tuple[StatFamily, Dict[str, int], Dict[str, str]]] = {
    "des": (StatFamily.GAP_DESCENT_COUNT, {}, {}),
    "maj": (StatFamily.GAP_MAJOR, {}, {}),
    "inv": (StatFamily.INV_COUNT, {}, {}),
    "zero": (StatFamily.ZERO_STAT, {}, {}),
    "exc": (StatFamily.GAP_LEVEL_EXC_COUNT, {}, {}),
    "den": (StatFamily.GAP_LEVEL_DEN, {}, {}),
    "rdes": (StatFamily.GAP_DESCENT_COUNT, {}, {"r": "r"}),
    "rmaj": (StatFamily.GAP_MAJOR, {}, {"r": "r"}),
    "rexc": (StatFamily.GAP_LEVEL_EXC_COUNT, {}, {"r": "g"}),
    "rden": (StatFamily.GAP_LEVEL_DEN, {}, {"r": "g"}),
    "exc_l": (StatFamily.GAP_LEVEL_EXC_COUNT, {}, {"l": "level", "r": "level"}),
    "den_h": (StatFamily.GAP_LEVEL_DEN, {}, {"h": "level", "r": "level"}),
    "gexc": (StatFamily.GAP_LEVEL_EXC_COUNT, {}, {"g": "g", "l": "level"}),
    "gden": (StatFamily.GAP_LEVEL_DEN, {}, {"g": "g", "h": "level"}),
}


class StatDescriptor(BaseModel):
    """
    A named scalar statistic.

    `level` is the excedance level l for gapLevelExcCount and the letter level h
    for gapLevelDen; `r` is the gap of gapDescentCount/gapMajor.
    """

    model_config = ConfigDict(frozen=True)

    family: StatFamily = Field(..., description="Statistic family")
    g: int = Field(1, ge=1, description="Gap")
    level: int = Field(1, ge=1, description="Level l (excedance count) or h (den)")
    r: int = Field(1, ge=1, description="Gap of descents and major index")

    @classmethod
    def des(cls, r: int = 1) -> "StatDescriptor":
        return cls(family=StatFamily.GAP_DESCENT_COUNT, r=r)

    @classmethod
    def maj(cls, r: int = 1) -> "StatDescriptor":
        return cls(family=StatFamily.GAP_MAJOR, r=r)

    @classmethod
    def exc(cls, g: int = 1, level: int = 1) -> "StatDescriptor":
        return cls(family=StatFamily.GAP_LEVEL_EXC_COUNT, g=g, level=level)

    @classmethod
    def den(cls, g: int = 1, level: int = 1) -> "StatDescriptor":
        return cls(family=StatFamily.GAP_LEVEL_DEN, g=g, level=level)

    @classmethod
    def inv(cls) -> "StatDescriptor":
        return cls(family=StatFamily.INV_COUNT)

    @classmethod
    def zero(cls) -> "StatDescriptor":
        return cls(family=StatFamily.ZERO_STAT)

    @classmethod
    def parse(cls, text: str) -> "StatDescriptor":
        """Parse `name[:param=value,...]`, e.g. "gden:g=2,h=3" or "exc_l:l=3"."""
        name, _, params_text = text.strip().partition(":")
        name = name.strip()
        if name not in _DESCRIPTOR_GRAMMAR:
            raise InvalidDescriptorError(
                f"Unknown statistic {name!r}",
                {"token": name, "known": ", ".join(sorted(_DESCRIPTOR_GRAMMAR))},
            )
        family, fixed, accepted = _DESCRIPTOR_GRAMMAR[name]
        fields = dict(fixed)
        for item in filter(None, (p.strip() for p in params_text.split(","))):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in accepted:
                raise InvalidDescriptorError(
                    f"Unknown parameter {item!r} for statistic {name!r}",
                    {"token": item, "accepted": ", ".join(sorted(accepted)) or "none"},
                )
            value = value.strip()
            if not value.isdigit() or int(value) < 1:
                raise InvalidDescriptorError(
                    f"Parameter {key} must be a positive integer, got {value!r}",
                    {"token": item},
                )
            fields[accepted[key]] = int(value)
        return cls(family=family, **fields)

    @property
    def label(self) -> str:
        """Canonical descriptor text for this statistic."""
        if self.family == StatFamily.GAP_DESCENT_COUNT:
            return "des" if self.r == 1 else f"rdes:r={self.r}"
        if self.family == StatFamily.GAP_MAJOR:
            return "maj" if self.r == 1 else f"rmaj:r={self.r}"
        if self.family == StatFamily.INV_COUNT:
            return "inv"
        if self.family == StatFamily.ZERO_STAT:
            return "zero"
        if self.family == StatFamily.GAP_LEVEL_EXC_COUNT:
            if self.g == 1 and self.level == 1:
                return "exc"
            return f"gexc:g={self.g},l={self.level}"
        if self.g == 1 and self.level == 1:
            return "den"
        return f"gden:g={self.g},h={self.level}"

    def __str__(self) -> str:
        return self.label


def pair_label(pair: Tuple[StatDescriptor, StatDescriptor]) -> str:
    """Render a statistic pair as "(first, second)"."""
    return f"({pair[0].label}, {pair[1].label})"


class DescentProfile(BaseModel):
    """r-gap descents of a permutation and the r-major index."""

    r: int = Field(..., ge=1)
    des_set: List[int] = Field(default_factory=list, description="rDes, increasing")
    des: int = Field(0, description="|rDes|")
    r_inv_count: int = Field(0, description="|rInv|")
    maj: int = Field(0, description="rmaj = sum(rDes) + |rInv|")


class GapLevelProfile(BaseModel):
    """g-gap excedance data of a permutation at letter level h and position level l."""

    exclp_set: List[int] = Field(
        default_factory=list, description="g-gap h-level excedance-letter positions"
    )
    excl_subseq: List[int] = Field(
        default_factory=list, description="Letters at exclp_set, in sigma's order"
    )
    nexcl_subseq: List[int] = Field(
        default_factory=list, description="Remaining letters, in sigma's order"
    )
    exc_set: List[int] = Field(
        default_factory=list, description="g-gap l-level excedances"
    )
    g: Optional[int] = None
    level: Optional[int] = None
    h: Optional[int] = None
