"""
Permutation statistics built on one g-gap h-level engine.

Every statistic of the toolkit is a specialization of a handful of primitives:
r-gap descents with the r-major index, g-gap l-level excedances, and the
g-gap h-level Denert statistic

    gden_h(sigma) = sum_{i in gExclp_h} (i + g - 1) + inv(gEXCL_h) + inv(gNEXCL_h).

den is (g=1, h=1), den_r is (g=1, h=r) and rden is (g=r, h=1).

Functions accept either a Permutation model or a plain word (any sequence of
1-based letters). Hot loops pass tuples to skip model validation.
"""

import logging
from typing import List, Sequence, Tuple, Union

from src.models.permutation import (
    DescentProfile,
    GapLevelProfile,
    Permutation,
    StatDescriptor,
    StatFamily,
)
from src.utils.logging_utils import InvalidDescriptorError, InvalidInputError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
PermLike = Union[Permutation, Sequence[int]]


def as_word(sigma: PermLike) -> Word:
    """Return the one-line letters of sigma as a tuple."""
    if isinstance(sigma, Permutation):
        return sigma.letters
    return tuple(sigma)


def inv_count(word: Sequence[int]) -> int:
    """
    Count pairs i < j with word_i > word_j.

    The word only needs distinct entries; subsequences of a permutation are
    allowed.

    Raises:
        InvalidInputError: if the word repeats an entry
    """
    word = as_word(word)
    if len(set(word)) != len(word):
        raise InvalidInputError(
            "inv_count needs distinct entries", {"word": " ".join(map(str, word))}
        )
    return _inversions(word)


def _inversions(word: Sequence[int]) -> int:
    count = 0
    for i, left in enumerate(word):
        for right in word[i + 1 :]:
            if left > right:
                count += 1
    return count


def descent_profile(sigma: PermLike, r: int = 1) -> DescentProfile:
    """r-gap descent set, its size, |rInv| and the r-major index."""
    word = as_word(sigma)
    des_set = _gap_descents(word, r)
    r_inv = _gap_inversions(word, r)
    return DescentProfile(
        r=r,
        des_set=des_set,
        des=len(des_set),
        r_inv_count=r_inv,
        maj=sum(des_set) + r_inv,
    )


def _gap_descents(word: Word, r: int) -> List[int]:
    return [i + 1 for i in range(len(word) - 1) if word[i] >= word[i + 1] + r]


def _gap_inversions(word: Word, r: int) -> int:
    """Inversions (i, j) with word_i < word_j + r."""
    count = 0
    for i, left in enumerate(word):
        for right in word[i + 1 :]:
            if right < left < right + r:
                count += 1
    return count


def _gap_major(word: Word, r: int) -> int:
    return sum(_gap_descents(word, r)) + _gap_inversions(word, r)


def exclp_positions(word: Word, g: int = 1, h: int = 1) -> List[int]:
    """Positions i with word_i >= i + g and word_i >= h."""
    return [
        i for i, letter in enumerate(word, start=1) if letter >= i + g and letter >= h
    ]


def non_exclp_positions(word: Word, g: int = 1, h: int = 1) -> List[int]:
    """Complement of exclp_positions in [n], increasing (the k_1 < ... < k_t)."""
    return [
        i
        for i, letter in enumerate(word, start=1)
        if not (letter >= i + g and letter >= h)
    ]


def gap_excedances(word: Word, g: int = 1, level: int = 1) -> List[int]:
    """Positions i with word_i >= i + g and i >= level."""
    return [
        i
        for i, letter in enumerate(word, start=1)
        if letter >= i + g and i >= level
    ]


def gap_level_profile(
    sigma: PermLike, g: int = 1, level: int = 1, h: int = 1
) -> GapLevelProfile:
    """Excedance-letter positions at (g, h), the split subsequences and gExc_l."""
    word = as_word(sigma)
    exclp = exclp_positions(word, g, h)
    marked = set(exclp)
    return GapLevelProfile(
        exclp_set=exclp,
        excl_subseq=[word[i - 1] for i in exclp],
        nexcl_subseq=[
            letter for i, letter in enumerate(word, start=1) if i not in marked
        ],
        exc_set=gap_excedances(word, g, level),
        g=g,
        level=level,
        h=h,
    )


def gap_level_den(sigma: PermLike, g: int = 1, h: int = 1) -> int:
    """The g-gap h-level Denert statistic gden_h."""
    return _gden(as_word(sigma), g, h)


def _gden(word: Word, g: int, h: int) -> int:
    total = 0
    excl = []
    nexcl = []
    for i, letter in enumerate(word, start=1):
        if letter >= i + g and letter >= h:
            total += i + g - 1
            excl.append(letter)
        else:
            nexcl.append(letter)
    return total + _inversions(excl) + _inversions(nexcl)


def level_split(
    sigma: PermLike, g: int = 1, h: int = 1, level: int = 1
) -> Tuple[List[int], List[int]]:
    """
    Split [level - 1] into A (excedance-letter positions at (g, h)) and B (the rest).

    |A| + |B| = level - 1 always.
    """
    word = as_word(sigma)
    a_set = [i for i in exclp_positions(word, g, h) if i <= level - 1]
    marked = set(a_set)
    b_set = [i for i in range(1, level) if i not in marked]
    return a_set, b_set


def eval_stat(descriptor: StatDescriptor, sigma: PermLike) -> int:
    """
    Evaluate one named statistic on sigma.

    Raises:
        InvalidDescriptorError: for an unknown family
    """
    return _evaluate(descriptor, as_word(sigma))


def _evaluate(descriptor: StatDescriptor, word: Word) -> int:
    family = descriptor.family
    if family == StatFamily.GAP_LEVEL_DEN:
        return _gden(word, descriptor.g, descriptor.level)
    if family == StatFamily.GAP_LEVEL_EXC_COUNT:
        return len(gap_excedances(word, descriptor.g, descriptor.level))
    if family == StatFamily.GAP_MAJOR:
        return _gap_major(word, descriptor.r)
    if family == StatFamily.GAP_DESCENT_COUNT:
        return len(_gap_descents(word, descriptor.r))
    if family == StatFamily.INV_COUNT:
        return _inversions(word)
    if family == StatFamily.ZERO_STAT:
        return 0
    raise InvalidDescriptorError(
        f"Unknown statistic family {family!r}", {"descriptor": repr(descriptor)}
    )


def make_evaluator(descriptor: StatDescriptor):
    """Return a word -> int callable bound to one descriptor, for tight loops."""
    # Fail on a bad family before any enumeration starts.
    _evaluate(descriptor, ())
    return lambda word: _evaluate(descriptor, word)
