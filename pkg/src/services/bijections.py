"""
Insertion bijections S_{n-1} x {0, ..., n-1} -> S_n for the Denert statistics.

phi_den is the (exc, den) map and phi_gh_den its g-gap h-level extension;
phi_gh_den(1, 1, .) coincides with phi_den. Both are driven by one engine that
works on the ordered list k_1 < ... < k_t of non-excedance-letter positions,
extended with k_{t+1} = n.

Inversion reads off z (position of n) and a (the rightmost critical
non-g-gap excedance-letter), undoes the steps with a star slot, and recovers c
as gden_h(w) - gden_h(sigma).
"""

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from src.models.permutation import Permutation
from src.models.trace import BijectionTrace
from src.services.statistics import (
    PermLike,
    Word,
    _gden,
    as_word,
    exclp_positions,
    gap_excedances,
    non_exclp_positions,
)
from src.utils.logging_utils import PermstatError, RangeError

logger = logging.getLogger(__name__)

CASE1, CASE2, CASE3 = "Case1", "Case2", "Case3"


class StepNames(NamedTuple):
    """Step labels of one map, forward and inverse."""

    insert: str
    adjust: str
    shift: str
    place_ed: str
    shift_n: str
    place_n: str
    remove_n: str = "Removing n"
    delete_ed: str = "Deleting e_d"
    delete_n: str = "Deleting n"
    shift_left: str = "Shifting Left"
    restore: str = "Restoring Excedance-Letters"


DEN_STEPS = StepNames(
    insert="Appending n",
    adjust="Step 1. Adjusting Excedance-Letters",
    shift="Step 2. Shifting Non-Excedance-Letters",
    place_ed="Step 3. Placing e_d",
    shift_n="Step i. Shifting Non-Excedance-Letters",
    place_n="Step ii. Placing n",
)

GH_STEPS = StepNames(
    insert="Inserting n",
    adjust="Step 1",
    shift="Step 2",
    place_ed="Step 3",
    shift_n="Step i",
    place_n="Step ii",
)


class MapOutcome(NamedTuple):
    """Result of the word-level engine; trace is None unless recording."""

    word: Word
    case_tag: str
    chain: Tuple[int, ...]
    c: int
    trace: Optional[BijectionTrace]


class _Recorder:
    """Collects snapshots only when a trace is requested."""

    def __init__(self, record: bool):
        self.record = record
        self.steps: List[Tuple[str, List[Optional[int]], Sequence[int]]] = []

    def snap(self, name: str, cells, highlights=()) -> None:
        if self.record:
            self.steps.append((name, list(cells), list(highlights)))

    def build(self, **fields) -> Optional[BijectionTrace]:
        if not self.record:
            return None
        trace = BijectionTrace(**fields)
        for name, cells, highlights in self.steps:
            trace.add_step(name, cells, highlights)
        return trace


def _shift_right(
    cells: List[Optional[int]], slots: List[int], start: int
) -> List[int]:
    """Move the letters at slots[start:] one slot right, leaving a star at slots[start]."""
    for j in range(len(slots) - 1, start, -1):
        cells[slots[j] - 1] = cells[slots[j - 1] - 1]
    cells[slots[start] - 1] = None
    return slots[start:]


def _shift_left(
    cells: List[Optional[int]], slots: List[int], start: int
) -> List[int]:
    """Move the letters at slots[start+1:] one slot left, emptying the last slot."""
    for j in range(start, len(slots) - 1):
        cells[slots[j] - 1] = cells[slots[j + 1] - 1]
    cells[slots[-1] - 1] = None
    return slots[start:]


def insert_word(
    g: int,
    h: int,
    sigma: Sequence[int],
    c: int,
    steps: StepNames = GH_STEPS,
    record: bool = False,
) -> MapOutcome:
    """
    Apply phi_{g,h,n} to (sigma, c) where n = len(sigma) + 1.

    Raises:
        RangeError: if c is outside 0..n-1 or h > n
    """
    word = tuple(sigma)
    n = len(word) + 1
    if not 0 <= c <= n - 1:
        raise RangeError(f"c must lie in 0..{n - 1}, got {c}", {"n": n, "c": c})
    if not 1 <= h <= n:
        raise RangeError(f"h must lie in 1..{n}, got {h}", {"n": n, "h": h})
    if g < 1:
        raise RangeError(f"g must be positive, got {g}", {"g": g})

    exclp = exclp_positions(word, g, h)
    k = non_exclp_positions(word, g, h)
    s, t = len(exclp), len(k)
    exc_letters = sorted(word[i - 1] for i in exclp)
    recorder = _Recorder(record)
    recorder.snap("Input", word)
    fields = dict(
        g=g, h=h, n=n, c=c, s=s, t=t, exc_letters=exc_letters, nexcl_positions=k
    )

    if c <= g - 1:
        # Case 1: insert n immediately after sigma_{n-1-c} (prepend when that is 0).
        cut = n - 1 - c
        image = word[:cut] + (n,) + word[cut:]
        recorder.snap(steps.insert, image, [cut + 1])
        trace = recorder.build(case_tag=CASE1, **fields)
        return MapOutcome(image, CASE1, (), c, trace)

    slots = k + [n]
    cells: List[Optional[int]] = list(word) + [None]

    if c <= s + g - 1:
        d = s + g - c
        e_d = exc_letters[d - 1]
        p = e_d - g + 1
        chain_positions = sorted(
            (i for i in exclp if i < p and word[i - 1] >= e_d),
            key=lambda i: word[i - 1],
        )
        chain = tuple(word[i - 1] for i in chain_positions)
        for pos, letter in zip(chain_positions, chain[1:] + (n,)):
            cells[pos - 1] = letter
        recorder.snap(steps.adjust, cells[:-1], chain_positions)

        y = next(idx for idx, pos in enumerate(slots) if pos >= p)
        moved = _shift_right(cells, slots, y)
        recorder.snap(steps.shift, cells, moved)

        cells[slots[y] - 1] = e_d
        recorder.snap(steps.place_ed, cells, [slots[y]])
        trace = recorder.build(
            case_tag=CASE2,
            d=d,
            p=p,
            chain_letters=list(chain),
            x=len(chain),
            y=y + 1,
            k_d=slots[y],
            **fields,
        )
        return MapOutcome(tuple(cells), CASE2, chain, c, trace)

    d = c - s - g + 1
    k_d = slots[d - 1]
    u = sum(1 for i in exclp if i < k_d)
    moved = _shift_right(cells, slots, d - 1)
    recorder.snap(steps.shift_n, cells, moved)

    cells[k_d - 1] = n
    recorder.snap(steps.place_n, cells, [k_d])
    trace = recorder.build(case_tag=CASE3, d=d, k_d=k_d, u=u, v=s - u, **fields)
    return MapOutcome(tuple(cells), CASE3, (), c, trace)


def critical_gap_nonexc_positions(g: int, w: PermLike) -> List[int]:
    """
    Positions i with w_i < i + g and [w_i - g + 1, i) inside the g-gap excedances.

    The interval is clipped to positions >= 1, so the leftmost non-g-gap
    excedance-letter is always critical and the list is never empty for n >= 1.
    """
    word = as_word(w)
    gap_exc = set(gap_excedances(word, g, 1))
    return [
        i
        for i, letter in enumerate(word, start=1)
        if letter < i + g
        and all(j in gap_exc for j in range(max(1, letter - g + 1), i))
    ]


def critical_nonexc_positions(w: PermLike) -> List[int]:
    """Positions i with w_i <= i and [w_i, i) inside Exc(w)."""
    return critical_gap_nonexc_positions(1, w)


def remove_word(
    g: int,
    h: int,
    w: Sequence[int],
    steps: StepNames = GH_STEPS,
    record: bool = False,
) -> MapOutcome:
    """
    Invert phi_{g,h,n}: recover (sigma, c) from w in S_n.

    Raises:
        RangeError: if w is empty or h > n
    """
    word = tuple(w)
    n = len(word)
    if n < 1:
        raise RangeError("the inverse map needs a permutation of size >= 1", {"n": n})
    if not 1 <= h <= n:
        raise RangeError(f"h must lie in 1..{n}, got {h}", {"n": n, "h": h})

    z = word.index(n) + 1
    critical = critical_gap_nonexc_positions(g, word)
    a = word[critical[-1] - 1]
    recorder = _Recorder(record)
    recorder.snap("Input", word)
    cells: List[Optional[int]] = list(word)
    chain: Tuple[int, ...] = ()
    extra = {}

    if z + g > n:
        case_tag = CASE1
        cells[z - 1] = None
        recorder.snap(steps.remove_n, cells, [z])
        sigma = tuple(letter for letter in cells if letter is not None)
    else:
        slots = non_exclp_positions(word, g, h)
        if max(z + g, h) <= a:
            case_tag = CASE2
            e_d = a
            p = e_d - g + 1
            star = word.index(e_d) + 1
            chain_positions = sorted(
                (i for i in exclp_positions(word, g, h) if i < p and word[i - 1] > e_d),
                key=lambda i: word[i - 1],
            )
            cells[star - 1] = None
            recorder.snap(steps.delete_ed, cells, [star])
        else:
            case_tag = CASE3
            star = z
            chain_positions = []
            cells[star - 1] = None
            recorder.snap(steps.delete_n, cells, [star])
            slots = sorted(set(slots) | {star})

        moved = _shift_left(cells, slots, slots.index(star))
        recorder.snap(steps.shift_left, cells, moved)

        if case_tag == CASE2:
            found = [word[i - 1] for i in chain_positions]
            chain = (e_d,) + tuple(found[:-1])
            for pos, letter in zip(chain_positions, chain):
                cells[pos - 1] = letter
            recorder.snap(steps.restore, cells[:-1], chain_positions)
            extra = dict(p=p, chain_letters=list(chain), x=len(chain), k_d=star)
        sigma = tuple(cells[:-1])

    if sorted(sigma) != list(range(1, n)):
        raise PermstatError(
            "inverse produced a non-permutation",
            {"w": " ".join(map(str, word)), "g": g, "h": h, "case": case_tag},
        )
    if case_tag == CASE3:
        # n sits at k_d = z
        sigma_exclp = exclp_positions(sigma, g, h)
        u = sum(1 for i in sigma_exclp if i < z)
        extra = dict(k_d=z, u=u, v=len(sigma_exclp) - u)
    c = _gden(word, g, h) - _gden(sigma, g, h)
    trace = recorder.build(
        direction="inverse", case_tag=case_tag, g=g, h=h, n=n, c=c, z=z, a=a, **extra
    )
    return MapOutcome(sigma, case_tag, chain, c, trace)


def phi_den(sigma: PermLike, c: int) -> Tuple[Permutation, BijectionTrace]:
    """The (exc, den) insertion map phi_n, with n = |sigma| + 1."""
    outcome = insert_word(1, 1, as_word(sigma), c, DEN_STEPS, record=True)
    return Permutation.from_letters(outcome.word), outcome.trace


def phi_den_inverse(w: PermLike) -> Tuple[Permutation, int, BijectionTrace]:
    """Recover (sigma, c) with phi_den(sigma, c) = w."""
    outcome = remove_word(1, 1, as_word(w), DEN_STEPS, record=True)
    return Permutation.from_letters(outcome.word), outcome.c, outcome.trace


def phi_gh_den(
    g: int, h: int, sigma: PermLike, c: int
) -> Tuple[Permutation, BijectionTrace]:
    """The g-gap h-level insertion map phi_{g,h,n}."""
    outcome = insert_word(g, h, as_word(sigma), c, GH_STEPS, record=True)
    return Permutation.from_letters(outcome.word), outcome.trace


def phi_gh_den_inverse(
    g: int, h: int, w: PermLike
) -> Tuple[Permutation, int, BijectionTrace]:
    """Recover (sigma, c) with phi_gh_den(g, h, sigma, c) = w."""
    outcome = remove_word(g, h, as_word(w), GH_STEPS, record=True)
    return Permutation.from_letters(outcome.word), outcome.c, outcome.trace


def render_trace(trace: BijectionTrace) -> str:
    """Labeled step blocks, one per snapshot, star printed as '*'."""
    header = f"{trace.direction} {trace.case_tag} (n={trace.n}, g={trace.g}, h={trace.h}"
    if trace.c is not None:
        header += f", c={trace.c}"
    header += ")"
    blocks = [header]
    for step in trace.steps:
        block = f"[{step.step_name}]\n{step.render()}"
        if step.highlights:
            block += "\nhighlight: " + " ".join(map(str, step.highlights))
        blocks.append(block)
    return "\n".join(blocks) + "\n"
