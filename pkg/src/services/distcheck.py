"""
Exhaustive enumeration of S_n and the distribution checks built on it.

Every check enumerates S_n (or S_{n-1} x {0, ..., n-1}) in lexicographic order
and returns a Report. Witnesses are deterministic: the smallest failing n
first, then the lexicographically smallest coefficient (a, b) or input.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from src.config import settings
from src.models.permutation import Permutation, StatDescriptor, pair_label
from src.models.report import JointDistribution, Report, Table1Row, Witness
from src.services.bijections import (
    CASE2,
    DEN_STEPS,
    GH_STEPS,
    insert_word,
    remove_word,
)
from src.services.statistics import (
    Word,
    _gden,
    exclp_positions,
    gap_excedances,
    level_split,
    make_evaluator,
    non_exclp_positions,
)
from src.utils.logging_utils import (
    InvalidInputError,
    RangeError,
    ResourceLimitError,
    log_exceptions,
)

logger = logging.getLogger(__name__)
log_with_context = log_exceptions(logger)

StatPair = Tuple[StatDescriptor, StatDescriptor]

MAP_IDS = ("phiDen", "phiGhDen")

TABLE1_SIGMA = (6, 2, 1, 5, 3, 4)


def q_factorial(n: int) -> List[int]:
    """Coefficients of [n]_q! = prod_{k=1..n} (1 + q + ... + q^{k-1})."""
    coefficients = np.array([1], dtype=np.int64)
    for k in range(1, n + 1):
        coefficients = np.convolve(coefficients, np.ones(k, dtype=np.int64))
    return [int(value) for value in coefficients]


def iter_words(n: int, first: Optional[int] = None) -> Iterator[Word]:
    """
    One-line words of S_n in lexicographic order.

    With `first`, only the words starting with that letter (a contiguous block
    of the full order).
    """
    letters = range(1, n + 1)
    if first is None:
        return permutations(letters)
    rest = [letter for letter in letters if letter != first]
    return ((first,) + tail for tail in permutations(rest))


def _partition_counts(
    stat1: StatDescriptor, stat2: StatDescriptor, n: int, first: Optional[int]
) -> Dict[Tuple[int, int], int]:
    """Joint counts over one first-letter block (or all of S_n); runs in workers."""
    first_stat = make_evaluator(stat1)
    second_stat = make_evaluator(stat2)
    counts = Counter(
        (first_stat(word), second_stat(word)) for word in iter_words(n, first)
    )
    return dict(counts)


def first_difference(
    left: JointDistribution, right: JointDistribution
) -> Optional[Tuple[int, int, int, int]]:
    """Lexicographically smallest (a, b) whose counts differ, with both counts."""
    for key in sorted(set(left.entries) | set(right.entries)):
        count_left = left.entries.get(key, 0)
        count_right = right.entries.get(key, 0)
        if count_left != count_right:
            return key[0], key[1], count_left, count_right
    return None


def _n_span(n_values: List[int]) -> List[int]:
    return [min(n_values), max(n_values)] if n_values else []


class DistributionChecker:
    """
    Builds joint distributions over S_n and runs the verification checks.

    Holds the enumeration cap, the worker-pool policy and a cache of
    reference tables ((zero, inv) and (rdes, rmaj)) shared across checks.
    """

    def __init__(
        self,
        cap: Optional[int] = None,
        workers: Optional[int] = None,
        parallel_min_n: Optional[int] = None,
    ):
        """
        Initialize the checker.

        Args:
            cap: Largest n that may be enumerated (defaults to settings.ENUM_CAP)
            workers: Worker processes for distributions (defaults to settings.WORKERS)
            parallel_min_n: Smallest n that uses the pool (defaults to settings.PARALLEL_MIN_N)
        """
        self.cap = settings.ENUM_CAP if cap is None else cap
        self.workers = settings.WORKERS if workers is None else max(1, workers)
        self.parallel_min_n = (
            settings.PARALLEL_MIN_N if parallel_min_n is None else parallel_min_n
        )
        self._reference_cache: Dict[Tuple[str, int, int], JointDistribution] = {}
        logger.debug(
            f"DistributionChecker cap={self.cap} workers={self.workers} "
            f"parallel_min_n={self.parallel_min_n}"
        )

    def _check_cap(self, n: int) -> None:
        if n < 0:
            raise RangeError(f"n must be non-negative, got {n}", {"n": n})
        if n > self.cap:
            raise ResourceLimitError(
                f"n={n} exceeds the enumeration cap {self.cap}",
                {"n": n, "cap": self.cap, "permutations": factorial(n)},
            )

    def enumerate_sn(self, n: int) -> Iterator[Permutation]:
        """
        Stream every Permutation of size n in lexicographic order.

        Raises:
            ResourceLimitError: if n is above the cap
        """
        self._check_cap(n)
        return (Permutation(letters=word) for word in iter_words(n))

    @log_with_context
    def joint_distribution(
        self, stat1: StatDescriptor, stat2: StatDescriptor, n: int
    ) -> JointDistribution:
        """
        Count |{sigma in S_n : stat1(sigma) = a, stat2(sigma) = b}| for every (a, b).

        Large n is split by first letter across a process pool; the partial
        tables are summed, so the result does not depend on the worker count.
        """
        self._check_cap(n)
        label = pair_label((stat1, stat2))
        if self.workers > 1 and n >= max(self.parallel_min_n, 2):
            logger.debug(f"{label} n={n}: {n} partitions on {self.workers} workers")
            parts = []
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                futures = [
                    executor.submit(_partition_counts, stat1, stat2, n, first)
                    for first in range(1, n + 1)
                ]
                for future in as_completed(futures):
                    parts.append(
                        JointDistribution(n=n, pair=label, entries=future.result())
                    )
            return JointDistribution.merge_all(n, label, parts)
        entries = _partition_counts(stat1, stat2, n, None)
        return JointDistribution(n=n, pair=label, entries=entries)

    def _reference(self, kind: str, n: int, r: int) -> JointDistribution:
        key = (kind, n, r)
        if key not in self._reference_cache:
            if kind == "zero-inv":
                pair = (StatDescriptor.zero(), StatDescriptor.inv())
            else:
                pair = (StatDescriptor.des(r), StatDescriptor.maj(r))
            self._reference_cache[key] = self.joint_distribution(*pair, n)
        return self._reference_cache[key]

    def _compare_over(
        self,
        name: str,
        n_values: Iterable[int],
        left_of,
        right_of,
        extra_range: Optional[dict] = None,
    ) -> Report:
        checked = list(n_values)
        checked_range = {"n": _n_span(checked), **(extra_range or {})}
        for n in checked:
            difference = first_difference(left_of(n), right_of(n))
            if difference is not None:
                a, b, count_a, count_b = difference
                logger.info(f"{name}: first difference at n={n}, (a, b)=({a}, {b})")
                return Report(
                    name=name,
                    verdict="fail",
                    checked_range=checked_range,
                    witness=Witness(n=n, a=a, b=b, count_a=count_a, count_b=count_b),
                )
            logger.debug(f"{name}: n={n} agrees")
        logger.info(f"{name}: pass over {checked_range}")
        return Report(name=name, verdict="pass", checked_range=checked_range)

    @log_with_context
    def check_pair_equidistribution(
        self, pair_a: StatPair, pair_b: StatPair, n_range: Iterable[int]
    ) -> Report:
        """Pass iff both pairs have identical joint distributions for every n in range."""
        n_values = list(n_range)
        for n in n_values:
            self._check_cap(n)
        return self._compare_over(
            f"{pair_label(pair_a)} vs {pair_label(pair_b)}",
            n_values,
            lambda n: self.joint_distribution(*pair_a, n),
            lambda n: self.joint_distribution(*pair_b, n),
        )

    @log_with_context
    def find_counterexample(
        self, pair_a: StatPair, pair_b: StatPair, n_max: int
    ) -> Report:
        """Smallest n in 1..n_max where the pairs differ, with the first coefficient."""
        self._check_cap(n_max)
        return self._compare_over(
            f"counterexample {pair_label(pair_a)} vs {pair_label(pair_b)}",
            range(1, n_max + 1),
            lambda n: self.joint_distribution(*pair_a, n),
            lambda n: self.joint_distribution(*pair_b, n),
        )

    @log_with_context
    def check_r_euler_mahonian(self, pair: StatPair, r: int, n_max: int) -> Report:
        """
        Compare pair with (0, inv) for n <= r and with (rdes, rmaj) for n > r.

        Raises:
            RangeError: if r < 1
        """
        if r < 1:
            raise RangeError(f"r must be positive, got {r}", {"r": r})
        self._check_cap(n_max)

        def reference(n: int) -> JointDistribution:
            return self._reference("zero-inv" if n <= r else "rdes-rmaj", n, r)

        return self._compare_over(
            f"{pair_label(pair)} r-Euler-Mahonian at r={r}",
            range(1, n_max + 1),
            lambda n: self.joint_distribution(*pair, n),
            reference,
            {"r": r},
        )

    @log_with_context
    def check_mahonian(self, descriptor: StatDescriptor, n_max: int) -> Report:
        """Pass iff sum_{sigma in S_n} q^stat(sigma) = [n]_q! for n = 1..n_max."""
        self._check_cap(n_max)
        name = f"{descriptor.label} Mahonian"
        for n in range(1, n_max + 1):
            marginal = self.joint_distribution(
                StatDescriptor.zero(), descriptor, n
            ).q_marginal()
            expected = q_factorial(n)
            size = max(len(marginal), len(expected))
            marginal += [0] * (size - len(marginal))
            expected += [0] * (size - len(expected))
            for b, (got, want) in enumerate(zip(marginal, expected)):
                if got != want:
                    logger.info(f"{name}: q^{b} differs at n={n}")
                    return Report(
                        name=name,
                        verdict="fail",
                        checked_range={"n": [1, n_max]},
                        witness=Witness(n=n, a=0, b=b, count_a=got, count_b=want),
                    )
        logger.info(f"{name}: pass up to n={n_max}")
        return Report(name=name, verdict="pass", checked_range={"n": [1, n_max]})

    def _input_failure(
        self, name: str, checked_range: dict, n: int, sigma: Word, c, detail: str
    ) -> Report:
        logger.info(f"{name}: {detail} at sigma={sigma} c={c}")
        return Report(
            name=name,
            verdict="fail",
            checked_range=checked_range,
            witness=Witness(kind="input", n=n, sigma=list(sigma), c=c, detail=detail),
        )

    @log_with_context
    def check_bijection(self, map_id: str, n: int, g: int = 1, h: int = 1) -> Report:
        """
        Exhaustively verify phiDen or phiGhDen(g, h) on S_{n-1} x {0, ..., n-1}.

        Checks that the image is S_n without repeats, that the inverse undoes
        the map in both directions with matching case tags and chains, the
        excedance-letter-position recurrence and the gden_h increment by c.
        For phiGhDen at g = h = 1 each image is also compared with phiDen.

        Raises:
            InvalidInputError: for an unknown map id
            RangeError: if n < 1, g < 1 or h is outside 1..n
        """
        if map_id not in MAP_IDS:
            raise InvalidInputError(
                f"Unknown map {map_id!r}", {"token": map_id, "known": ", ".join(MAP_IDS)}
            )
        if map_id == "phiDen":
            g, h, steps = 1, 1, DEN_STEPS
        else:
            steps = GH_STEPS
        if n < 1 or g < 1 or not 1 <= h <= n:
            raise RangeError(
                "check_bijection needs n >= 1, g >= 1 and 1 <= h <= n",
                {"n": n, "g": g, "h": h},
            )
        self._check_cap(n)
        name = f"{map_id} bijection" + (f" g={g} h={h}" if map_id == "phiGhDen" else "")
        checked_range = {"n": n, "g": g, "h": h}
        compare_den = map_id == "phiGhDen" and g == 1 and h == 1

        seen = set()
        for sigma in iter_words(n - 1):
            exclp = set(exclp_positions(sigma, g, h))
            remaining = non_exclp_positions(sigma, g, h)
            s = len(exclp)
            base = _gden(sigma, g, h)
            for c in range(n):
                forward = insert_word(g, h, sigma, c, steps)
                w = forward.word
                if c <= s + g - 1:
                    expected_exclp = exclp
                else:
                    expected_exclp = exclp | {remaining[c - s - g]}

                detail = None
                if sorted(w) != list(range(1, n + 1)):
                    detail = "image is not a permutation of 1..n"
                elif w in seen:
                    detail = "image already produced by another input"
                elif set(exclp_positions(w, g, h)) != expected_exclp:
                    detail = "excedance-letter positions violate the recurrence"
                elif _gden(w, g, h) != base + c:
                    detail = f"gden_h increased by {_gden(w, g, h) - base}, expected {c}"
                elif compare_den and insert_word(1, 1, sigma, c, DEN_STEPS).word != w:
                    detail = "phiGhDen(1, 1) differs from phiDen"
                else:
                    backward = remove_word(g, h, w, steps)
                    if backward.word != sigma or backward.c != c:
                        detail = f"inverse returned ({backward.word}, {backward.c})"
                    elif backward.case_tag != forward.case_tag:
                        detail = (
                            f"inverse chose {backward.case_tag}, "
                            f"forward used {forward.case_tag}"
                        )
                    elif forward.case_tag == CASE2 and backward.chain != forward.chain:
                        detail = (
                            f"inverse chain {backward.chain} "
                            f"!= forward chain {forward.chain}"
                        )
                if detail is not None:
                    return self._input_failure(name, checked_range, n, sigma, c, detail)
                seen.add(w)

        # n * (n-1)! distinct images inside S_n: the map is onto.
        for w in iter_words(n):
            backward = remove_word(g, h, w, steps)
            if insert_word(g, h, backward.word, backward.c, steps).word != w:
                return self._input_failure(
                    name, checked_range, n, backward.word, backward.c,
                    f"forward image of the inverse differs from {w}",
                )
        logger.info(f"{name}: pass at n={n}")
        return Report(name=name, verdict="pass", checked_range=checked_range)

    @log_with_context
    def check_level_recurrence(
        self, n: int, g: int = 1, level: int = 1, h: int = 1
    ) -> Report:
        """
        Verify gexc_l(w) = gexc_l(sigma) + [c > gexc_l(sigma) + g + l - 2].

        Here w = phi(sigma, c) over S_{n-1} x {0, ..., n-1}.

        The map is phiDen at g = h = 1 and phiGhDen(g, h) otherwise.

        Raises:
            RangeError: if h > min(g + l, n)
        """
        if n < 1 or g < 1 or level < 1 or not 1 <= h <= min(g + level, n):
            raise RangeError(
                "check_level_recurrence needs 1 <= h <= min(g + l, n)",
                {"n": n, "g": g, "l": level, "h": h},
            )
        self._check_cap(n)
        steps = DEN_STEPS if g == h == 1 else GH_STEPS
        name = f"level recurrence g={g} l={level} h={h}"
        checked_range = {"n": n, "g": g, "l": level, "h": h}
        for sigma in iter_words(n - 1):
            base = len(gap_excedances(sigma, g, level))
            for c in range(n):
                w = insert_word(g, h, sigma, c, steps).word
                expected = base if c <= base + g + level - 2 else base + 1
                got = len(gap_excedances(w, g, level))
                if got != expected:
                    return self._input_failure(
                        name, checked_range, n, sigma, c,
                        f"gexc_l of the image is {got}, expected {expected}",
                    )
        logger.info(f"{name}: pass at n={n}")
        return Report(name=name, verdict="pass", checked_range=checked_range)

    def _sweep_identity(
        self, name: str, n: int, checked_range: dict, violation_of
    ) -> Report:
        self._check_cap(n)
        for sigma in iter_words(n):
            detail = violation_of(sigma)
            if detail is not None:
                logger.info(f"{name}: {detail} at sigma={sigma}")
                return Report(
                    name=name,
                    verdict="fail",
                    checked_range=checked_range,
                    witness=Witness(
                        kind="identity", n=n, sigma=list(sigma), detail=detail
                    ),
                )
        logger.info(f"{name}: pass at n={n}")
        return Report(name=name, verdict="pass", checked_range=checked_range)

    @log_with_context
    def check_dumont(self, n: int) -> Report:
        """|{sigma_i < v <= i}| = |{sigma_i >= v > i}| for every v in 1..n."""

        def violation_of(sigma: Word) -> Optional[str]:
            for v in range(1, n + 1):
                below = sum(1 for i, x in enumerate(sigma, 1) if x < v <= i)
                above = sum(1 for i, x in enumerate(sigma, 1) if x >= v > i)
                if below != above:
                    return f"v={v}: {below} != {above}"
            return None

        return self._sweep_identity(
            "Dumont identity", n, {"n": n, "v": [1, n]}, violation_of
        )

    @log_with_context
    def check_generalized_dumont(self, n: int) -> Report:
        """|{i >= v-g+1 : sigma_i < v}| = |{i < v-g+1 : sigma_i >= v}| + g - 1."""

        def violation_of(sigma: Word) -> Optional[str]:
            for g in range(1, n + 1):
                for v in range(g, n + 1):
                    cut = v - g + 1
                    left = sum(1 for i, x in enumerate(sigma, 1) if i >= cut and x < v)
                    right = sum(1 for i, x in enumerate(sigma, 1) if i < cut and x >= v)
                    if left != right + g - 1:
                        return f"g={g} v={v}: {left} != {right} + {g - 1}"
            return None

        return self._sweep_identity(
            "generalized Dumont identity", n, {"n": n, "g": [1, n]}, violation_of
        )

    @log_with_context
    def check_exc_exclp_lemma(self, n: int) -> Report:
        """gExc_l = {i in gExclp_h : i >= l} whenever h <= g + l."""

        def violation_of(sigma: Word) -> Optional[str]:
            for g in range(1, n + 1):
                for level in range(1, n + 1):
                    exc_set = gap_excedances(sigma, g, level)
                    for h in range(1, g + level + 1):
                        lifted = [i for i in exclp_positions(sigma, g, h) if i >= level]
                        if exc_set != lifted:
                            return f"g={g} l={level} h={h}: {exc_set} != {lifted}"
            return None

        return self._sweep_identity(
            "excedance/excedance-letter lemma",
            n,
            {"n": n, "g": [1, n], "l": [1, n]},
            violation_of,
        )

    @log_with_context
    def check_level_count_identity(self, n: int) -> Report:
        """exc(sigma) + |B_r(sigma)| = exc_r(sigma) + r - 1 for r in 1..n."""

        def violation_of(sigma: Word) -> Optional[str]:
            exc = len(gap_excedances(sigma, 1, 1))
            for r in range(1, n + 1):
                _, b_set = level_split(sigma, 1, 1, r)
                exc_r = len(gap_excedances(sigma, 1, r))
                if exc + len(b_set) != exc_r + r - 1:
                    return f"r={r}: {exc} + {len(b_set)} != {exc_r} + {r - 1}"
            return None

        return self._sweep_identity(
            "level counting identity", n, {"n": n, "r": [1, n]}, violation_of
        )

    def reproduce_table1(self) -> List[Table1Row]:
        """Images of (621534, c) under phiDen with (exc_r, den) for r = 1..6."""
        rows = []
        n = len(TABLE1_SIGMA) + 1
        for c in range(n):
            w = insert_word(1, 1, TABLE1_SIGMA, c, DEN_STEPS).word
            den = _gden(w, 1, 1)
            values = [(len(gap_excedances(w, 1, r)), den) for r in range(1, n)]
            rows.append(Table1Row(c=c, image=list(w), values=values))
        return rows
