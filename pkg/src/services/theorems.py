"""
Named verification suites over the distribution checker.

Each name stands for one published result (or one of its negative remarks)
and expands into a sweep of checks with default ranges. Checks run lazily and
the first failing check decides the combined report.
"""

import logging
from typing import Callable, Dict, Iterator, List, Optional

from src.models.permutation import StatDescriptor
from src.models.report import Report, Witness
from src.services.distcheck import DistributionChecker
from src.utils.logging_utils import InvalidInputError, log_exceptions

logger = logging.getLogger(__name__)
log_with_context = log_exceptions(logger)

THEOREM_NAMES = (
    "1.1",
    "1.2",
    "1.3",
    "1.4",
    "1.6",
    "2.1",
    "4.1",
    "mahonian",
    "denert",
    "identities",
    "remark-1.3",
    "remark-1.4",
)

DEFAULT_MAX_N = {
    "1.1": 8,
    "1.2": 7,
    "1.3": 8,
    "1.4": 7,
    "1.6": 7,
    "2.1": 8,
    "4.1": 7,
    "mahonian": 8,
    "denert": 8,
    "identities": 7,
    "remark-1.3": 8,
    "remark-1.4": 8,
}

# Largest g and l swept by the gap/level suites.
GAP_LEVEL_MAX = 4


def _gexc(g: int, level: int) -> StatDescriptor:
    return StatDescriptor.exc(g=g, level=level)


def _gden(g: int, h: int) -> StatDescriptor:
    return StatDescriptor.den(g=g, level=h)


def _rdes_rmaj(r: int):
    return StatDescriptor.des(r), StatDescriptor.maj(r)


class TheoremSuite:
    """Runs the checks behind each named result and combines their reports."""

    def __init__(self, checker: Optional[DistributionChecker] = None):
        self.checker = checker or DistributionChecker()
        self._suites: Dict[str, Callable[..., Iterator[Report]]] = {
            "1.1": self._theorem_1_1,
            "1.2": self._theorem_1_2,
            "1.3": self._theorem_1_3,
            "1.4": self._theorem_1_4,
            "1.6": self._corollary_1_6,
            "2.1": self._theorem_2_1,
            "4.1": self._theorem_4_1,
            "mahonian": self._mahonian,
            "denert": self._denert,
            "identities": self._identities,
        }

    @log_with_context
    def verify(
        self,
        name: str,
        r: Optional[int] = None,
        g: Optional[int] = None,
        level: Optional[int] = None,
        h: Optional[int] = None,
        n: Optional[int] = None,
        max_n: Optional[int] = None,
    ) -> Report:
        """
        Run the named suite.

        Parameters left as None are swept over their default ranges. `n` pins
        a single size (bijection suites) or the top of the range (distribution
        suites); otherwise sizes run from 1 to `max_n`.

        Raises:
            InvalidInputError: for an unknown name
        """
        if name not in THEOREM_NAMES:
            raise InvalidInputError(
                f"Unknown result {name!r}",
                {"token": name, "known": ", ".join(THEOREM_NAMES)},
            )
        top = n if n is not None else (max_n or DEFAULT_MAX_N[name])
        logger.info(f"verify {name}: r={r} g={g} l={level} h={h} n={n} max_n={top}")
        if name == "remark-1.3":
            return self._remark(name, self._remark_1_3(r or 2, top))
        if name == "remark-1.4":
            return self._remark(name, self._remark_1_4(g or 1, level or 1, h, top))
        checks = self._suites[name](r=r, g=g, level=level, h=h, n=n, top=top)
        return self._combine(name, checks, top)

    def _combine(self, name: str, checks: Iterator[Report], top: int) -> Report:
        count = 0
        for report in checks:
            count += 1
            if not report.passed:
                witness = report.witness.model_copy(
                    update={"detail": report.witness.detail or report.name}
                )
                return Report(
                    name=name,
                    verdict="fail",
                    checked_range={"checks": count, "max_n": top, "failed": report.name},
                    witness=witness,
                )
        logger.info(f"verify {name}: {count} checks passed")
        return Report(
            name=name, verdict="pass", checked_range={"checks": count, "max_n": top}
        )

    def _remark(self, name: str, search: Report) -> Report:
        """A negative remark holds when the search finds a counterexample."""
        if not search.passed:
            return Report(
                name=name,
                verdict="pass",
                checked_range=search.checked_range,
                witness=search.witness,
            )
        top = search.checked_range["n"][-1]
        return Report(
            name=name,
            verdict="fail",
            checked_range=search.checked_range,
            witness=Witness(
                kind="identity",
                n=top,
                detail=f"no counterexample up to n={top} for {search.name}",
            ),
        )

    @staticmethod
    def _values(pinned: Optional[int], upper: int, lower: int = 1) -> List[int]:
        return [pinned] if pinned is not None else list(range(lower, upper + 1))

    def _theorem_1_1(self, r, top, **_) -> Iterator[Report]:
        for value in self._values(r, top):
            yield self.checker.check_r_euler_mahonian(
                (_gexc(1, value), _gden(1, value)), value, top
            )

    def _theorem_1_2(self, g, level, top, **_) -> Iterator[Report]:
        for gap in self._values(g, GAP_LEVEL_MAX + 1):
            for lev in self._values(level, GAP_LEVEL_MAX + 1):
                if g is None and level is None and gap + lev > 6:
                    continue
                r = gap + lev - 1
                yield self.checker.check_r_euler_mahonian(
                    (_gexc(gap, lev), _gden(gap, lev)), r, top
                )
                yield self.checker.check_r_euler_mahonian(
                    (_gexc(gap, lev), _gden(gap, gap + lev)), r, top
                )

    def _theorem_1_3(self, r, top, **_) -> Iterator[Report]:
        for value in self._values(r, top):
            yield self.checker.check_r_euler_mahonian(
                (_gexc(1, value), StatDescriptor.den()), value, top
            )

    def _theorem_1_4(self, g, level, h, top, **_) -> Iterator[Report]:
        for gap in self._values(g, GAP_LEVEL_MAX):
            for lev in self._values(level, GAP_LEVEL_MAX):
                for height in self._values(h, gap + lev):
                    yield self.checker.check_r_euler_mahonian(
                        (_gexc(gap, lev), _gden(gap, height)), gap + lev - 1, top
                    )

    def _corollary_1_6(self, r, h, top, **_) -> Iterator[Report]:
        for value in self._values(r, top):
            for height in self._values(h, value + 1):
                yield self.checker.check_r_euler_mahonian(
                    (_gexc(1, value), _gden(1, height)), value, top
                )

    def _theorem_2_1(self, r, n, top, **_) -> Iterator[Report]:
        sizes = [n] if n is not None else range(1, top + 1)
        for size in sizes:
            yield self.checker.check_bijection("phiDen", size)
            for value in self._values(r, size):
                yield self.checker.check_level_recurrence(size, 1, value, 1)

    def _theorem_4_1(self, g, level, h, n, top, **_) -> Iterator[Report]:
        sizes = [n] if n is not None else range(1, top + 1)
        for size in sizes:
            for gap in self._values(g, GAP_LEVEL_MAX):
                for height in self._values(h, size):
                    yield self.checker.check_bijection("phiGhDen", size, gap, height)
        size = sizes[-1]
        for gap in self._values(g, GAP_LEVEL_MAX):
            for lev in self._values(level, GAP_LEVEL_MAX):
                for height in self._values(h, min(gap + lev, size)):
                    yield self.checker.check_level_recurrence(size, gap, lev, height)

    def _mahonian(self, r, g, h, top, **_) -> Iterator[Report]:
        descriptors = {StatDescriptor.den().label: StatDescriptor.den()}
        for value in self._values(r, top, 2):
            descriptors.setdefault(_gden(value, 1).label, _gden(value, 1))
            descriptors.setdefault(_gden(1, value).label, _gden(1, value))
        for gap in self._values(g, GAP_LEVEL_MAX):
            for height in self._values(h, top):
                descriptors.setdefault(_gden(gap, height).label, _gden(gap, height))
        for descriptor in descriptors.values():
            yield self.checker.check_mahonian(descriptor, top)

    def _denert(self, top, **_) -> Iterator[Report]:
        reference = (StatDescriptor.des(), StatDescriptor.maj())
        ladder = [
            (StatDescriptor.exc(), StatDescriptor.den()),
            _rdes_rmaj(1),
            (_gexc(1, 1), _gden(1, 1)),
        ]
        for pair in ladder:
            yield self.checker.check_pair_equidistribution(
                pair, reference, range(1, top + 1)
            )

    def _identities(self, n, top, **_) -> Iterator[Report]:
        sizes = [n] if n is not None else range(1, top + 1)
        for size in sizes:
            yield self.checker.check_dumont(size)
            yield self.checker.check_generalized_dumont(size)
            yield self.checker.check_exc_exclp_lemma(size)
            yield self.checker.check_level_count_identity(size)

    def _remark_1_3(self, r: int, top: int) -> Report:
        """(rexc, den) is not r-Euler-Mahonian for r >= 2."""
        return self.checker.find_counterexample(
            (_gexc(r, 1), StatDescriptor.den()), _rdes_rmaj(r), top
        )

    def _remark_1_4(self, g: int, level: int, h: Optional[int], top: int) -> Report:
        """
        (gexc_l, gden_h) is not r-Euler-Mahonian for every h > g + l.

        A pinned h is searched alone. Otherwise h climbs from g + l + 1 and the
        first h with a counterexample is reported. On S_n with n <= top every
        h > top gives the same statistic, so the climb stops at top + 1.
        """
        first = g + level + 1
        heights = [h] if h is not None else range(first, max(first, top + 1) + 1)
        reference = _rdes_rmaj(g + level - 1)
        for height in heights:
            search = self.checker.find_counterexample(
                (_gexc(g, level), _gden(g, height)), reference, top
            )
            search = search.model_copy(
                update={"checked_range": {**search.checked_range, "h": height}}
            )
            if not search.passed:
                logger.info(f"remark-1.4: g={g} l={level} first fails at h={height}")
                break
        return search
