"""
Unit tests for the statistics engine.

This module checks the published fixtures for den, den_h and exc_l, the descent
profiles, the excedance-letter split and the reduction identities over small
symmetric groups.
"""

import unittest
from itertools import permutations

from src.models.permutation import Permutation, StatDescriptor
from src.services.statistics import (
    descent_profile,
    eval_stat,
    gap_excedances,
    gap_level_den,
    gap_level_profile,
    inv_count,
    level_split,
    make_evaluator,
    non_exclp_positions,
)
from src.utils.logging_utils import InvalidDescriptorError, InvalidInputError


def _interleave(sigma, positions, excl, nexcl):
    """Rebuild sigma from the two subsequences and the marked positions."""
    excl_iter, nexcl_iter = iter(excl), iter(nexcl)
    marked = set(positions)
    return tuple(
        next(excl_iter) if i in marked else next(nexcl_iter)
        for i in range(1, len(sigma) + 1)
    )


class TestFixtures(unittest.TestCase):
    """Values worked out by hand for the introductory examples."""

    def setUp(self):
        """Set up the two running examples."""
        self.den_example = Permutation.parse("7 1 5 4 9 2 6 3 8")
        self.sigma = Permutation.parse("2715643")

    def test_den(self):
        self.assertEqual(eval_stat(StatDescriptor.den(), self.den_example), 13)
        self.assertEqual(gap_level_den(self.sigma), 15)

    def test_exc_levels(self):
        values = [eval_stat(StatDescriptor.exc(level=r), self.sigma) for r in range(1, 7)]
        self.assertEqual(values, [4, 3, 2, 2, 1, 0])
        self.assertEqual(gap_excedances(self.sigma.letters), [1, 2, 4, 5])

    def test_den_levels(self):
        self.assertEqual(eval_stat(StatDescriptor.den(level=3), self.sigma), 15)
        self.assertEqual(eval_stat(StatDescriptor.den(level=6), self.sigma), 12)

    def test_gap_den(self):
        self.assertEqual(gap_level_den(self.sigma, g=2, h=1), 9)

    def test_profile_level_three(self):
        profile = gap_level_profile(self.sigma, g=1, level=3, h=3)
        self.assertEqual(profile.exclp_set, [2, 4, 5])
        self.assertEqual(profile.excl_subseq, [7, 5, 6])
        self.assertEqual(profile.nexcl_subseq, [2, 1, 4, 3])
        self.assertEqual(profile.exc_set, [4, 5])

    def test_profile_level_six(self):
        profile = gap_level_profile(self.sigma, g=1, level=6, h=6)
        self.assertEqual(profile.exclp_set, [2, 5])
        self.assertEqual(profile.excl_subseq, [7, 6])
        self.assertEqual(profile.nexcl_subseq, [2, 1, 5, 4, 3])
        self.assertEqual(profile.exc_set, [])

    def test_profile_level_one(self):
        profile = gap_level_profile(self.sigma)
        self.assertEqual(profile.exc_set, profile.exclp_set)
        self.assertEqual(profile.exc_set, [1, 2, 4, 5])


class TestDescentProfile(unittest.TestCase):
    """Test cases for r-gap descents and the r-major index."""

    def test_classic_descents(self):
        profile = descent_profile(Permutation.parse("2715643"))
        self.assertEqual(profile.des_set, [2, 5, 6])
        self.assertEqual(profile.des, 3)
        self.assertEqual(profile.r_inv_count, 0)
        self.assertEqual(profile.maj, 13)

    def test_gap_two(self):
        profile = descent_profile((2, 7, 1, 5, 6, 4, 3), r=2)
        self.assertEqual(profile.des_set, [2, 5])
        self.assertEqual(profile.r_inv_count, 4)
        self.assertEqual(profile.maj, 11)

    def test_large_gap_reduces_to_inv(self):
        sigma = (2, 7, 1, 5, 6, 4, 3)
        profile = descent_profile(sigma, r=7)
        self.assertEqual(profile.des, 0)
        self.assertEqual(profile.maj, inv_count(sigma))
        self.assertEqual(inv_count(sigma), 11)

    def test_reverse_of_three(self):
        profile = descent_profile((3, 2, 1))
        self.assertEqual((profile.des, profile.maj), (2, 3))


class TestInvCount(unittest.TestCase):
    def test_subsequences(self):
        self.assertEqual(inv_count([7, 5, 6]), 2)
        self.assertEqual(inv_count([]), 0)

    def test_duplicates_rejected(self):
        with self.assertRaises(InvalidInputError):
            inv_count([3, 1, 3])


class TestLevelSplit(unittest.TestCase):
    def test_split(self):
        self.assertEqual(level_split((2, 7, 1, 5, 6, 4, 3), 1, 1, 4), ([1, 2], [3]))

    def test_level_one_is_empty(self):
        self.assertEqual(level_split((3, 1, 2), 1, 1, 1), ([], []))

    def test_sizes_add_up(self):
        for sigma in permutations(range(1, 6)):
            for level in range(1, 7):
                a_set, b_set = level_split(sigma, 1, 1, level)
                self.assertEqual(len(a_set) + len(b_set), level - 1)


class TestEvalStat(unittest.TestCase):
    """Test cases for the descriptor dispatcher."""

    def test_zero_statistic(self):
        self.assertEqual(eval_stat(StatDescriptor.zero(), (4, 3, 2, 1)), 0)

    def test_small_groups(self):
        descriptors = [
            StatDescriptor.des(),
            StatDescriptor.maj(2),
            StatDescriptor.inv(),
            StatDescriptor.exc(2, 3),
            StatDescriptor.den(3, 2),
        ]
        for descriptor in descriptors:
            self.assertEqual(eval_stat(descriptor, ()), 0)
            self.assertEqual(eval_stat(descriptor, (1,)), 0)

    def test_parameters_beyond_n_degenerate(self):
        sigma = (3, 1, 2)
        self.assertEqual(eval_stat(StatDescriptor.exc(level=9), sigma), 0)
        self.assertEqual(eval_stat(StatDescriptor.den(level=9), sigma), inv_count(sigma))

    def test_unknown_family(self):
        bogus = StatDescriptor.zero().model_copy(update={"family": "bogus"})
        with self.assertRaises(InvalidDescriptorError):
            eval_stat(bogus, (1, 2))
        with self.assertRaises(InvalidDescriptorError):
            make_evaluator(bogus)

    def test_parsed_descriptor(self):
        descriptor = StatDescriptor.parse("exc_l:l=2")
        self.assertEqual(eval_stat(descriptor, Permutation.parse("3 1 2")), 0)
        self.assertEqual(eval_stat(descriptor, (2, 7, 1, 5, 6, 4, 3)), 3)


class TestExhaustiveIdentities(unittest.TestCase):
    """Reduction and partition identities over S_n for small n."""

    def test_partition_interleaves_back(self):
        for n in range(0, 6):
            for sigma in permutations(range(1, n + 1)):
                for g in range(1, n + 2):
                    for h in range(1, n + 2):
                        profile = gap_level_profile(sigma, g=g, h=h)
                        rebuilt = _interleave(
                            sigma,
                            profile.exclp_set,
                            profile.excl_subseq,
                            profile.nexcl_subseq,
                        )
                        self.assertEqual(rebuilt, sigma)
                        self.assertEqual(
                            sorted(profile.exclp_set + non_exclp_positions(sigma, g, h)),
                            list(range(1, n + 1)),
                        )

    def test_reductions(self):
        den = StatDescriptor.den()
        for n in range(1, 7):
            for sigma in permutations(range(1, n + 1)):
                self.assertEqual(gap_level_den(sigma, 1, 1), eval_stat(den, sigma))
                for r in range(n, n + 2):
                    self.assertEqual(gap_level_den(sigma, r, 1), inv_count(sigma))
                    self.assertEqual(descent_profile(sigma, r).maj, inv_count(sigma))

    def test_rmaj_at_one_is_maj(self):
        for sigma in permutations(range(1, 6)):
            profile = descent_profile(sigma, 1)
            descents = [i for i in range(1, 5) if sigma[i - 1] > sigma[i]]
            self.assertEqual(profile.maj, sum(descents))


if __name__ == "__main__":
    unittest.main()
