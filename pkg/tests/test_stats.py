from fractions import Fraction
import unittest

import pytest

from fwilf import consts
from fwilf.forests import countAvoiders
from fwilf.patterns import PatternSet
from fwilf.stats import (Distribution, EmptyDistributionError, componentSizeProfile,
                         componentsOfSize, mirror, moments, rootLabel,
                         rootLabelDistribution, treeCount, treeCountDistribution)
from fwilf.utils import stirlingFirst, stirlingSecond

C = consts.CLASSICAL


class StatisticTests(unittest.TestCase):
    def testOnParentLists(self):
        assert rootLabel((0, 1, 0)) is None
        assert rootLabel((2, 0, 2)) == 2
        assert treeCount((0, 1, 0)) == 2
        assert componentsOfSize(1, (0, 1, 0)) == 1
        assert componentsOfSize(2, (0, 1, 0)) == 1
        assert componentsOfSize(3, (0, 1, 0)) == 0


class DistributionTests(unittest.TestCase):
    def testUnrestricted(self):
        S = PatternSet()
        assert rootLabelDistribution(S, C, 3).counts == {1: 3, 2: 3, 3: 3}
        # C(n-1, k-1) n^(n-k) forests with k trees
        assert treeCountDistribution(S, C, 3).counts == {1: 9, 2: 6, 3: 1}
        profile = componentSizeProfile(S, C, 3, 1)
        assert profile.counts == {0: 9, 1: 6, 3: 1}
        assert profile.statistic == 'componentsOfSize1'

    def testCycleCounts(self):
        # increasing forests and permutations share their cycle statistics
        d = treeCountDistribution(PatternSet.of('21'), C, 4)
        assert d.counts == {1: 6, 2: 11, 3: 6, 4: 1}
        assert d.total == countAvoiders(PatternSet.of('21'), C, 4)[0]
        mean, _ = moments(d)
        assert mean == Fraction(25, 12)
        d = treeCountDistribution(PatternSet.of('21'), C, 5)
        assert d.counts == {m: stirlingFirst(5, m) for m in range(1, 6)}

    def testBlockCounts(self):
        d = treeCountDistribution(PatternSet.of('21', '123'), C, 4)
        assert d.counts == {1: 1, 2: 7, 3: 6, 4: 1}
        d = treeCountDistribution(PatternSet.of('21', '123'), C, 5)
        assert d.counts == {m: stirlingSecond(5, m) for m in range(1, 6)}

    @pytest.mark.slow
    def testStirlingLarger(self):
        for n in range(6, 9):
            d = treeCountDistribution(PatternSet.of('21'), C, n)
            assert d.counts == {m: stirlingFirst(n, m) for m in range(1, n + 1)}, n
            d = treeCountDistribution(PatternSet.of('21', '123'), C, n)
            assert d.counts == {m: stirlingSecond(n, m) for m in range(1, n + 1)}, n

    def testUniformRoot(self):
        d = rootLabelDistribution(PatternSet.of('132', '231', '321'), C, 4)
        assert d.counts == {1: 6, 2: 6, 3: 6, 4: 6}
        assert d.total == countAvoiders(d.S, C, 4)[1]
        assert moments(d) == (Fraction(5, 2), Fraction(5, 4))
        assert set(d.probabilities().values()) == {Fraction(1, 4)}

    def testMirror(self):
        increasing = rootLabelDistribution(PatternSet.of('21'), C, 4)
        decreasing = rootLabelDistribution(PatternSet.of('12'), C, 4)
        assert increasing.counts == {1: 6}
        assert mirror(increasing).counts == decreasing.counts == {4: 6}

    def testRows(self):
        d = Distribution('treeCount', 2, PatternSet(), C, {1: 2, 2: 1, 3: 0})
        assert d.support == (1, 2)
        assert list(d.rows()) == [(2, 'treeCount', 1, 2), (2, 'treeCount', 2, 1)]

    def testEmpty(self):
        d = Distribution('rootLabel', 3, PatternSet(), C, {1: 0})
        assert d.total == 0
        with self.assertRaises(EmptyDistributionError):
            d.probabilities()
        with self.assertRaises(EmptyDistributionError):
            moments(d)
