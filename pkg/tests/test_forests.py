import unittest

import pytest

from fwilf import consts
from fwilf.forests import (Forest, InvalidForestError, InvalidKindError, avoids,
                           countAvoiders, countAvoidersRange, countPathAvoiders,
                           enumerateAvoiders, enumerateForests, instanceCountDistribution,
                           instances, parseForest, rootedShapes, shapeToForest,
                           tallyAvoiders, wilfCheck)
from fwilf.patterns import PatternSet, parsePattern
from fwilf.utils import CapExceededError

from . import utils

C = consts.CLASSICAL
K = consts.CONSECUTIVE


def treeCountOf(parents):
    return parents.count(0)


class ForestTests(unittest.TestCase):
    def testParse(self):
        F = parseForest('0,1,0,3,3')
        assert F.n == 5
        assert F.roots == (1, 3)
        assert F.children(3) == (4, 5)
        assert F.depth(5) == 2
        assert str(F) == '0,1,0,3,3'
        assert parseForest('-') == Forest.empty()
        assert str(Forest.empty()) == '-'

    def testParseErrors(self):
        for bad in ('0,5', '2,1', '0,x', '1'):
            with self.assertRaises(InvalidForestError):
                parseForest(bad)

    def testStructure(self):
        F = utils.PATH_1234
        assert F.ancestors(4) == [3, 2, 1]
        assert F.rootPath(3) == [1, 2, 3]
        assert F.isAncestor(1, 4)
        assert not F.isAncestor(4, 1)
        assert F.leaves() == (4,)
        assert F.isTree()
        assert not utils.SMALL_FOREST.isTree()
        assert len(utils.SMALL_FOREST.components()) == 2

    def testArbitraryLabels(self):
        F = utils.forestFromEdges([(7, 2), (7, 12), (12, 5)], [7])
        assert F.rootPath(5) == [7, 12, 5]
        assert F.standardized() == parseForest('3,4,0,3')
        assert F.induced([7, 5]).roots == (5, 7)

    def testShape(self):
        assert utils.CHERRY.shape() == (((), ()),)
        assert parseForest('0,1,2').shape() != utils.CHERRY.shape()
        assert parseForest('2,0,2').shape() == utils.CHERRY.shape()
        assert [len(rootedShapes(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]
        for shape in rootedShapes(5):
            T = shapeToForest(shape)
            assert T.n == 5 and T.isTree()
            assert T.shape() == (shape,)


class EnumerationTests(unittest.TestCase):
    def testCayley(self):
        for n in range(1, 6):
            forests = list(enumerateForests(n))
            assert len(forests) == (n + 1) ** (n - 1)
            assert len(set(forests)) == len(forests)

    @pytest.mark.slow
    def testCayleyLarger(self):
        for n in range(6, 9):
            assert countAvoiders(PatternSet(), C, n) == ((n + 1) ** (n - 1), n ** (n - 1))

    def testCap(self):
        with self.assertRaises(CapExceededError):
            countAvoiders(PatternSet.of('21'), C, consts.N_MAX + 1)

    def testBadKind(self):
        with self.assertRaises(InvalidKindError):
            countAvoiders(PatternSet.of('21'), 'sideways', 3)


class InstanceTests(unittest.TestCase):
    def testClassicalAndConsecutive(self):
        p12 = parsePattern('12')
        assert len(instances(utils.PATH_1234, p12, C)) == 6
        assert instances(utils.PATH_1234, p12, K) == {(1, 2), (2, 3), (3, 4)}
        assert instances(utils.SMALL_FOREST, p12, C) == {(1, 2), (3, 4), (3, 5)}

    def testNonConsecutiveInstance(self):
        F = parseForest('0,1,2')  # path 1, 2, 3
        G = F.relabeled({2: 3, 3: 2})  # path 1, 3, 2
        p = parsePattern('12')
        assert (1, 2) in instances(G, p, C)
        assert (1, 2) not in instances(G, p, K)

    def testAvoids(self):
        assert avoids(utils.SMALL_FOREST, PatternSet.of('21'))
        assert not avoids(utils.PATH_1234, PatternSet.of('123'))
        assert avoids(utils.PATH_1234, PatternSet.of('123'), K) is False
        assert avoids(parseForest('0,1,2').relabeled({2: 3, 3: 2}),
                      PatternSet.of('123'), K)
        assert avoids(Forest.empty(), PatternSet.of('12'))


class CountingTests(unittest.TestCase):
    def testEmptySet(self):
        for n in range(1, 7):
            assert countAvoiders(PatternSet(), C, n) == ((n + 1) ** (n - 1),
                                                         n ** (n - 1))
        assert countAvoiders(PatternSet(), C, 0) == (1, 0)

    def testIncreasingForests(self):
        factorial = 1
        for n in range(1, 7):
            factorial *= n
            f, t = countAvoiders(PatternSet.of('21'), C, n)
            assert f == factorial
            assert t == factorial // n
        # no consecutive 12 means every label drops along each edge
        assert countAvoiders(PatternSet.of('12'), K, 5)[0] == 120

    def testRange(self):
        t, f = countAvoidersRange(PatternSet.of('21'), C, 4)
        assert t == [1, 1, 2, 6]
        assert f == [1, 1, 2, 6, 24]

    def testJobsIndependence(self):
        S = PatternSet.of('123', '2413')
        assert countAvoiders(S, C, 5, jobs=1) == countAvoiders(S, C, 5, jobs=3)
        assert (instanceCountDistribution(parsePattern('132'), K, 5, jobs=1)
                == instanceCountDistribution(parsePattern('132'), K, 5, jobs=4))

    def testInstanceDistribution(self):
        dist = instanceCountDistribution(parsePattern('12'), C, 3)
        assert sum(dist.values()) == 16
        assert dist[0] == 6
        assert dist[3] == 1  # the path 1, 2, 3

    def testPathAvoiders(self):
        assert [countPathAvoiders(parsePattern('123'), n) for n in range(1, 7)] \
            == [1, 2, 5, 14, 42, 132]

    def testEnumerateAvoiders(self):
        found = list(enumerateAvoiders(PatternSet.of('21'), C, 3))
        assert len(found) == 6
        assert all(avoids(F, PatternSet.of('21')) for F in found)

    def testTally(self):
        tally = tallyAvoiders(PatternSet(), C, 3, treeCountOf)
        assert tally == {1: 9, 2: 6, 3: 1}


class WilfTests(unittest.TestCase):
    def testSingletons(self):
        firstDiff, rows = wilfCheck(PatternSet.of('123'), PatternSet.of('132'), C, 5)
        assert firstDiff is None
        assert len(rows) == 5

    def testTwistTailSets(self):
        firstDiff, _ = wilfCheck(PatternSet.of('213', '1234'),
                                 PatternSet.of('213', '1243'), C, 6)
        assert firstDiff is None

    def testPairSets(self):
        for left, right in ((('123', '2413'), ('132', '2314')),
                            (('123', '3142'), ('132', '3124'))):
            firstDiff, _ = wilfCheck(PatternSet.of(*left), PatternSet.of(*right), C, 6)
            assert firstDiff is None

    def testTripleSets(self):
        # the two pair equivalences come from one bijection, so they combine
        firstDiff, _ = wilfCheck(PatternSet.of('123', '2413', '3142'),
                                 PatternSet.of('132', '2314', '3124'), C, 6)
        assert firstDiff is None

    @pytest.mark.slow
    def testEquivalencesLarger(self):
        pairs = ((('123',), ('132',)),
                 (('213', '1234'), ('213', '1243')),
                 (('123', '2413'), ('132', '2314')),
                 (('123', '3142'), ('132', '3124')),
                 (('123', '2413', '3142'), ('132', '2314', '3124')))
        for left, right in pairs:
            firstDiff, _ = wilfCheck(PatternSet.of(*left), PatternSet.of(*right), C, 7)
            assert firstDiff is None, (left, right)

    def testInequivalent(self):
        firstDiff, _ = wilfCheck(PatternSet.of('12'), PatternSet.of('123'), C, 4)
        assert firstDiff == 2
