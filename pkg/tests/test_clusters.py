from itertools import permutations
from math import factorial
import unittest

import pytest

from fwilf.clusters import (Cluster, HypothesisError, NotGroundedError, boost,
                            clusterHeights, clusterNumbers, clusterSkeletons,
                            consecutivePaths, enumerateClusters, groundedEquivalenceClass,
                            groundedNecessaryConditions, levelShapes, naiveClusterNumbers,
                            orderedPrimitiveCount, pEquivalenceCheck,
                            primitivePseudoProfile, primitiveStructureEquivCheck, recompose,
                            standardDecomposition, strongEquivCheck, superStrongCounts,
                            superStrongCountsNaive,
                            superStrongWitness, swapCandidates, swapClosure,
                            swapEquivalent, swapHypothesisProblems, twoClusterCount)
from fwilf.forests import Forest, rootedShapes, shapeToForest
from fwilf.patterns import Pattern, parsePattern
from fwilf.utils import CapExceededError


def P(text):
    return parsePattern(text)


def groundedPatterns(k):
    for values in permutations(range(1, k + 1)):
        p = Pattern(values)
        if p.isGrounded():
            yield p


class ClusterTests(unittest.TestCase):
    def testValidity(self):
        C = Cluster.fromPaths(Forest.path([1, 2, 4, 3]), P('1243'), [(1, 2, 4, 3)])
        assert C.isValid()
        assert C.isPrimitive()
        assert clusterHeights(C) == {2: 1, 4: 2, 3: 1}

        bad = Cluster.fromPaths(Forest.path([1, 2, 4, 3, 5]), P('1243'), [(1, 2, 4, 3)])
        assert any("lie on no mark" in s for s in bad.problems())
        wrong = Cluster.fromPaths(Forest.path([1, 2, 3, 4]), P('1243'), [(1, 2, 3, 4)])
        assert any("not an instance" in s for s in wrong.problems())

    def testIncreasingEdges(self):
        # every edge of a 12-cluster is marked, so clusters are increasing trees
        expected = {(n - 1, n): factorial(n - 1) for n in range(2, 6)}
        assert clusterNumbers(P('12'), 5) == expected
        assert naiveClusterNumbers(P('12'), 5) == expected

    def testAgainstNaive(self):
        for text in ('123', '132', '2413'):
            p = P(text)
            assert clusterNumbers(p, 6) == naiveClusterNumbers(p, 6), text

    @pytest.mark.slow
    def testAgainstNaiveLarger(self):
        for text in ('123', '132', '213', '231', '1243', '1324', '1342', '2143', '2413'):
            p = P(text)
            assert clusterNumbers(p, 8) == naiveClusterNumbers(p, 8), text

    def testSkeletonsAreCanonical(self):
        forms = [sk.canon() for sk in clusterSkeletons(P('123'), 6)]
        assert len(forms) == len(set(forms))

    def testEnumerateMatchesCount(self):
        p = P('132')
        table = clusterNumbers(p, 6)
        for (m, n), count in table.items():
            found = list(enumerateClusters(p, n, m))
            assert len(found) == count == len(set(found))
            assert all(C.isValid() and C.m == m for C in found)

    def testCap(self):
        with self.assertRaises(CapExceededError):
            clusterNumbers(P('123'), 20)


class StrongEquivalenceTests(unittest.TestCase):
    def testRefuted(self):
        verdict = strongEquivCheck(P('123'), P('132'), 5)
        assert not verdict.consistent
        assert verdict.witness == (2, 4, 3, 2)

    def testSporadicPair(self):
        assert strongEquivCheck(P('1324'), P('1423'), 7).consistent

    @pytest.mark.slow
    def testSporadicPairLarger(self):
        assert strongEquivCheck(P('1324'), P('1423'), 10).consistent

    def testLengthsDiffer(self):
        assert not strongEquivCheck(P('123'), P('1234'), 5).consistent

    def testTwoClusters(self):
        assert twoClusterCount(P('1243'), 1) == 25
        assert clusterNumbers(P('1243'), 7, mMax=2)[(2, 7)] == 25
        p = P('125364')
        table = clusterNumbers(p, 11, mMax=2)
        for h in (1, 2):
            assert twoClusterCount(p, h) == table[(2, 12 - h)], h

    def assertTwoClustersMatch(self, k):
        for p in groundedPatterns(k):
            table = clusterNumbers(p, 2 * k - 1, mMax=2)
            for h in range(1, k):
                assert twoClusterCount(p, h) == table.get((2, 2 * k - h), 0), (p, h)

    def testTwoClustersAllGrounded(self):
        for k in (3, 4):
            self.assertTwoClustersMatch(k)

    @pytest.mark.slow
    def testTwoClustersAllGroundedLonger(self):
        self.assertTwoClustersMatch(5)

    def testTwoClustersNeedGrounded(self):
        with self.assertRaises(NotGroundedError):
            twoClusterCount(P('2413'), 1)
        with self.assertRaises(HypothesisError):
            twoClusterCount(P('1243'), 4)


class PseudoClusterTests(unittest.TestCase):
    def testDecompositionRoundTrip(self):
        p = P('1243')
        for m in (2, 3):
            for C in enumerateClusters(p, 7, m):
                D = standardDecomposition(C)
                assert D.primitive.isPrimitive()
                assert recompose(D) == C

    def testPseudoDecompositionRoundTrip(self):
        p = P('1243')
        found = 0
        for n in (5, 6):
            for m in (2, 3):
                for C in enumerateClusters(p, n, m, bound=2):
                    D = standardDecomposition(C)
                    assert D.primitive.isPrimitive()
                    assert recompose(D) == C
                    found += 1
        assert found

    def testDecompositionNeedsGrounded(self):
        C = Cluster.fromPaths(Forest.path([2, 4, 1, 3]), P('2413'), [(2, 4, 1, 3)])
        with self.assertRaises(NotGroundedError):
            standardDecomposition(C)

    def testBoostedPairs(self):
        p, q = boost(P('3142'), 2), boost(P('3241'), 2)
        assert (str(p), str(q)) == ('125364', '125463')
        for bound in (1, 2):
            assert pEquivalenceCheck(p, q, bound, 8).consistent, bound
        assert strongEquivCheck(p, q, 9).consistent

    @pytest.mark.slow
    def testBoostedPairLarger(self):
        assert strongEquivCheck(P('125364'), P('125463'), 12).consistent

    def testPseudoProfile(self):
        profile = primitivePseudoProfile(P('1243'), 1, 7)
        assert profile
        for (root, m, n, heights), count in profile.items():
            assert count > 0
            assert 1 <= m and n <= 7
            assert root not in dict(heights)

    def testBoostHypotheses(self):
        with self.assertRaises(HypothesisError):
            boost(P('1342'), 2)
        with self.assertRaises(HypothesisError):
            boost(P('3142'), 0)


class SwapTests(unittest.TestCase):
    def testHypotheses(self):
        p = P('125364')
        assert swapHypothesisProblems(p, (4, 6)) == []
        assert swapHypothesisProblems(p, (3, 4))
        assert swapHypothesisProblems(p, (2, 4))
        assert swapHypothesisProblems(p, (1, 4))
        assert (4, 6) in set(swapCandidates(p))
        assert (3, 4) not in set(swapCandidates(p))

    def testSwap(self):
        assert str(swapEquivalent(P('125364'), (4, 6), P('21'))) == '125463'
        with self.assertRaises(HypothesisError):
            swapEquivalent(P('125364'), (3, 4), P('21'))

    def testClosure(self):
        assert swapClosure(P('125364')) == frozenset([P('125364'), P('125463')])
        assert P('1254763') in swapClosure(P('1253764'))

    def testPrimitiveStructure(self):
        assert levelShapes(2, 3) == [((),), ((), ())]
        assert orderedPrimitiveCount(shapeToForest(((), ())), P('12')) == 2
        assert primitiveStructureEquivCheck(P('12'), P('21')).consistent
        assert not primitiveStructureEquivCheck(P('12'), P('123')).consistent


class GroundedTests(unittest.TestCase):
    def testClass(self):
        members = groundedEquivalenceClass(6)
        assert len(members) >= 4
        assert {P('125364'), P('125463')} <= members
        assert all(p.k == 6 for p in members)
        with self.assertRaises(HypothesisError):
            groundedEquivalenceClass(5)

    def testNecessaryConditions(self):
        assert groundedNecessaryConditions(P('125364'), P('125463')).passed
        report = groundedNecessaryConditions(P('125364'), P('126354'))
        assert not report.nextValueCondition
        assert not report.passed
        with self.assertRaises(NotGroundedError):
            groundedNecessaryConditions(P('1324'), P('1423'))


class SuperStrongTests(unittest.TestCase):
    def testConsecutivePaths(self):
        assert consecutivePaths(Forest.path([1, 2, 3, 4]), 3) == [(1, 2, 3), (2, 3, 4)]

    def testInclusionExclusion(self):
        p = P('132')
        for shape in rootedShapes(5):
            F = shapeToForest(shape)
            paths = consecutivePaths(F, 3)
            for S in ([], paths[:1], paths):
                assert superStrongCounts(F, S, p) == superStrongCountsNaive(F, S, p)

    def testNonPathRejected(self):
        with self.assertRaises(HypothesisError):
            superStrongCounts(Forest.path([1, 2, 3]), [(1, 3)], P('12'))

    def testWitness(self):
        p, q = P('1324'), P('1423')
        w = superStrongWitness(p, q, cap=7)
        assert w is not None
        assert w.forest.n <= 7
        a, b = w.counts
        assert a != b
        assert superStrongCountsNaive(w.forest, w.paths, p).exact == a
        assert superStrongCountsNaive(w.forest, w.paths, q).exact == b

    def testNoWitnessForItself(self):
        assert superStrongWitness(P('132'), P('132'), cap=5) is None
