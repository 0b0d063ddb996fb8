from itertools import permutations
import unittest

from fwilf.patterns import Pattern, parsePattern
from fwilf.posets import (ClusterPoset, PosetCapError, PosetParameterError,
                          branchExtensionCount, countLinearExtensions,
                          countLinearExtensionsNaive, genBranchPoset, genStarPoset,
                          labellingFromExtension, linearExtensions, starExtensionCount,
                          starMarks)


class PosetTests(unittest.TestCase):
    def testChainsAndAntichains(self):
        assert countLinearExtensions(ClusterPoset.antichain(4)) == 24
        assert countLinearExtensions(ClusterPoset.antichain(0)) == 1
        assert countLinearExtensions(ClusterPoset.chain(7)) == 1

    def testClosure(self):
        P = ClusterPoset.fromRelations([1, 2, 3], [(1, 2), (2, 3)])
        assert P.less(1, 3)
        assert not P.less(3, 1)
        assert not P.less(2, 2)
        assert not P.cyclic

    def testCyclic(self):
        P = ClusterPoset.fromRelations([1, 2, 3], [(1, 2), (2, 1)])
        assert P.cyclic
        assert countLinearExtensions(P) == 0
        assert list(linearExtensions(P)) == []

    def testMarks(self):
        # a single instance of 2413 on four vertices is a chain
        P = ClusterPoset.fromMarks([((1, 2, 3, 4), (2, 4, 1, 3))])
        assert P.less(3, 1) and P.less(1, 4) and P.less(4, 2)
        assert countLinearExtensions(P) == 1
        assert labellingFromExtension(next(linearExtensions(P))) == \
            {3: 1, 1: 2, 4: 3, 2: 4}

    def testAgainstNaive(self):
        posets = [
            ClusterPoset.fromRelations(range(1, 7), [(1, 3), (2, 3), (3, 5), (4, 6)]),
            ClusterPoset.fromRelations(range(1, 6), [(1, 2), (1, 3), (2, 4), (3, 4)]),
            ClusterPoset.fromMarks([((1, 2, 3), (1, 3, 2)), ((2, 4, 5), (1, 3, 2))]),
        ]
        for P in posets:
            count = countLinearExtensions(P)
            assert count == countLinearExtensionsNaive(P)
            extensions = list(linearExtensions(P))
            assert len(extensions) == count == len(set(extensions))
            assert all(P.isLinearExtension(e) for e in extensions)

    def testCap(self):
        with self.assertRaises(PosetCapError) as cm:
            countLinearExtensions(ClusterPoset.antichain(5), cap=4)
        assert cm.exception.value == 5
        assert "exceeds the cap of 4" in str(cm.exception)


class PosetFamilyTests(unittest.TestCase):
    def testStarClosedForm(self):
        for k in (3, 4):
            for values in permutations(range(1, k + 1)):
                p = Pattern(values)
                for i in range(2, k + 1):
                    for n in range(3):
                        assert starExtensionCount(p, i, n) == \
                            countLinearExtensions(genStarPoset(p, i, n)), (p, i, n)

    def testStarClosedFormLonger(self):
        for text in ('31524', '24153', '53412'):
            p = parsePattern(text)
            for i in range(2, 6):
                assert starExtensionCount(p, i, 2) == \
                    countLinearExtensions(genStarPoset(p, i, 2))

    def testStarSize(self):
        marks = starMarks(parsePattern('132'), 2, 3)
        assert len(marks) == 4
        assert genStarPoset(parsePattern('132'), 2, 3).size == 3 + 3 * 2

    def testBranchClosedForm(self):
        assert branchExtensionCount(parsePattern('31245'), 2, 3, 0) == 30
        assert branchExtensionCount(parsePattern('31245'), 2, 3, 1) == 3210
        for text, j in (('31245', 3), ('31425', 3), ('31254', 5)):
            p = parsePattern(text)
            for n in range(3):
                assert branchExtensionCount(p, 2, j, n) == \
                    countLinearExtensions(genBranchPoset(p, 2, j, n)), (text, n)

    def testBadParameters(self):
        with self.assertRaises(PosetParameterError):
            starMarks(parsePattern('132'), 1, 2)
        with self.assertRaises(PosetParameterError):
            starMarks(parsePattern('132'), 4, 2)
        with self.assertRaises(PosetParameterError):
            branchExtensionCount(parsePattern('1234'), 2, 3, 1)
        with self.assertRaises(PosetParameterError):
            branchExtensionCount(parsePattern('31245'), 2, 5, 1)
        with self.assertRaises(PosetParameterError):
            genBranchPoset(parsePattern('31245'), 2, 2, 1)
