import unittest

from fwilf.patterns import (InvalidPatternError, Pattern, PatternSet,
                            PatternTooShortError, parsePattern, parsePatternSet)


class PatternTests(unittest.TestCase):
    def testParse(self):
        p = parsePattern('2413')
        assert p.values == (2, 4, 1, 3)
        assert p.k == 4
        assert p.at(1) == 2
        assert p.position(1) == 3
        assert str(p) == '2413'

        long = parsePattern('1,2,3,4,5,6,7,8,10,9')
        assert long.k == 10
        assert str(long) == '1,2,3,4,5,6,7,8,10,9'

    def testParseErrors(self):
        for bad in ('', '1223', '134', 'abc', '1,2,x', '1'):
            with self.assertRaises(InvalidPatternError):
                parsePattern(bad)

    def testSingleEntryRejected(self):
        for values in ((), (1,)):
            with self.assertRaises(InvalidPatternError) as cm:
                Pattern(values)
            assert 'at least two entries' in str(cm.exception)
        with self.assertRaises(InvalidPatternError):
            parsePatternSet('1;12')
        assert Pattern.fromSequence((9, 4)) == parsePattern('21')

    def testComplement(self):
        assert str(parsePattern('123').complement()) == '321'
        assert str(parsePattern('2413').complement()) == '3142'
        for text in ('1324', '125364', '21'):
            p = parsePattern(text)
            assert p.complement().complement() == p

    def testTwist(self):
        assert str(parsePattern('1234').twist()) == '1243'
        assert str(parsePattern('21').twist()) == '12'

    def testReduction(self):
        assert str(parsePattern('2413').reduction()) == '312'
        assert str(parsePattern('1243').reduction()) == '132'
        with self.assertRaises(PatternTooShortError):
            parsePattern('21').reduction()

    def testContainment(self):
        assert parsePattern('2413').contains(parsePattern('213'))
        assert not parsePattern('1234').contains(parsePattern('21'))
        assert parsePattern('1324').containsConsecutively(parsePattern('213'))
        assert not parsePattern('1423').containsConsecutively(parsePattern('123'))

    def testTwistTail(self):
        assert parsePattern('1234').hasTwistTail()
        assert parsePattern('4123').hasTwistTail()
        assert not parsePattern('1243').hasTwistTail()


class AnatomyTests(unittest.TestCase):
    def testStreak(self):
        assert parsePattern('1243').streak == 2
        assert parsePattern('2143').streak == 0
        assert parsePattern('125364').streak == 2
        assert parsePattern('1234').streak == 4

    def testHeights(self):
        assert parsePattern('125364').heights() == {2: 1, 5: 2, 3: 1, 6: 2, 4: 1}
        assert parsePattern('125364').maxHeight() == 2

    def testGrounded(self):
        assert parsePattern('1243').isGrounded()
        assert parsePattern('125364').isGrounded()
        assert parsePattern('125463').isGrounded()
        assert not parsePattern('1234').isGrounded()
        # 1423: streak 1 but the run 2, 3 gives height 2
        assert not parsePattern('1423').isGrounded()
        assert not parsePattern('2413').isGrounded()

    def testCheckpoints(self):
        assert parsePattern('54123').checkpoints() == (1, 2)
        assert parsePattern('1243').checkpoints() == ()
        assert parsePattern('3412').checkpoints() == (2,)

    def testAnatomy(self):
        a = parsePattern('1243').anatomy()
        assert a.streak == 2
        assert a.maxHeight == 2
        assert a.grounded

    def testConsecutiveFreeIndex(self):
        assert parsePattern('1324').consecutiveFreeIndex() == 3
        assert parsePattern('2413').consecutiveFreeIndex() == 3


class PatternSetTests(unittest.TestCase):
    def testParseSets(self):
        S = parsePatternSet('123,132')
        assert len(S) == 2
        assert parsePattern('132') in S
        assert parsePatternSet('{}') == PatternSet()
        assert parsePatternSet('') == PatternSet()
        assert len(parsePatternSet('213;1,2,3,4,5,6,7,8,10,9')) == 2

    def testStringIsSorted(self):
        assert str(parsePatternSet('321,21,132')) == '21,132,321'

    def testCovered(self):
        assert PatternSet.of('132', '231', '321').isCovered()
        assert not PatternSet.of('213').isCovered()
        assert not PatternSet.of('123', '132').isCovered()
        assert PatternSet.of('12', '21').isCovered()
        assert not PatternSet().isCovered()

    def testMinimized(self):
        S = PatternSet.of('21', '123', '2413')
        assert S.minimized() == PatternSet.of('21', '123')

    def testComplement(self):
        assert PatternSet.of('123', '2413').complement() == PatternSet.of('321', '3142')
