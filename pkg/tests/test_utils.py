from fractions import Fraction
import math
import unittest

from fwilf.utils import (CapExceededError, bellNumber, binomial, checkCap, eBounds,
                         fractionText, isOrderIsomorphic, multinomial,
                         orderPreservingMap, standardize, stirlingFirst, stirlingSecond)


class UtilsTests(unittest.TestCase):
    def testOrderIsomorphism(self):
        assert standardize((7, 2, 9, 4)) == (3, 1, 4, 2)
        assert isOrderIsomorphic((7, 2, 9, 4), (3, 1, 4, 2))
        assert not isOrderIsomorphic((7, 2, 9), (1, 2, 3))
        assert not isOrderIsomorphic((1, 2), (1, 2, 3))
        assert orderPreservingMap({5, 1, 3}, {20, 30, 10}) == {1: 10, 3: 20, 5: 30}

    def testCounting(self):
        assert multinomial(3, 3) == 20
        assert multinomial() == 1
        assert binomial(5, 2) == 10
        assert binomial(2, 5) == 0
        assert binomial(3, -1) == 0
        assert [stirlingFirst(4, m) for m in range(5)] == [0, 6, 11, 6, 1]
        assert [stirlingSecond(4, m) for m in range(5)] == [0, 1, 7, 6, 1]
        assert [bellNumber(n) for n in range(6)] == [1, 1, 2, 5, 15, 52]

    def testEBounds(self):
        lo, hi = eBounds()
        assert lo < hi
        assert float(lo) <= math.e <= float(hi)
        assert hi - lo < Fraction(1, 10 ** 18)

    def testFractionText(self):
        assert fractionText(Fraction(6, 4)) == '3/2'
        assert fractionText(Fraction(-4, 2)) == '-2'

    def testCaps(self):
        checkCap("n", 9, 9)
        with self.assertRaises(CapExceededError) as cm:
            checkCap("n", 10, 9)
        assert str(cm.exception).startswith("n 10 exceeds the cap of 9")

        messages = []
        checkCap("n", 10, 9, allowLarge=True, statusCallback=messages.append)
        assert len(messages) == 1 and messages[0].startswith("Warning")
