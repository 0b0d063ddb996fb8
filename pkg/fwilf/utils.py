"""
utils.py - order-isomorphism, exact counting helpers and cap checks
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import math
from typing import Callable, Iterable, Optional, Sequence, Tuple

StatusCallback = Callable[[str], None]


class CapExceededError(Exception):
    "A size cap was exceeded and the caller did not ask to go beyond it."
    def __init__(self, what: str, value: int, cap: int) -> None:
        super().__init__()
        self.what = what
        self.value = value
        self.cap = cap
        self.text = (f"{what} {value} exceeds the cap of {cap}; "
                     f"raise the cap explicitly to continue.")

    def __str__(self):
        return self.text


def noStatus(_msg: str) -> None:
    "Status callback that discards everything."


def checkCap(what: str, value: int, cap: int, allowLarge: bool = False,
             statusCallback: Optional[StatusCallback] = None) -> None:
    """
    Refuse /value/ above /cap/ unless /allowLarge/ is set, in which case
    a warning goes through the status callback instead.
    """
    if value <= cap:
        return
    if not allowLarge:
        raise CapExceededError(what, value, cap)
    if statusCallback is not None:
        statusCallback(f"Warning: {what} {value} is above the default cap "
                       f"of {cap}; this may take a very long time.")


def standardize(seq: Sequence[int]) -> Tuple[int, ...]:
    """
    Return the permutation of 1..len(seq) order-isomorphic to /seq/.

    >>> standardize((40, 10, 25))
    (3, 1, 2)
    """
    ranks = {v: i for i, v in enumerate(sorted(seq), 1)}
    return tuple(ranks[v] for v in seq)


def isOrderIsomorphic(seq: Sequence[int], pattern: Sequence[int]) -> bool:
    "True if /seq/ has the same relative order as /pattern/."
    if len(seq) != len(pattern):
        return False
    return all((seq[i] < seq[j]) == (pattern[i] < pattern[j])
               for i in range(len(seq)) for j in range(i + 1, len(seq)))


def orderPreservingMap(source: Iterable[int], target: Iterable[int]) -> dict:
    "Map the sorted elements of /source/ onto the sorted elements of /target/."
    src = sorted(source)
    tgt = sorted(target)
    assert len(src) == len(tgt), "Order-preserving map between unequal sets"
    return dict(zip(src, tgt))


def multinomial(*parts: int) -> int:
    """
    The multinomial coefficient (sum parts; parts...).

    >>> multinomial(2, 1, 1)
    12
    """
    total = 0
    result = 1
    for p in parts:
        assert p >= 0, "Negative part in multinomial"
        total += p
        result *= math.comb(total, p)
    return result


def binomial(n: int, k: int) -> int:
    "Binomial coefficient, zero outside the usual range."
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def stirlingFirst(n: int, m: int) -> int:
    "Unsigned Stirling number of the first kind: permutations of [n] with m cycles."
    if n == 0 and m == 0:
        return 1
    if n == 0 or m == 0:
        return 0
    return stirlingFirst(n - 1, m - 1) + (n - 1) * stirlingFirst(n - 1, m)


@lru_cache(maxsize=None)
def stirlingSecond(n: int, m: int) -> int:
    "Stirling number of the second kind: partitions of [n] into m blocks."
    if n == 0 and m == 0:
        return 1
    if n == 0 or m == 0:
        return 0
    return stirlingSecond(n - 1, m - 1) + m * stirlingSecond(n - 1, m)


def bellNumber(n: int) -> int:
    return sum(stirlingSecond(n, m) for m in range(n + 1))


def eBounds(terms: int = 20) -> Tuple[Fraction, Fraction]:
    """
    Rational bounds lo < e < hi from the partial sum of 1/j! and the tail
    bound 2/(terms+1)!.
    """
    lo = sum((Fraction(1, math.factorial(j)) for j in range(terms + 1)),
             Fraction(0))
    hi = lo + Fraction(2, math.factorial(terms + 1))
    return lo, hi


def fractionText(x: Fraction) -> str:
    "Serialize a Fraction as 'p/q', or 'p' for integers."
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
