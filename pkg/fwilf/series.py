"""
series.py - truncated power series with exact rational coefficients
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from fractions import Fraction
import math
from typing import Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


class SeriesDomainError(Exception):
    "The series has the wrong constant term for the requested operation."
    def __init__(self, text: str = "Series operation undefined here.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class RationalSeries:
    """
    A power series c_0 + c_1 x + ... + c_N x^N, known only up to x^N.

    Binary operations truncate to the smaller of the two orders. The
    coefficients are Fractions, so every operation is exact.
    """
    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[Number], order: int = -1) -> None:
        cs = [Fraction(c) for c in coeffs]
        if order >= 0:
            cs = cs[:order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        assert cs, "A series needs at least a constant term"
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> RationalSeries:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> RationalSeries:
        return cls((1,), order)

    @classmethod
    def fromCounts(cls, counts: Sequence[int], order: int = -1) -> RationalSeries:
        """
        The exponential generating function of /counts/, counts[k] being
        the coefficient of x^k/k!.

        >>> RationalSeries.fromCounts([1, 1, 2, 6]).coeffs
        (Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1))
        """
        return cls((Fraction(c, math.factorial(k)) for k, c in enumerate(counts)),
                   order)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k <= self.order:
            return self._coeffs[k]
        raise IndexError(f"Coefficient {k} is beyond the truncation order {self.order}.")

    def __eq__(self, other):
        return isinstance(other, RationalSeries) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"RationalSeries({[str(c) for c in self._coeffs]})"

    def counts(self) -> List[Fraction]:
        "k! times each coefficient; integers for the EGF of a counting sequence."
        return [c * math.factorial(k) for k, c in enumerate(self._coeffs)]

    def truncated(self, order: int) -> RationalSeries:
        return RationalSeries(self._coeffs, order)

    def isNonnegative(self) -> bool:
        return all(c >= 0 for c in self._coeffs)

    #### Arithmetic ####
    def __add__(self, other: RationalSeries) -> RationalSeries:
        n = min(self.order, other.order)
        return RationalSeries((self._coeffs[k] + other._coeffs[k] for k in range(n + 1)))

    def __neg__(self) -> RationalSeries:
        return RationalSeries(-c for c in self._coeffs)

    def __sub__(self, other: RationalSeries) -> RationalSeries:
        return self + (-other)

    def scaled(self, factor: Number) -> RationalSeries:
        return RationalSeries(c * factor for c in self._coeffs)

    def __mul__(self, other: RationalSeries) -> RationalSeries:
        n = min(self.order, other.order)
        a, b = self._coeffs, other._coeffs
        out = []
        for k in range(n + 1):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)))
        return RationalSeries(out)

    def shifted(self) -> RationalSeries:
        "x times the series; the order grows by one."
        return RationalSeries((Fraction(0),) + self._coeffs)

    def integral(self) -> RationalSeries:
        "The antiderivative vanishing at 0; the order grows by one."
        return RationalSeries(
            (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self._coeffs)))

    def derivative(self) -> RationalSeries:
        if self.order == 0:
            return RationalSeries((0,))
        return RationalSeries(c * k for k, c in enumerate(self._coeffs) if k)

    def exp(self) -> RationalSeries:
        """
        The formal exponential, for a series without constant term, using
        c_0 = 1 and j c_j = sum_i i b_i c_{j-i}.

        >>> RationalSeries([0, 1], 4).exp().counts()
        [Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)]
        """
        b = self._coeffs
        if b[0] != 0:
            raise SeriesDomainError("exp needs a series with zero constant term.")
        c = [Fraction(1)]
        for j in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, j + 1):
                if b[i]:
                    acc += i * b[i] * c[j - i]
            c.append(acc / j)
        return RationalSeries(c)

    def log(self) -> RationalSeries:
        "The formal logarithm, for a series with constant term 1."
        if self._coeffs[0] != 1:
            raise SeriesDomainError("log needs a series with constant term 1.")
        quotient = self.derivative() * self.truncated(self.order - 1).reciprocal()
        return quotient.integral() if self.order else RationalSeries((0,))

    def reciprocal(self) -> RationalSeries:
        "1/series, for a nonzero constant term."
        a = self._coeffs
        if a[0] == 0:
            raise SeriesDomainError("reciprocal needs a nonzero constant term.")
        inv = [1 / a[0]]
        for k in range(1, self.order + 1):
            acc = sum((a[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0))
            inv.append(-acc / a[0])
        return RationalSeries(inv)

    def __truediv__(self, other: RationalSeries) -> RationalSeries:
        return self * other.reciprocal()

    def evaluate(self, x: Number) -> Fraction:
        "Value of the truncated polynomial at /x/, by Horner's rule."
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc
