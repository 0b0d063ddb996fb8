"""
asymptotics.py - certified lower bounds on forest Stanley-Wilf limits and
the exactly solvable special cases

For an uncovered set S we know t_{k+1} >= f_k. Truncating the series
A(x) = T'(x) - F(x) after x^n gives A_n with nonnegative coefficients, and

    B_n = int A_n,   C_n = exp(B_n),   D_n = int C_n.

If r_n is the root of D_n(r_n) = 1, then 1/(e r_n) is a lower bound on the
limit, and r_n decreases to the radius of convergence as n grows. We never
solve for r_n: every coefficient involved is nonnegative, so cutting exp()
off at some order N only lowers D_n on [0, 1]. A dyadic x with truncated
D_n(x) >= 1, checked in exact rationals, therefore has r_n <= x.
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from fractions import Fraction
import math
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from fwilf import consts
from fwilf.patterns import PatternSet
from fwilf.sequences import SequencePair, checkHypothesis
from fwilf.series import RationalSeries
from fwilf.utils import StatusCallback, binomial, checkCap, eBounds, fractionText

UNCOVERED = 'uncovered'
TERMS_ONLY = 'terms-only'
EMPTY_SET = 'empty-set'


class HypothesisUnavailableError(Exception):
    "The terms do not satisfy t_{k+1} >= f_k, so no bound can be certified."
    def __init__(self, text: str = "hypothesis t_{k+1} >= f_k unavailable") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class BoundCertificate(NamedTuple):
    """
    A certified lower bound on the limit from truncation level /n/.

    /dAtXStar/ is the truncated D_n evaluated at /xStar/ in exact arithmetic
    and is always at least 1. The bound 1/(e xStar) lies in [lower, upper].
    """
    n: int
    xStar: Fraction
    order: int
    dAtXStar: Fraction
    lower: Fraction
    upper: Fraction
    hypothesis: str
    provenance: str

    def decimalInterval(self, digits: int = 9) -> Tuple[str, str]:
        "The bound interval, rounded outward to /digits/ decimals."
        scale = 10 ** digits
        lo = math.floor(self.lower * scale)
        hi = math.ceil(self.upper * scale)
        return (f"{lo // scale}.{lo % scale:0{digits}d}",
                f"{hi // scale}.{hi % scale:0{digits}d}")

    def asDict(self) -> dict:
        lo, hi = self.decimalInterval()
        return {
            'n': self.n,
            'xStar': fractionText(self.xStar),
            'truncationOrder': self.order,
            'dAtXStar>=1': self.dAtXStar >= 1,
            'bound': [lo, hi],
            'hypothesis': self.hypothesis,
            'provenance': self.provenance,
        }


class OdeEstimate(NamedTuple):
    "Float estimate of a blow-up point rho and of the limit 1/(e rho)."
    rho: float
    rhoLow: float
    rhoHigh: float
    limit: float
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def asDict(self) -> dict:
        return {'rho': self.rho, 'rhoInterval': [self.rhoLow, self.rhoHigh],
                'limit': self.limit, 'interval': [self.lower, self.upper]}


#### Counting sequences and exponential generating functions ####
def seriesExpCounts(t: Sequence[int]) -> List[int]:
    """
    Given tree counts t_1..t_M, return the forest counts f_0..f_M, i.e.
    n! [x^n] exp(sum t_k x^k / k!).

    >>> seriesExpCounts([1, 1, 1, 1])
    [1, 1, 2, 5, 15]
    """
    f = [1]
    for n in range(1, len(t) + 1):
        f.append(sum(binomial(n - 1, k - 1) * t[k - 1] * f[n - k]
                     for k in range(1, n + 1)))
    return f


def seriesLogCounts(f: Sequence[int]) -> List[int]:
    """
    Inverse of seriesExpCounts: tree counts t_1..t_M from f_0..f_M.

    >>> seriesLogCounts([1, 1, 3, 16, 125])
    [1, 2, 9, 64]
    """
    assert f and f[0] == 1, "Forest counts must start with f_0 = 1"
    t: List[int] = []
    for n in range(1, len(f)):
        rest = sum(binomial(n - 1, k - 1) * t[k - 1] * f[n - k] for k in range(1, n))
        t.append(f[n] - rest)
    return t


def dominanceCheck(terms: SequencePair, c: Fraction = Fraction(1)) -> Optional[int]:
    "The first k with t_{k+1} < c f_k, or None."
    for k in range(terms.level + 1):
        if terms.tAt(k + 1) < c * terms.fAt(k):
            return k
    return None


def hypothesisFlag(terms: SequencePair) -> str:
    """
    Say why the bound pipeline may run on /terms/: the set is uncovered,
    the set is empty, or the set is covered but these terms happen to
    satisfy t_{k+1} >= f_k. Raise HypothesisUnavailableError otherwise.
    """
    if terms.level < 1:
        raise HypothesisUnavailableError(
            "At least t_1, t_2 and f_0, f_1 are needed for a bound.")
    bad = checkHypothesis(terms)
    if bad is not None:
        raise HypothesisUnavailableError(
            f"hypothesis t_{{k+1}} >= f_k unavailable: t_{bad + 1} = "
            f"{terms.tAt(bad + 1)} < f_{bad} = {terms.fAt(bad)}")
    if not len(terms.S):
        return EMPTY_SET
    if terms.S.isCovered():
        return TERMS_ONLY
    return UNCOVERED


#### The truncated series pipeline ####
def aSeries(terms: SequencePair, level: int, order: int) -> RationalSeries:
    "A_level: the coefficients (t_{k+1} - f_k)/k! for k <= level."
    assert level <= terms.level, f"Terms only reach level {terms.level}"
    coeffs = [Fraction(terms.tAt(k + 1) - terms.fAt(k), math.factorial(k))
              for k in range(min(level, order) + 1)]
    return RationalSeries(coeffs, order)


def dSeries(terms: SequencePair, level: int, order: int) -> RationalSeries:
    "D_level with exp() cut off after x^order."
    B = aSeries(terms, level, order).integral().truncated(order)
    return B.exp().integral()


def approximantSeries(terms: SequencePair, level: int,
                      order: Optional[int] = None) -> RationalSeries:
    """
    F_level = C_level / (1 - D_level), to /order/ (default: as far as f is
    known). Its coefficients never exceed f_k/k!.
    """
    if order is None:
        order = terms.fMax
    B = aSeries(terms, level, order).integral().truncated(order)
    C = B.exp()
    D = C.integral().truncated(order)
    return C / (RationalSeries.one(order) - D)


def coefficientDomination(terms: SequencePair, level: int) -> Optional[int]:
    "The first k where k! [x^k] F_level exceeds f_k, or None."
    counts = approximantSeries(terms, level).counts()
    for k, value in enumerate(counts):
        if value > terms.fAt(k):
            return k
    return None


def _bisectionSteps(tolerance: Fraction) -> int:
    steps = 0
    while Fraction(1, 2 ** steps) > tolerance:
        steps += 1
    return steps


def _certifiedRoot(D: RationalSeries, steps: int) -> Tuple[Fraction, Fraction]:
    """
    The smallest multiple x of 2^-steps in (0, 1] with D(x) >= 1, and D(x).
    D is increasing on [0, 1] and D(1) >= 1.
    """
    lo, hi = Fraction(0), Fraction(1)
    dHi = D.evaluate(hi)
    assert dHi >= 1, "Truncated D is below 1 at x = 1"
    for _ in range(steps):
        mid = (lo + hi) / 2
        dMid = D.evaluate(mid)
        if dMid >= 1:
            hi, dHi = mid, dMid
        else:
            lo = mid
    return hi, dHi


def _chooseOrder(terms: SequencePair, level: int, steps: int, startOrder: int,
                 maxOrder: int, statusCallback: Optional[StatusCallback]) -> int:
    """
    Double the truncation order from /startOrder/ until the certified
    x at /level/ stops moving.

    Each doubling costs several times the one before, since exp() of the
    truncated series is quadratic in the order over growing rationals.
    """
    order = max(startOrder, level + 1)
    previous, _ = _certifiedRoot(dSeries(terms, level, order), steps)
    while order < maxOrder:
        grown = min(2 * order, maxOrder)
        x, _ = _certifiedRoot(dSeries(terms, level, grown), steps)
        if statusCallback:
            statusCallback(f"Truncation order {grown}: x* = {float(x):.9f}")
        if x == previous:
            break
        order, previous = grown, x
    if statusCallback:
        statusCallback(f"Truncation order {order} chosen at level {level}")
    return order


def _certificate(terms: SequencePair, level: int, order: int, steps: int,
                 hypothesis: str) -> BoundCertificate:
    xStar, dValue = _certifiedRoot(dSeries(terms, level, order), steps)
    eLo, eHi = eBounds()
    return BoundCertificate(
        n=level, xStar=xStar, order=order, dAtXStar=dValue,
        lower=1 / (eHi * xStar), upper=1 / (eLo * xStar),
        hypothesis=hypothesis, provenance=terms.source)


def lowerBound(S: PatternSet, kind: str, terms: SequencePair,
               level: Optional[int] = None,
               tolerance: Fraction = consts.BOUND_TOLERANCE,
               startOrder: int = consts.BOUND_START_ORDER,
               maxOrder: int = consts.BOUND_MAX_ORDER,
               statusCallback: Optional[StatusCallback] = None) -> BoundCertificate:
    """
    Certified lower bound on the limit for /S/ from /terms/, at the highest
    level they allow unless /level/ is given.

    >>> pair = SequencePair(PatternSet.of('21'), 'classical', [1, 1, 2], [1, 1, 2])
    >>> lowerBound(pair.S, pair.kind, pair).xStar
    Fraction(1, 1)
    """
    assert terms.S == S and terms.kind == kind, "Terms belong to another pattern set"
    hypothesis = hypothesisFlag(terms)
    if level is None:
        level = terms.level
    assert 1 <= level <= terms.level, f"Level {level} is not available"
    steps = _bisectionSteps(tolerance)
    if statusCallback:
        statusCallback(f"Certifying a bound for {{{S}}} at level {level}...")
    order = _chooseOrder(terms, level, steps, startOrder, maxOrder, statusCallback)
    return _certificate(terms, level, order, steps, hypothesis)


def rnSequence(terms: SequencePair, nMax: Optional[int] = None,
               tolerance: Fraction = consts.BOUND_TOLERANCE,
               startOrder: int = consts.BOUND_START_ORDER,
               maxOrder: int = consts.BOUND_MAX_ORDER,
               statusCallback: Optional[StatusCallback] = None
               ) -> List[BoundCertificate]:
    """
    One certificate per level 1..nMax, all at the truncation order chosen
    for the top level. Their xStar values never increase.
    """
    hypothesis = hypothesisFlag(terms)
    top = terms.level if nMax is None else min(nMax, terms.level)
    steps = _bisectionSteps(tolerance)
    order = _chooseOrder(terms, top, steps, startOrder, maxOrder, statusCallback)
    certificates = []
    for level in range(1, top + 1):
        if statusCallback:
            statusCallback(f"Level {level} of {top}...")
        certificates.append(_certificate(terms, level, order, steps, hypothesis))
    return certificates


def knownLimit(S: PatternSet) -> Optional[Dict[str, object]]:
    "Published bound and conjectured limit for /S/, if there is one."
    return consts.KNOWN_LIMIT_BOUNDS.get(str(S))


#### Sets with closed forms ####
def tPlusFCounts(nMax: int) -> Tuple[List[int], List[int]]:
    """
    Tree and forest counts when t_{k+1} = t_k + f_k, the avoiders of
    {213, 231, 312, 321}. Returns ([t_1..t_nMax], [f_0..f_nMax]).

    >>> tPlusFCounts(4)
    ([1, 2, 5, 17], [1, 1, 3, 12, 62])
    """
    t = [1]
    f = [1]
    for n in range(1, nMax + 1):
        f.append(sum(binomial(n - 1, k - 1) * t[k - 1] * f[n - k]
                     for k in range(1, n + 1)))
        t.append(t[n - 1] + f[n])
    return t[:nMax], f


def closedForm132231321(nMax: int, cap: int = consts.SERIES_CAP
                        ) -> Tuple[List[int], List[int]]:
    """
    Avoiders of {132, 231, 321}: trees are increasing below an arbitrary
    root, so t_n = n! and F(x) = exp(x/(1-x)).
    Returns ([t_1..t_nMax], [f_0..f_nMax]).
    """
    checkCap("n", nMax, cap)
    t = [math.factorial(n) for n in range(1, nMax + 1)]
    return t, seriesExpCounts(t)


def depthBoundedCounts(m: int, nMax: int) -> Tuple[List[int], List[int]]:
    """
    Numbers of forests and of trees on [n] of depth at most /m/, from
    T_1 = x, F_m = exp(T_m), T_{m+1} = x F_m.
    Returns ([f_0..f_nMax], [t_1..t_nMax]).

    >>> depthBoundedCounts(2, 4)
    ([1, 1, 3, 10, 41], [1, 2, 3, 4])
    """
    assert m >= 1, "Depth cap must be at least 1"
    t = [1] + [0] * (nMax - 1)
    for _ in range(m - 1):
        f = seriesExpCounts(t)
        t = [n * f[n - 1] for n in range(1, nMax + 1)]
    return seriesExpCounts(t), t[:nMax]


#### Blow-up of T' = T + e^T ####
def _blowupPoint(rtol: float, atol: float, blowup: float) -> float:
    def rhs(_x, T):
        return T + np.exp(T)

    def passesBlowup(_x, T):
        return T[0] - blowup
    passesBlowup.terminal = True  # type: ignore[attr-defined]
    passesBlowup.direction = 1  # type: ignore[attr-defined]

    sol = solve_ivp(rhs, (0.0, 2.0), [0.0], method='DOP853',
                    rtol=rtol, atol=atol, events=passesBlowup)
    assert sol.t_events[0].size, "The solution never reached the blow-up threshold"
    return float(sol.t_events[0][0])


def odeLimit(blowup: float = consts.ODE_BLOWUP,
             tolerances: Tuple[float, float] = consts.ODE_TOLERANCES
             ) -> OdeEstimate:
    """
    Estimate the limit for {213, 231, 312, 321} from the singularity rho of
    T' = T + e^T, T(0) = 0. Past T = /blowup/ at most e^-blowup of x is
    left before the singularity; the two tolerances bracket the integration
    error.
    """
    loose, tight = (_blowupPoint(tol, tol * 1e-2, blowup) for tol in tolerances)
    spread = abs(loose - tight)
    rhoLow = min(loose, tight) - spread
    rhoHigh = max(loose, tight) + spread + math.exp(-blowup)
    rho = tight
    return OdeEstimate(rho=rho, rhoLow=rhoLow, rhoHigh=rhoHigh,
                       limit=1 / (math.e * rho),
                       lower=1 / (math.e * rhoHigh), upper=1 / (math.e * rhoLow))
