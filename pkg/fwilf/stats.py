"""
stats.py - exact distributions of forest statistics over all avoiders

Statistics are computed from parent lists inside the enumeration workers,
so they must be plain module-level functions (or partials of them).
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import partial
from typing import Dict, Iterator, Mapping, Optional, Tuple

from fwilf import consts
from fwilf.forests import ParentList, tallyAvoiders
from fwilf.patterns import PatternSet
from fwilf.utils import StatusCallback

ROOT_LABEL = 'rootLabel'
TREE_COUNT = 'treeCount'
COMPONENT_SIZE = 'componentsOfSize'


class EmptyDistributionError(Exception):
    "Moments were requested of a distribution with no mass."
    def __init__(self, text: str = "The distribution is empty.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class Distribution:
    """
    Counts of the values a statistic takes over the avoiders of /S/ on [n].
    Probabilities are produced on demand as exact fractions.
    """
    __slots__ = ('statistic', 'n', 'S', 'kind', 'counts')

    def __init__(self, statistic: str, n: int, S: PatternSet, kind: str,
                 counts: Mapping[int, int]) -> None:
        self.statistic = statistic
        self.n = n
        self.S = S
        self.kind = kind
        self.counts: Dict[int, int] = {v: c for v, c in sorted(counts.items()) if c}

    def __eq__(self, other):
        return (isinstance(other, Distribution)
                and (self.statistic, self.n, self.S, self.kind, self.counts)
                == (other.statistic, other.n, other.S, other.kind, other.counts))

    def __repr__(self):
        return f"Distribution({self.statistic}, n={self.n}, S='{self.S}', {self.counts})"

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def probabilities(self) -> Dict[int, Fraction]:
        total = self.total
        if not total:
            raise EmptyDistributionError()
        return {v: Fraction(c, total) for v, c in self.counts.items()}

    def rows(self) -> Iterator[Tuple[int, str, int, int]]:
        "(n, statistic, value, count) for each value in the support."
        for value, count in self.counts.items():
            yield self.n, self.statistic, value, count


def moments(d: Distribution) -> Tuple[Fraction, Fraction]:
    """
    Exact mean and variance.

    >>> moments(Distribution('x', 4, PatternSet(), 'classical', {1: 1, 2: 1, 3: 1, 4: 1}))
    (Fraction(5, 2), Fraction(5, 4))
    """
    probs = d.probabilities()
    mean = sum((p * v for v, p in probs.items()), Fraction(0))
    variance = sum((p * (v - mean) ** 2 for v, p in probs.items()), Fraction(0))
    return mean, variance


def mirror(d: Distribution) -> Distribution:
    "Reflect the values v -> n+1-v, as complementing every label does."
    return Distribution(d.statistic, d.n, d.S, d.kind,
                        {d.n + 1 - v: c for v, c in d.counts.items()})


#### Statistics on parent lists ####
def rootLabel(parents: ParentList) -> Optional[int]:
    "Label of the root, for trees; forests with several roots are skipped."
    if parents.count(0) != 1:
        return None
    return parents.index(0) + 1


def treeCount(parents: ParentList) -> int:
    return parents.count(0)


def componentsOfSize(k: int, parents: ParentList) -> int:
    "Number of trees of the forest with exactly /k/ vertices."
    top = list(range(len(parents) + 1))
    for v in range(1, len(parents) + 1):
        r = v
        while parents[r - 1] != 0:
            r = parents[r - 1]
        top[v] = r
    sizes = Counter(top[1:])
    return sum(1 for size in sizes.values() if size == k)


#### Distributions ####
def rootLabelDistribution(S: PatternSet, kind: str, n: int, jobs: int = 1,
                          cap: int = consts.N_MAX, allowLarge: bool = False,
                          statusCallback: Optional[StatusCallback] = None
                          ) -> Distribution:
    "Root labels over the trees on [n] avoiding /S/."
    counts = tallyAvoiders(S, kind, n, rootLabel, jobs, cap, allowLarge,
                           statusCallback)
    return Distribution(ROOT_LABEL, n, S, kind, counts)


def treeCountDistribution(S: PatternSet, kind: str, n: int, jobs: int = 1,
                          cap: int = consts.N_MAX, allowLarge: bool = False,
                          statusCallback: Optional[StatusCallback] = None
                          ) -> Distribution:
    "Numbers of trees over the forests on [n] avoiding /S/."
    counts = tallyAvoiders(S, kind, n, treeCount, jobs, cap, allowLarge,
                           statusCallback)
    return Distribution(TREE_COUNT, n, S, kind, counts)


def componentSizeProfile(S: PatternSet, kind: str, n: int, k: int, jobs: int = 1,
                         cap: int = consts.N_MAX, allowLarge: bool = False,
                         statusCallback: Optional[StatusCallback] = None
                         ) -> Distribution:
    """
    Numbers of size-/k/ trees over the forests on [n] avoiding /S/. The
    mean of this distribution is the expected number of such trees.
    """
    counts = tallyAvoiders(S, kind, n, partial(componentsOfSize, k), jobs, cap,
                           allowLarge, statusCallback)
    return Distribution(f"{COMPONENT_SIZE}{k}", n, S, kind, counts)
