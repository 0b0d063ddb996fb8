"""
patterns.py - permutation patterns, pattern sets and pattern anatomy
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, NamedTuple, Sequence, Tuple

from fwilf.utils import standardize


class InvalidPatternError(Exception):
    "The text or values given do not describe a permutation pattern."
    def __init__(self, text: str = "Invalid pattern.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class PatternTooShortError(Exception):
    "An operation needs a longer pattern than the one supplied."
    def __init__(self, text: str = "pattern too short") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class PatternAnatomy(NamedTuple):
    """
    Structural data of a pattern.

    heights maps each value other than pi(1) to the length of the longest
    increasing run of consecutive positions that ends at that value and
    does not use position 1.
    """
    streak: int
    heights: Dict[int, int]
    maxHeight: int
    checkpoints: Tuple[int, ...]
    grounded: bool


class Pattern:
    """
    A permutation pi(1)...pi(k) of [k], k >= 2.

    Values are stored 0-indexed in /values/; the 1-based accessor at()
    follows the usual mathematical indexing. Patterns are immutable,
    hashable and ordered by (length, values).
    """
    __slots__ = ('_values',)

    def __init__(self, values: Iterable[int]) -> None:
        vals = tuple(int(v) for v in values)
        if len(vals) < 2:
            raise InvalidPatternError(
                f"A pattern needs at least two entries, not {len(vals)}.")
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise InvalidPatternError(
                f"{vals} is not a permutation of 1..{len(vals)}.")
        self._values = vals

    @classmethod
    def fromSequence(cls, seq: Sequence[int]) -> Pattern:
        "The pattern order-isomorphic to any sequence of distinct integers."
        return cls(standardize(seq))

    @classmethod
    def identity(cls, k: int) -> Pattern:
        return cls(range(1, k + 1))

    @property
    def values(self) -> Tuple[int, ...]:
        return self._values

    @property
    def k(self) -> int:
        return len(self._values)

    def at(self, i: int) -> int:
        "pi(i), 1-based."
        return self._values[i - 1]

    def position(self, value: int) -> int:
        "The 1-based index i with pi(i) = value."
        return self._values.index(value) + 1

    def __len__(self):
        return len(self._values)

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __getitem__(self, idx):
        return self._values[idx]

    def __eq__(self, other):
        return isinstance(other, Pattern) and self._values == other._values

    def __hash__(self):
        return hash(self._values)

    def __lt__(self, other: Pattern):
        return (self.k, self._values) < (other.k, other._values)

    def __str__(self):
        if self.k <= 9:
            return ''.join(str(v) for v in self._values)
        return ','.join(str(v) for v in self._values)

    def __repr__(self):
        return f"Pattern('{self}')"

    ### derived patterns ###
    def complement(self) -> Pattern:
        """
        k+1-pi(i) at every position.

        >>> str(Pattern((2, 4, 1, 3)).complement())
        '3142'
        """
        return Pattern(self.k + 1 - v for v in self._values)

    def twist(self) -> Pattern:
        """
        The pattern with its last two entries switched.

        >>> str(parsePattern('125364').twist())
        '125346'
        """
        return Pattern(self._values[:-2] + (self._values[-1], self._values[-2]))

    def reduction(self) -> Pattern:
        """
        The pattern order-isomorphic to pi(2)...pi(k).

        >>> str(parsePattern('2413').reduction())
        '312'
        """
        if self.k < 3:
            raise PatternTooShortError()
        return Pattern.fromSequence(self._values[1:])

    def inverse(self) -> Pattern:
        inv = [0] * self.k
        for i, v in enumerate(self._values, 1):
            inv[v - 1] = i
        return Pattern(inv)

    def slice(self, start: int, end: int) -> Pattern:
        "Standardization of pi(start)...pi(end), 1-based and inclusive."
        return Pattern.fromSequence(self._values[start - 1:end])

    def shifted(self, offset: int) -> Tuple[int, ...]:
        return tuple(v + offset for v in self._values)

    ### predicates ###
    def isIdentity(self) -> bool:
        return self._values == tuple(range(1, self.k + 1))

    def startsWithOne(self) -> bool:
        return self._values[0] == 1

    def startsWithMax(self) -> bool:
        return self._values[0] == self.k

    def hasTwistTail(self) -> bool:
        "True if pi(k) = pi(k-1)+1 = pi(k-2)+2."
        if self.k < 3:
            return False
        a, b, c = self._values[-3:]
        return b == a + 1 and c == b + 1

    def contains(self, other: Pattern) -> bool:
        "Classical containment of /other/ in this permutation."
        if other.k > self.k:
            return False
        return any(standardize(sub) == other.values
                   for sub in combinations(self._values, other.k))

    def containsConsecutively(self, other: Pattern) -> bool:
        return any(standardize(self._values[i:i + other.k]) == other.values
                   for i in range(self.k - other.k + 1))

    ### anatomy ###
    @property
    def streak(self) -> int:
        m = 0
        while m < self.k and self._values[m] == m + 1:
            m += 1
        return m

    def heights(self) -> Dict[int, int]:
        """
        Height of every value except pi(1).

        >>> parsePattern('1243').heights()
        {2: 1, 4: 2, 3: 1}
        """
        result = {}
        run = 0
        for i in range(1, self.k):
            if i >= 2 and self._values[i] > self._values[i - 1]:
                run += 1
            else:
                run = 1
            result[self._values[i]] = run
        return result

    def maxHeight(self) -> int:
        h = self.heights()
        return max(h.values()) if h else 0

    def checkpoints(self) -> Tuple[int, ...]:
        """
        Indices i < j, where pi(j) = 1, such that pi(1..i) all exceed
        pi(i+1..j). Empty when pi(1) = 1.

        >>> parsePattern('54123').checkpoints()
        (1, 2)
        """
        j = self.position(1)
        found = []
        prefixMin = None
        for i in range(1, j):
            v = self._values[i - 1]
            prefixMin = v if prefixMin is None else min(prefixMin, v)
            if prefixMin > max(self._values[i:j]):
                found.append(i)
        return tuple(found)

    def isGrounded(self) -> bool:
        return not self.isIdentity() and self.maxHeight() == self.streak

    def anatomy(self) -> PatternAnatomy:
        heights = self.heights()
        return PatternAnatomy(
            streak=self.streak,
            heights=heights,
            maxHeight=max(heights.values()) if heights else 0,
            checkpoints=self.checkpoints(),
            grounded=self.isGrounded(),
        )

    def consecutiveFreeIndex(self) -> int:
        """
        The least d such that the values pi(d), ..., pi(k) contain no two
        consecutive integers.
        """
        for d in range(1, self.k + 1):
            tail = set(self._values[d - 1:])
            if not any(v + 1 in tail for v in tail):
                return d
        return self.k


class PatternSet:
    "An immutable set of patterns S."
    __slots__ = ('_patterns',)

    def __init__(self, patterns: Iterable[Pattern] = ()) -> None:
        self._patterns: FrozenSet[Pattern] = frozenset(patterns)

    @classmethod
    def of(cls, *texts: str) -> PatternSet:
        "Convenience constructor from pattern strings."
        return cls(parsePattern(t) for t in texts)

    @property
    def patterns(self) -> Tuple[Pattern, ...]:
        return tuple(sorted(self._patterns))

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def __len__(self):
        return len(self._patterns)

    def __contains__(self, p):
        return p in self._patterns

    def __eq__(self, other):
        return isinstance(other, PatternSet) and self._patterns == other._patterns

    def __hash__(self):
        return hash(self._patterns)

    def __str__(self):
        pats = self.patterns
        if any(p.k > 9 for p in pats):
            return ';'.join(str(p) for p in pats)
        return ','.join(str(p) for p in pats)

    def __repr__(self):
        return f"PatternSet('{self}')"

    def isCovered(self) -> bool:
        """
        True iff some pattern starts with 1 and some pattern starts with its
        largest element.

        >>> PatternSet.of('132', '231', '321').isCovered()
        True
        """
        return (any(p.startsWithOne() for p in self._patterns)
                and any(p.startsWithMax() for p in self._patterns))

    def complement(self) -> PatternSet:
        return PatternSet(p.complement() for p in self._patterns)

    def union(self, other: PatternSet) -> PatternSet:
        return PatternSet(self._patterns | other._patterns)

    def minimized(self) -> PatternSet:
        "Drop every pattern that classically contains another member."
        keep = [p for p in self._patterns
                if not any(q != p and p.contains(q) for q in self._patterns)]
        return PatternSet(keep)

    def maxLength(self) -> int:
        return max((p.k for p in self._patterns), default=0)


def parsePattern(text: str) -> Pattern:
    """
    Parse a digit string ('2413') or a comma-separated list ('10,1,2,...').

    >>> parsePattern('10,1,2,3,4,5,6,7,8,9').k
    10
    """
    text = text.strip()
    if not text:
        raise InvalidPatternError("Empty pattern text.")
    try:
        if ',' in text:
            values = [int(tok) for tok in text.split(',')]
        else:
            values = [int(ch) for ch in text]
    except ValueError as e:
        raise InvalidPatternError(f"Unknown pattern syntax '{text}'.") from e
    try:
        return Pattern(values)
    except InvalidPatternError as e:
        raise InvalidPatternError(f"'{text}' is not a permutation pattern.") from e


def parsePatternSet(text: str) -> PatternSet:
    """
    Parse a pattern set. Patterns are separated by ';', or by ',' when every
    comma-separated token is a digit string of length at least 2 (so a
    single long pattern may be written with commas). '{}' and '' are the
    empty set.

    >>> str(parsePatternSet('123,132'))
    '123,132'
    >>> len(parsePatternSet('10,1,2,3,4,5,6,7,8,9'))
    1
    """
    text = text.strip()
    if text in ('', '{}'):
        return PatternSet()
    if ';' in text:
        tokens = [t for t in text.split(';') if t.strip()]
    else:
        pieces = [t.strip() for t in text.split(',')]
        if all(len(p) >= 2 and p.isdigit() for p in pieces):
            tokens = pieces
        else:
            tokens = [text]
    return PatternSet(parsePattern(t) for t in tokens)


def complement(p: Pattern) -> Pattern:
    return p.complement()


def twist(p: Pattern) -> Pattern:
    return p.twist()


def reduction(p: Pattern) -> Pattern:
    return p.reduction()


def isCovered(S: PatternSet) -> bool:
    return S.isCovered()


def anatomy(p: Pattern) -> PatternAnatomy:
    return p.anatomy()
