"""
posets.py - cluster posets and linear-extension counting

The labellings of an unlabeled cluster that make every highlighted path an
instance of its pattern are exactly the linear extensions of the partial
order generated by those paths. We store the order as a boolean matrix and
count linear extensions with a dynamic program over down-sets.
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from fwilf import consts
from fwilf.patterns import Pattern
from fwilf.utils import CapExceededError, binomial, multinomial

Mark = Tuple[Tuple[int, ...], Sequence[int]]


class PosetCapError(CapExceededError):
    "The poset is too large for the down-set dynamic program."
    def __init__(self, value: int, cap: int) -> None:
        super().__init__("poset size", value, cap)


class PosetParameterError(Exception):
    "Indices or pattern do not fit the requested poset family."
    def __init__(self, text: str = "Invalid poset parameters.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class ClusterPoset:
    """
    A finite order on the vertices of a cluster.

    /leq/ is the reflexive-transitive closure of the generating relations,
    indexed like /elements/. If the relations contain a cycle the closure is
    not antisymmetric; we keep it but flag the poset as /cyclic/, and such a
    poset has no linear extensions.
    """
    __slots__ = ('elements', 'index', 'leq', 'cyclic')

    def __init__(self, elements: Iterable[int],
                 relations: Iterable[Tuple[int, int]] = ()) -> None:
        self.elements: Tuple[int, ...] = tuple(sorted(set(elements)))
        self.index: Dict[int, int] = {e: i for i, e in enumerate(self.elements)}
        size = len(self.elements)
        leq = np.eye(size, dtype=bool)
        for a, b in relations:
            leq[self.index[a], self.index[b]] = True
        for k in range(size):
            leq |= np.outer(leq[:, k], leq[k, :])
        self.leq = leq
        self.cyclic = bool(np.any(leq & leq.T & ~np.eye(size, dtype=bool)))

    @classmethod
    def fromRelations(cls, elements: Iterable[int],
                      relations: Iterable[Tuple[int, int]]) -> ClusterPoset:
        "/relations/ are pairs (a, b) meaning a < b."
        return cls(elements, relations)

    @classmethod
    def fromMarks(cls, marks: Iterable[Mark],
                  elements: Iterable[int] = ()) -> ClusterPoset:
        """
        The poset generated by highlighted paths. Each mark is a pair
        (vertices, values): the vertices from the top down and the pattern
        values they must carry, so the vertex holding the t-th smallest value
        is below the one holding the (t+1)-th. Vertices in /elements/ that
        lie on no mark are unrelated to everything.
        """
        members = set(elements)
        relations = []
        for vertices, values in marks:
            assert len(vertices) == len(values), "Mark and pattern lengths differ"
            members.update(vertices)
            ordered = [v for _, v in sorted(zip(values, vertices))]
            relations.extend(zip(ordered, ordered[1:]))
        return cls(members, relations)

    @classmethod
    def chain(cls, n: int) -> ClusterPoset:
        return cls(range(1, n + 1), ((i, i + 1) for i in range(1, n)))

    @classmethod
    def antichain(cls, n: int) -> ClusterPoset:
        return cls(range(1, n + 1))

    @property
    def size(self) -> int:
        return len(self.elements)

    def less(self, a: int, b: int) -> bool:
        i, j = self.index[a], self.index[b]
        return i != j and bool(self.leq[i, j])

    def predecessorMasks(self) -> List[int]:
        "For each element, the bitmask of elements strictly below it."
        masks = []
        for j in range(self.size):
            mask = 0
            for i in np.flatnonzero(self.leq[:, j]):
                if i != j:
                    mask |= 1 << int(i)
            masks.append(mask)
        return masks

    def isLinearExtension(self, order: Sequence[int]) -> bool:
        "True if /order/ lists every element once, lower elements first."
        if sorted(order) != list(self.elements):
            return False
        pos = {e: t for t, e in enumerate(order)}
        for i, j in zip(*np.nonzero(self.leq)):
            if i != j and pos[self.elements[i]] > pos[self.elements[j]]:
                return False
        return True

    def __repr__(self):
        return f"ClusterPoset(size={self.size}, cyclic={self.cyclic})"


def countLinearExtensions(P: ClusterPoset, cap: int = consts.POSET_CAP) -> int:
    """
    Exact number of linear extensions, by building down-sets one element at a
    time and adding up the ways to reach each of them.

    >>> countLinearExtensions(ClusterPoset.antichain(4))
    24
    >>> countLinearExtensions(ClusterPoset.chain(6))
    1
    """
    if P.size > cap:
        raise PosetCapError(P.size, cap)
    if P.cyclic:
        return 0
    below = P.predecessorMasks()
    layer: Dict[int, int] = {0: 1}
    for _ in range(P.size):
        nextLayer: Dict[int, int] = {}
        for downSet, ways in layer.items():
            for e in range(P.size):
                bit = 1 << e
                if not downSet & bit and below[e] & downSet == below[e]:
                    grown = downSet | bit
                    nextLayer[grown] = nextLayer.get(grown, 0) + ways
        layer = nextLayer
    return sum(layer.values())


def countLinearExtensionsNaive(P: ClusterPoset) -> int:
    "Filter all orderings; only for very small posets."
    return sum(1 for order in permutations(P.elements) if P.isLinearExtension(order))


def linearExtensions(P: ClusterPoset) -> Iterator[Tuple[int, ...]]:
    "Every linear extension, as a tuple of elements from the bottom up."
    if P.cyclic:
        return
    below = P.predecessorMasks()
    order: List[int] = []

    def extend(downSet: int) -> Iterator[Tuple[int, ...]]:
        if len(order) == P.size:
            yield tuple(order)
            return
        for e in range(P.size):
            bit = 1 << e
            if not downSet & bit and below[e] & downSet == below[e]:
                order.append(P.elements[e])
                yield from extend(downSet | bit)
                order.pop()

    yield from extend(0)


def labellingFromExtension(extension: Sequence[int]) -> Dict[int, int]:
    "Give the t-th element of a linear extension the label t."
    return {v: t for t, v in enumerate(extension, 1)}


#### Poset families separating strongly equivalent patterns ####
def _checkIndex(p: Pattern, i: int, name: str) -> None:
    if not 1 < i <= p.k:
        raise PosetParameterError(
            f"Index {name}={i} must satisfy 1 < {name} <= {p.k} for {p}.")


def starMarks(p: Pattern, i: int, n: int) -> List[Mark]:
    """
    One instance v_1..v_k from the root and /n/ instances that start at v_i
    and share nothing else. Vertices 1..k are the base instance.
    """
    _checkIndex(p, i, 'i')
    if n < 0:
        raise PosetParameterError("The number of branches must be nonnegative.")
    k = p.k
    marks: List[Mark] = [(tuple(range(1, k + 1)), p.values)]
    nextVertex = k + 1
    for _ in range(n):
        branch = (i,) + tuple(range(nextVertex, nextVertex + k - 1))
        nextVertex += k - 1
        marks.append((branch, p.values))
    return marks


def genStarPoset(p: Pattern, i: int, n: int) -> ClusterPoset:
    return ClusterPoset.fromMarks(starMarks(p, i, n))


def starExtensionCount(p: Pattern, i: int, n: int) -> int:
    """
    Closed form for the star family: the label of v_i is forced, and the
    elements below and above it form disjoint chains.
    """
    _checkIndex(p, i, 'i')
    k, q, pi = p.k, p.at(1), p.at(i)
    lower = multinomial(*([q - 1] * n + [pi - 1]))
    upper = multinomial(*([k - q] * n + [k - pi]))
    return lower * upper


def branchMarks(p: Pattern, i: int, j: int, n: int) -> List[Mark]:
    """
    The star family with one extra instance K starting at v_j. Vertices
    1..k are the base instance, then the n instances at v_i, then K.
    """
    _checkIndex(p, j, 'j')
    if i == j:
        raise PosetParameterError("The branch indices i and j must differ.")
    marks = starMarks(p, i, n)
    nextVertex = p.k + n * (p.k - 1) + 1
    extra = (j,) + tuple(range(nextVertex, nextVertex + p.k - 1))
    marks.append((extra, p.values))
    return marks


def genBranchPoset(p: Pattern, i: int, j: int, n: int) -> ClusterPoset:
    return ClusterPoset.fromMarks(branchMarks(p, i, j, n))


def branchExtensionCount(p: Pattern, i: int, j: int, n: int) -> int:
    """
    Closed form for the branch family of a pattern with pi(1) = m, k = 2m-1,
    pi(i) = 1 and pi(j) = a outside {1, m, k}. The sum runs over the number
    s of elements of K below the minimum of the base instance.
    """
    k = p.k
    m = p.at(1)
    if k != 2 * m - 1:
        raise PosetParameterError(f"{p} does not start with its median.")
    _checkIndex(p, i, 'i')
    _checkIndex(p, j, 'j')
    if p.at(i) != 1:
        raise PosetParameterError(f"pi({i}) must be 1 in {p}.")
    a = p.at(j)
    if a in (1, m, k):
        raise PosetParameterError(f"pi({j}) = {a} may not be 1, {m} or {k}.")
    x = (m - 1) * n
    N = multinomial(*([m - 1] * n))
    total = 0
    for s in range(m):
        total += (binomial(x + s, s)
                  * binomial(x + 4 * (m - 1) - s, 4 * (m - 1) - s)
                  * binomial(3 * m - a - 2, m - 1)
                  * binomial(m - s + a - 3, m - s - 1))
    return N * N * total
