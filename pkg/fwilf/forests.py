"""
forests.py - rooted labeled forests, exhaustive enumeration, instances and counting

A forest is stored as a parent mapping from vertex labels to parent labels,
with 0 standing for the virtual root. Forests on [n] correspond to labeled
trees on {0, ..., n} rooted at 0; we enumerate them by decoding every Prüfer
sequence of length n-1 over an (n+1)-letter alphabet in lexicographic order,
the last letter playing the part of the virtual root.
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import permutations, product
from typing import (Callable, Dict, Iterable, Iterator, List, Mapping, Optional,
                    Sequence, Tuple)

from fwilf import consts
from fwilf.patterns import Pattern, PatternSet
from fwilf.utils import StatusCallback, checkCap, standardize

ParentList = Tuple[int, ...]
VertexPath = Tuple[int, ...]


class InvalidForestError(Exception):
    "A parent mapping that does not describe a rooted forest."
    def __init__(self, text: str = "Invalid forest.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class InvalidKindError(Exception):
    "Instance kinds are 'classical' or 'consecutive'."
    def __init__(self, kind: str) -> None:
        super().__init__()
        self.text = (f"Unknown instance kind '{kind}'; "
                     f"expected one of {', '.join(consts.instanceKinds)}.")

    def __str__(self):
        return self.text


def checkKind(kind: str) -> None:
    if kind not in consts.instanceKinds:
        raise InvalidKindError(kind)


class Forest:
    """
    A rooted labeled forest.

    Labels are arbitrary distinct positive integers and are the vertex
    identities; forests "on [n]" simply use 1..n. Subforests produced by
    induced() keep the labels of the forest they came from, so every
    order-based notion (instances, top-down minima, ranks) can be applied
    to them without standardizing first.

    Forests are immutable and compare by parent mapping.
    """
    __slots__ = ('_parent', '_children', '_depth')

    def __init__(self, parent: Mapping[int, int]) -> None:
        self._parent: Dict[int, int] = dict(parent)
        for v, p in self._parent.items():
            if v <= 0:
                raise InvalidForestError(f"Vertex labels must be positive, got {v}.")
            if p != 0 and p not in self._parent:
                raise InvalidForestError(f"Vertex {v} has unknown parent {p}.")

        self._children: Dict[int, List[int]] = {0: []}
        for v in self._parent:
            self._children[v] = []
        for v in sorted(self._parent):
            self._children[self._parent[v]].append(v)

        self._depth: Dict[int, int] = {}
        stack = [(r, 1) for r in self._children[0]]
        while stack:
            v, dep = stack.pop()
            self._depth[v] = dep
            stack.extend((c, dep + 1) for c in self._children[v])
        if len(self._depth) != len(self._parent):
            raise InvalidForestError("The parent mapping contains a cycle.")

    @classmethod
    def fromParentList(cls, parents: Sequence[int]) -> Forest:
        "Forest on [n] from the list p(1), ..., p(n)."
        return cls({v: p for v, p in enumerate(parents, 1)})

    @classmethod
    def empty(cls) -> Forest:
        return cls({})

    @classmethod
    def path(cls, labels: Sequence[int]) -> Forest:
        "A single root-to-leaf path carrying /labels/ from the top down."
        parent = {}
        prev = 0
        for v in labels:
            parent[v] = prev
            prev = v
        return cls(parent)

    ### structure ###
    @property
    def n(self) -> int:
        return len(self._parent)

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(sorted(self._parent))

    @property
    def parentMap(self) -> Dict[int, int]:
        return dict(self._parent)

    def parentOf(self, v: int) -> int:
        return self._parent[v]

    def children(self, v: int) -> Tuple[int, ...]:
        "Children of /v/ in increasing label order; children(0) are the roots."
        return tuple(self._children[v])

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(self._children[0])

    def isTree(self) -> bool:
        return len(self._children[0]) == 1

    def depth(self, v: int) -> int:
        "Number of vertices on the path from the root to /v/, inclusive."
        return self._depth[v]

    def ancestors(self, v: int) -> List[int]:
        "Strict ancestors of /v/, nearest first."
        result = []
        p = self._parent[v]
        while p != 0:
            result.append(p)
            p = self._parent[p]
        return result

    def rootPath(self, v: int) -> List[int]:
        "Labels from the root down to /v/, inclusive."
        path = self.ancestors(v)
        path.reverse()
        path.append(v)
        return path

    def descendants(self, v: int) -> List[int]:
        "/v/ and all its descendants, in depth-first preorder."
        result = []
        stack = [v]
        while stack:
            u = stack.pop()
            result.append(u)
            stack.extend(reversed(self._children[u]))
        return result

    def isAncestor(self, u: int, v: int) -> bool:
        "True if /u/ is a strict ancestor of /v/."
        p = self._parent[v]
        while p != 0:
            if p == u:
                return True
            p = self._parent[p]
        return False

    def leaves(self) -> Tuple[int, ...]:
        return tuple(v for v in sorted(self._parent) if not self._children[v])

    def rootToLeafPaths(self) -> List[List[int]]:
        return [self.rootPath(leaf) for leaf in self.leaves()]

    def componentOf(self, v: int) -> int:
        "The root of the tree containing /v/."
        while self._parent[v] != 0:
            v = self._parent[v]
        return v

    def components(self) -> List[Forest]:
        return [self.induced(self.descendants(r)) for r in self.roots]

    ### derived forests ###
    def induced(self, vertices: Iterable[int]) -> Forest:
        """
        The subforest on /vertices/, keeping labels; a vertex whose parent
        is not kept becomes a root.
        """
        keep = set(vertices)
        return Forest({v: (self._parent[v] if self._parent[v] in keep else 0)
                       for v in keep})

    def relabeled(self, mapping: Mapping[int, int]) -> Forest:
        "Apply the label permutation /mapping/; unmapped labels stay put."
        def m(v):
            return mapping.get(v, v) if v else 0
        return Forest({m(v): m(p) for v, p in self._parent.items()})

    def standardized(self) -> Forest:
        "The order-isomorphic forest on [n]."
        ranks = {v: i for i, v in enumerate(sorted(self._parent), 1)}
        return self.relabeled(ranks)

    def shape(self, v: int = 0) -> tuple:
        """
        Canonical form of the unlabeled structure below /v/ (the whole
        forest for v = 0): the sorted tuple of the children's forms.
        """
        return tuple(sorted(self.shape(c) for c in self._children[v]))

    def parentList(self) -> ParentList:
        "p(1), ..., p(n) for a forest on [n]."
        assert self.labels == tuple(range(1, self.n + 1)), \
            "parentList() needs a forest on [n]"
        return tuple(self._parent[v] for v in range(1, self.n + 1))

    def __eq__(self, other):
        return isinstance(other, Forest) and self._parent == other._parent

    def __hash__(self):
        return hash(frozenset(self._parent.items()))

    def __str__(self):
        if not self._parent:
            return '-'
        if self.labels == tuple(range(1, self.n + 1)):
            return ','.join(str(p) for p in self.parentList())
        return ' '.join(f"{v}<{self._parent[v]}" for v in sorted(self._parent))

    def __repr__(self):
        return f"Forest({self})"


def parseForest(text: str) -> Forest:
    """
    Parse a comma-separated parent list p(1),...,p(n); '-' is the empty
    forest.

    >>> parseForest('0,1,1').children(1)
    (2, 3)
    """
    text = text.strip()
    if text in ('-', ''):
        return Forest.empty()
    try:
        parents = [int(tok) for tok in text.split(',')]
    except ValueError as e:
        raise InvalidForestError(f"Unknown forest syntax '{text}'.") from e
    for v, p in enumerate(parents, 1):
        if not 0 <= p <= len(parents) or p == v:
            raise InvalidForestError(f"Vertex {v} has invalid parent {p}.")
    return Forest.fromParentList(parents)


#### Unlabeled trees ####
Shape = tuple


@lru_cache(maxsize=None)
def rootedShapes(n: int) -> Tuple[Shape, ...]:
    """
    Every unlabeled rooted tree on /n/ vertices, once each, in the form
    returned by Forest.shape() for the root.

    >>> [len(rootedShapes(n)) for n in range(1, 7)]
    [1, 1, 2, 4, 9, 20]
    """
    if n < 1:
        return ()
    if n == 1:
        return ((),)
    return tuple(sorted(tuple(sorted(kids)) for kids in _forestShapes(n - 1, None)))


def _forestShapes(n: int, limit: Optional[Tuple[int, Shape]]) -> Iterator[Tuple[Shape, ...]]:
    # trees are chosen in nonincreasing (size, shape) order so each multiset
    # comes out once
    if n == 0:
        yield ()
        return
    for size in range(1, n + 1):
        for tree in rootedShapes(size):
            key = (size, tree)
            if limit is not None and key > limit:
                continue
            for rest in _forestShapes(n - size, key):
                yield (tree,) + rest


def shapeSize(shape: Shape) -> int:
    return 1 + sum(shapeSize(c) for c in shape)


def shapeToForest(shape: Shape) -> Forest:
    "A tree of the given shape, labeled 1..n in preorder."
    parent: Dict[int, int] = {}

    def place(s: Shape, par: int) -> None:
        v = len(parent) + 1
        parent[v] = par
        for c in s:
            place(c, v)

    place(shape, 0)
    return Forest(parent)


#### Enumeration ####
def prueferToParents(seq: Sequence[int], n: int) -> ParentList:
    """
    Decode a Prüfer sequence over 1..n+1 into the parent list of a forest
    on [n]; letter n+1 is the virtual root.

    >>> prueferToParents((3, 3), 3)
    (3, 3, 0)
    """
    if n == 0:
        return ()
    virtualRoot = n + 1
    degree = [1] * (virtualRoot + 1)
    degree[0] = 0
    for x in seq:
        degree[x] += 1

    parent = [0] * (n + 1)
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        parent[leaf] = x
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    parent[leaf] = virtualRoot
    return tuple(0 if p == virtualRoot else p for p in parent[1:])


def prueferSequences(n: int, firstLetters: Optional[Sequence[int]] = None
                     ) -> Iterator[Tuple[int, ...]]:
    """
    Prüfer sequences of length n-1 over 1..n+1 in lexicographic order,
    optionally restricted to the given first letters.
    """
    if n <= 1:
        if firstLetters is None or 1 in firstLetters:
            yield ()
        return
    alphabet = range(1, n + 2)
    firsts = alphabet if firstLetters is None else sorted(firstLetters)
    for first in firsts:
        for rest in product(alphabet, repeat=n - 2):
            yield (first,) + rest


def partitionLetters(n: int, jobs: int) -> List[Tuple[int, ...]]:
    """
    Split the possible first Prüfer letters into /jobs/ round-robin groups.
    For n <= 1 there is one (empty) sequence, owned by the group holding 1.
    """
    letters = range(1, n + 2) if n >= 2 else [1]
    jobs = max(1, min(jobs, len(letters)))
    return [tuple(letters[i::jobs]) for i in range(jobs)]


def enumerateParentLists(n: int, firstLetters: Optional[Sequence[int]] = None
                         ) -> Iterator[ParentList]:
    for seq in prueferSequences(n, firstLetters):
        yield prueferToParents(seq, n)


def enumerateForests(n: int, cap: int = consts.N_MAX, allowLarge: bool = False,
                     statusCallback: Optional[StatusCallback] = None
                     ) -> Iterator[Forest]:
    """
    Yield every rooted labeled forest on [n] exactly once, in Prüfer order.
    There are (n+1)^(n-1) of them.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    checkCap("n", n, cap, allowLarge, statusCallback)
    for parents in enumerateParentLists(n):
        yield Forest.fromParentList(parents)


#### Instances ####
class PatternPlan:
    """
    Precomputed value windows for embedding a pattern left to right: when
    choosing the element for pi(j), its value must lie strictly between the
    chosen values of the nearest smaller and nearest larger earlier pattern
    entries.
    """
    __slots__ = ('values', 'k', 'windows')

    def __init__(self, pattern: Pattern) -> None:
        self.values = pattern.values
        self.k = pattern.k
        windows = []
        for j in range(self.k):
            lower = [i for i in range(j) if self.values[i] < self.values[j]]
            upper = [i for i in range(j) if self.values[i] > self.values[j]]
            lo = max(lower, key=lambda i: self.values[i]) if lower else -1
            hi = min(upper, key=lambda i: self.values[i]) if upper else -1
            windows.append((lo, hi))
        self.windows: Tuple[Tuple[int, int], ...] = tuple(windows)

    def embeddings(self, seq: Sequence[int], endAtLast: bool = False
                   ) -> Iterator[Tuple[int, ...]]:
        "Position tuples of /seq/ order-isomorphic to the pattern."
        k = self.k
        length = len(seq)
        chosen = [0] * k
        positions = [0] * k

        def extend(start: int, j: int) -> Iterator[Tuple[int, ...]]:
            if j == k:
                yield tuple(positions)
                return
            loIdx, hiIdx = self.windows[j]
            lo = chosen[loIdx] if loIdx >= 0 else None
            hi = chosen[hiIdx] if hiIdx >= 0 else None
            stop = length - (k - j) + 1
            if endAtLast and j == k - 1:
                start = max(start, length - 1)
            for pos in range(start, stop):
                val = seq[pos]
                if (lo is None or val > lo) and (hi is None or val < hi):
                    chosen[j] = val
                    positions[j] = pos
                    yield from extend(pos + 1, j + 1)

        if k <= length:
            yield from extend(0, 0)

    def occursIn(self, seq: Sequence[int]) -> bool:
        return next(self.embeddings(seq), None) is not None

    def countEndingAtLast(self, seq: Sequence[int]) -> int:
        return sum(1 for _ in self.embeddings(seq, endAtLast=True))

    def matchesWindow(self, window: Sequence[int]) -> bool:
        return standardize(window) == self.values


def _childLists(parents: Sequence[int]) -> List[List[int]]:
    kids: List[List[int]] = [[] for _ in range(len(parents) + 1)]
    for v, p in enumerate(parents, 1):
        kids[p].append(v)
    return kids


def _walkPaths(parents: Sequence[int]) -> Iterator[Tuple[List[int], bool]]:
    """
    Depth-first walk yielding (root path of v, v is a leaf) for every vertex
    v of the forest on [n] given by /parents/. The yielded list is reused.
    """
    kids = _childLists(parents)
    path: List[int] = []
    stack: List[Tuple[int, int]] = [(r, 1) for r in reversed(kids[0])]
    while stack:
        v, dep = stack.pop()
        del path[dep - 1:]
        path.append(v)
        yield path, not kids[v]
        stack.extend((c, dep + 1) for c in reversed(kids[v]))


def _avoidsParents(parents: Sequence[int], plans: Sequence[PatternPlan],
                   kind: str) -> bool:
    if not plans:
        return True
    if kind == consts.CLASSICAL:
        for path, isLeaf in _walkPaths(parents):
            if isLeaf and any(plan.occursIn(path) for plan in plans):
                return False
    else:
        for path, _ in _walkPaths(parents):
            for plan in plans:
                if len(path) >= plan.k and plan.matchesWindow(path[-plan.k:]):
                    return False
    return True


def _countInstancesParents(parents: Sequence[int], plan: PatternPlan,
                           kind: str) -> int:
    total = 0
    if kind == consts.CLASSICAL:
        for path, _ in _walkPaths(parents):
            if len(path) >= plan.k:
                total += plan.countEndingAtLast(path)
    else:
        for path, _ in _walkPaths(parents):
            if len(path) >= plan.k and plan.matchesWindow(path[-plan.k:]):
                total += 1
    return total


def instances(F: Forest, p: Pattern, kind: str = consts.CLASSICAL
              ) -> set[VertexPath]:
    """
    All downward vertex sequences of /F/ order-isomorphic to /p/: ancestor
    chains for classical instances, parent chains for consecutive ones.
    Each is listed root side first.
    """
    checkKind(kind)
    plan = PatternPlan(p)
    found = set()
    for v in F.labels:
        path = F.rootPath(v)
        if len(path) < p.k:
            continue
        if kind == consts.CLASSICAL:
            for positions in plan.embeddings(path, endAtLast=True):
                found.add(tuple(path[i] for i in positions))
        elif plan.matchesWindow(path[-p.k:]):
            found.add(tuple(path[-p.k:]))
    return found


def avoids(F: Forest, S: PatternSet, kind: str = consts.CLASSICAL) -> bool:
    "True iff /F/ has no instance of any pattern of /S/."
    checkKind(kind)
    plans = [PatternPlan(p) for p in S]
    for path in F.rootToLeafPaths():
        for plan in plans:
            if kind == consts.CLASSICAL:
                if plan.occursIn(path):
                    return False
            elif any(plan.matchesWindow(path[i:i + plan.k])
                     for i in range(len(path) - plan.k + 1)):
                return False
    return True


def avoidsPath(seq: Sequence[int], S: PatternSet, kind: str = consts.CLASSICAL) -> bool:
    "Avoidance for a single label sequence read from the root down."
    return avoids(Forest.path(seq), S, kind)


#### Counting ####
def _countPartition(args: Tuple[Tuple[Tuple[int, ...], ...], str, int,
                                Tuple[int, ...]]) -> Tuple[int, int]:
    patternValues, kind, n, letters = args
    plans = [PatternPlan(Pattern(v)) for v in patternValues]
    f = t = 0
    for parents in enumerateParentLists(n, letters):
        if _avoidsParents(parents, plans, kind):
            f += 1
            if parents.count(0) == 1:
                t += 1
    return f, t


def _distributionPartition(args: Tuple[Tuple[int, ...], str, int, Tuple[int, ...]]
                           ) -> Counter:
    patternValues, kind, n, letters = args
    plan = PatternPlan(Pattern(patternValues))
    tally: Counter = Counter()
    for parents in enumerateParentLists(n, letters):
        tally[_countInstancesParents(parents, plan, kind)] += 1
    return tally


def runPartitioned(worker: Callable, argsFor: Callable[[Tuple[int, ...]], tuple],
                   n: int, jobs: int) -> list:
    """
    Run /worker/ once per Prüfer-prefix partition and return the partial
    results in partition order. jobs > 1 uses a process pool.
    """
    groups = partitionLetters(n, jobs)
    argList = [argsFor(g) for g in groups]
    if jobs <= 1 or len(groups) == 1:
        return [worker(a) for a in argList]
    with ProcessPoolExecutor(max_workers=len(groups)) as pool:
        return list(pool.map(worker, argList))


def countAvoiders(S: PatternSet, kind: str, n: int, jobs: int = 1,
                  cap: int = consts.N_MAX, allowLarge: bool = False,
                  statusCallback: Optional[StatusCallback] = None) -> Tuple[int, int]:
    """
    Return (f_n(S), t_n(S)): the numbers of forests and of trees on [n]
    avoiding every pattern of /S/. The result does not depend on /jobs/.
    """
    checkKind(kind)
    checkCap("n", n, cap, allowLarge, statusCallback)
    if n == 0:
        return 1, 0
    patternValues = tuple(p.values for p in S)
    if statusCallback:
        statusCallback(f"Counting {kind} avoiders of {{{S}}} on [{n}]...")
    parts = runPartitioned(_countPartition,
                           lambda g: (patternValues, kind, n, g), n, jobs)
    f = sum(part[0] for part in parts)
    t = sum(part[1] for part in parts)
    return f, t


def countAvoidersRange(S: PatternSet, kind: str, nMax: int, jobs: int = 1,
                       cap: int = consts.N_MAX, allowLarge: bool = False,
                       statusCallback: Optional[StatusCallback] = None
                       ) -> Tuple[List[int], List[int]]:
    """
    Return ([t_1..t_nMax], [f_0..f_nMax]).
    """
    checkCap("n", nMax, cap, allowLarge, statusCallback)
    tSeq: List[int] = []
    fSeq: List[int] = [1]
    for n in range(1, nMax + 1):
        f, t = countAvoiders(S, kind, n, jobs, cap, allowLarge, statusCallback)
        fSeq.append(f)
        tSeq.append(t)
    return tSeq, fSeq


def instanceCountDistribution(p: Pattern, kind: str, n: int, jobs: int = 1,
                              cap: int = consts.N_MAX, allowLarge: bool = False,
                              statusCallback: Optional[StatusCallback] = None
                              ) -> Dict[int, int]:
    """
    Map m to the number of forests on [n] with exactly m instances of /p/.
    """
    checkKind(kind)
    checkCap("n", n, cap, allowLarge, statusCallback)
    if statusCallback:
        statusCallback(f"Tallying {kind} instances of {p} on [{n}]...")
    parts = runPartitioned(_distributionPartition,
                           lambda g: (p.values, kind, n, g), n, jobs)
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return dict(sorted(total.items()))


ParentStatistic = Callable[[ParentList], Optional[int]]


def _tallyPartition(args: Tuple[Tuple[Tuple[int, ...], ...], str, int,
                                ParentStatistic, Tuple[int, ...]]) -> Counter:
    patternValues, kind, n, statistic, letters = args
    plans = [PatternPlan(Pattern(v)) for v in patternValues]
    tally: Counter = Counter()
    for parents in enumerateParentLists(n, letters):
        if _avoidsParents(parents, plans, kind):
            value = statistic(parents)
            if value is not None:
                tally[value] += 1
    return tally


def tallyAvoiders(S: PatternSet, kind: str, n: int, statistic: ParentStatistic,
                  jobs: int = 1, cap: int = consts.N_MAX, allowLarge: bool = False,
                  statusCallback: Optional[StatusCallback] = None) -> Dict[int, int]:
    """
    Map each value of /statistic/ to the number of forests on [n] avoiding
    /S/ that take it. The statistic sees the parent list and may return
    None to leave a forest out; with jobs > 1 it must be picklable.
    """
    checkKind(kind)
    checkCap("n", n, cap, allowLarge, statusCallback)
    if n == 0:
        value = statistic(())
        return {} if value is None else {value: 1}
    patternValues = tuple(p.values for p in S)
    parts = runPartitioned(_tallyPartition,
                           lambda g: (patternValues, kind, n, statistic, g), n, jobs)
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return dict(sorted(total.items()))


def countPathAvoiders(p: Pattern, n: int, cap: int = consts.PATH_N_MAX,
                      allowLarge: bool = False) -> int:
    """
    Number of label sequences of length n (forests that are a single path)
    classically avoiding /p/.
    """
    checkCap("path length", n, cap, allowLarge)
    plan = PatternPlan(p)
    return sum(1 for perm in permutations(range(1, n + 1))
               if not plan.occursIn(perm))


def filterForests(n: int, keep: Callable[[ParentList], bool]) -> Iterator[Forest]:
    for parents in enumerateParentLists(n):
        if keep(parents):
            yield Forest.fromParentList(parents)


def enumerateAvoiders(S: PatternSet, kind: str, n: int, cap: int = consts.N_MAX,
                      allowLarge: bool = False,
                      statusCallback: Optional[StatusCallback] = None
                      ) -> Iterator[Forest]:
    "Every forest on [n] avoiding /S/, in Prüfer order."
    checkKind(kind)
    checkCap("n", n, cap, allowLarge, statusCallback)
    plans = [PatternPlan(p) for p in S]
    return filterForests(n, lambda parents: _avoidsParents(parents, plans, kind))


def wilfCheck(S: PatternSet, T: PatternSet, kind: str, nMax: int, jobs: int = 1,
              cap: int = consts.N_MAX, allowLarge: bool = False,
              statusCallback: Optional[StatusCallback] = None
              ) -> Tuple[Optional[int], List[Tuple[int, int, int]]]:
    """
    Compare f_n(S) and f_n(T) for 1 <= n <= nMax. Return the first n where
    they differ (or None) and the table of (n, f_n(S), f_n(T)).
    """
    rows = []
    firstDiff = None
    for n in range(1, nMax + 1):
        fS, _ = countAvoiders(S, kind, n, jobs, cap, allowLarge, statusCallback)
        fT, _ = countAvoiders(T, kind, n, jobs, cap, allowLarge, statusCallback)
        rows.append((n, fS, fT))
        if fS != fT and firstDiff is None:
            firstDiff = n
    return firstDiff, rows
