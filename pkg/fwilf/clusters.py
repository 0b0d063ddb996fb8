"""
clusters.py - forest clusters of consecutive patterns and the equivalences
decided by counting them

A cluster is a tree together with a connected family of highlighted
consecutive instances covering every vertex. Clusters are never found by
scanning labeled trees: we grow unlabeled skeletons one highlighted path at
a time, deduplicate them by canonical form, and count (or list) the
labellings of each skeleton as linear extensions of its cluster poset.
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from collections import Counter, defaultdict
from itertools import combinations, permutations
import math
from typing import (Callable, Dict, FrozenSet, Iterable, Iterator, List,
                    NamedTuple, Optional, Sequence, Set, Tuple)

from fwilf import consts
from fwilf.forests import (Forest, Shape, VertexPath, enumerateParentLists,
                           instances, rootedShapes, shapeSize, shapeToForest)
from fwilf.patterns import Pattern
from fwilf.posets import (ClusterPoset, countLinearExtensions, linearExtensions,
                          labellingFromExtension)
from fwilf.utils import StatusCallback, binomial, checkCap, standardize

Mark = Tuple[VertexPath, int]
ClusterTable = Dict[Tuple[int, int], int]


class NotGroundedError(Exception):
    "The operation is only defined for grounded patterns."
    def __init__(self, pattern: Pattern, text: Optional[str] = None) -> None:
        super().__init__()
        self.pattern = pattern
        self.text = text or f"Pattern {pattern} is not grounded."

    def __str__(self):
        return self.text


class HypothesisError(Exception):
    "The hypotheses needed by an equivalence construction do not hold."
    def __init__(self, text: str = "Hypothesis violated.") -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class EquivVerdict(NamedTuple):
    """
    Outcome of an equivalence check. /witness/ is None when the two sides
    agreed on everything up to /nMax/.
    """
    consistent: bool
    nMax: int
    witness: Optional[tuple] = None
    detail: str = ''


#### Labeled clusters ####
class Cluster:
    """
    A tree with a set of highlighted downward paths (marks). Each mark is a
    pair (vertices from the top down, offset j) and must be a consecutive
    instance of pi(j)...pi(k). Ordinary clusters use offset 1 throughout; a
    /bound/-pseudo cluster also allows offsets up to /bound/ on marks that
    start at the root.

    Two clusters on the same tree with different marks are different
    clusters.
    """
    __slots__ = ('forest', 'pattern', 'marks', 'bound')

    def __init__(self, forest: Forest, pattern: Pattern, marks: Iterable[Mark],
                 bound: int = 1) -> None:
        self.forest = forest
        self.pattern = pattern
        self.marks: FrozenSet[Mark] = frozenset((tuple(path), int(off))
                                                for path, off in marks)
        self.bound = bound

    @classmethod
    def fromPaths(cls, forest: Forest, pattern: Pattern,
                  paths: Iterable[Sequence[int]]) -> Cluster:
        "An ordinary cluster whose marks are full instances."
        return cls(forest, pattern, ((tuple(p), 1) for p in paths))

    @property
    def n(self) -> int:
        return self.forest.n

    @property
    def m(self) -> int:
        return len(self.marks)

    @property
    def root(self) -> int:
        roots = self.forest.roots
        return roots[0] if roots else 0

    def markValues(self, mark: Mark) -> Tuple[int, ...]:
        return self.pattern.values[mark[1] - 1:]

    def sortedMarks(self) -> List[Mark]:
        return sorted(self.marks)

    def problems(self) -> List[str]:
        "Everything that keeps this from being a valid (pseudo) cluster."
        F = self.forest
        if not F.isTree():
            return ["The underlying forest is not a single tree."]
        found = []
        labels = set(F.labels)
        k = self.pattern.k
        covered: Set[int] = set()
        for mark in self.sortedMarks():
            path, off = mark
            if not 1 <= off <= self.bound:
                found.append(f"Mark {path} has offset {off} outside 1..{self.bound}.")
                continue
            if len(path) != k - off + 1:
                found.append(f"Mark {path} has the wrong length for offset {off}.")
                continue
            if not set(path) <= labels:
                found.append(f"Mark {path} uses vertices outside the tree.")
                continue
            if F.parentOf(path[0]) != 0 and off > 1:
                found.append(f"Truncated mark {path} does not start at the root.")
            if any(F.parentOf(b) != a for a, b in zip(path, path[1:])):
                found.append(f"Mark {path} is not a downward path.")
            elif standardize(path) != standardize(self.markValues(mark)):
                found.append(f"Mark {path} is not an instance of its pattern.")
            covered.update(path)
        if covered != labels:
            found.append(f"Vertices {sorted(labels - covered)} lie on no mark.")
        if not self._marksConnected():
            found.append("The marks do not form a connected family.")
        return found

    def isValid(self) -> bool:
        return not self.problems()

    def _marksConnected(self) -> bool:
        marks = self.sortedMarks()
        if not marks:
            return self.n == 0
        byVertex = defaultdict(list)
        for idx, (path, _) in enumerate(marks):
            for v in path:
                byVertex[v].append(idx)
        seen = {0}
        stack = [0]
        while stack:
            idx = stack.pop()
            for v in marks[idx][0]:
                for other in byVertex[v]:
                    if other not in seen:
                        seen.add(other)
                        stack.append(other)
        return len(seen) == len(marks)

    def isPrimitive(self) -> bool:
        return all(path[0] == self.root for path, _ in self.marks)

    def poset(self) -> ClusterPoset:
        return ClusterPoset.fromMarks(((path, self.markValues((path, off)))
                                       for path, off in self.marks),
                                      self.forest.labels)

    def canon(self) -> tuple:
        "Canonical form of the unlabeled cluster underlying this one."
        ends: Dict[int, List[int]] = defaultdict(list)
        for path, _ in self.marks:
            ends[path[-1]].append(len(path))
        return _canonicalForms(self.root, self.forest.children, ends)[self.root]

    def __eq__(self, other):
        return (isinstance(other, Cluster) and self.pattern == other.pattern
                and self.forest == other.forest and self.marks == other.marks)

    def __hash__(self):
        return hash((self.forest, self.pattern, self.marks))

    def __repr__(self):
        return f"Cluster({self.pattern}, n={self.n}, m={self.m})"


def _canonicalForms(root: int, childrenOf: Callable[[int], Sequence[int]],
                    ends: Dict[int, List[int]]) -> Dict[int, tuple]:
    """
    Canonical form of every subtree: the sorted lengths of the marks ending
    at the vertex, then the sorted forms of its children.
    """
    forms: Dict[int, tuple] = {}

    def visit(v: int) -> tuple:
        form = (tuple(sorted(ends.get(v, ()))),
                tuple(sorted(visit(c) for c in childrenOf(v))))
        forms[v] = form
        return form

    visit(root)
    return forms


def clusterHeights(C: Cluster) -> Dict[int, int]:
    """
    Height of every non-root vertex of a pseudo cluster: 1 below the root
    or below a larger label, otherwise one more than the parent's height.
    """
    F = C.forest
    root = C.root
    heights: Dict[int, int] = {}
    for v in F.descendants(root)[1:]:
        par = F.parentOf(v)
        heights[v] = 1 if par == root or par > v else heights[par] + 1
    return heights


#### Unlabeled skeletons ####
class Skeleton:
    """
    An unlabeled (pseudo) cluster on vertices 0..n-1 with 0 the root and
    every parent numbered below its children. A mark is (last vertex,
    length); its offset is k - length + 1.
    """
    __slots__ = ('k', 'parents', 'marks', '_children')

    def __init__(self, k: int, parents: Sequence[int],
                 marks: Iterable[Tuple[int, int]]) -> None:
        self.k = k
        self.parents: Tuple[int, ...] = tuple(parents)
        self.marks: FrozenSet[Tuple[int, int]] = frozenset(marks)
        self._children: List[List[int]] = [[] for _ in self.parents]
        for v in range(1, len(self.parents)):
            self._children[self.parents[v]].append(v)

    @classmethod
    def seed(cls, k: int, length: int) -> Skeleton:
        return cls(k, [-1] + list(range(length - 1)), [(length - 1, length)])

    @property
    def n(self) -> int:
        return len(self.parents)

    @property
    def m(self) -> int:
        return len(self.marks)

    def children(self, v: int) -> Sequence[int]:
        return self._children[v]

    def markPath(self, end: int, length: int) -> VertexPath:
        path = [end]
        while len(path) < length:
            path.append(self.parents[path[-1]])
        path.reverse()
        return tuple(path)

    def markList(self) -> List[Mark]:
        return sorted((self.markPath(end, length), self.k - length + 1)
                      for end, length in self.marks)

    def downwardPaths(self, u: int, maxLength: int) -> Iterator[VertexPath]:
        "Every downward path starting at /u/ with 1..maxLength vertices."
        stack: List[VertexPath] = [(u,)]
        while stack:
            path = stack.pop()
            yield path
            if len(path) < maxLength:
                stack.extend(path + (c,) for c in self._children[path[-1]])

    def extended(self, path: VertexPath, length: int) -> Optional[Skeleton]:
        """
        Add a mark of /length/ vertices that follows the existing /path/
        and continues along a new chain. None if that mark already exists.
        """
        if len(path) == length:
            mark = (path[-1], length)
            if mark in self.marks:
                return None
            return Skeleton(self.k, self.parents, self.marks | {mark})
        parents = list(self.parents)
        last = path[-1]
        for _ in range(length - len(path)):
            parents.append(last)
            last = len(parents) - 1
        return Skeleton(self.k, parents, self.marks | {(last, length)})

    def poset(self, pattern: Pattern) -> ClusterPoset:
        return ClusterPoset.fromMarks((path, pattern.values[off - 1:])
                                      for path, off in self.markList())

    def isConsistent(self, pattern: Pattern) -> bool:
        "False if the marks impose contradictory label orders."
        relations: Dict[int, List[int]] = defaultdict(list)
        indegree = [0] * self.n
        for path, off in self.markList():
            values = pattern.values[off - 1:]
            ordered = [v for _, v in sorted(zip(values, path))]
            for a, b in zip(ordered, ordered[1:]):
                relations[a].append(b)
                indegree[b] += 1
        ready = [v for v in range(self.n) if indegree[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for w in relations[v]:
                indegree[w] -= 1
                if indegree[w] == 0:
                    ready.append(w)
        return seen == self.n

    def _forms(self) -> Dict[int, tuple]:
        ends: Dict[int, List[int]] = defaultdict(list)
        for end, length in self.marks:
            ends[end].append(length)
        return _canonicalForms(0, self.children, ends)

    def canon(self) -> tuple:
        return self._forms()[0]

    def automorphisms(self) -> int:
        "Order of the automorphism group of the marked tree."
        forms = self._forms()
        total = 1
        for v in range(self.n):
            same = Counter(forms[c] for c in self._children[v])
            total *= math.prod(math.factorial(c) for c in same.values())
        return total

    def labeled(self, extension: Sequence[int], pattern: Pattern,
                bound: int = 1) -> Cluster:
        "The cluster obtained by labeling along a linear extension."
        label = labellingFromExtension(extension)
        parent = {label[v]: (label[self.parents[v]] if v else 0)
                  for v in range(self.n)}
        marks = ((tuple(label[v] for v in path), off)
                 for path, off in self.markList())
        return Cluster(Forest(parent), pattern, marks, bound)

    def __repr__(self):
        return f"Skeleton(k={self.k}, n={self.n}, m={self.m})"


def _checkClusterCap(p: Pattern, nMax: int, cap: Optional[int], allowLarge: bool,
                     statusCallback: Optional[StatusCallback]) -> None:
    if cap is None:
        cap = 2 * p.k + consts.CLUSTER_EXTRA
    checkCap("cluster size", nMax, cap, allowLarge, statusCallback)


def _grow(sk: Skeleton, lengths: Sequence[int], nMax: int,
          primitive: bool) -> Iterator[Skeleton]:
    for length in lengths:
        # truncated marks, and every mark of a primitive cluster, start at the root
        starts: Iterable[int] = (0,) if primitive or length < sk.k else range(sk.n)
        for u in starts:
            for path in sk.downwardPaths(u, length):
                if sk.n + length - len(path) > nMax:
                    continue
                child = sk.extended(path, length)
                if child is not None:
                    yield child


def clusterSkeletons(p: Pattern, nMax: int, mMax: Optional[int] = None,
                     bound: int = 1, primitive: bool = False,
                     statusCallback: Optional[StatusCallback] = None
                     ) -> Iterator[Skeleton]:
    """
    Every unlabeled /bound/-pseudo cluster of /p/ with at most /nMax/
    vertices (and at most /mMax/ marks), once each up to isomorphism and
    only if some labelling realizes it.

    Clusters are grown one mark at a time. Any cluster can be built this
    way by adding its marks in order of the depth of their first vertex,
    since each new mark then starts at a vertex that is already present.
    """
    k = p.k
    assert 1 <= bound <= k, "Pseudo cluster bound out of range"
    lengths = [k - j + 1 for j in range(1, bound + 1)]
    level: Dict[tuple, Skeleton] = {}
    for length in lengths:
        if length <= nMax:
            sk = Skeleton.seed(k, length)
            level[sk.canon()] = sk

    m = 1
    while level:
        if statusCallback is not None:
            statusCallback(f"{len(level)} cluster skeletons with {m} marks")
        yield from level.values()
        if mMax is not None and m >= mMax:
            return
        nextLevel: Dict[tuple, Skeleton] = {}
        rejected: Set[tuple] = set()
        for sk in level.values():
            for child in _grow(sk, lengths, nMax, primitive):
                form = child.canon()
                if form in nextLevel or form in rejected:
                    continue
                if child.isConsistent(p):
                    nextLevel[form] = child
                else:
                    rejected.add(form)
        level = nextLevel
        m += 1


def clusterNumbers(p: Pattern, nMax: int, mMax: Optional[int] = None,
                   bound: int = 1, cap: Optional[int] = None,
                   allowLarge: bool = False, posetCap: int = consts.POSET_CAP,
                   statusCallback: Optional[StatusCallback] = None) -> ClusterTable:
    """
    The table of cluster numbers r_{m,n}: {(m, n): number of labeled
    m-clusters on [n]}, omitting zero entries.
    """
    _checkClusterCap(p, nMax, cap, allowLarge, statusCallback)
    table: Counter = Counter()
    for sk in clusterSkeletons(p, nMax, mMax, bound, statusCallback=statusCallback):
        extensions = countLinearExtensions(sk.poset(p), posetCap)
        aut = sk.automorphisms()
        assert extensions % aut == 0, "Automorphisms must act freely on labellings"
        if extensions:
            table[(sk.m, sk.n)] += extensions // aut
    return dict(table)


def _labelings(sk: Skeleton, p: Pattern, bound: int) -> Iterator[Cluster]:
    seen: Set[Cluster] = set()
    for ext in linearExtensions(sk.poset(p)):
        C = sk.labeled(ext, p, bound)
        if C not in seen:
            seen.add(C)
            yield C


def enumerateClusters(p: Pattern, n: int, m: int, bound: int = 1,
                      primitive: bool = False, cap: Optional[int] = None,
                      allowLarge: bool = False,
                      statusCallback: Optional[StatusCallback] = None
                      ) -> Iterator[Cluster]:
    "Every labeled m-cluster of /p/ on [n], each exactly once."
    _checkClusterCap(p, n, cap, allowLarge, statusCallback)
    for sk in clusterSkeletons(p, n, m, bound, primitive, statusCallback):
        if sk.n == n and sk.m == m:
            yield from _labelings(sk, p, bound)


def naiveClusterNumbers(p: Pattern, nMax: int) -> ClusterTable:
    """
    Cluster numbers by brute force over every labeled tree and every subset
    of its consecutive instances. Only for small n.
    """
    table: Counter = Counter()
    for n in range(1, nMax + 1):
        for parents in enumerateParentLists(n):
            if parents.count(0) != 1:
                continue
            F = Forest.fromParentList(parents)
            found = sorted(instances(F, p, consts.CONSECUTIVE))
            for r in range(1, len(found) + 1):
                for chosen in combinations(found, r):
                    if Cluster.fromPaths(F, p, chosen).isValid():
                        table[(r, n)] += 1
    return dict(table)


def _firstDifference(a: ClusterTable, b: ClusterTable) -> Optional[Tuple[int, int]]:
    cells = sorted(set(a) | set(b), key=lambda mn: (mn[1], mn[0]))
    for cell in cells:
        if a.get(cell, 0) != b.get(cell, 0):
            return cell
    return None


def strongEquivCheck(p: Pattern, q: Pattern, nMax: int, cap: Optional[int] = None,
                     allowLarge: bool = False,
                     statusCallback: Optional[StatusCallback] = None) -> EquivVerdict:
    """
    Compare cluster-number tables up to size /nMax/. A differing cell
    (m, n) refutes strong c-forest-Wilf equivalence.
    """
    if p.k != q.k:
        return EquivVerdict(False, nMax, None, "The patterns have different lengths.")
    a = clusterNumbers(p, nMax, cap=cap, allowLarge=allowLarge,
                       statusCallback=statusCallback)
    b = clusterNumbers(q, nMax, cap=cap, allowLarge=allowLarge,
                       statusCallback=statusCallback)
    cell = _firstDifference(a, b)
    if cell is None:
        return EquivVerdict(True, nMax)
    m, n = cell
    return EquivVerdict(False, nMax, (m, n, a.get(cell, 0), b.get(cell, 0)),
                        f"r_{{{m},{n}}} differs")


#### Pseudo clusters ####
class StandardDecomposition(NamedTuple):
    """
    /primitive/ is the part made of the marks through the root; /hanging/
    maps each non-root vertex v of it to the pseudo cluster rooted at v.
    """
    primitive: Cluster
    hanging: Dict[int, Cluster]


def _requireGrounded(p: Pattern, bound: int) -> None:
    if not p.isGrounded():
        raise NotGroundedError(p)
    if bound > p.streak:
        raise NotGroundedError(p, f"Pseudo cluster bound {bound} exceeds the "
                                  f"streak {p.streak} of {p}.")


def standardDecomposition(C: Cluster) -> StandardDecomposition:
    """
    Split a pseudo cluster of a grounded pattern into its primitive root
    part P and, for each non-root vertex v of P, the pseudo cluster C_v on
    the vertices whose lowest ancestor in P is v. A mark leaving P at its
    i-th vertex is cut there and kept in C_v with its offset raised by i-1.
    """
    _requireGrounded(C.pattern, C.bound)
    F = C.forest
    root = C.root
    assert root == min(F.labels), "The root of a grounded pseudo cluster is its minimum"

    rootMarks = [mk for mk in C.marks if mk[0][0] == root]
    pVertices = {v for path, _ in rootMarks for v in path}
    P = Cluster(F.induced(pVertices), C.pattern, rootMarks, C.bound)
    heights = clusterHeights(P)

    def lowestInP(v: int) -> int:
        while v not in pVertices:
            v = F.parentOf(v)
        return v

    groups: Dict[int, Set[int]] = {v: set() for v in pVertices if v != root}
    for v in F.labels:
        if v not in pVertices:
            groups[lowestInP(v)].add(v)
    hangingMarks: Dict[int, List[Mark]] = {v: [] for v in groups}
    for path, off in C.marks:
        if path[0] == root:
            continue
        inP = [t for t, v in enumerate(path) if v in pVertices]
        if inP:
            i = inP[-1]
            hangingMarks[path[i]].append((path[i:], off + i))
        else:
            hangingMarks[lowestInP(path[0])].append((path, off))

    hanging = {}
    for v, below in groups.items():
        forest = F.induced(below | {v})
        hanging[v] = Cluster(forest, C.pattern, hangingMarks[v], heights[v])
    return StandardDecomposition(P, hanging)


def recompose(D: StandardDecomposition) -> Cluster:
    "Inverse of standardDecomposition()."
    P = D.primitive
    parent = P.forest.parentMap
    marks: List[Mark] = list(P.marks)
    for v, Cv in D.hanging.items():
        for w, par in Cv.forest.parentMap.items():
            if w != v:
                parent[w] = par
        above = P.forest.ancestors(v)
        for path, off in Cv.marks:
            if off > 1:
                lift = above[:off - 1]
                assert len(lift) == off - 1, "A truncated mark reaches above the root"
                marks.append((tuple(reversed(lift)) + path, 1))
            else:
                marks.append((path, off))
    return Cluster(Forest(parent), P.pattern, marks, P.bound)


ProfileKey = Tuple[int, int, int, Tuple[Tuple[int, int], ...]]


def primitivePseudoProfile(p: Pattern, bound: int, nMax: int,
                           cap: Optional[int] = None, allowLarge: bool = False,
                           statusCallback: Optional[StatusCallback] = None
                           ) -> Counter:
    """
    Number of primitive /bound/-pseudo m-clusters on [n] for every
    (root label, m, n, height of each non-root label).
    """
    _checkClusterCap(p, nMax, cap, allowLarge, statusCallback)
    profile: Counter = Counter()
    for sk in clusterSkeletons(p, nMax, bound=bound, primitive=True,
                               statusCallback=statusCallback):
        for C in _labelings(sk, p, bound):
            key = (C.root, C.m, C.n, tuple(sorted(clusterHeights(C).items())))
            profile[key] += 1
    return profile


def pEquivalenceCheck(p: Pattern, q: Pattern, bound: int, nMax: int,
                      cap: Optional[int] = None, allowLarge: bool = False,
                      statusCallback: Optional[StatusCallback] = None) -> EquivVerdict:
    """
    Compare primitive pseudo cluster counts profile by profile. Height
    functions are compared both over all values and over those bounded by
    the streak; the detail text says whether the two comparisons disagree.
    """
    if p.k != q.k:
        return EquivVerdict(False, nMax, None, "The patterns have different lengths.")
    a = primitivePseudoProfile(p, bound, nMax, cap, allowLarge, statusCallback)
    b = primitivePseudoProfile(q, bound, nMax, cap, allowLarge, statusCallback)
    streak = min(p.streak, q.streak)
    diff = sorted(key for key in set(a) | set(b) if a[key] != b[key])
    withinStreak = [key for key in diff
                    if all(h <= streak for _, h in key[3])]
    detail = (f"{len(a)} profiles; heights within the streak "
              f"{'agree' if not withinStreak else 'differ'}")
    if bool(diff) != bool(withinStreak):
        detail += "; the two height ranges give different verdicts"
    if not diff:
        return EquivVerdict(True, nMax, None, detail)
    key = diff[0]
    return EquivVerdict(False, nMax, key + (a[key], b[key]), detail)


#### Constructions of equivalent patterns ####
def boost(p: Pattern, ell: int) -> Pattern:
    """
    The pattern 1, ..., ell, pi(1)+ell, ..., pi(k)+ell.

    >>> str(boost(Pattern((3, 1, 4, 2)), 2))
    '125364'
    """
    if p.k < 2 or p.at(1) <= p.at(2):
        raise HypothesisError(f"Boosting needs pi(1) > pi(2), which fails for {p}.")
    if ell < 1:
        raise HypothesisError("The boost length must be at least 1.")
    return Pattern(tuple(range(1, ell + 1)) + p.shifted(ell))


def swapHypothesisProblems(p: Pattern, indices: Sequence[int]) -> List[str]:
    "Reasons why the positions /indices/ of /p/ cannot be permuted freely."
    idx = list(indices)
    if len(idx) < 2:
        return ["At least two positions are needed."]
    if idx != sorted(set(idx)):
        return ["Positions must be strictly increasing."]
    if idx[0] <= 1 or idx[-1] > p.k:
        return [f"Positions must lie in 2..{p.k}."]
    found = []
    if any(b - a <= 1 for a, b in zip(idx, idx[1:])):
        found.append("Positions must not be adjacent.")
    heights = p.heights()
    values = [p.at(a) for a in idx]
    if len({heights[v] for v in values}) != 1:
        found.append("Values at the positions must have equal heights.")
    x, y = min(values), max(values)
    if sorted(values) != list(range(x, y + 1)):
        found.append("Values at the positions must form an interval.")
    for neighbour in (x - 1, y + 1):
        if 1 <= neighbour <= p.k and p.position(neighbour) > idx[0]:
            found.append(f"Value {neighbour} must appear before position {idx[0]}.")
    return found


def swapEquivalent(p: Pattern, indices: Sequence[int], target: Pattern,
                   sizeCap: int = consts.PRIMITIVE_TREE_CAP) -> Pattern:
    """
    Rearrange the values at /indices/ into the relative order of /target/,
    giving a pattern 1-equivalent to /p/.

    >>> str(swapEquivalent(Pattern((1, 2, 5, 3, 7, 6, 4)), (4, 7), Pattern((2, 1))))
    '1254763'
    """
    problems = swapHypothesisProblems(p, indices)
    if target.k != len(indices):
        problems.append(f"Target {target} must have length {len(indices)}.")
    if problems:
        raise HypothesisError(' '.join(problems))
    values = [p.at(a) for a in indices]
    sigma = Pattern.fromSequence(values)
    if target not in (sigma, sigma.complement()):
        verdict = primitiveStructureEquivCheck(sigma, target, sizeCap)
        if not verdict.consistent:
            raise HypothesisError(f"{sigma} and {target} are not primitive "
                                  f"structure equivalent.")
    ordered = sorted(values)
    result = list(p.values)
    for a, t in zip(indices, target.values):
        result[a - 1] = ordered[t - 1]
    return Pattern(result)


def swapCandidates(p: Pattern) -> Iterator[Tuple[int, ...]]:
    "Every position set of /p/ meeting the swap hypotheses."
    for r in range(2, p.k):
        for idx in combinations(range(2, p.k + 1), r):
            if not swapHypothesisProblems(p, idx):
                yield idx


def swapClosure(p: Pattern) -> FrozenSet[Pattern]:
    """
    All patterns reachable from /p/ by complementing the values at a valid
    position set.
    """
    seen = {p}
    queue = [p]
    while queue:
        current = queue.pop()
        for idx in swapCandidates(current):
            sigma = Pattern.fromSequence([current.at(a) for a in idx])
            other = swapEquivalent(current, idx, sigma.complement())
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return frozenset(seen)


def levelShapes(depth: int, maxSize: int) -> List[Shape]:
    "Rooted tree shapes with every leaf at /depth/ and at most /maxSize/ vertices."
    if maxSize < depth:
        return []
    if depth == 1:
        return [()]
    below = sorted(levelShapes(depth - 1, maxSize - 1))
    sizes = [shapeSize(s) for s in below]
    result: List[Shape] = []
    chosen: List[Shape] = []

    def pick(start: int, budget: int) -> None:
        if chosen:
            result.append(tuple(chosen))
        for t in range(start, len(below)):
            if sizes[t] <= budget:
                chosen.append(below[t])
                pick(t, budget - sizes[t])
                chosen.pop()

    pick(0, maxSize - 1)
    return result


def orderedPrimitiveCount(tree: Forest, sigma: Pattern) -> int:
    """
    Labellings of a child-ordered tree whose root-to-leaf paths are all
    instances of /sigma/.
    """
    return countLinearExtensions(ClusterPoset.fromMarks(
        (tuple(path), sigma.values) for path in tree.rootToLeafPaths()))


def primitiveStructureEquivCheck(sigma: Pattern, other: Pattern,
                                 sizeCap: int = consts.PRIMITIVE_TREE_CAP
                                 ) -> EquivVerdict:
    """
    Compare ordered primitive cluster counts on every tree whose leaves are
    all at depth |sigma|, up to /sizeCap/ vertices. Child order does not
    change the count, so one tree per unordered shape suffices.
    """
    if sigma.k != other.k:
        return EquivVerdict(False, sizeCap, None, "The patterns have different lengths.")
    shapes = sorted(levelShapes(sigma.k, sizeCap), key=lambda s: (shapeSize(s), s))
    for shape in shapes:
        tree = shapeToForest(shape)
        a = orderedPrimitiveCount(tree, sigma)
        b = orderedPrimitiveCount(tree, other)
        if a != b:
            return EquivVerdict(False, sizeCap, (str(tree), a, b))
    return EquivVerdict(True, sizeCap, None, f"{len(shapes)} trees compared")


def _minMaxOrders(values: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    # each entry is the smallest or largest of those remaining
    if len(values) <= 1:
        yield tuple(values)
        return
    for rest in _minMaxOrders(values[1:]):
        yield (values[0],) + rest
    for rest in _minMaxOrders(values[:-1]):
        yield (values[-1],) + rest


def groundedEquivalenceClass(n: int) -> FrozenSet[Pattern]:
    """
    A c-forest-Wilf equivalence class of patterns of length /n/ with at
    least 2^(n-4) members: 1, 2, b+2 followed by two interleaved blocks,
    each ordered so every entry is the least or greatest of those after it,
    together with the complements.
    """
    if n < 6:
        raise HypothesisError("The block construction needs length at least 6.")
    half = n // 2 if n % 2 == 0 else (n - 1) // 2
    low = list(range(1, half))
    high = list(range(half + 1, 2 * half - (1 if n % 2 == 0 else 0)))
    members: Set[Pattern] = set()
    for a in _minMaxOrders(low):
        for b in _minMaxOrders(high):
            woven: List[int] = []
            for t, v in enumerate(a):
                woven.append(v)
                if t < len(b):
                    woven.append(b[t])
            p = Pattern((1, 2, half + 2) + tuple(v + 2 for v in woven))
            members.add(p)
            members.add(p.complement())
    return frozenset(members)


#### Necessary conditions for grounded patterns ####
class GroundedReport(NamedTuple):
    sameStreak: bool
    heightMismatches: Tuple[int, ...]
    nextValueCondition: bool
    sameFreeIndex: bool

    @property
    def passed(self) -> bool:
        return (self.sameStreak and not self.heightMismatches
                and self.nextValueCondition and self.sameFreeIndex)


def groundedNecessaryConditions(p: Pattern, q: Pattern) -> GroundedReport:
    """
    Conditions every strongly equivalent pair of grounded patterns meets:
    equal streak s, equal height of every value, pi(s+1) equal or summing
    to s+k+1, and the same first index after which no two values are
    consecutive. A failed condition refutes strong equivalence.
    """
    for pat in (p, q):
        if not pat.isGrounded():
            raise NotGroundedError(pat)
    if p.k != q.k:
        raise HypothesisError("The patterns have different lengths.")
    s = p.streak
    hp, hq = p.heights(), q.heights()
    mismatches = tuple(sorted(v for v in range(2, p.k + 1)
                              if hp.get(v) != hq.get(v)))
    a, b = p.at(s + 1), q.at(s + 1)
    return GroundedReport(
        sameStreak=s == q.streak,
        heightMismatches=mismatches,
        nextValueCondition=s == q.streak and (a == b or a + b == s + p.k + 1),
        sameFreeIndex=p.consecutiveFreeIndex() == q.consecutiveFreeIndex(),
    )


def _blocks(values: Iterable[int]) -> List[int]:
    "Lengths of the maximal runs of consecutive integers."
    runs: List[int] = []
    prev = None
    for v in sorted(values):
        if prev is not None and v == prev + 1:
            runs[-1] += 1
        else:
            runs.append(1)
        prev = v
    return runs


def twoClusterCount(p: Pattern, h: int) -> int:
    """
    Closed form for r_{2,2k-h} of a grounded pattern, the 2-clusters whose
    instances share h vertices.

    The instances either share their first h vertices, or the second starts
    inside the first and shares a run ending at a value i of height at
    least h, leaving C(2k-h-i, k-h) labellings.

    >>> twoClusterCount(Pattern((1, 2, 4, 3)), 1)
    25
    """
    if not p.isGrounded():
        raise NotGroundedError(p)
    k, s = p.k, p.streak
    if not 1 <= h < k:
        raise HypothesisError(f"Shared length {h} must lie in 1..{k - 1}.")
    if h <= s:
        shared = binomial(2 * k - 2 * h, k - h) // 2
    else:
        free = set(range(s + 1, k + 1)) - set(p.values[s:h])
        shared = math.prod(binomial(2 * a, a) for a in _blocks(free)) // 2
    inner = sum(binomial(2 * k - h - i, k - h)
                for i, height in p.heights().items() if height >= h)
    return shared + inner


#### Super-strong equivalence ####
class SuperStrongCounts(NamedTuple):
    """
    /exact/ counts labellings whose instances are exactly S (a_{F,S});
    /atLeast/ counts those where every path of S is an instance (b_{F,S}).
    """
    exact: int
    atLeast: int


class SuperStrongWitness(NamedTuple):
    forest: Forest
    paths: Tuple[VertexPath, ...]
    counts: Tuple[int, int]


def consecutivePaths(F: Forest, k: int) -> List[VertexPath]:
    "Every downward path of /k/ vertices in /F/."
    found = []
    for v in F.labels:
        path = F.rootPath(v)
        if len(path) >= k:
            found.append(tuple(path[-k:]))
    return sorted(found)


def _atLeastCount(F: Forest, paths: Iterable[VertexPath], p: Pattern,
                  posetCap: int) -> int:
    return countLinearExtensions(
        ClusterPoset.fromMarks(((path, p.values) for path in paths), F.labels),
        posetCap)


def superStrongCounts(F: Forest, S: Iterable[Sequence[int]], p: Pattern,
                      cap: int = consts.SUPER_STRONG_CAP, allowLarge: bool = False,
                      statusCallback: Optional[StatusCallback] = None
                      ) -> SuperStrongCounts:
    """
    Labellings of the unlabeled forest /F/ by [n] with exactly, or at
    least, the paths /S/ as instances of /p/. The exact count follows
    from the at-least counts of all supersets by inclusion-exclusion.
    """
    checkCap("forest size", F.n, cap, allowLarge, statusCallback)
    allPaths = consecutivePaths(F, p.k)
    chosen = sorted({tuple(path) for path in S})
    if not set(chosen) <= set(allPaths):
        raise HypothesisError(f"Every highlighted path must be a downward path "
                              f"of {p.k} vertices.")
    posetCap = max(consts.POSET_CAP, F.n)
    atLeast = _atLeastCount(F, chosen, p, posetCap)
    others = [path for path in allPaths if path not in chosen]
    exact = 0
    if atLeast:
        for r in range(len(others) + 1):
            sign = -1 if r % 2 else 1
            for extra in combinations(others, r):
                exact += sign * _atLeastCount(F, chosen + list(extra), p, posetCap)
    return SuperStrongCounts(exact, atLeast)


def superStrongCountsNaive(F: Forest, S: Iterable[Sequence[int]],
                           p: Pattern) -> SuperStrongCounts:
    "Brute force over every labelling; only for very small forests."
    chosen = {tuple(path) for path in S}
    allPaths = consecutivePaths(F, p.k)
    exact = atLeast = 0
    for perm in permutations(range(1, F.n + 1)):
        label = dict(zip(F.labels, perm))
        found = {path for path in allPaths
                 if standardize([label[v] for v in path]) == p.values}
        if chosen <= found:
            atLeast += 1
            if found == chosen:
                exact += 1
    return SuperStrongCounts(exact, atLeast)


def superStrongWitness(p: Pattern, q: Pattern, cap: int = 9,
                       statusCallback: Optional[StatusCallback] = None
                       ) -> Optional[SuperStrongWitness]:
    """
    Search trees by increasing size for a path set S with a_{F,S} different
    for /p/ and /q/. Since the at-least counts determine the exact ones,
    we first look for differing at-least counts and then for a superset of
    S on which the exact counts differ.
    """
    if p.k != q.k:
        raise HypothesisError("The patterns have different lengths.")
    posetCap = max(consts.POSET_CAP, cap)
    for n in range(p.k, cap + 1):
        if statusCallback is not None:
            statusCallback(f"Searching trees on {n} vertices")
        for shape in rootedShapes(n):
            F = shapeToForest(shape)
            allPaths = consecutivePaths(F, p.k)
            for r in range(len(allPaths) + 1):
                for S in combinations(allPaths, r):
                    if (_atLeastCount(F, S, p, posetCap)
                            == _atLeastCount(F, S, q, posetCap)):
                        continue
                    rest = [path for path in allPaths if path not in S]
                    for t in range(len(rest) + 1):
                        for extra in combinations(rest, t):
                            T = S + extra
                            a = superStrongCounts(F, T, p, cap).exact
                            b = superStrongCounts(F, T, q, cap).exact
                            if a != b:
                                return SuperStrongWitness(F, tuple(T), (a, b))
                    assert False, "Differing at-least counts imply differing exact counts"
    return None
