"""
bijections.py - shuffles, the maps alpha/beta, P1/P2 forests and the
rank-recursive bijection f_pi

Every map here only permutes labels. Internally the maps are computed as
relabelings {old label: new label} so that callers can follow a vertex
through the map (its old label is its identity).
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from collections import defaultdict
import random
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from fwilf import consts
from fwilf.forests import Forest, PatternPlan, avoids, enumerateForests
from fwilf.patterns import Pattern, PatternSet, parsePattern
from fwilf.utils import orderPreservingMap

Relabeling = Dict[int, int]


class TopDownMinimumError(Exception):
    "Shuffles and antishuffles are only defined away from top-down minima."
    def __init__(self, v: int) -> None:
        super().__init__()
        self.vertex = v
        self.text = f"shuffle undefined at top-down minimum (vertex {v})"

    def __str__(self):
        return self.text


class PreconditionError(Exception):
    "A map was applied to a forest outside its domain."
    def __init__(self, pattern: Pattern, text: Optional[str] = None) -> None:
        super().__init__()
        self.pattern = pattern
        self.text = text or (f"input does not avoid required pattern {pattern}")

    def __str__(self):
        return self.text


#### Top-down minima ####
def topDownMinima(F: Forest) -> FrozenSet[int]:
    """
    Labels v such that L(u) >= L(v) for every ancestor u.

    >>> sorted(topDownMinima(Forest.path([3, 2, 1])))
    [1, 2, 3]
    """
    return frozenset(_tdmUnder(F, {v: v for v in F.labels}))


def _tdmUnder(F: Forest, lab: Dict[int, int]) -> set:
    "Top-down minima (as vertices) of the structure of /F/ under labels /lab/."
    result = set()
    stack: List[Tuple[int, Optional[int]]] = [(r, None) for r in F.roots]
    while stack:
        v, best = stack.pop()
        if best is None or lab[v] < best:
            result.add(v)
            best = lab[v]
        stack.extend((c, best) for c in F.children(v))
    return result


#### Shuffles ####
def _shuffleStep(F: Forest, lab: Dict[int, int], v: int, anti: bool) -> None:
    "Shuffle or antishuffle vertex /v/ of /F/ in the working labeling /lab/."
    ancestorLabels = [lab[a] for a in F.ancestors(v)]
    if not ancestorLabels or lab[v] < min(ancestorLabels):
        raise TopDownMinimumError(v)
    subtree = F.descendants(v)
    labels = [lab[w] for w in subtree]
    if anti:
        # the lowest top-down-minimum ancestor carries the least ancestor label
        floor = min(ancestorLabels)
        top = min(x for x in labels if x > floor)
    else:
        top = max(labels)
    strict = subtree[1:]
    rest = [x for x in labels if x != top]
    remap = orderPreservingMap((lab[w] for w in strict), rest)
    for w in strict:
        lab[w] = remap[lab[w]]
    lab[v] = top


def _relabelingFrom(lab: Dict[int, int]) -> Relabeling:
    return {v: x for v, x in lab.items() if v != x}


def shuffle(F: Forest, v: int) -> Forest:
    "Give /v/ the largest label in its subtree, keeping the rest in order."
    lab = {w: w for w in F.labels}
    _shuffleStep(F, lab, v, anti=False)
    return F.relabeled(_relabelingFrom(lab))


def antishuffle(F: Forest, v: int) -> Forest:
    """
    Give /v/ the least label in its subtree above the label of its lowest
    top-down-minimum ancestor, keeping the rest in order.
    """
    lab = {w: w for w in F.labels}
    _shuffleStep(F, lab, v, anti=True)
    return F.relabeled(_relabelingFrom(lab))


def _depthOrder(F: Forest, vertices, deepestFirst: bool,
                rng: Optional[random.Random]) -> List[int]:
    byDepth: Dict[int, List[int]] = defaultdict(list)
    for v in sorted(vertices):
        byDepth[F.depth(v)].append(v)
    order = []
    for dep in sorted(byDepth, reverse=deepestFirst):
        group = byDepth[dep]
        if rng is not None:
            rng.shuffle(group)
        order.extend(group)
    return order


def _sweep(F: Forest, anti: bool, rng: Optional[random.Random]) -> Relabeling:
    lab = {w: w for w in F.labels}
    nonTdm = set(F.labels) - _tdmUnder(F, lab)
    for v in _depthOrder(F, nonTdm, deepestFirst=not anti, rng=rng):
        _shuffleStep(F, lab, v, anti)
    return _relabelingFrom(lab)


def alphaRelabeling(F: Forest, rng: Optional[random.Random] = None) -> Relabeling:
    "Shuffle every non-TDM vertex, deepest first."
    return _sweep(F, anti=False, rng=rng)


def betaRelabeling(F: Forest, rng: Optional[random.Random] = None) -> Relabeling:
    "Antishuffle every non-TDM vertex, shallowest first."
    return _sweep(F, anti=True, rng=rng)


_P123 = parsePattern('123')
_P132 = parsePattern('132')
_P213 = parsePattern('213')


def alpha(F: Forest, rng: Optional[random.Random] = None, check: bool = True) -> Forest:
    "Map a 132-avoiding forest to a 123-avoiding forest."
    if check and not avoids(F, PatternSet([_P132]), consts.CLASSICAL):
        raise PreconditionError(_P132)
    return F.relabeled(alphaRelabeling(F, rng))


def beta(F: Forest, rng: Optional[random.Random] = None, check: bool = True) -> Forest:
    "Map a 123-avoiding forest to a 132-avoiding forest; inverse of alpha."
    if check and not avoids(F, PatternSet([_P123]), consts.CLASSICAL):
        raise PreconditionError(_P123)
    return F.relabeled(betaRelabeling(F, rng))


#### P1 and P2 forests ####
def ceilings(F: Forest) -> Dict[int, int]:
    """
    Map each special vertex to its ceiling.

    Along a root path the vertices fall into alternating blocks of
    top-down minima and non-minima, starting with minima. A non-minimum in
    the i-th non-minimum block (i >= 2) is special, and its ceiling is the
    last top-down minimum of the (i-1)-th minimum block.
    """
    tdm = topDownMinima(F)
    result = {}
    # (vertex, in a non-TDM block, last TDM seen, ceiling for current block,
    #  last TDM before the current non-TDM block)
    stack: List[Tuple[int, bool, int, Optional[int], Optional[int]]] = [
        (r, False, 0, None, None) for r in F.roots]
    while stack:
        v, inN, lastTdm, ceil, blockStart = stack.pop()
        if v in tdm:
            inN, lastTdm = False, v
        else:
            if not inN:
                ceil, blockStart = blockStart, lastTdm
                inN = True
            if ceil is not None:
                result[v] = ceil
        stack.extend((c, inN, lastTdm, ceil, blockStart) for c in F.children(v))
    return result


def isP1(F: Forest) -> bool:
    "Every special vertex has a label below its ceiling's."
    return all(ceil > v for v, ceil in ceilings(F).items())


def segments(F: Forest) -> Dict[int, FrozenSet[int]]:
    "For each non-TDM vertex, its TDM ancestors with smaller labels."
    tdm = topDownMinima(F)
    return {v: frozenset(u for u in F.ancestors(v) if u in tdm and u < v)
            for v in F.labels if v not in tdm}


def isP2(F: Forest) -> bool:
    """
    Comparable non-TDM vertices whose segments intersect have the same
    segment top. Top-down minima decrease along a path, so the top of a
    segment is its greatest label.

    >>> isP2(Forest.path([8, 10, 6, 4, 7, 3, 9, 2, 5, 1]))
    False
    """
    segs = segments(F)
    for v, seg in segs.items():
        for u in F.ancestors(v):
            if u in segs and segs[u] & seg and max(segs[u]) != max(seg):
                return False
    return True


def pathLemmaCounterexample(base: str, other: str, predicate: Callable[[Forest], bool],
                            n: int) -> Optional[Forest]:
    """
    Among the forests on [n] avoiding /base/, find one where avoiding
    /other/ and satisfying /predicate/ disagree. None if there is none.
    """
    baseSet = PatternSet.of(base)
    otherSet = PatternSet.of(other)
    for F in enumerateForests(n):
        if avoids(F, baseSet) and avoids(F, otherSet) != predicate(F):
            return F
    return None


PATH_LEMMAS = (
    ('123', '2413', isP1),
    ('132', '2314', isP1),
    ('123', '3142', isP2),
    ('132', '3124', isP2),
)


#### Ranks and f_pi ####
def rankTable(F: Forest, p: Pattern) -> Dict[int, int]:
    """
    Rank of every vertex: the greatest i such that the path from the root
    of its tree contains pi(1)...pi(a_i), a_i the checkpoints of /p/.
    """
    cps = p.checkpoints()
    # a one-letter prefix occurs in every root path
    plans = [PatternPlan(p.slice(1, a)) if a > 1 else None for a in cps]
    ranks = {}
    for v in F.labels:
        path = F.rootPath(v)
        r = 0
        for i in range(len(plans), 0, -1):
            plan = plans[i - 1]
            if plan is None or plan.occursIn(path):
                r = i
                break
        ranks[v] = r
    return ranks


def largeTreeSplit(T: Forest) -> Tuple[Forest, Forest]:
    """
    Split a tree into its large tree (labels at least the root's) and its
    small forest (the rest).
    """
    root = T.roots[0]
    large = [v for v in T.labels if v >= root]
    small = [v for v in T.labels if v < root]
    return T.induced(large), T.induced(small)


def smallSubforests(T: Forest) -> Dict[int, Forest]:
    "For each large-tree vertex, the small vertices whose lowest large ancestor it is."
    root = T.roots[0]
    groups: Dict[int, List[int]] = defaultdict(list)
    for v in T.labels:
        if v < root:
            owner = next(a for a in T.ancestors(v) if a >= root)
            groups[owner].append(v)
    return {v: T.induced(vs) for v, vs in groups.items()}


def _fpiForest(F: Forest, p: Pattern, inverse: bool) -> Relabeling:
    result: Relabeling = {}
    for tree in F.components():
        result.update(_fpiTree(tree, p, inverse))
    return result


def _fpiTree(T: Forest, p: Pattern, inverse: bool) -> Relabeling:
    if T.n < 3:
        return {}
    if p == _P123:
        return alphaRelabeling(T) if inverse else betaRelabeling(T)

    root = T.roots[0]
    rootIsLeast = root == min(T.labels)
    if rootIsLeast:
        below = T.induced(v for v in T.labels if v != root)
        sigma = p.slice(2, p.k) if p.startsWithOne() else p
        return _fpiForest(below, sigma, inverse)

    large, small = largeTreeSplit(T)
    if p.startsWithOne():
        result = _fpiTree(large, p, inverse)
        result.update(_fpiForest(small, p, inverse))
        return result

    ranks = rankTable(T, p)
    cps = (0,) + p.checkpoints()
    result = _fpiTree(large, p, inverse)
    for v, sub in smallSubforests(T).items():
        sigma = p.slice(cps[ranks[v]] + 1, p.k)
        result.update(_fpiForest(sub, sigma, inverse))
    return result


def fPiRelabeling(F: Forest, p: Pattern, inverse: bool = False) -> Relabeling:
    return _fpiForest(F, p, inverse)


def fPi(F: Forest, p: Pattern, inverse: bool = False, check: bool = True) -> Forest:
    """
    The structure- and rank-preserving bijection from {213, p}-avoiding
    forests to {213, p~}-avoiding forests (p~ = p twisted), or its inverse.
    The last three values of /p/ must be consecutive increasing integers.
    """
    if not p.hasTwistTail():
        raise PreconditionError(p, f"pattern {p} does not end in three consecutive "
                                   f"increasing values")
    if check:
        domain = p.twist() if inverse else p
        for q in (_P213, domain):
            if not avoids(F, PatternSet([q]), consts.CLASSICAL):
                raise PreconditionError(q)
    return F.relabeled(_fpiForest(F, p, inverse))


#### Exhaustive verification ####
def _mapsFor(name: str, p: Optional[Pattern]):
    if name == 'alpha':
        return (PatternSet([_P132]), PatternSet([_P123]),
                alphaRelabeling, betaRelabeling)
    if name == 'beta':
        return (PatternSet([_P123]), PatternSet([_P132]),
                betaRelabeling, alphaRelabeling)
    if name == 'fpi':
        assert p is not None, "f_pi needs a pattern"
        return (PatternSet([_P213, p]), PatternSet([_P213, p.twist()]),
                lambda F: fPiRelabeling(F, p, False),
                lambda F: fPiRelabeling(F, p, True))
    raise ValueError(f"Unknown map '{name}'")


def verifyBijection(name: str, n: int, p: Optional[Pattern] = None) -> dict:
    """
    Apply a map to every forest on [n] in its domain and check that the
    image lies in the target class, that only labels move, that the
    top-down minima are kept, that the inverse map undoes it, and that the
    map is injective. f_pi is additionally checked for rank preservation.
    """
    source, target, forward, backward = _mapsFor(name, p)
    domainSize = 0
    images = set()
    failure = None
    for F in enumerateForests(n):
        if not avoids(F, source):
            continue
        domainSize += 1
        relab = forward(F)
        G = F.relabeled(relab)
        images.add(G)
        problem = None
        if not avoids(G, target):
            problem = 'image outside target class'
        elif not set(relab.values()) == set(relab) <= set(F.labels):
            problem = 'not a permutation of the labels'
        elif name != 'fpi' and {relab.get(v, v) for v in topDownMinima(F)} \
                != set(topDownMinima(G)):
            problem = 'top-down minima changed'
        elif G.relabeled(backward(G)) != F:
            problem = 'inverse does not undo the map'
        elif name == 'fpi' and p is not None:
            before = rankTable(F, p)
            after = rankTable(G, p)
            if any(after[relab.get(v, v)] != r for v, r in before.items()):
                problem = 'ranks changed'
        if problem and failure is None:
            failure = {'forest': str(F), 'image': str(G), 'problem': problem}
    targetSize = sum(1 for F in enumerateForests(n) if avoids(F, target))
    return {
        'map': name,
        'pattern': str(p) if p is not None else None,
        'n': n,
        'domainSize': domainSize,
        'targetSize': targetSize,
        'injective': len(images) == domainSize,
        'failure': failure,
        'ok': failure is None and len(images) == domainSize == targetSize,
    }
