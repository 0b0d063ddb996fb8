"""
sequences.py - tree and forest counting sequences, their file format and
validation against enumeration
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from fwilf import consts
from fwilf import database
from fwilf.forests import checkKind, countAvoidersRange
from fwilf.patterns import InvalidPatternError, PatternSet, parsePatternSet
from fwilf.utils import StatusCallback


class SequenceFormatError(Exception):
    "A sequence file does not follow the documented format."
    def __init__(self, text: str = "Malformed sequence file.",
                 lineNo: Optional[int] = None) -> None:
        super().__init__()
        self.lineNo = lineNo
        self.text = f"line {lineNo}: {text}" if lineNo is not None else text

    def __str__(self):
        return self.text


class SequenceMismatchError(Exception):
    "A term of a sequence is impossible or disagrees with enumeration."
    def __init__(self, series: str, n: int, found: int,
                 expected: Optional[int] = None, reason: str = '') -> None:
        super().__init__()
        self.series = series
        self.n = n
        self.found = found
        self.expected = expected
        if expected is not None:
            self.text = (f"{series}_{n} = {found} disagrees with enumeration, "
                         f"which gives {expected}.")
        else:
            self.text = f"{series}_{n} = {found} is invalid: {reason}"

    def __str__(self):
        return self.text


class SequencePair:
    """
    The tree counts t_1..t_M and forest counts f_0..f_M' of the forests
    avoiding /S/, with where they came from (enumerated or ingested).
    """
    __slots__ = ('S', 'kind', 't', 'f', 'source')

    def __init__(self, S: PatternSet, kind: str, t: Sequence[int],
                 f: Sequence[int], source: str = consts.ENUMERATED) -> None:
        checkKind(kind)
        assert source in consts.provenances, f"Unknown provenance '{source}'"
        self.S = S
        self.kind = kind
        self.t: Tuple[int, ...] = tuple(t)
        self.f: Tuple[int, ...] = tuple(f)
        self.source = source

    @classmethod
    def enumerate(cls, S: PatternSet, kind: str, nMax: int, jobs: int = 1,
                  cap: int = consts.N_MAX, allowLarge: bool = False,
                  statusCallback: Optional[StatusCallback] = None) -> SequencePair:
        "Count avoiders exhaustively for every n up to /nMax/."
        t, f = countAvoidersRange(S, kind, nMax, jobs, cap, allowLarge,
                                  statusCallback)
        return cls(S, kind, t, f, consts.ENUMERATED)

    def __eq__(self, other):
        return (isinstance(other, SequencePair)
                and (self.S, self.kind, self.t, self.f, self.source)
                == (other.S, other.kind, other.t, other.f, other.source))

    def __repr__(self):
        return (f"SequencePair(S='{self.S}', kind={self.kind}, "
                f"t_1..t_{self.tMax}, f_0..f_{self.fMax}, {self.source})")

    @property
    def tMax(self) -> int:
        return len(self.t)

    @property
    def fMax(self) -> int:
        return len(self.f) - 1

    def tAt(self, k: int) -> int:
        assert 1 <= k <= self.tMax, f"t_{k} is not available"
        return self.t[k - 1]

    def fAt(self, k: int) -> int:
        assert 0 <= k <= self.fMax, f"f_{k} is not available"
        return self.f[k]

    @property
    def level(self) -> int:
        "Largest n for which both t_{n+1} and f_n are known."
        return min(self.tMax - 1, self.fMax)

    def truncated(self, n: int) -> SequencePair:
        "Keep t_1..t_n and f_0..f_n."
        return SequencePair(self.S, self.kind, self.t[:n], self.f[:n + 1],
                            self.source)

    def provenance(self) -> Dict[str, str]:
        return {'t': self.source, 'f': self.source}

    #### Store ####
    def save(self) -> None:
        "Write every term to the global sequence store."
        conn = database.d()
        setText = str(self.S)
        conn.storeTerms(setText, self.kind, 't', enumerate(self.t, 1), self.source)
        conn.storeTerms(setText, self.kind, 'f', enumerate(self.f), self.source)

    @classmethod
    def load(cls, S: PatternSet, kind: str) -> Optional[SequencePair]:
        """
        Read the longest gap-free prefix of stored terms for (S, kind) from
        the global store, or None if nothing usable is stored. The pair is
        marked ingested if any term it uses was ingested.
        """
        conn = database.d()
        setText = str(S)
        t, tSources = _prefix(conn.fetchTerms(setText, kind, 't'), 1)
        f, fSources = _prefix(conn.fetchTerms(setText, kind, 'f'), 0)
        if not f:
            return None
        sources = tSources | fSources
        source = consts.INGESTED if consts.INGESTED in sources else consts.ENUMERATED
        return cls(S, kind, t, f, source)


def _prefix(rows: Iterable[Tuple[int, int, str]], start: int
            ) -> Tuple[List[int], set]:
    values: List[int] = []
    sources = set()
    for n, value, prov in rows:
        if n != start + len(values):
            break
        values.append(value)
        sources.add(prov)
    return values, sources


#### Sequence files ####
def _parseHeader(line: str) -> Tuple[PatternSet, str]:
    if not line.startswith(consts.SEQUENCE_HEADER):
        raise SequenceFormatError(
            f"The first line must start with '{consts.SEQUENCE_HEADER}'.", 1)
    fields = {}
    for token in line[len(consts.SEQUENCE_HEADER):].split():
        key, sep, value = token.partition('=')
        if not sep:
            raise SequenceFormatError(f"Header field '{token}' has no '='.", 1)
        fields[key] = value
    if 'set' not in fields or 'kind' not in fields:
        raise SequenceFormatError("The header needs both set= and kind=.", 1)
    if fields['kind'] not in consts.instanceKinds:
        raise SequenceFormatError(f"Unknown instance kind '{fields['kind']}'.", 1)
    try:
        S = parsePatternSet(fields['set'])
    except InvalidPatternError as e:
        raise SequenceFormatError(str(e), 1) from e
    return S, fields['kind']


def _collect(terms: Dict[int, int], start: int, series: str) -> List[int]:
    if not terms:
        return []
    top = max(terms)
    missing = [n for n in range(start, top + 1) if n not in terms]
    if missing:
        raise SequenceFormatError(f"Missing term {series}_{missing[0]}.")
    return [terms[n] for n in range(start, top + 1)]


def parseSequenceFile(stream: TextIO,
                      source: str = consts.INGESTED) -> SequencePair:
    """
    Read a sequence file: a header line

        #forestseq v1 set=<patterns> kind=<classical|consecutive>

    and then one line per term, 't <n> <value>' or 'f <n> <value>'. Blank
    lines and further lines starting with '#' are ignored.
    """
    lines = stream.read().splitlines()
    if not lines:
        raise SequenceFormatError("The file is empty.")
    S, kind = _parseHeader(lines[0].strip())
    found: Dict[str, Dict[int, int]] = {'t': {}, 'f': {}}
    for lineNo, line in enumerate(lines[1:], 2):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in found:
            raise SequenceFormatError(f"Expected 't|f <n> <value>', got '{line}'.",
                                      lineNo)
        series, nText, valueText = parts
        try:
            n, value = int(nText), int(valueText)
        except ValueError as e:
            raise SequenceFormatError(f"Non-integer field in '{line}'.", lineNo) from e
        if n < (1 if series == 't' else 0) or value < 0:
            raise SequenceFormatError(f"Term out of range in '{line}'.", lineNo)
        if n in found[series]:
            raise SequenceFormatError(f"Duplicate term {series}_{n}.", lineNo)
        found[series][n] = value
    t = _collect(found['t'], 1, 't')
    f = _collect(found['f'], 0, 'f')
    if not f:
        raise SequenceFormatError("The file has no forest counts.")
    return SequencePair(S, kind, t, f, source)


def formatSequenceFile(pair: SequencePair, stream: TextIO) -> None:
    "Write /pair/ in the format parseSequenceFile reads."
    setText = str(pair.S) if len(pair.S) else '{}'
    stream.write(f"{consts.SEQUENCE_HEADER} set={setText} kind={pair.kind}\n")
    for n, value in enumerate(pair.t, 1):
        stream.write(f"t {n} {value}\n")
    for n, value in enumerate(pair.f):
        stream.write(f"f {n} {value}\n")


#### Validation ####
def checkHypothesis(pair: SequencePair) -> Optional[int]:
    "The first k with t_{k+1} < f_k, or None."
    for k in range(pair.level + 1):
        if pair.tAt(k + 1) < pair.fAt(k):
            return k
    return None


def validateSequence(pair: SequencePair, checkN: int = consts.INGEST_CHECK_N,
                     jobs: int = 1,
                     statusCallback: Optional[StatusCallback] = None) -> bool:
    """
    Check /pair/ and return whether S is uncovered (so that the limit
    pipeline may use it). Raises SequenceMismatchError naming the first
    bad term: f_0 must be 1, t_1 must be 1, t_{k+1} >= f_k must hold when S
    is uncovered, and every term with n <= /checkN/ must agree with
    exhaustive enumeration.
    """
    if pair.fAt(0) != 1:
        raise SequenceMismatchError('f', 0, pair.fAt(0), reason="f_0 must be 1.")
    if pair.tMax >= 1 and pair.tAt(1) != 1:
        raise SequenceMismatchError('t', 1, pair.tAt(1), reason="t_1 must be 1.")
    uncovered = not pair.S.isCovered()
    if uncovered:
        bad = checkHypothesis(pair)
        if bad is not None:
            raise SequenceMismatchError(
                't', bad + 1, pair.tAt(bad + 1),
                reason=f"below f_{bad} = {pair.fAt(bad)} for an uncovered set.")

    nCheck = min(checkN, max(pair.tMax, pair.fMax))
    if statusCallback:
        statusCallback(f"Checking terms up to n = {nCheck} by enumeration...")
    tTrue, fTrue = countAvoidersRange(pair.S, pair.kind, nCheck, jobs,
                                      statusCallback=statusCallback)
    for n in range(1, nCheck + 1):
        if n <= pair.fMax and pair.fAt(n) != fTrue[n]:
            raise SequenceMismatchError('f', n, pair.fAt(n), fTrue[n])
        if n <= pair.tMax and pair.tAt(n) != tTrue[n - 1]:
            raise SequenceMismatchError('t', n, pair.tAt(n), tTrue[n - 1])
    return uncovered


def ingestSequence(stream: TextIO, checkN: int = consts.INGEST_CHECK_N,
                   jobs: int = 1,
                   statusCallback: Optional[StatusCallback] = None
                   ) -> Tuple[SequencePair, bool]:
    """
    Parse and validate a sequence file. Return the pair and whether the
    uncovered hypothesis t_{k+1} >= f_k applies to it.
    """
    pair = parseSequenceFile(stream)
    uncovered = validateSequence(pair, checkN, jobs, statusCallback)
    return pair, uncovered
