"""
exporting.py - JSON and CSV reports

Reports are plain dicts, written with sorted keys so that identical runs
produce identical bytes.
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

import csv
from fractions import Fraction
import json
from typing import Any, Dict, Iterable, Mapping, Optional, TextIO

import fwilf
from fwilf import consts
from fwilf.patterns import PatternSet
from fwilf.stats import Distribution
from fwilf.utils import fractionText


def _plain(value: Any) -> Any:
    "Convert values json cannot serialize: Fractions and big ints become text."
    if isinstance(value, Fraction):
        return fractionText(value)
    if isinstance(value, bool):
        return value
    if isinstance(value, int) and abs(value) >= 2 ** 53:
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    return value


def report(command: str, payload: Mapping[str, Any],
           S: Optional[PatternSet] = None, kind: Optional[str] = None,
           caps: Optional[Mapping[str, Any]] = None,
           provenance: Optional[Any] = None) -> Dict[str, Any]:
    "Wrap a command's result with the metadata every report carries."
    return {
        'tool': consts.TOOL_NAME,
        'version': fwilf.__version__,
        'command': command,
        'patternSet': None if S is None else str(S),
        'kind': kind,
        'caps': dict(caps or {}),
        'provenance': provenance,
        'result': _plain(payload),
    }


def writeJson(rep: Mapping[str, Any], stream: TextIO) -> None:
    json.dump(_plain(rep), stream, sort_keys=True, indent=2)
    stream.write('\n')


def writeCsv(distributions: Iterable[Distribution], stream: TextIO,
             rep: Optional[Mapping[str, Any]] = None) -> None:
    """
    One row per (n, statistic, value) with its count, after a '#' line
    giving the tool, pattern set and kind.
    """
    dists = list(distributions)
    meta = [f"{consts.TOOL_NAME} {fwilf.__version__}"]
    if dists:
        meta.append(f"set={dists[0].S if len(dists[0].S) else '{}'}")
        meta.append(f"kind={dists[0].kind}")
    if rep is not None and rep.get('caps'):
        meta.extend(f"{k}={v}" for k, v in sorted(rep['caps'].items()))
    stream.write('# ' + ' '.join(meta) + '\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(('n', 'statistic', 'value', 'count'))
    for d in dists:
        writer.writerows(d.rows())
