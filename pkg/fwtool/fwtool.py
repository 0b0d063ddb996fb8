"""
fwtool.py - command-line access to the fwilf library
"""
# Copyright (c) 2024 the fwilf developers

from __future__ import annotations

import argparse
from fractions import Fraction
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from fwilf import consts
from fwilf import asymptotics
from fwilf import bijections
from fwilf import clusters
from fwilf import database
from fwilf import exporting
from fwilf import forests
from fwilf import posets
from fwilf import sequences
from fwilf import stats
from fwilf.patterns import (InvalidPatternError, PatternSet, PatternTooShortError,
                            parsePattern, parsePatternSet)
from fwilf.series import SeriesDomainError
from fwilf.utils import CapExceededError, StatusCallback

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUTED = 2

# Exceptions that mean bad input or an unavailable result, not a bug.
USER_ERRORS = (
    CapExceededError, InvalidPatternError, PatternTooShortError,
    forests.InvalidForestError, forests.InvalidKindError,
    bijections.TopDownMinimumError, bijections.PreconditionError,
    posets.PosetParameterError, clusters.NotGroundedError,
    clusters.HypothesisError, asymptotics.HypothesisUnavailableError,
    sequences.SequenceFormatError, sequences.SequenceMismatchError,
    database.StoreVersionError, SeriesDomainError, OSError, ValueError,
)


class UsageError(Exception):
    "The command line is malformed."
    def __init__(self, text: str) -> None:
        super().__init__()
        self.text = text

    def __str__(self):
        return self.text


class Parser(argparse.ArgumentParser):
    "An ArgumentParser that raises instead of exiting with status 2."
    def error(self, message):
        raise UsageError(message)


class Outcome:
    "What a subcommand produced: a report, optional CSV rows, and a status."
    def __init__(self, rep: Dict[str, Any], status: int = EXIT_OK,
                 distributions: Optional[List[stats.Distribution]] = None) -> None:
        self.report = rep
        self.status = status
        self.distributions = distributions


#### Helpers ####
def _caps(args) -> Dict[str, Any]:
    return {
        'nMax': args.cap,
        'clusterCap': args.cluster_cap,
        'posetCap': args.poset_cap,
        'allowLarge': args.allow_large,
    }


def _verdict(v: clusters.EquivVerdict) -> Dict[str, Any]:
    return {'consistent': v.consistent, 'nMax': v.nMax,
            'witness': v.witness, 'detail': v.detail}


def _countOptions(args) -> Dict[str, Any]:
    return {'jobs': args.jobs, 'cap': args.cap, 'allowLarge': args.allow_large,
            'statusCallback': args.status}


def _termsFor(S: PatternSet, kind: str, nMax: int, args) -> sequences.SequencePair:
    """
    Counting sequences up to /nMax/: stored terms where the store has them,
    enumeration otherwise. Enumerated terms are written back to the store.
    """
    if args.store:
        stored = sequences.SequencePair.load(S, kind)
        if stored is not None and stored.tMax >= nMax and stored.fMax >= nMax:
            return stored.truncated(nMax)
    pair = sequences.SequencePair.enumerate(S, kind, nMax, **_countOptions(args))
    if args.store:
        pair.save()
    return pair


#### Subcommands ####
def count(args) -> Outcome:
    S = parsePatternSet(args.set)
    if args.nmax is not None:
        pair = _termsFor(S, args.kind, args.nmax, args)
        payload: Dict[str, Any] = {'t': list(pair.t), 'f': list(pair.f)}
        provenance = pair.provenance()
    else:
        if args.n is None:
            raise UsageError("count needs --n or --nmax.")
        pair = _termsFor(S, args.kind, args.n, args)
        n = args.n
        payload = {'n': n, 'f': pair.fAt(n), 't': pair.tAt(n) if n else 0}
        provenance = pair.provenance()
    return Outcome(exporting.report('count', payload, S, args.kind, _caps(args),
                                    provenance))


def avoid(args) -> Outcome:
    S = parsePatternSet(args.set)
    if args.forest is not None:
        F = forests.parseForest(args.forest)
        payload: Dict[str, Any] = {
            'forest': str(F),
            'avoids': forests.avoids(F, S, args.kind),
            'instances': {str(p): sorted(forests.instances(F, p, args.kind))
                          for p in S},
        }
    else:
        if args.n is None:
            raise UsageError("avoid needs --n or --forest.")
        found = []
        for F in forests.enumerateAvoiders(S, args.kind, args.n, args.cap,
                                           args.allow_large, args.status):
            if args.limit is not None and len(found) >= args.limit:
                break
            found.append(str(F))
        payload = {'n': args.n, 'forests': found}
    return Outcome(exporting.report('avoid', payload, S, args.kind, _caps(args),
                                    consts.ENUMERATED))


def dist(args) -> Outcome:
    p = parsePattern(args.p)
    S = PatternSet([p])
    counts = forests.instanceCountDistribution(p, args.kind, args.n,
                                               **_countOptions(args))
    d = stats.Distribution('instances', args.n, S, args.kind, counts)
    return Outcome(exporting.report('dist', {'n': args.n, 'counts': d.counts},
                                    S, args.kind, _caps(args), consts.ENUMERATED),
                   distributions=[d])


def bij(args) -> Outcome:
    p = parsePattern(args.p) if args.p else None
    if args.verify:
        if args.n is None:
            raise UsageError("bij --verify needs --n.")
        result = bijections.verifyBijection(args.map, args.n, p)
        status = EXIT_OK if result['ok'] else EXIT_REFUTED
        return Outcome(exporting.report('bij', result, None, consts.CLASSICAL,
                                        _caps(args), consts.ENUMERATED), status)
    if args.forest is None:
        raise UsageError("bij needs --forest or --verify.")
    F = forests.parseForest(args.forest)
    if args.map == 'alpha':
        G = bijections.alpha(F)
    elif args.map == 'beta':
        G = bijections.beta(F)
    else:
        if p is None:
            raise UsageError("bij --map fpi needs --p.")
        G = bijections.fPi(F, p, inverse=args.inverse)
    payload = {'map': args.map, 'forest': str(F), 'image': str(G)}
    return Outcome(exporting.report('bij', payload, None, consts.CLASSICAL,
                                    _caps(args), None))


def cluster(args) -> Outcome:
    p = parsePattern(args.p)
    if args.two_cluster is not None:
        payload: Dict[str, Any] = {
            'h': args.two_cluster,
            'r': clusters.twoClusterCount(p, args.two_cluster),
            'n': 2 * p.k - args.two_cluster,
        }
    else:
        if args.naive:
            table = clusters.naiveClusterNumbers(p, args.nmax)
        else:
            table = clusters.clusterNumbers(
                p, args.nmax, args.mmax, args.bound, args.cluster_cap,
                args.allow_large, args.poset_cap, args.status)
        payload = {'nMax': args.nmax, 'bound': args.bound,
                   'table': [{'m': m, 'n': n, 'r': r}
                             for (m, n), r in sorted(table.items())]}
    return Outcome(exporting.report('cluster', payload, PatternSet([p]),
                                    consts.CONSECUTIVE, _caps(args), None))


def equiv(args) -> Outcome:
    mode = args.mode
    if mode == 'wilf':
        S = parsePatternSet(args.set or args.p or '')
        T = parsePatternSet(args.set2 or args.q or '')
        firstDiff, rows = forests.wilfCheck(S, T, args.kind, args.nmax,
                                            **_countOptions(args))
        payload: Dict[str, Any] = {
            'consistent': firstDiff is None, 'nMax': args.nmax,
            'witness': firstDiff,
            'table': [{'n': n, 'left': a, 'right': b} for n, a, b in rows],
        }
        consistent = firstDiff is None
        subject = S.union(T)
    else:
        if not args.p or not args.q:
            raise UsageError(f"equiv --mode {mode} needs --p and --q.")
        p, q = parsePattern(args.p), parsePattern(args.q)
        subject = PatternSet([p, q])
        if mode == 'strong':
            witness = None
            for n in range(1, args.nmax + 1):
                a = forests.instanceCountDistribution(p, args.kind, n, **_countOptions(args))
                b = forests.instanceCountDistribution(q, args.kind, n, **_countOptions(args))
                if a != b:
                    witness = n
                    break
            payload = {'consistent': witness is None, 'nMax': args.nmax,
                       'witness': witness, 'detail': ''}
        elif mode == 'cluster':
            payload = _verdict(clusters.strongEquivCheck(
                p, q, args.nmax, args.cluster_cap, args.allow_large, args.status))
        elif mode == 'pseudo':
            payload = _verdict(clusters.pEquivalenceCheck(
                p, q, args.bound, args.nmax, args.cluster_cap, args.allow_large,
                args.status))
        elif mode == 'primitive':
            payload = _verdict(clusters.primitiveStructureEquivCheck(p, q, args.nmax))
        elif mode == 'grounded':
            rep = clusters.groundedNecessaryConditions(p, q)
            payload = dict(rep._asdict(), consistent=rep.passed)
        else:
            witness = clusters.superStrongWitness(p, q, args.nmax, args.status)
            payload = {'consistent': witness is None, 'nMax': args.nmax,
                       'witness': None if witness is None else {
                           'forest': str(witness.forest),
                           'paths': sorted(witness.paths),
                           'counts': list(witness.counts)}}
        consistent = payload['consistent']
    payload['mode'] = mode
    status = EXIT_OK if consistent else EXIT_REFUTED
    return Outcome(exporting.report('equiv', payload, subject, args.kind,
                                    _caps(args), consts.ENUMERATED), status)


def limit(args) -> Outcome:
    S = parsePatternSet(args.set)
    if args.terms:
        with open(args.terms, encoding='utf-8') as f:
            pair = sequences.parseSequenceFile(f)
        if pair.S != S or pair.kind != args.kind:
            raise UsageError(f"{args.terms} holds terms for {{{pair.S}}} "
                             f"({pair.kind}), not {{{S}}} ({args.kind}).")
        sequences.validateSequence(pair, args.check_n, args.jobs, args.status)
        if args.store:
            pair.save()
    else:
        pair = _termsFor(S, args.kind, args.nmax, args)

    tolerance = Fraction(args.tolerance)
    payload: Dict[str, Any] = {}
    if args.sequence:
        certs = asymptotics.rnSequence(pair, args.level, tolerance,
                                       statusCallback=args.status)
        payload['sequence'] = [c.asDict() for c in certs]
        payload['certificate'] = certs[-1].asDict()
    else:
        cert = asymptotics.lowerBound(S, args.kind, pair, args.level, tolerance,
                                      statusCallback=args.status)
        payload['certificate'] = cert.asDict()
    payload['known'] = asymptotics.knownLimit(S)
    return Outcome(exporting.report('limit', payload, S, args.kind, _caps(args),
                                    pair.provenance()))


def odeLimit(args) -> Outcome:
    est = asymptotics.odeLimit(args.blowup)
    payload = dict(est.asDict(), width=est.width)
    return Outcome(exporting.report('ode-limit', payload,
                                    PatternSet.of('213', '231', '312', '321'),
                                    consts.CLASSICAL, _caps(args), None))


STATISTICS: Dict[str, Callable[..., stats.Distribution]] = {
    'root': stats.rootLabelDistribution,
    'trees': stats.treeCountDistribution,
}


def statsCommand(args) -> Outcome:
    S = parsePatternSet(args.set)
    ns = [args.n] if args.nmax is None else list(range(1, args.nmax + 1))
    if ns == [None]:
        raise UsageError("stats needs --n or --nmax.")
    dists = []
    for n in ns:
        if args.statistic == 'size':
            dists.append(stats.componentSizeProfile(S, args.kind, n, args.size,
                                                    **_countOptions(args)))
        else:
            dists.append(STATISTICS[args.statistic](S, args.kind, n,
                                                    **_countOptions(args)))
    rows = []
    for d in dists:
        entry: Dict[str, Any] = {'n': d.n, 'statistic': d.statistic,
                                 'counts': d.counts}
        if d.total:
            entry['mean'], entry['variance'] = stats.moments(d)
        rows.append(entry)
    return Outcome(exporting.report('stats', {'distributions': rows}, S, args.kind,
                                    _caps(args), consts.ENUMERATED),
                   distributions=dists)


def ingestCheck(args) -> Outcome:
    with open(args.file, encoding='utf-8') as f:
        pair, uncovered = sequences.ingestSequence(f, args.check_n, args.jobs,
                                                   args.status)
    if args.store:
        pair.save()
    payload = {'accepted': True, 'uncoveredHypothesis': uncovered,
               'tMax': pair.tMax, 'fMax': pair.fMax, 'checkedUpTo': args.check_n}
    return Outcome(exporting.report('ingest-check', payload, pair.S, pair.kind,
                                    _caps(args), pair.provenance()))


#### Argument parsing ####
def _addCommon(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--kind', choices=consts.instanceKinds,
                        default=consts.CLASSICAL, help="Instance kind.")
    parser.add_argument('--format', choices=('json', 'csv'), default='json',
                        help="Output format (CSV for stats and dist only).")
    parser.add_argument('--jobs', type=int, default=1,
                        help="Worker processes for enumeration.")
    parser.add_argument('--store', help="SQLite sequence store to read and update.")
    parser.add_argument('--verbose', action='store_true',
                        help="Print progress messages on standard error.")
    parser.add_argument('--cap', type=int, default=consts.N_MAX,
                        help="Largest n for exhaustive enumeration.")
    parser.add_argument('--cluster-cap', type=int, default=None,
                        help="Largest cluster size (default 2k+%i)."
                        % consts.CLUSTER_EXTRA)
    parser.add_argument('--poset-cap', type=int, default=consts.POSET_CAP,
                        help="Largest poset for linear-extension counting.")
    parser.add_argument('--allow-large', action='store_true',
                        help="Go beyond the caps, with a warning.")


def makeParser() -> argparse.ArgumentParser:
    parser = Parser(prog=consts.TOOL_NAME)
    subparsers = parser.add_subparsers(dest='command', parser_class=Parser)

    # count
    parserCount = subparsers.add_parser(
        'count', help="Count forests and trees avoiding a pattern set.")
    parserCount.add_argument('--set', required=True, help="Pattern set, e.g. 123,132.")
    parserCount.add_argument('--n', type=int, help="Number of vertices.")
    parserCount.add_argument('--nmax', type=int, help="Count every n up to this.")
    _addCommon(parserCount)
    parserCount.set_defaults(func=count)

    # avoid
    parserAvoid = subparsers.add_parser(
        'avoid', help="Test one forest, or list the avoiders on [n].")
    parserAvoid.add_argument('--set', required=True)
    parserAvoid.add_argument('--forest', help="Parent list p(1),...,p(n); '-' is empty.")
    parserAvoid.add_argument('--n', type=int)
    parserAvoid.add_argument('--limit', type=int, help="List at most this many.")
    _addCommon(parserAvoid)
    parserAvoid.set_defaults(func=avoid)

    # dist
    parserDist = subparsers.add_parser(
        'dist', help="Numbers of forests on [n] by number of instances.")
    parserDist.add_argument('--p', required=True)
    parserDist.add_argument('--n', type=int, required=True)
    _addCommon(parserDist)
    parserDist.set_defaults(func=dist)

    # bij
    parserBij = subparsers.add_parser('bij', help="Apply or verify a bijection.")
    parserBij.add_argument('--map', choices=('alpha', 'beta', 'fpi'), required=True)
    parserBij.add_argument('--p', help="Pattern for f_pi.")
    parserBij.add_argument('--forest')
    parserBij.add_argument('--inverse', action='store_true')
    parserBij.add_argument('--verify', action='store_true',
                           help="Check the map on every forest on [n].")
    parserBij.add_argument('--n', type=int)
    _addCommon(parserBij)
    parserBij.set_defaults(func=bij)

    # cluster
    parserCluster = subparsers.add_parser(
        'cluster', help="Cluster numbers r_{m,n} of a consecutive pattern.")
    parserCluster.add_argument('--p', required=True)
    parserCluster.add_argument('--nmax', type=int, default=8)
    parserCluster.add_argument('--mmax', type=int)
    parserCluster.add_argument('--bound', type=int, default=1,
                               help="Pseudo cluster truncation bound.")
    parserCluster.add_argument('--naive', action='store_true',
                               help="Scan labeled trees instead of growing clusters.")
    parserCluster.add_argument('--two-cluster', type=int, metavar='H',
                               help="Closed form for 2-clusters sharing H vertices.")
    _addCommon(parserCluster)
    parserCluster.set_defaults(func=cluster)

    # equiv
    parserEquiv = subparsers.add_parser(
        'equiv', help="Test an equivalence; exit status 2 when refuted.")
    parserEquiv.add_argument('--mode', required=True,
                             choices=('wilf', 'strong', 'cluster', 'pseudo',
                                      'primitive', 'grounded', 'super'))
    parserEquiv.add_argument('--p')
    parserEquiv.add_argument('--q')
    parserEquiv.add_argument('--set')
    parserEquiv.add_argument('--set2')
    parserEquiv.add_argument('--nmax', type=int, default=7)
    parserEquiv.add_argument('--bound', type=int, default=1)
    _addCommon(parserEquiv)
    parserEquiv.set_defaults(func=equiv)

    # limit
    parserLimit = subparsers.add_parser(
        'limit', help="Certified lower bound on the forest Stanley-Wilf limit.")
    parserLimit.add_argument('--set', required=True)
    parserLimit.add_argument('--terms', help="Sequence file to use instead of enumeration.")
    parserLimit.add_argument('--nmax', type=int, default=6,
                             help="Enumerate terms up to this n when no file is given.")
    parserLimit.add_argument('--level', type=int, help="Truncation level.")
    parserLimit.add_argument('--sequence', action='store_true',
                             help="Report every level up to --level.")
    parserLimit.add_argument('--tolerance', default=str(consts.BOUND_TOLERANCE))
    parserLimit.add_argument('--check-n', type=int, default=consts.INGEST_CHECK_N)
    _addCommon(parserLimit)
    parserLimit.set_defaults(func=limit)

    # ode-limit
    parserOde = subparsers.add_parser(
        'ode-limit', help="Estimate the limit for {213,231,312,321} from T'=T+e^T.")
    parserOde.add_argument('--blowup', type=float, default=consts.ODE_BLOWUP)
    _addCommon(parserOde)
    parserOde.set_defaults(func=odeLimit)

    # stats
    parserStats = subparsers.add_parser(
        'stats', help="Exact distributions of forest statistics.")
    parserStats.add_argument('--set', required=True)
    parserStats.add_argument('--statistic', choices=('root', 'trees', 'size'),
                             default='trees')
    parserStats.add_argument('--size', type=int, default=1,
                             help="Component size for --statistic size.")
    parserStats.add_argument('--n', type=int)
    parserStats.add_argument('--nmax', type=int)
    _addCommon(parserStats)
    parserStats.set_defaults(func=statsCommand)

    # ingest-check
    parserIngest = subparsers.add_parser(
        'ingest-check', help="Validate a sequence file against enumeration.")
    parserIngest.add_argument('file')
    parserIngest.add_argument('--check-n', type=int, default=consts.INGEST_CHECK_N)
    _addCommon(parserIngest)
    parserIngest.set_defaults(func=ingestCheck)

    return parser


def parseArgs(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return makeParser().parse_args(argv)


def _statusTo(err: TextIO, verbose: bool) -> StatusCallback:
    def status(msg: str) -> None:
        if verbose or msg.startswith("Warning"):
            print(msg, file=err)
    return status


def run(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout,
        err: TextIO = sys.stderr) -> int:
    """
    Run one command and return the exit status: 0 on success, 2 when an
    equivalence was refuted, 1 on any error.
    """
    try:
        args = parseArgs(argv)
        if not getattr(args, 'func', None):
            raise UsageError(f"Type '{consts.TOOL_NAME} --help' for usage.")
        args.status = _statusTo(err, args.verbose)
        if args.store:
            database.openStore(args.store)
        try:
            outcome = args.func(args)
        finally:
            if args.store and database.hasGlobalConnection():
                database.d().close()
                database.uninstallGlobalConnection()
        if args.format == 'csv':
            if outcome.distributions is None:
                raise UsageError(f"CSV output is not available for {args.command}.")
            exporting.writeCsv(outcome.distributions, out, outcome.report)
        else:
            exporting.writeJson(outcome.report, out)
        return outcome.status
    except (UsageError,) + USER_ERRORS as e:
        print(f"{consts.TOOL_NAME}: error: {e}", file=err)
        return EXIT_ERROR


def start() -> None:
    sys.exit(run())
