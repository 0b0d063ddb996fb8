"""
consts.py - caps, defaults and reference tables
"""
# Copyright (c) 2024 the fwilf developers

from fractions import Fraction

# Largest n for exhaustive forest enumeration without allowLarge.
N_MAX = 9

# Single-path (permutation) avoidance enumerates n! sequences.
PATH_N_MAX = 12

# Clusters of a length-k pattern are enumerated up to size 2k + CLUSTER_EXTRA.
CLUSTER_EXTRA = 6

# Down-set DP over bitmasks needs 2^POSET_CAP memo entries in the worst case.
POSET_CAP = 24

# Super-strong counts label every vertex of the unlabeled forest.
SUPER_STRONG_CAP = 10

# Certified bisection stops once the bracket is narrower than this.
BOUND_TOLERANCE = Fraction(1, 10**6)
BOUND_START_ORDER = 32
BOUND_MAX_ORDER = 4096

# T is considered to have blown up once it exceeds this value.
ODE_BLOWUP = 50.0
ODE_TOLERANCES = (1e-10, 1e-12)

SERIES_CAP = 30
INGEST_CHECK_N = 7

CLASSICAL = 'classical'
CONSECUTIVE = 'consecutive'
instanceKinds = (CLASSICAL, CONSECUTIVE)

ENUMERATED = 'enumerated'
INGESTED = 'ingested'
provenances = (ENUMERATED, INGESTED)

TOOL_NAME = 'fwtool'
SEQUENCE_HEADER = '#forestseq v1'

# Published lower bounds at the largest truncation computed, next to the
# conjectured value (approximate, or an upper estimate where marked).
# Keyed by the pattern set text.
KNOWN_LIMIT_BOUNDS = {
    '123': {'n': 350, 'lowerBound': 0.6766, 'conjectured': 0.6801,
            'estimate': 'approx'},
    '132': {'n': 350, 'lowerBound': 0.6766, 'conjectured': 0.6801,
            'estimate': 'approx'},
    '213': {'n': 2500, 'lowerBound': 0.65493, 'conjectured': 0.65521,
            'estimate': 'approx'},
    '123,213': {'n': 1700, 'lowerBound': 0.555617, 'conjectured': 0.555843,
                'estimate': 'approx'},
    '132,213': {'n': 1700, 'lowerBound': 0.555617, 'conjectured': 0.555843,
                'estimate': 'approx'},
    '123,231': {'n': 800, 'lowerBound': 0.5402, 'conjectured': 0.5530,
                'estimate': 'approx'},
    '132,231': {'n': 1000, 'lowerBound': 0.58145, 'conjectured': 0.58421,
                'estimate': 'upper'},
    '213,231': {'n': 2500, 'lowerBound': 0.557725, 'conjectured': 0.557864,
                'estimate': 'approx'},
    '123,132,213': {'n': 1650, 'lowerBound': 0.51781, 'conjectured': 0.51939,
                    'estimate': 'upper'},
    '123,132,231': {'n': 2500, 'lowerBound': 0.53057, 'conjectured': 0.53169,
                    'estimate': 'upper'},
    '132,213,231': {'n': 2500, 'lowerBound': 0.48241, 'conjectured': 0.48317,
                    'estimate': 'upper'},
    '123,2413,3412': {'n': 1800, 'lowerBound': 0.62765, 'conjectured': 0.62939,
                      'estimate': 'upper'},
}

# Trees with every leaf at the pattern depth, for primitive structure checks.
PRIMITIVE_TREE_CAP = 10
