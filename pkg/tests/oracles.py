"""Brute-force reference computations.

Nothing here imports the decoder, the pattern streams or the kernels; these
are the independent sides of the cross-checks.
"""

import itertools
import math

import numpy as np

HAMMING74_H = np.array(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ],
    dtype=np.uint8,
)


def all_words(n):
    """Every n-bit word as rows of a (2**n, n) uint8 array; row i has bit j = (i >> j) & 1."""
    idx = np.arange(2**n, dtype=np.int64)[:, None]
    return ((idx >> np.arange(n)) & 1).astype(np.uint8)


def null_space_words(H):
    """All words with zero syndrome, by scanning the whole space."""
    words = all_words(H.shape[1])
    syn = words.astype(np.int64) @ H.T.astype(np.int64) % 2
    return words[~syn.any(axis=1)]


def codewords_from_generator(G):
    k = G.shape[0]
    return all_words(k).astype(np.int64) @ G.astype(np.int64) % 2


def subsets_sorted(n, key):
    subs = [c for m in range(n + 1) for c in itertools.combinations(range(1, n + 1), m)]
    return sorted(subs, key=key)


def logistic_key(c):
    return (sum(c), len(c), c)


def hamming_key(c):
    return (len(c), c)


def partitions_distinct(total, max_part):
    """Sets of distinct positive integers <= max_part summing to total."""
    return [
        c
        for m in range(1, max_part + 1)
        for c in itertools.combinations(range(1, max_part + 1), m)
        if sum(c) == total
    ]


def rank_log_likelihood(word, y, flip_prob_by_channel):
    """log P(y | word) for independent flips with the given per-position probabilities."""
    word = np.asarray(word)
    y = np.asarray(y)
    p = np.asarray(flip_prob_by_channel, dtype=np.float64)
    differ = word != y
    return float(np.sum(np.where(differ, np.log(p), np.log1p(-p))))


def max_log_likelihood(codewords, y, flip_prob_by_channel):
    p = np.asarray(flip_prob_by_channel, dtype=np.float64)
    differ = codewords != np.asarray(y)[None, :]
    ll = np.where(differ, np.log(p)[None, :], np.log1p(-p)[None, :]).sum(axis=1)
    return float(ll.max())


def gaussian_tail(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))
