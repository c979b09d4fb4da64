"""Compiled syndrome-search loops behind the decoders.

Both searches take ``cols`` of shape ``(n, W)``: row ``j`` holds the packed
syndrome of the channel bit with rank ``j + 1``. A pattern hits when the XOR
of its rows equals ``target`` (the syndrome of the hard decisions). Query
order is identical to :class:`orbgrand.patterns.PatternStream`; the
first-hit position and the query count therefore match a sequential run of
the generic loop exactly.

Return value is ``(queries, m)``: on a hit, ``out[:m]`` holds the ascending
rank positions; ``m == -1`` means abandoned at ``budget`` or exhausted.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True, inline="always")
def _is_zero(t, W):
    for w in range(W):
        if t[w] != 0:
            return False
    return True


@njit(cache=True, nogil=True, inline="always")
def _hit2(acc, c1, c2, target, W):
    for w in range(W):
        if acc[w] ^ c1[w] ^ c2[w] != target[w]:
            return False
    return True


@njit(cache=True, nogil=True, inline="always")
def _hit1(acc, c1, target, W):
    for w in range(W):
        if acc[w] ^ c1[w] != target[w]:
            return False
    return True


@njit(cache=True, nogil=True)
def logistic_search(cols, target, budget, out):
    n, W = cols.shape
    queries = 1
    if _is_zero(target, W):
        return queries, 0
    if queries >= budget:
        return queries, -1
    acc = np.zeros((n + 1, W), dtype=np.uint64)
    a = np.zeros(n + 1, dtype=np.int64)
    rem = np.zeros(n + 1, dtype=np.int64)
    zero = np.zeros(W, dtype=np.uint64)
    wmax = n * (n + 1) // 2
    for w in range(1, wmax + 1):
        # single flip
        if w <= n:
            queries += 1
            if _hit1(zero, cols[w - 1], target, W):
                out[0] = w
                return queries, 1
            if queries >= budget:
                return queries, -1
        m = 2
        while m * (m + 1) // 2 <= w:
            k = m - 2
            if k == 0:
                for x in range(max(1, w - n), (w - 1) // 2 + 1):
                    queries += 1
                    if _hit2(zero, cols[x - 1], cols[w - x - 1], target, W):
                        out[0] = x
                        out[1] = w - x
                        return queries, 2
                    if queries >= budget:
                        return queries, -1
                m += 1
                continue
            rem[0] = w
            tail = m - 1
            a[0] = max(1, w - (tail * n - tail * (tail - 1) // 2)) - 1
            d = 0
            while d >= 0:
                a[d] += 1
                j = m - d
                r = rem[d]
                if a[d] > (r - (j - 1) * j // 2) // j:
                    d -= 1
                    continue
                v = a[d]
                for q in range(W):
                    acc[d + 1, q] = acc[d, q] ^ cols[v - 1, q]
                rem[d + 1] = r - v
                if d + 1 == k:
                    rr = r - v
                    for x in range(max(v + 1, rr - n), (rr - 1) // 2 + 1):
                        queries += 1
                        if _hit2(acc[k], cols[x - 1], cols[rr - x - 1], target, W):
                            for i in range(k):
                                out[i] = a[i]
                            out[k] = x
                            out[k + 1] = rr - x
                            return queries, m
                        if queries >= budget:
                            return queries, -1
                else:
                    d += 1
                    tail = m - d - 1
                    a[d] = max(v + 1, rem[d] - (tail * n - tail * (tail - 1) // 2)) - 1
            m += 1
    return queries, -1


@njit(cache=True, nogil=True)
def hamming_search(cols, target, budget, out):
    n, W = cols.shape
    queries = 1
    if _is_zero(target, W):
        return queries, 0
    if queries >= budget:
        return queries, -1
    acc = np.zeros((n + 1, W), dtype=np.uint64)
    a = np.zeros(n + 1, dtype=np.int64)
    zero = np.zeros(W, dtype=np.uint64)
    for x in range(1, n + 1):
        queries += 1
        if _hit1(zero, cols[x - 1], target, W):
            out[0] = x
            return queries, 1
        if queries >= budget:
            return queries, -1
    for m in range(2, n + 1):
        k = m - 1
        a[0] = 0
        d = 0
        while d >= 0:
            a[d] += 1
            if a[d] > n - (m - 1 - d):
                d -= 1
                continue
            v = a[d]
            for q in range(W):
                acc[d + 1, q] = acc[d, q] ^ cols[v - 1, q]
            if d + 1 == k:
                for x in range(v + 1, n + 1):
                    queries += 1
                    if _hit1(acc[k], cols[x - 1], target, W):
                        for i in range(k):
                            out[i] = a[i]
                        out[k] = x
                        return queries, m
                    if queries >= budget:
                        return queries, -1
            else:
                d += 1
                a[d] = v
    return queries, -1
