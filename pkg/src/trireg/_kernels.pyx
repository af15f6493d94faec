# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels; same contracts as ``_kernels_py``."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef uint64_t _rec(uint64_t* masks, int* remaining, int n_rem, uint64_t used) nogil:
    cdef int k, best_k = -1, best_count = 65, c, row
    cdef uint64_t free_cols, best_free = 0, low, total = 0
    if n_rem == 0:
        return 1
    for k in range(n_rem):
        free_cols = masks[remaining[k]] & ~used
        c = __builtin_popcountll(free_cols)
        if c < best_count:
            best_k = k
            best_free = free_cols
            best_count = c
            if c <= 1:
                break
    if best_count == 0:
        return 0
    row = remaining[best_k]
    remaining[best_k] = remaining[n_rem - 1]
    free_cols = best_free
    while free_cols:
        low = free_cols & (~free_cols + 1)
        total += _rec(masks, remaining, n_rem - 1, used | low)
        free_cols ^= low
    remaining[n_rem - 1] = remaining[best_k]
    remaining[best_k] = row
    return total


def count_matchings(adjacency, int n_cols):
    cdef int n = len(adjacency), i
    cdef uint64_t* masks
    cdef int* remaining
    cdef uint64_t result
    if n != n_cols:
        return 0
    if n == 0:
        return 1
    if n > 64:
        from trireg._kernels_py import count_matchings as slow
        return slow(adjacency, n_cols)
    masks = <uint64_t*> malloc(n * sizeof(uint64_t))
    remaining = <int*> malloc(n * sizeof(int))
    try:
        for i in range(n):
            masks[i] = 0
            for j in adjacency[i]:
                masks[i] |= (<uint64_t> 1) << (<int> j)
            remaining[i] = i
        with nogil:
            result = _rec(masks, remaining, n, 0)
    finally:
        free(masks)
        free(remaining)
    return result


def permanent(matrix):
    """Ryser/Gray-code permanent; machine integers when the bound allows it."""
    cdef int n = len(matrix), i, j
    cdef int64_t* m
    cdef int64_t* sums
    cdef int64_t prod
    cdef uint64_t k, gray, prev = 0, diff
    cdef int64_t acc = 0
    cdef int64_t limit = (<int64_t> 1) << 61
    if n == 0:
        return 1
    bound = 0
    for row in matrix:
        bound = max(bound, sum(abs(v) for v in row))
    if n > 62 or bound ** n >= 2 ** 62:
        from trireg._kernels_py import permanent as slow
        return slow(matrix)
    m = <int64_t*> malloc(n * n * sizeof(int64_t))
    sums = <int64_t*> malloc(n * sizeof(int64_t))
    total = 0
    try:
        for i in range(n):
            sums[i] = 0
            for j in range(n):
                m[i * n + j] = matrix[i][j]
        for k in range(1, (<uint64_t> 1) << n):
            gray = k ^ (k >> 1)
            diff = gray ^ prev
            j = __builtin_ctzll(diff)
            if gray & diff:
                for i in range(n):
                    sums[i] += m[i * n + j]
            else:
                for i in range(n):
                    sums[i] -= m[i * n + j]
            prev = gray
            prod = 1
            for i in range(n):
                prod *= sums[i]
                if prod == 0:
                    break
            if prod != 0:
                if __builtin_popcountll(gray) & 1:
                    acc -= prod
                else:
                    acc += prod
                if acc > limit or acc < -limit:
                    total += acc
                    acc = 0
    finally:
        free(m)
        free(sums)
    total += acc
    return total if n % 2 == 0 else -total
