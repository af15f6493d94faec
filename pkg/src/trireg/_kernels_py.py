"""Pure-Python versions of the hot kernels (used when the extension is absent)."""

from __future__ import annotations


def count_matchings(adjacency: list[list[int]], n_cols: int) -> int:
    """Number of perfect matchings of a bipartite graph given by row adjacency lists.

    Backtracking that always branches on the row with the fewest free columns.
    """
    n = len(adjacency)
    if n != n_cols:
        return 0
    if n == 0:
        return 1
    masks = [0] * n
    for i, row in enumerate(adjacency):
        for j in row:
            masks[i] |= 1 << j
    remaining = list(range(n))

    def rec(used: int) -> int:
        if not remaining:
            return 1
        best_k = -1
        best_free = 0
        best_count = n + 1
        for k, i in enumerate(remaining):
            free = masks[i] & ~used
            c = bin(free).count("1")
            if c < best_count:
                best_k, best_free, best_count = k, free, c
                if c <= 1:
                    break
        if best_count == 0:
            return 0
        row = remaining.pop(best_k)
        total = 0
        free = best_free
        while free:
            low = free & -free
            total += rec(used | low)
            free ^= low
        remaining.insert(best_k, row)
        return total

    return rec(0)


def permanent(matrix: list[list[int]]) -> int:
    """Exact permanent by Ryser's formula with Gray-code subset order."""
    n = len(matrix)
    if n == 0:
        return 1
    row_sums = [0] * n
    total = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            for i in range(n):
                row_sums[i] += matrix[i][j]
        else:
            for i in range(n):
                row_sums[i] -= matrix[i][j]
        prev_gray = gray
        prod = 1
        for s in row_sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            if bin(gray).count("1") & 1:
                total -= prod
            else:
                total += prod
    return total if n % 2 == 0 else -total
