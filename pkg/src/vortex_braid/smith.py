"""Integer Smith normal form by row and column elimination."""

from __future__ import annotations

from .surface import AbelianGroupInvariants


def smith_diagonal(matrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    A = [list(map(int, row)) for row in matrix]
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    # remainder smaller than the pivot: swap it in and restart
                    A[t], A[i] = A[i], A[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if changed:
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelian_invariants(matrix, generators: int) -> AbelianGroupInvariants:
    """Invariants of the cokernel of the relator matrix (rows are relators)."""
    d = smith_diagonal(matrix) if matrix else []
    return AbelianGroupInvariants(generators - len(d), tuple(x for x in d if x > 1))
