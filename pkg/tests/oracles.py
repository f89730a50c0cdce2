"""Brute-force oracles, kept separate from the package code paths.

Nothing here imports the triangulation, exchange or Smith modules.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, gcd


# maximal compatible arc sets


def _maximal_cliques(n: int, compatible) -> list[frozenset]:
    """Bron-Kerbosch without pivoting; fine for a few dozen arcs."""
    nbrs = [{j for j in range(n) if j != i and compatible(i, j)} for i in range(n)]
    out = []

    def grow(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        for v in list(p):
            grow(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    grow(set(), set(range(n)), set())
    return out


def polygon_diagonals(m: int) -> list[tuple]:
    return [(i, j) for i, j in combinations(range(m), 2) if j - i not in (1, m - 1)]


def _chords_cross(a, b) -> bool:
    (i, j), (k, l) = a, b
    if len({i, j, k, l}) < 4:
        return False
    return (i < k < j) != (i < l < j)


def disk_triangulations(m: int) -> list[frozenset]:
    arcs = polygon_diagonals(m)
    sets = _maximal_cliques(len(arcs), lambda i, j: not _chords_cross(arcs[i], arcs[j]))
    return [frozenset(arcs[k] for k in s) for s in sets]


def punctured_tagged_arcs(m: int) -> list[tuple]:
    """Tagged arcs of a once-punctured m-gon.

    ``("b", i, k)`` cuts off the boundary segments ``i, i+1, .., i+k-1`` (a
    puncture-free region, so ``2 <= k <= m-1``); ``("p", i, tag)`` joins
    marked point ``i`` to the puncture.
    """
    arcs = [("b", i, k) for i in range(m) for k in range(2, m)]
    arcs += [("p", i, tag) for i in range(m) for tag in ("plain", "notched")]
    return arcs


def _segments(arc, m):
    _, i, k = arc
    return {(i + s) % m for s in range(k)}


def _interior_points(arc, m):
    _, i, k = arc
    return {(i + s) % m for s in range(1, k)}


def tagged_compatible(a, b, m: int) -> bool:
    if a[0] == "b" and b[0] == "b":
        sa, sb = _segments(a, m), _segments(b, m)
        return sa <= sb or sb <= sa or not (sa & sb)
    if a[0] == "p" and b[0] == "p":
        return a[2] == b[2] or a[1] == b[1]
    bnd, pun = (a, b) if a[0] == "b" else (b, a)
    return pun[1] not in _interior_points(bnd, m)


def punctured_tagged_triangulations(m: int) -> list[frozenset]:
    arcs = punctured_tagged_arcs(m)
    sets = _maximal_cliques(len(arcs), lambda i, j: tagged_compatible(arcs[i], arcs[j], m))
    return [frozenset(arcs[k] for k in s) for s in sets]


def punctured_count_formula(m: int) -> int:
    return (3 * m - 2) * comb(2 * m - 2, m - 1) // m


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


# Smith invariants through determinantal divisors


def det(matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    A = [list(row) for row in matrix]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def determinantal_invariants(matrix, generators: int) -> tuple[int, tuple]:
    """(free rank, torsion) of the cokernel, from gcds of all k x k minors."""
    rows = [list(r) for r in matrix]
    divisors = [1]
    if rows:
        for k in range(1, min(len(rows), generators) + 1):
            g = 0
            for rs in combinations(range(len(rows)), k):
                for cs in combinations(range(generators), k):
                    g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
                    if g == 1:
                        break
                if g == 1:
                    break
            if g == 0:
                break
            divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    rank = len(factors)
    return generators - rank, tuple(f for f in factors if f > 1)


def rational_rank(matrix) -> int:
    A = [[Fraction(v) for v in row] for row in matrix]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


# symmetric group


def perm_of_transpositions(pairs, n: int) -> tuple:
    """Compose transpositions given rightmost first, as position lists."""
    state = list(range(n))
    for i, j in reversed(pairs):
        state = [j if v == i else i if v == j else v for v in state]
    return tuple(state)


def polygon_triangles(m: int, diagonals) -> list[tuple]:
    sides = set(diagonals) | {(i, i + 1) for i in range(m - 1)} | {(0, m - 1)}
    return [c for c in combinations(range(m), 3)
            if {(c[0], c[1]), (c[1], c[2]), (c[0], c[2])} <= sides]


def disk_pair_classes(m: int) -> dict:
    """Pairs of diagonals sharing a triangle (pentagon) or not (square), summed over triangulations."""
    out = {"Pentagon": 0, "Square1": 0}
    for tri in disk_triangulations(m):
        tris = polygon_triangles(m, tri)
        for a, b in combinations(sorted(tri), 2):
            shared = any({a, b} <= {(c[0], c[1]), (c[1], c[2]), (c[0], c[2])} for c in tris)
            out["Pentagon" if shared else "Square1"] += 1
    return out
