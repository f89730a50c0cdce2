"""Quivers with potential of triangulations, and quiver mutation."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .triangulation import SignedTriangulation, _nxt, _prv


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: tuple  # sorted multiset of (i, j)

    @classmethod
    def from_arrows(cls, n, arrows) -> "Quiver":
        return cls(n, tuple(sorted(arrows)))

    def count(self, i: int, j: int) -> int:
        return sum(1 for a in self.arrows if a == (i, j))

    def matrix(self) -> list[list[int]]:
        """Skew-symmetric exchange matrix, 1-based labels mapped to rows 0..n-1."""
        B = [[0] * self.vertices for _ in range(self.vertices)]
        for i, j in self.arrows:
            B[i - 1][j - 1] += 1
            B[j - 1][i - 1] -= 1
        return B

    @classmethod
    def from_matrix(cls, B) -> "Quiver":
        n = len(B)
        arrows = []
        for i in range(n):
            for j in range(n):
                if B[i][j] > 0:
                    arrows += [(i + 1, j + 1)] * B[i][j]
        return cls.from_arrows(n, arrows)

    def has_double_arrows(self) -> bool:
        return any(c > 1 for c in Counter(self.arrows).values())

    def to_json(self, potential: "Potential | None" = None) -> str:
        data = {"vertices": self.vertices, "arrows": [list(a) for a in self.arrows]}
        data["potential"] = [[list(a) for a in c] for c in potential.cycles] if potential else []
        return json.dumps(data, sort_keys=True)


@dataclass(frozen=True)
class Potential:
    cycles: tuple = field(default=())

    def is_valid_for(self, q: Quiver) -> bool:
        have = Counter(q.arrows)
        for c in self.cycles:
            if any(c[k][1] != c[(k + 1) % len(c)][0] for k in range(len(c))):
                return False
            if any(have[a] < n for a, n in Counter(c).items()):
                return False
        return True


def quiver_from_json(text: str) -> tuple[Quiver, Potential]:
    data = json.loads(text)
    q = Quiver.from_arrows(int(data["vertices"]), [tuple(a) for a in data["arrows"]])
    w = Potential(tuple(tuple(tuple(a) for a in c) for c in data.get("potential", [])))
    return q, w


# construction


def _pi(t: SignedTriangulation) -> dict:
    """Label map sending a self-folded edge to its loop."""
    return {edge: loop for edge, loop, _ in t.base.self_folded()}


def _fold_partners(t: SignedTriangulation) -> dict:
    """Labels sharing each loop label under the folding map."""
    out: dict[int, list[int]] = {}
    pi = _pi(t)
    for l in t.arc_labels():
        out.setdefault(pi.get(l, l), []).append(l)
    return out


def _triangle_arrows(t: SignedTriangulation):
    """Unreduced arrow instances ``(triangle, i, j)`` between folded labels."""
    base = t.base
    sf_tris = {s // 3 for s in range(len(base.twin)) if base.twin[s] != -1 and base.twin[s] // 3 == s // 3}
    partners = _fold_partners(t)
    out = []
    for tri in range(base.triangle_count):
        if tri in sf_tris:
            continue
        for s in (3 * tri, 3 * tri + 1, 3 * tri + 2):
            a, b = base.label[s], base.label[_prv(s)]
            if a <= 0 or b <= 0:
                continue
            # the counterclockwise predecessor follows in the clockwise order
            for i in partners[a]:
                for j in partners[b]:
                    if i != j:
                        out.append((tri, s, i, j))
    return out


def unreduced_arrows(t: SignedTriangulation) -> list[tuple]:
    return [(i, j) for _, _, i, j in _triangle_arrows(t)]


def _reduce(instances):
    """Cancel opposite arrow instances pairwise; returns surviving instances."""
    by_pair: dict[tuple, list[int]] = {}
    for k, inst in enumerate(instances):
        by_pair.setdefault(inst[-2:], []).append(k)
    alive = set(range(len(instances)))
    for (i, j), fwd in sorted(by_pair.items()):
        if i < j:
            for a, b in zip(fwd, by_pair.get((j, i), [])):
                alive -= {a, b}
    return [instances[k] for k in sorted(alive)]


def quiver_of(t: SignedTriangulation) -> Quiver:
    inst = _reduce(_triangle_arrows(t))
    return Quiver.from_arrows(t.spec.rank(), [(i, j) for _, _, i, j in inst])


def potential_of(t: SignedTriangulation) -> Potential:
    """Triangle 3-cycles and vortex cycles that survive reduction.

    Only internal triangles whose three sides are arcs contribute a 3-cycle,
    and a vortex contributes the cycle of arrows at its corners when every
    one of them survives.
    """
    base = t.base
    instances = _triangle_arrows(t)
    alive = _reduce(instances)
    alive_keys = Counter((s, i, j) for _, s, i, j in alive)
    pi = _pi(t)
    cycles = []

    def take(arrows):
        need = Counter(arrows)
        return all(alive_keys[k] >= c for k, c in need.items())

    sf_tris = {s // 3 for s in range(len(base.twin)) if base.twin[s] != -1 and base.twin[s] // 3 == s // 3}
    for tri in range(base.triangle_count):
        if tri in sf_tris:
            continue
        slots = (3 * tri, 3 * tri + 1, 3 * tri + 2)
        labs = [base.label[s] for s in slots]
        if min(labs) <= 0 or len(set(labs)) < 3:
            continue
        arrows = [(s, base.label[s], base.label[_prv(s)]) for s in (slots[0], slots[2], slots[1])]
        if take(arrows):
            cycles.append(_rotate_min([(i, j) for _, i, j in arrows]))
    for v, vx in enumerate(base.vertices):
        if vx.kind != "puncture":
            continue
        corners = _corners_around(t, v)
        if corners is None or len(corners) < 3:
            continue
        arrows = [(s, base.label[s], base.label[_prv(s)]) for s in corners]
        if any(i <= 0 or j <= 0 for _, i, j in arrows):
            continue
        if any(base.twin[s] // 3 == s // 3 for s in corners):
            continue
        if take(arrows):
            cycles.append(_rotate_min([(i, j) for _, i, j in arrows]))
    return Potential(tuple(sorted(cycles)))


def _rotate_min(cycle):
    k = min(range(len(cycle)), key=lambda r: cycle[r:] + cycle[:r])
    return tuple(cycle[k:] + cycle[:k])


def _corners_around(t: SignedTriangulation, v: int):
    """Slots leaving ``v`` in rotation order, one per corner at ``v``."""
    base = t.base
    start = next((s for s in range(len(base.twin)) if base.origin[s] == v), None)
    if start is None:
        return None
    out = []
    s = start
    while True:
        out.append(s)
        p = base.twin[_prv(s)]
        if p == -1:
            return None
        s = p
        if s == start:
            return out
        if len(out) > len(base.twin):
            raise RuntimeError("rotation around a vertex does not close")


# mutation


def mutate(q: Quiver, k: int) -> Quiver:
    """Reverse arrows at ``k``, add composites through ``k``, cancel 2-cycles."""
    if not 1 <= k <= q.vertices:
        raise IndexError(f"vertex {k} out of range")
    arrows = Counter(q.arrows)
    into = [(i, c) for (i, j), c in arrows.items() if j == k]
    out_of = [(j, c) for (i, j), c in arrows.items() if i == k]
    new = Counter()
    for (i, j), c in arrows.items():
        if i == k or j == k:
            new[(j, i)] += c
        else:
            new[(i, j)] += c
    for i, a in into:
        for j, b in out_of:
            if i != j:
                new[(i, j)] += a * b
    reduced = []
    done = set()
    for (i, j), c in sorted(new.items()):
        if (i, j) in done:
            continue
        back = new.get((j, i), 0)
        done.update({(i, j), (j, i)})
        net = c - back
        if net > 0:
            reduced += [(i, j)] * net
        elif net < 0:
            reduced += [(j, i)] * (-net)
    return Quiver.from_arrows(q.vertices, reduced)


def check_flip_mutation(t: SignedTriangulation, label: int) -> bool:
    from .triangulation import flip

    return quiver_of(flip(t, label)) == mutate(quiver_of(t), label)
