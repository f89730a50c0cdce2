"""Ideal, signed and tagged triangulations as combinatorial maps.

A triangulation is stored slot by slot.  Triangle ``t`` owns the slots
``3t, 3t+1, 3t+2`` listed counterclockwise; slot ``s`` is the half-edge that
leaves ``origin[s]`` along that side of the triangle.  ``twin[s]`` is the slot
on the other side of the same edge, or ``-1`` for a boundary segment.
``label[s]`` is the arc label (positive) or ``-k`` for the boundary segment
starting at marked point ``k``.

A self-folded triangle is one whose slots include both sides of one edge
(the self-folded edge); its third slot is the inner side of the loop.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace

from .surface import MarkedSurfaceSpec


class UnsupportedSurfaceError(ValueError):
    pass


class TriangulationError(ValueError):
    pass


PLAIN, NOTCHED = "plain", "notched"


@dataclass(frozen=True)
class Vertex:
    kind: str  # "marked" or "puncture"
    index: int  # global marked label (1-based) or puncture index (1-based)


def _nxt(s: int) -> int:
    return s - s % 3 + (s + 1) % 3


def _prv(s: int) -> int:
    return s - s % 3 + (s + 2) % 3


@dataclass(frozen=True)
class CombinatorialTriangulation:
    spec: MarkedSurfaceSpec
    twin: tuple
    origin: tuple
    label: tuple
    vertices: tuple

    @property
    def triangle_count(self) -> int:
        return len(self.twin) // 3

    def triangles(self):
        return [(3 * t, 3 * t + 1, 3 * t + 2) for t in range(self.triangle_count)]

    def arc_labels(self) -> list[int]:
        return sorted({l for l in self.label if l > 0})

    def slots_of(self, lab: int) -> tuple:
        out = tuple(s for s, l in enumerate(self.label) if l == lab)
        if not out:
            raise KeyError(f"no arc labelled {lab}")
        return out

    def endpoints(self, lab: int) -> tuple:
        s = self.slots_of(lab)[0]
        return self.origin[s], self.origin[_nxt(s)]

    def self_folded(self) -> list[tuple]:
        """``(edge label, loop label, puncture vertex)`` per self-folded triangle."""
        out = []
        for t in range(self.triangle_count):
            a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
            for s, u, w in ((a, b, c), (b, c, a), (c, a, b)):
                if self.twin[s] == u:
                    out.append((self.label[s], self.label[w], self.origin[u]))
        return out

    def validate(self) -> None:
        n = self.spec.rank()
        N = len(self.twin)
        if N % 3:
            raise TriangulationError("slot count is not a multiple of 3")
        arcs = self.arc_labels()
        if arcs != list(range(1, n + 1)):
            raise TriangulationError(f"arc labels {arcs} are not 1..{n}")
        for s in range(N):
            t = self.twin[s]
            if t == -1:
                if self.label[s] >= 0:
                    raise TriangulationError("boundary slot carries an arc label")
                continue
            if self.twin[t] != s or t == s:
                raise TriangulationError("twin map is not an involution")
            if self.label[t] != self.label[s] or self.label[s] <= 0:
                raise TriangulationError("twins disagree on their label")
            if self.origin[t] != self.origin[_nxt(s)] or self.origin[s] != self.origin[_nxt(t)]:
                raise TriangulationError("twins are not oppositely oriented")
        for l in arcs:
            if len(self.slots_of(l)) != 2:
                raise TriangulationError(f"arc {l} does not have two sides")
        segs = sorted(-l for l in self.label if l < 0)
        if segs != list(range(1, self.spec.marked_count + 1)):
            raise TriangulationError("boundary segments do not match the marked points")
        V = len(self.vertices)
        E = n + self.spec.marked_count
        F = self.triangle_count
        if V - E + F != 2 - 2 * self.spec.genus - self.spec.boundary_count:
            raise TriangulationError("Euler characteristic mismatch")


@dataclass(frozen=True)
class SignedTriangulation:
    base: CombinatorialTriangulation
    signs: tuple  # one entry per puncture

    @property
    def spec(self) -> MarkedSurfaceSpec:
        return self.base.spec

    def arc_labels(self) -> list[int]:
        return self.base.arc_labels()

    def to_json(self) -> str:
        return to_json(self)


@dataclass(frozen=True)
class TaggedArc:
    label: int
    ends: tuple  # two vertex ids
    tags: tuple  # tag per end; None at marked points
    curve: int  # edge key (lowest slot) of the underlying curve in the skeleton


@dataclass(frozen=True)
class TaggedTriangulation:
    skeleton: CombinatorialTriangulation
    arcs: tuple

    def arc(self, label: int) -> TaggedArc:
        for a in self.arcs:
            if a.label == label:
                return a
        raise KeyError(f"no tagged arc labelled {label}")


# seed


def seed_triangulation(spec: MarkedSurfaceSpec) -> SignedTriangulation:
    """Fan of a cut-open polygon, rooted at marked point 1.

    Polygon sides in order: the segments of the first boundary component, a
    handle word ``a b a' b'`` per genus, ``c  (segments)  c'`` per extra
    boundary component, and one loop per puncture.  Each loop bounds a
    self-folded triangle around its puncture.
    """
    n = spec.rank()
    if n < 1:
        raise UnsupportedSurfaceError(f"rank {n} surface has no arcs to triangulate")
    m1 = spec.marked_per_boundary[0]
    sides: list[tuple] = [("seg", k + 1) for k in range(m1)]
    glue: list[tuple] = []  # pairs of side indices glued reversed
    marked_at: dict[int, int] = {k: k + 1 for k in range(m1)}
    for _ in range(spec.genus):
        i = len(sides)
        sides += [("glue",), ("glue",), ("glue",), ("glue",)]
        glue += [(i, i + 2), (i + 1, i + 3)]
    label = m1
    for mk in spec.marked_per_boundary[1:]:
        i = len(sides)
        sides.append(("glue",))
        for k in range(mk):
            marked_at[len(sides)] = label + k + 1
            sides.append(("seg", label + k + 1))
        label += mk
        glue.append((i, len(sides)))
        sides.append(("glue",))
    loops = []
    for r in range(spec.puncture_count):
        loops.append(len(sides))
        sides.append(("loop", r))
    N = len(sides)
    if N < 3:
        raise UnsupportedSurfaceError("polygon model needs at least three sides")

    # polygon vertices up to gluing
    parent = list(range(N))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for i, j in glue:
        union(i, (j + 1) % N)
        union((i + 1) % N, j)
    for i in loops:
        union(i, (i + 1) % N)
    # segments of inner boundaries close up on themselves through the glued pair
    classes = {}
    m = spec.marked_count
    for pv, lab in marked_at.items():
        classes[find(pv)] = lab - 1
    vertices = [Vertex("marked", k + 1) for k in range(m)]
    vertices += [Vertex("puncture", r + 1) for r in range(spec.puncture_count)]
    vid = [classes[find(pv)] for pv in range(N)]

    F = N - 2 + spec.puncture_count
    twin = [-1] * (3 * F)
    origin = [0] * (3 * F)
    lab = [0] * (3 * F)

    def side_slot(j):
        if j == 0:
            return 0
        if j == N - 1:
            return 3 * (N - 3) + 2
        return 3 * (j - 1) + 1

    for k in range(1, N - 1):
        t = k - 1
        origin[3 * t] = vid[0]
        origin[3 * t + 1] = vid[k]
        origin[3 * t + 2] = vid[k + 1]
    next_label = 1
    for k in range(2, N - 1):
        a, b = 3 * (k - 2) + 2, 3 * (k - 1)
        twin[a], twin[b] = b, a
        lab[a] = lab[b] = next_label
        next_label += 1
    for i, j in glue:
        a, b = side_slot(i), side_slot(j)
        twin[a], twin[b] = b, a
        lab[a] = lab[b] = next_label
        next_label += 1
    for j, sd in enumerate(sides):
        if sd[0] == "seg":
            lab[side_slot(j)] = -sd[1]
    for r, j in enumerate(loops):
        t = N - 2 + r
        e1, e2, li = 3 * t, 3 * t + 1, 3 * t + 2
        M = vid[j]
        P = m + r
        origin[e1], origin[e2], origin[li] = M, P, M
        s = side_slot(j)
        twin[s], twin[li] = li, s
        twin[e1], twin[e2] = e2, e1
        lab[s] = lab[li] = next_label
        lab[e1] = lab[e2] = next_label + 1
        next_label += 2
    base = CombinatorialTriangulation(spec, tuple(twin), tuple(origin), tuple(lab), tuple(vertices))
    base.validate()
    return SignedTriangulation(base, tuple(spec.vortex_signs))


# flips


def _flip_edge(base: CombinatorialTriangulation, h1: int) -> CombinatorialTriangulation:
    h2 = base.twin[h1]
    t1, t2 = h1 // 3, h2 // 3
    if t1 == t2:
        raise TriangulationError("cannot flip inside a single triangle")
    a, b = _nxt(h1), _prv(h1)
    c, d = _nxt(h2), _prv(h2)
    # new T1 = [b, c, h1'], new T2 = [d, a, h2']
    moved = {b: 3 * t1, c: 3 * t1 + 1, h1: 3 * t1 + 2, d: 3 * t2, a: 3 * t2 + 1, h2: 3 * t2 + 2}
    N = len(base.twin)
    twin = [0] * N
    origin = list(base.origin)
    lab = list(base.label)
    where = list(range(N))
    for old, new in moved.items():
        where[old] = new
    for old in range(N):
        new = where[old]
        tw = base.twin[old]
        twin[new] = -1 if tw == -1 else where[tw]
        origin[new] = base.origin[old]
        lab[new] = base.label[old]
    x, w = base.origin[d], base.origin[b]
    origin[3 * t1 + 2] = x
    origin[3 * t2 + 2] = w
    return CombinatorialTriangulation(base.spec, tuple(twin), tuple(origin), tuple(lab), base.vertices)


def _relabel(base: CombinatorialTriangulation, swap: dict) -> CombinatorialTriangulation:
    lab = tuple(swap.get(l, l) for l in base.label)
    return replace(base, label=lab)


def flip(t: SignedTriangulation, arc_label: int) -> SignedTriangulation:
    """Flip the arc with the given label; the new arc keeps the label.

    A self-folded edge is flipped by switching the sign of its vortex and the
    labels of the edge and its loop, then flipping the loop.
    """
    base = t.base
    try:
        h1 = base.slots_of(arc_label)[0]
    except KeyError:
        raise KeyError(f"unknown arc label {arc_label}") from None
    h2 = base.twin[h1]
    if h1 // 3 != h2 // 3:
        return SignedTriangulation(_flip_edge(base, h1), t.signs)
    loop = base.label[_nxt(h2)] if _nxt(h1) == h2 else base.label[_nxt(h1)]
    puncture = base.origin[h2] if _nxt(h1) == h2 else base.origin[h1]
    r = base.vertices[puncture].index
    signs = list(t.signs)
    signs[r - 1] = -signs[r - 1]
    swapped = _relabel(base, {arc_label: loop, loop: arc_label})
    h = swapped.slots_of(arc_label)[0]
    return SignedTriangulation(_flip_edge(swapped, h), tuple(signs))


# equivalence and canonical codes


def _self_folded_punctures(base: CombinatorialTriangulation) -> set:
    return {p for _, _, p in base.self_folded()}


def normalized_signs(t: SignedTriangulation) -> tuple:
    inside = _self_folded_punctures(t.base)
    out = list(t.signs)
    for v in inside:
        out[t.base.vertices[v].index - 1] = 1
    return tuple(out)


def normalize(t: SignedTriangulation) -> SignedTriangulation:
    """Representative with +1 at every vortex inside a self-folded triangle."""
    base = t.base
    signs = list(t.signs)
    swap = {}
    for edge, loop, v in base.self_folded():
        r = base.vertices[v].index - 1
        if signs[r] == -1:
            signs[r] = 1
            swap[edge], swap[loop] = loop, edge
    if swap:
        base = _relabel(base, swap)
    return SignedTriangulation(base, tuple(signs))


def _root(base: CombinatorialTriangulation) -> int:
    return base.label.index(-1)


def _role(t: SignedTriangulation, signs, v: int) -> tuple:
    vx = t.base.vertices[v]
    if vx.kind == "marked":
        return (0, vx.index)
    return (1, vx.index, 0 if signs[vx.index - 1] > 0 else 1)


def _varint(x: int, out: bytearray) -> None:
    x = 2 * x if x >= 0 else -2 * x - 1
    while True:
        byte = x & 0x7F
        x >>= 7
        if x:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


def canonical_code(t: SignedTriangulation) -> bytes:
    """Label-free code, rooted at the boundary segment leaving marked point 1."""
    base = t.base
    signs = normalized_signs(t)
    order: dict[int, int] = {}  # triangle -> discovery index
    entry: dict[int, int] = {}
    root = _root(base)
    order[root // 3] = 0
    entry[root // 3] = root
    queue = deque([root // 3])
    out = bytearray()
    _varint(base.triangle_count, out)
    while queue:
        tri = queue.popleft()
        s = entry[tri]
        for _ in range(3):
            for x in _role(t, signs, base.origin[s]):
                _varint(x, out)
            tw = base.twin[s]
            if tw == -1:
                _varint(-1, out)
                _varint(-base.label[s], out)
            else:
                u = tw // 3
                if u not in order:
                    order[u] = len(order)
                    entry[u] = tw
                    queue.append(u)
                _varint(order[u], out)
                _varint((tw - entry[u]) % 3, out)
            s = _nxt(s)
    return bytes(out)


def canonical_form(t: SignedTriangulation) -> str:
    return canonical_code(t).hex()


def is_equivalent(t1: SignedTriangulation, t2: SignedTriangulation, labelled: bool = False) -> bool:
    """Isomorphism test fixing the boundary, signs compared up to self-folding.

    With ``labelled`` the arc labels must also correspond, after swapping the
    loop and edge labels at vortices whose signs differ.
    """
    if t1.spec != t2.spec:
        raise ValueError("triangulations of different surfaces")
    b1, b2 = t1.base, t2.base
    if len(b1.twin) != len(b2.twin):
        return False
    s1, s2 = normalized_signs(t1), normalized_signs(t2)
    phi: dict[int, int] = {}
    used: set[int] = set()

    def assign(x, y):
        if x in phi:
            return phi[x] == y
        if y in used:
            return False
        phi[x] = y
        used.add(y)
        return True

    stack = [(_root(b1), _root(b2))]
    while stack:
        x, y = stack.pop()
        for _ in range(3):
            if not assign(x, y):
                return False
            v = b1.vertices[b1.origin[x]]
            if v != b2.vertices[b2.origin[y]]:
                return False
            if v.kind == "puncture" and s1[v.index - 1] != s2[v.index - 1]:
                return False
            tx, ty = b1.twin[x], b2.twin[y]
            if (tx == -1) != (ty == -1):
                return False
            if tx == -1:
                if b1.label[x] != b2.label[y]:
                    return False
            elif tx not in phi:
                if not assign(tx, ty):
                    return False
                stack.append((tx, ty))
            elif phi[tx] != ty:
                return False
            x, y = _nxt(x), _nxt(y)
    if len(phi) != len(b1.twin):
        return False
    if not labelled:
        return True
    # labels: sign differences at self-folded vortices swap loop and edge
    swap = {}
    for edge, loop, v in b1.self_folded():
        r = b1.vertices[v].index - 1
        if t1.signs[r] != t2.signs[r]:
            swap[edge], swap[loop] = loop, edge
    return all(b2.label[phi[s]] == swap.get(b1.label[s], b1.label[s]) for s in range(len(b1.twin)))


# tagged triangulations


def _edge_key(base: CombinatorialTriangulation, s: int) -> int:
    tw = base.twin[s]
    return s if tw == -1 else min(s, tw)


def to_tagged(t: SignedTriangulation) -> TaggedTriangulation:
    """Tag every arc end at a puncture by the sign there; loops become notched copies."""
    base = t.base
    loops = {loop: (edge, v) for edge, loop, v in base.self_folded()}
    arcs = []
    for l in base.arc_labels():
        s = base.slots_of(l)[0]
        if l in loops:
            edge, v = loops[l]
            es = base.slots_of(edge)
            e0 = es[0] if base.origin[es[0]] != v else es[1]
            M = base.origin[e0]
            sign = t.signs[base.vertices[v].index - 1]
            tag = NOTCHED if sign > 0 else PLAIN
            arcs.append(TaggedArc(l, (M, v), (None, tag), _edge_key(base, e0)))
            continue
        ends = (base.origin[s], base.origin[base.twin[s]])
        tags = []
        for v in ends:
            vx = base.vertices[v]
            if vx.kind == "puncture":
                tags.append(PLAIN if t.signs[vx.index - 1] > 0 else NOTCHED)
            else:
                tags.append(None)
        arcs.append(TaggedArc(l, ends, tuple(tags), _edge_key(base, s)))
    return TaggedTriangulation(base, tuple(arcs))


def from_tagged(tt: TaggedTriangulation) -> SignedTriangulation:
    """Rebuild the signed triangulation, with +1 at self-folded vortices."""
    base = tt.skeleton
    by_curve: dict[int, list[TaggedArc]] = {}
    for a in tt.arcs:
        by_curve.setdefault(a.curve, []).append(a)
    sf = {}
    for edge, loop, v in base.self_folded():
        es = base.slots_of(edge)
        sf[_edge_key(base, es[0])] = (edge, loop, v)
    signs: dict[int, int] = {}
    relabel: dict[int, int] = {}
    for curve, arcs in by_curve.items():
        if len(arcs) > 2:
            raise TriangulationError("more than two tagged arcs on one curve")
        if len(arcs) == 2:
            if curve not in sf:
                raise TriangulationError("tagged pair does not cut out a digon around a puncture")
            edge, loop, v = sf[curve]
            tag = [a.tags[a.ends.index(v)] for a in arcs]
            if set(tag) != {PLAIN, NOTCHED}:
                raise TriangulationError("a digon pair needs one plain and one notched end")
            plain = arcs[tag.index(PLAIN)]
            notched = arcs[tag.index(NOTCHED)]
            relabel[edge], relabel[loop] = plain.label, notched.label
            r = base.vertices[v].index
            signs[r] = 1
            continue
        a = arcs[0]
        s = curve
        if base.twin[s] == -1:
            raise TriangulationError("tagged arc sits on a boundary segment")
        relabel[base.label[s]] = a.label
        for v, tag in zip(a.ends, a.tags):
            vx = base.vertices[v]
            if vx.kind != "puncture":
                continue
            want = 1 if tag == PLAIN else -1
            if signs.setdefault(vx.index, want) != want:
                raise TriangulationError(f"conflicting tags at puncture {vx.index}")
    if sorted(relabel.values()) != base.arc_labels():
        raise TriangulationError("tagged arcs do not cover the triangulation")
    out = _relabel(base, relabel)
    p = base.spec.puncture_count
    sg = tuple(signs.get(r, 1) for r in range(1, p + 1))
    return SignedTriangulation(out, sg)


def tagged_rotation(tt: TaggedTriangulation, label: int) -> TaggedTriangulation:
    """Local anticlockwise tagged rotation of one arc.

    Rotating a plain arc of a digon pair produces its notched companion and
    vice versa; every other arc rotates its endpoints to the next corners of
    the surrounding quadrilateral, which is the flip of the underlying
    triangulation.
    """
    tt.arc(label)
    return to_tagged(flip(from_tagged(tt), label))


# polygons with at most one puncture


def polygon_arc_signature(t: SignedTriangulation) -> frozenset:
    """Tagged arcs as curve descriptors on a disk with at most one puncture.

    Chords are ``("chord", i, j)`` where the boundary segments ``i..j-1``
    (cyclically) lie on the side away from the puncture; on an unpunctured
    disk chords are ``("chord", min, max)``.  Arcs to the puncture are
    ``("radial", i, tag)``.
    """
    spec = t.spec
    if spec.genus or spec.boundary_count != 1 or spec.puncture_count > 1:
        raise UnsupportedSurfaceError("signatures are defined for disks with at most one puncture")
    tt = to_tagged(t)
    base = t.base
    m = spec.marked_count
    out = set()
    for a in tt.arcs:
        kinds = [base.vertices[v] for v in a.ends]
        if any(v.kind == "puncture" for v in kinds):
            i = next(v.index for v in kinds if v.kind == "marked")
            tag = next(tg for v, tg in zip(kinds, a.tags) if v.kind == "puncture")
            out.add(("radial", i, tag))
            continue
        i, j = kinds[0].index, kinds[1].index
        if spec.puncture_count == 0:
            out.add(("chord", min(i, j), max(i, j)))
            continue
        s = a.curve
        side, has_p = _side(base, s)
        if has_p:
            side, has_p = _side(base, base.twin[s])
            s = base.twin[s]
        # the side reached from slot s lies to its left, running origin -> end
        start = base.vertices[base.origin[base.twin[s]]].index
        end = base.vertices[base.origin[s]].index
        segs = sorted(side)
        expect = sorted(((start - 1 + k) % m) + 1 for k in range((end - start) % m))
        if segs != expect:
            raise TriangulationError("chord side does not match its endpoints")
        out.add(("chord", start, end))
    return frozenset(out)


def _side(base: CombinatorialTriangulation, s: int):
    """Boundary segments and puncture presence on the triangle side of slot ``s``."""
    seen = {s // 3}
    stack = [s // 3]
    segs = set()
    has_p = False
    barrier = {s, base.twin[s]}
    while stack:
        tri = stack.pop()
        for x in (3 * tri, 3 * tri + 1, 3 * tri + 2):
            if base.vertices[base.origin[x]].kind == "puncture":
                has_p = True
            if base.twin[x] == -1:
                segs.add(-base.label[x])
            elif x not in barrier:
                u = base.twin[x] // 3
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return segs, has_p


# JSON


def to_json(t: SignedTriangulation) -> str:
    base = t.base
    edges = []
    done = set()
    for s in range(len(base.twin)):
        if s in done:
            continue
        tw = base.twin[s]
        if tw == -1:
            edges.append({"half_edges": [s], "kind": "boundary", "label": -base.label[s]})
            done.add(s)
        else:
            edges.append({"half_edges": [s, tw], "kind": "arc", "label": base.label[s]})
            done.update((s, tw))
    data = {
        "surface": json.loads(t.spec.to_json()),
        "triangles": [list(tri) for tri in base.triangles()],
        "edges": edges,
        "origins": list(base.origin),
        "vertices": [{"kind": v.kind, "index": v.index} for v in base.vertices],
        "signs": {f"P{r + 1}": s for r, s in enumerate(t.signs)},
    }
    return json.dumps(data, sort_keys=True)


def from_json(text: str) -> SignedTriangulation:
    try:
        data = json.loads(text)
        spec = MarkedSurfaceSpec.from_json(json.dumps(data["surface"]))
        N = 3 * len(data["triangles"])
        for k, tri in enumerate(data["triangles"]):
            if list(tri) != [3 * k, 3 * k + 1, 3 * k + 2]:
                raise TriangulationError("triangles must list slots 3t, 3t+1, 3t+2")
        twin = [-1] * N
        lab = [0] * N
        for e in data["edges"]:
            hs = e["half_edges"]
            if e["kind"] == "boundary":
                lab[hs[0]] = -int(e["label"])
            else:
                a, b = hs
                twin[a], twin[b] = b, a
                lab[a] = lab[b] = int(e["label"])
        vertices = tuple(Vertex(v["kind"], int(v["index"])) for v in data["vertices"])
        origin = tuple(int(x) for x in data["origins"])
        signs = tuple(int(data["signs"][f"P{r + 1}"]) for r in range(spec.puncture_count))
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, TriangulationError):
            raise
        raise TriangulationError(f"malformed triangulation JSON: {exc}") from exc
    base = CombinatorialTriangulation(spec, tuple(twin), origin, tuple(lab), vertices)
    base.validate()
    return SignedTriangulation(base, signs)
