"""Exchange graphs of signed triangulations and their groupoid relations.

Vertices are keyed by canonical codes (hex).  The graph is stored oriented:
every flip at every arc of every vertex is an edge, so each vertex has
out-degree equal to the rank.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .quiver import unreduced_arrows
from .surface import MarkedSurfaceSpec
from .triangulation import (
    SignedTriangulation,
    canonical_form,
    flip,
    from_json,
    normalize,
    seed_triangulation,
    to_json,
)

SQUARE1, SQUARE2, SQUARE3 = "Square1", "Square2", "Square3"
PENTAGON, HEXAGON = "Pentagon", "Hexagon"
CYCLE_LENGTH = {SQUARE1: 4, SQUARE2: 4, SQUARE3: 4, PENTAGON: 5, HEXAGON: 6}

DEFAULT_VERTEX_LIMIT = 100000


@dataclass
class ExchangeGraph:
    spec: MarkedSurfaceSpec
    vertices: dict = field(default_factory=dict)  # code -> representative
    edges: list = field(default_factory=list)  # (source, label, target)
    oriented: bool = True

    def out_edges(self, code: str) -> list:
        return [e for e in self.edges if e[0] == code]

    def neighbour(self, code: str, label: int) -> str | None:
        """Target of the flip at ``label`` of the stored representative."""
        return self._adjacency()[0].get((code, label))

    def targets(self, code: str) -> set:
        return self._adjacency()[1].get(code, set())

    def _adjacency(self):
        key = (len(self.edges), id(self.edges))
        if getattr(self, "_index_key", None) != key:
            by_label, by_source = {}, {}
            for s, l, t in self.edges:
                by_label[(s, l)] = t
                by_source.setdefault(s, set()).add(t)
            self._index = (by_label, by_source)
            self._index_key = key
        return self._index

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, set] = {c: set() for c in self.vertices}
        for s, _, t in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        start = next(iter(sorted(self.vertices)))
        seen = {start}
        stack = [start]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def regularity_exceptions(self) -> list:
        """Vertices whose flip labels are not exactly ``1..n``, pairwise distinct."""
        n = self.spec.rank()
        labels: dict[str, list] = {c: [] for c in self.vertices}
        for s, l, _ in self.edges:
            labels[s].append(l)
        return [c for c, ls in labels.items() if sorted(ls) != list(range(1, n + 1))]


class VertexLimitExceeded(RuntimeError):
    def __init__(self, partial: ExchangeGraph, limit: int):
        super().__init__(f"exchange graph exceeds {limit} vertices")
        self.partial = partial
        self.limit = limit


class CycleFailure(AssertionError):
    pass


def _expand(t: SignedTriangulation):
    out = []
    for l in t.arc_labels():
        u = normalize(flip(t, l))
        out.append((l, canonical_form(u), u))
    return out


def enumerate_graph(spec: MarkedSurfaceSpec, seed: SignedTriangulation | None = None,
                    vertex_limit: int = DEFAULT_VERTEX_LIMIT, workers: int = 1) -> ExchangeGraph:
    """Breadth-first closure of the seed under flips.

    Frontiers are processed in sorted code order and the result is sorted,
    so the output does not depend on ``workers``.
    """
    if vertex_limit < 1:
        raise ValueError("vertex_limit must be at least 1")
    t0 = normalize(seed if seed is not None else seed_triangulation(spec))
    graph = ExchangeGraph(spec)
    c0 = canonical_form(t0)
    found = {c0: t0}
    frontier = [c0]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            reps = [found[c] for c in frontier]
            results = list(pool.map(_expand, reps, chunksize=16)) if pool else [_expand(t) for t in reps]
            nxt = []
            for c, res in zip(frontier, results):
                for l, code, u in res:
                    graph.edges.append((c, l, code))
                    if code not in found:
                        found[code] = u
                        nxt.append(code)
                        if len(found) > vertex_limit:
                            graph.vertices = dict(sorted(found.items()))
                            raise VertexLimitExceeded(graph, vertex_limit)
            frontier = sorted(nxt)
    finally:
        if pool:
            pool.shutdown()
    graph.vertices = dict(sorted(found.items()))
    graph.edges.sort()
    return graph


# relation cycles


def classify_pair(t: SignedTriangulation, i: int, j: int) -> str:
    if i == j:
        raise ValueError("classify_pair needs two distinct arcs")
    labels = t.arc_labels()
    if i not in labels or j not in labels:
        raise KeyError("arc not in triangulation")
    for edge, loop, _ in t.base.self_folded():
        if {i, j} == {edge, loop}:
            return SQUARE3
    arrows = unreduced_arrows(t)
    fwd = arrows.count((i, j))
    back = arrows.count((j, i))
    total = fwd + back
    if total == 0:
        return SQUARE1
    if total == 1:
        return PENTAGON
    if total == 2:
        return SQUARE2 if fwd == back else HEXAGON
    raise ValueError(f"arcs {i}, {j} meet in {total} triangles")


@dataclass(frozen=True)
class RelationCycle:
    kind: str
    vertices: tuple  # codes, first == last
    labels: tuple


def verify_groupoid_cycle(graph: ExchangeGraph, t: SignedTriangulation, i: int, j: int) -> RelationCycle:
    """Alternate flips at ``i`` and ``j`` and check the cycle closes at its length.

    Both starting arcs are tried; each walk must stay in the graph, visit
    distinct vertices and close exactly after the prescribed number of flips.
    """
    kind = classify_pair(t, i, j)
    L = CYCLE_LENGTH[kind]
    start = canonical_form(normalize(t))
    if start not in graph.vertices:
        raise CycleFailure("start vertex is not in the graph")
    first = None
    for a, b in ((i, j), (j, i)):
        cur = t
        codes = [start]
        labels = []
        for k in range(L):
            lab = a if k % 2 == 0 else b
            cur = flip(cur, lab)
            code = canonical_form(normalize(cur))
            # labels of the walk need not match those of stored representatives
            if code not in graph.targets(codes[-1]):
                raise CycleFailure(f"{kind} walk leaves the graph at step {k + 1}")
            codes.append(code)
            labels.append(lab)
        if codes[-1] != start:
            raise CycleFailure(f"{kind} cycle at arcs {i},{j} does not close after {L} flips")
        if len(set(codes[:-1])) != L:
            raise CycleFailure(f"{kind} cycle at arcs {i},{j} revisits a vertex early")
        if first is None:
            first = RelationCycle(kind, tuple(codes), tuple(labels))
    return first


# export


def export(graph: ExchangeGraph, fmt: str = "json") -> bytes:
    if fmt == "dot":
        lines = ["digraph exchange {"]
        for c in graph.vertices:
            lines.append(f'  "{c}";')
        for s, l, t in graph.edges:
            lines.append(f'  "{s}" -> "{t}" [label={l}];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        data = {
            "surface": json.loads(graph.spec.to_json()),
            "oriented": graph.oriented,
            "vertices": {c: json.loads(to_json(t)) for c, t in graph.vertices.items()},
            "edges": [list(e) for e in graph.edges],
        }
        return (json.dumps(data, sort_keys=True) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def graph_from_json(blob) -> ExchangeGraph:
    data = json.loads(blob)
    spec = MarkedSurfaceSpec.from_json(json.dumps(data["surface"]))
    vertices = {c: from_json(json.dumps(v)) for c, v in data["vertices"].items()}
    edges = [tuple(e) for e in data["edges"]]
    return ExchangeGraph(spec, vertices, edges, bool(data["oriented"]))
