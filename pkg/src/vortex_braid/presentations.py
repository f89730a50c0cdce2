"""Finite presentations of braid twist groups and their quotients.

Relators are tuples of signed 1-based generator indices, freely reduced but
not cyclically reduced, so each stays tied to the relation it came from.
Conjugation follows ``a^b = b^-1 a b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .freegroup import format_word, invert_word, multiply, reduce_word
from .quiver import Potential, Quiver
from .smith import abelian_invariants
from .surface import AbelianGroupInvariants, MarkedSurfaceSpec


class UnsupportedParametersError(ValueError):
    pass


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class RelatorTag:
    kind: str  # Co, Br, Tr, Rec, Cyc, Sq
    args: tuple  # display names of the relation's arguments
    family: str = ""
    part: int = 0  # index among the equalities of a cyclic relation

    def as_dict(self) -> dict:
        return {"kind": self.kind, "args": list(self.args), "family": self.family, "part": self.part}


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple
    tags: tuple
    endpoints: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(self.tags) != len(self.relators):
            raise ValueError("one tag per relator is required")
        k = len(self.generators)
        for r in self.relators:
            if any(a == 0 or abs(a) > k for a in r):
                raise ValueError(f"relator {r} uses an undeclared generator")
            if reduce_word(r) != tuple(r):
                raise ValueError(f"relator {r} is not freely reduced")

    def index(self, name: str) -> int:
        return self.generators.index(name) + 1

    def kinds(self) -> list[str]:
        return [t.kind for t in self.tags]

    def relations(self) -> list[RelatorTag]:
        """One entry per relation (cyclic relations span several relators)."""
        return [t for t in self.tags if t.part == 0]

    def format_relator(self, r) -> str:
        return format_word(r, self.generators)


class _Builder:
    def __init__(self, generators, endpoints=None):
        self.generators = list(generators)
        self.idx = {g: k + 1 for k, g in enumerate(self.generators)}
        self.relators: list = []
        self.tags: list = []
        self.endpoints = dict(endpoints or {})

    def w(self, *items) -> tuple:
        """Word from names (``"a"`` or ``"a'"``) and nested words."""
        out = []
        for it in items:
            if isinstance(it, str):
                inv = it.endswith("'")
                k = self.idx[it.rstrip("'")]
                out.append(-k if inv else k)
            else:
                out.extend(it)
        return reduce_word(out)

    def add(self, word, tag: RelatorTag):
        self.relators.append(reduce_word(word))
        self.tags.append(tag)

    def co(self, a, b, names, family=""):
        self.add(co_word(a, b), RelatorTag("Co", names, family))

    def br(self, a, b, names, family=""):
        self.add(br_word(a, b), RelatorTag("Br", names, family))

    def cyc(self, words, names, family="", kind=None):
        kind = kind or {3: "Tr", 4: "Rec"}.get(len(words), "Cyc")
        for part, rel in enumerate(cyclic_words(words)):
            self.add(rel, RelatorTag(kind, names, family, part))

    def build(self) -> GroupPresentation:
        return GroupPresentation(tuple(self.generators), tuple(self.relators), tuple(self.tags), self.endpoints)


def conj(a, b):
    return multiply(invert_word(b), a, b)


def co_word(a, b):
    return multiply(a, b, invert_word(a), invert_word(b))


def br_word(a, b):
    return multiply(a, b, a, invert_word(b), invert_word(a), invert_word(b))


def cyclic_words(words) -> list:
    """Relators of the rank-m cyclic relation on ``words``.

    The products of ``2m-2`` consecutive entries starting at each index are
    all equal; the relators compare the first product with each other one.
    """
    m = len(words)
    if m < 2:
        raise ValueError("cyclic relations need at least two entries")

    def prod(i):
        return multiply(*(words[(i + s) % m] for s in range(2 * m - 2)))

    p0 = prod(0)
    return [multiply(p0, invert_word(prod(j))) for j in range(1, m)]


# presentations of the braid twist group


def _check_hypothesis(spec: MarkedSurfaceSpec):
    aleph, loops = spec.decoration_count(), spec.loop_count()
    if aleph >= 5:
        return
    if aleph == 4 and loops <= 2:
        return
    if aleph == 4:
        raise UnsupportedParametersError(f"with 4 decorations need 2g+b+p-1 <= 2, got {loops}")
    raise UnsupportedParametersError(f"need at least 4 decorations, got {aleph}")


def _odd_handle_index(s: int, genus: int) -> bool:
    return s % 2 == 1 and s <= 2 * genus - 1


def bt_presentation_punctured(spec: MarkedSurfaceSpec) -> GroupPresentation:
    """Generators ``s1..`` (sigma) and ``t1..`` (tau); x and y expanded into sigma words."""
    _check_hypothesis(spec)
    aleph, loops, g = spec.decoration_count(), spec.loop_count(), spec.genus
    sig = [f"s{i}" for i in range(1, aleph)]
    tau = [f"t{r}" for r in range(1, loops + 1)]
    ends = {f"s{i}": (i, i + 1) for i in range(1, aleph)}
    ends.update({t: (1, 2) for t in tau})
    B = _Builder(sig + tau, ends)
    x = B.w("s2", "s1", "s2'")
    y = B.w("s2", "s3", "s2'")
    for i in range(1, aleph):
        for j in range(i + 2, aleph):
            B.co(B.w(f"s{i}"), B.w(f"s{j}"), (f"s{i}", f"s{j}"), "far commutation")
    for i in range(1, aleph - 1):
        B.br(B.w(f"s{i}"), B.w(f"s{i+1}"), (f"s{i}", f"s{i+1}"), "braid")
    for r in range(1, loops + 1):
        t = B.w(f"t{r}")
        for i in range(3, aleph):
            B.co(t, B.w(f"s{i}"), (f"t{r}", f"s{i}"), "tau commutes with far sigma")
        B.br(t, x, (f"t{r}", "x"), "tau braids with x")
        B.br(t, y, (f"t{r}", "y"), "tau braids with y")
    for r in range(1, loops + 1):
        for s in range(1, r):
            ts = conj(B.w(f"t{s}"), x)
            if _odd_handle_index(s, g):
                B.co(conj(B.w(f"t{r}"), invert_word(y)), ts, (f"t{r}^y'", f"t{s}^x"), "tau conjugates commute")
            else:
                B.co(conj(B.w(f"t{r}"), y), ts, (f"t{r}^y", f"t{s}^x"), "tau conjugates commute")
    return B.build()


def vortex_range(spec: MarkedSurfaceSpec) -> range:
    """Indices r of the tau generators whose loops go around vortices."""
    lo = 2 * spec.genus + spec.boundary_count
    return range(lo, spec.loop_count() + 1)


def bt_presentation_vortex(spec: MarkedSurfaceSpec) -> GroupPresentation:
    """Punctured presentation plus Co(t_r, t_{r-1}) for vortex indices; t_0 reads as s1."""
    p = bt_presentation_punctured(spec)
    B = _Builder(p.generators, p.endpoints)
    B.relators, B.tags = list(p.relators), list(p.tags)
    for r in vortex_range(spec):
        prev = f"t{r-1}" if r > 1 else "s1"
        B.co(B.w(f"t{r}"), B.w(prev), (f"t{r}", prev), "vortex")
    return B.build()


# arc configurations


@dataclass(frozen=True)
class ArcConfiguration:
    """Named closed arcs with endpoint decorations and adjacency facts.

    ``facts`` holds tuples ``(kind, names)`` with kind one of ``disjoint``,
    ``shared-endpoint``, ``clockwise-triangle`` (three arcs at a common
    endpoint in clockwise order), ``vortex-rectangle`` (four arcs bounding a
    once-punctured disk, anticlockwise) and ``vortex-digon`` (two arcs with
    the same endpoints bounding a once-punctured disk).
    """

    arcs: dict
    facts: tuple

    def validate(self):
        pairs = {}
        for kind, names in self.facts:
            for n in names:
                if n not in self.arcs:
                    raise ConfigurationError(f"unknown arc {n!r}")
            if len(set(names)) != len(names):
                raise ConfigurationError(f"repeated arc in {kind} fact")
            if kind in ("disjoint", "shared-endpoint", "vortex-digon"):
                if len(names) != 2:
                    raise ConfigurationError(f"{kind} facts take two arcs")
                key = frozenset(names)
                if pairs.setdefault(key, kind) != kind:
                    raise ConfigurationError(f"conflicting facts for {sorted(names)}")
            elif kind == "clockwise-triangle":
                if len(names) != 3:
                    raise ConfigurationError("triangle facts take three arcs")
            elif kind == "vortex-rectangle":
                if len(names) != 4:
                    raise ConfigurationError("rectangle facts take four arcs")
            else:
                raise ConfigurationError(f"unknown fact kind {kind!r}")
        for kind, names in self.facts:
            ends = [set(self.arcs[n]) for n in names]
            if kind == "disjoint" and ends[0] & ends[1]:
                raise ConfigurationError(f"disjoint arcs {names} share an endpoint")
            if kind == "shared-endpoint" and len(ends[0] & ends[1]) != 1:
                raise ConfigurationError(f"arcs {names} do not share exactly one endpoint")
            if kind == "vortex-digon" and ends[0] != ends[1]:
                raise ConfigurationError(f"digon arcs {names} have different endpoints")
            if kind == "clockwise-triangle":
                common = ends[0] & ends[1] & ends[2]
                if len(common) != 1:
                    raise ConfigurationError(f"triangle arcs {names} have no common endpoint")
                for a in range(3):
                    for b in range(a + 1, 3):
                        if pairs.get(frozenset((names[a], names[b]))) != "shared-endpoint":
                            raise ConfigurationError(f"pair {names[a]}, {names[b]} of a triangle must share an endpoint")
            if kind == "vortex-rectangle":
                for k in range(4):
                    a, b = names[k], names[(k + 1) % 4]
                    if len(set(self.arcs[a]) & set(self.arcs[b])) != 1:
                        raise ConfigurationError(f"rectangle sides {a}, {b} are not consecutive")


def relations_from_arc_configuration(cfg: ArcConfiguration, generators=None) -> GroupPresentation:
    cfg.validate()
    gens = list(generators) if generators is not None else list(cfg.arcs)
    B = _Builder(gens, {n: tuple(cfg.arcs[n]) for n in gens})
    for kind, names in cfg.facts:
        words = [B.w(n) for n in names]
        if kind == "disjoint":
            B.co(*words, tuple(names), "disjoint")
        elif kind == "vortex-digon":
            B.co(*words, tuple(names), "vortex digon")
        elif kind == "shared-endpoint":
            B.br(*words, tuple(names), "shared endpoint")
        elif kind == "clockwise-triangle":
            B.cyc(words, tuple(names), "triangle")
        elif kind == "vortex-rectangle":
            B.cyc(words, tuple(names), "vortex rectangle")
    return B.build()


def _clockwise_at(point, arcs) -> list:
    """Arcs at a point of the line, clockwise starting from the west.

    Chain arcs lie on the line; the others are drawn above it, nested by length.
    """
    def key(item):
        name, (a, b), upper = item
        other = b if a == point else a
        if not upper:
            return (0, 0) if other < point else (3, 0)
        if other < point:
            return (1, point - other)
        return (2, -(other - point))

    return [name for name, _, _ in sorted(arcs, key=key)]


def line_configuration(chain, upper, punctured_regions) -> ArcConfiguration:
    """Configuration of arcs drawn on a line of decorations.

    ``chain`` maps names to consecutive positions ``(i, i+1)``; ``upper`` maps
    names to pairs of positions joined by nested arcs above the line.
    ``punctured_regions`` lists the arc cycles (digons or rectangles) that
    bound a disk with exactly one vortex inside.
    """
    arcs = {**chain, **upper}
    items = [(n, tuple(sorted(e)), n in upper) for n, e in arcs.items()]
    facts = []
    names = list(arcs)
    digons = {frozenset(r) for r in punctured_regions if len(r) == 2}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            shared = set(arcs[a]) & set(arcs[b])
            if len(shared) == 2:
                if frozenset((a, b)) not in digons:
                    raise ConfigurationError(f"arcs {a}, {b} bound a digon without a vortex")
                facts.append(("vortex-digon", (a, b)))
            elif len(shared) == 1:
                facts.append(("shared-endpoint", (a, b)))
            elif not _crosses(arcs[a], a in upper, arcs[b], b in upper):
                facts.append(("disjoint", (a, b)))
    points = sorted({p for e in arcs.values() for p in e})
    for p in points:
        at = [it for it in items if p in it[1]]
        order = _clockwise_at(p, at)
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                for k in range(j + 1, len(order)):
                    trip = (order[i], order[j], order[k])
                    if any(frozenset(pair) in digons for pair in ((trip[0], trip[1]), (trip[1], trip[2]), (trip[0], trip[2]))):
                        continue
                    facts.append(("clockwise-triangle", trip))
    for region in punctured_regions:
        if len(region) == 4:
            facts.append(("vortex-rectangle", tuple(region)))
    return ArcConfiguration(arcs, tuple(facts))


def _crosses(e, e_up, f, f_up) -> bool:
    if not (e_up and f_up):
        return False
    a, b = sorted(e)
    c, d = sorted(f)
    return a < c < b < d or c < a < d < b


def alternative_indices(spec: MarkedSurfaceSpec, partition) -> dict:
    """Index data of the alternative generators.

    Returns the x and y counts and, per loop index r, the number of x and y
    conjugating factors.  The chain x_k..x_1, s1, y_1..y_l covers all
    decorations, which fixes k + l = aleph - 2.
    """
    g, b, p = spec.genus, spec.boundary_count, spec.puncture_count
    aleph = spec.decoration_count()
    loops = spec.loop_count()
    m = list(partition)
    if len(m) != b:
        raise UnsupportedParametersError(f"partition needs {b} parts, got {len(m)}")
    if any(v < 1 for v in m):
        raise UnsupportedParametersError("partition parts must be positive")
    if sum(m) != aleph - 2 * loops:
        raise UnsupportedParametersError(
            f"partition must sum to aleph - 2(2g+b+p-1) = {aleph - 2 * loops}, got {sum(m)}")
    rest = sum(m[1:])
    n_x = loops - 1 + rest
    n_y = loops - 1 + m[0]

    def d(r):
        if r <= 2 * g:
            return r - 1
        if r <= 2 * g + b - 1:
            return r - 1 + sum(m[1:r - 2 * g + 1])
        return r - 1 + rest

    def q(r):
        if r == 1 and g != 0:
            return loops - 1 + m[0]
        if r % 2 == 1 and r <= 2 * g - 1:
            return loops - (r + 1) // 2
        if r % 2 == 0 and r <= 2 * g:
            return r // 2 - 1
        return r - 1 - g

    return {"x": n_x, "y": n_y, "d": {r: d(r) for r in range(1, loops + 1)},
            "q": {r: q(r) for r in range(1, loops + 1)}}


def alternative_configuration(spec: MarkedSurfaceSpec, partition) -> ArcConfiguration:
    """Arc configuration of the alternative generators (genus 0)."""
    if spec.genus != 0:
        raise UnsupportedParametersError("the alternative configuration is only drawn for genus 0")
    idx = alternative_indices(spec, partition)
    k, l = idx["x"], idx["y"]
    c = k + 1  # left end of s1
    chain = {"s1": (c, c + 1)}
    for i in range(1, k + 1):
        chain[f"x{i}"] = (c - i, c - i + 1)
    for i in range(1, l + 1):
        chain[f"y{i}"] = (c + i, c + i + 1)
    upper = {}
    for r in range(1, spec.loop_count() + 1):
        upper[f"tp{r}"] = (c - idx["d"][r], c + 1 + idx["q"][r])
    regions = []
    for r in vortex_range(spec):
        prev = f"tp{r-1}" if r > 1 else "s1"
        if upper[f"tp{r}"] == (chain[prev] if prev == "s1" else upper[prev]):
            regions.append((prev, f"tp{r}"))
            continue
        left = c - idx["d"][r]
        right = c + 1 + idx["q"][r]
        xs = [n for n, e in chain.items() if n.startswith("x") and e == (left, left + 1)]
        ys = [n for n, e in chain.items() if n.startswith("y") and e == (right - 1, right)]
        if not xs or not ys:
            raise ConfigurationError(f"region of vortex loop {r} is not a rectangle")
        regions.append((xs[0], prev, ys[0], f"tp{r}"))
    return line_configuration(chain, upper, regions)


def bt_presentation_alternative(spec: MarkedSurfaceSpec, partition=None) -> GroupPresentation:
    """Generators s1, x_i, y_i and tp_r (conjugated tau) with arc relations."""
    if partition is None:
        partition = default_partition(spec)
    cfg = alternative_configuration(spec, partition)
    idx = alternative_indices(spec, partition)
    gens = ["s1"] + [f"x{i}" for i in range(1, idx["x"] + 1)] + [f"y{i}" for i in range(1, idx["y"] + 1)]
    gens += [f"tp{r}" for r in range(1, spec.loop_count() + 1)]
    return relations_from_arc_configuration(cfg, gens)


def default_partition(spec: MarkedSurfaceSpec) -> tuple:
    """All spare decorations on the outer boundary, one on each inner one."""
    b = spec.boundary_count
    total = spec.decoration_count() - 2 * spec.loop_count()
    if total < b:
        raise UnsupportedParametersError(
            f"need aleph >= 2(2g+b+p-1) + b, have {spec.decoration_count()} decorations")
    return (total - (b - 1),) + (1,) * (b - 1)


# presentations from quivers with potential


def cbr_presentation_from_qp(q: Quiver, w: Potential, names=None, endpoints=None) -> GroupPresentation:
    """Co/Br by arrow count per vertex pair and one cyclic relation per potential term."""
    if q.has_double_arrows():
        raise UnsupportedParametersError("the quiver has a double arrow")
    n = q.vertices
    gens = list(names) if names else [f"b{i}" for i in range(1, n + 1)]
    B = _Builder(gens, endpoints)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            k = q.count(i, j) + q.count(j, i)
            a, b = gens[i - 1], gens[j - 1]
            if k == 0:
                B.co(B.w(a), B.w(b), (a, b), "no arrow")
            elif k == 1:
                B.br(B.w(a), B.w(b), (a, b), "one arrow")
            else:
                raise UnsupportedParametersError(f"vertices {i}, {j} carry {k} arrows")
    for cycle in w.cycles:
        # arguments run against the arrows: with generators sent to negative
        # twists this is the clockwise order of the dual arcs
        verts = [a for a, _ in reversed(cycle)]
        B.cyc([B.w(gens[v - 1]) for v in verts], tuple(gens[v - 1] for v in verts), "potential term")
    return B.build()


def weyl_quotient(p: GroupPresentation) -> GroupPresentation:
    B = _Builder(p.generators, p.endpoints)
    B.relators, B.tags = list(p.relators), list(p.tags)
    have = set(p.relators)
    for k, g in enumerate(p.generators, start=1):
        if (k, k) not in have:
            B.add((k, k), RelatorTag("Sq", (g,), "square"))
    return B.build()


# abelianization and export


def relator_matrix(p: GroupPresentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for a in r:
            row[abs(a) - 1] += 1 if a > 0 else -1
        rows.append(row)
    return rows


def abelianization(p: GroupPresentation) -> AbelianGroupInvariants:
    return abelian_invariants(relator_matrix(p), len(p.generators))


def export(p: GroupPresentation, fmt: str = "text") -> bytes:
    if fmt == "text":
        return "".join(p.format_relator(r) + "\n" for r in p.relators).encode()
    if fmt == "json":
        data = {
            "generators": list(p.generators),
            "relators": [list(r) for r in p.relators],
            "metadata": [t.as_dict() for t in p.tags],
            "endpoints": {k: list(v) for k, v in sorted(p.endpoints.items())},
        }
        return (json.dumps(data, sort_keys=True, indent=1) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def presentation_from_json(blob) -> GroupPresentation:
    data = json.loads(blob)
    tags = tuple(RelatorTag(t["kind"], tuple(t["args"]), t.get("family", ""), t.get("part", 0))
                 for t in data["metadata"])
    return GroupPresentation(
        tuple(data["generators"]),
        tuple(tuple(r) for r in data["relators"]),
        tags,
        {k: tuple(v) for k, v in data.get("endpoints", {}).items()},
    )


def parse_text_relator(line: str, generators) -> tuple:
    idx = {g: k + 1 for k, g in enumerate(generators)}
    out = []
    for tok in line.split():
        if tok == "1":
            continue
        out.append(-idx[tok[:-1]] if tok.endswith("'") else idx[tok])
    return reduce_word(out)
