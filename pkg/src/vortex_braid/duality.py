"""Dual braid twists of a triangulation and the quiver-to-twist pipeline.

Each triangle carries one decoration and each arc ``g`` has a dual closed
arc ``g*`` joining the decorations on its two sides.  For a disk the dual
graph is a tree, which is drawn with all decorations on the line and all
dual arcs on one side of it (depth-first order, children in rotation
order), so every dual arc is a standard arc of the planar model.

For a once-punctured disk the triangulation must contain the self-folded
triangle; it is placed last, next to the vortex.  The loop's dual is the
adjacent half twist and the dual of the folded edge is its image under the
push of that decoration around the vortex, so the two bound a digon around
the vortex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Braid, PlanarModel
from .presentations import GroupPresentation, cbr_presentation_from_qp
from .quiver import potential_of, quiver_of
from .triangulation import SignedTriangulation, UnsupportedSurfaceError, _nxt, _prv
from .verify import Report, relator_braid


@dataclass
class DualLayout:
    positions: dict  # triangle -> decoration position
    arcs: dict  # arc label -> (triangle, triangle)
    folded: tuple | None  # (edge label, loop label, folded triangle, its neighbour)


def dual_layout(t: SignedTriangulation) -> DualLayout:
    spec = t.spec
    if spec.genus or spec.boundary_count != 1 or spec.puncture_count > 1:
        raise UnsupportedSurfaceError("dual layouts are drawn for disks with at most one vortex")
    base = t.base
    n_tri = base.triangle_count
    if n_tri != spec.decoration_count():
        raise UnsupportedSurfaceError("triangle count differs from the decoration count")
    folded = None
    sf = base.self_folded()
    if spec.puncture_count:
        if not sf:
            raise UnsupportedSurfaceError("the once-punctured layout needs a self-folded triangle")
        edge, loop, _ = sf[0]
        s_tri = next(s // 3 for s in range(len(base.label)) if base.label[s] == edge)
        s_loop = next(s for s in range(3 * s_tri, 3 * s_tri + 3) if base.label[s] == loop)
        folded = (edge, loop, s_tri, base.twin[s_loop] // 3)
    root = folded[2] if folded else 0
    reverse = folded is not None
    order = []
    arcs = {}

    def visit(tri, entry):
        order.append(tri)
        if entry is None:
            slots = [3 * tri + k for k in range(3)]
        else:
            step = _prv if reverse else _nxt
            slots = [step(entry), step(step(entry))]
        for s in slots:
            o = base.twin[s]
            if o == -1 or o // 3 == tri:
                continue
            arcs[base.label[s]] = (tri, o // 3)
            visit(o // 3, o)

    visit(root, None)
    if len(order) != n_tri:
        raise UnsupportedSurfaceError("dual graph is not a tree")
    if reverse:
        pos = {tri: n_tri - k for k, tri in enumerate(order)}
    else:
        pos = {tri: k + 1 for k, tri in enumerate(order)}
    return DualLayout(pos, arcs, folded)


def dual_twists(t: SignedTriangulation, model: PlanarModel | None = None) -> dict:
    """Braid twist of every dual arc, keyed by arc label."""
    model = model or PlanarModel(t.spec)
    lay = dual_layout(t)
    out = {}
    for label, (u, v) in lay.arcs.items():
        out[label] = model.arc_twist(lay.positions[u], lay.positions[v])
    if lay.folded:
        edge, loop, s_tri, nb = lay.folded
        S = lay.positions[s_tri]
        push = model.l_twist(S, (model.vortex_position(1),)).braid
        out[edge] = out[loop].conj(push)
    return out


def digon_l_word(t: SignedTriangulation, model: PlanarModel) -> Braid:
    """L-twist word equal to the image of Co(b_loop, b_edge).

    With ``s_S`` the collision path from the folded triangle's decoration and
    ``s_T`` the one from its neighbour, the image is ``L_S^2 L_T^-2`` where
    ``L_S`` is the push around the vortex and ``L_T = s_T^2``.
    """
    lay = dual_layout(t)
    edge, loop, s_tri, _ = lay.folded
    S = lay.positions[s_tri]
    V = model.vortex_position(1)
    if V != S + 1:
        raise UnsupportedSurfaceError("folded decoration is not next to the vortex")
    s_S = model.half(S)
    loop_star = dual_twists(t, model)[loop]
    s_T = s_S.inverse() * loop_star * s_S
    L_S = model.l_twist(S, (V,)).braid
    return L_S ** 2 * (s_T ** 2) ** -2


def cbr_pipeline(t: SignedTriangulation) -> tuple[GroupPresentation, dict]:
    q, w = quiver_of(t), potential_of(t)
    names = [f"b{i}" for i in range(1, q.vertices + 1)]
    lay = dual_layout(t)
    ends = {f"b{l}": tuple(sorted((lay.positions[u], lay.positions[v]))) for l, (u, v) in lay.arcs.items()}
    if lay.folded:
        edge, loop, *_ = lay.folded
        ends[f"b{edge}"] = ends[f"b{loop}"]
    return cbr_presentation_from_qp(q, w, names, ends), ends


def verify_cbr_relators(t: SignedTriangulation, report: Report | None = None) -> Report:
    """Map ``b_g -> (g*)^-1`` and evaluate every relator in the planar model.

    The Co relator of the loop and folded edge is compared with its L-twist
    word and must not hold on its own; every other relator must be trivial.
    """
    model = PlanarModel(t.spec)
    report = report if report is not None else Report("cbr", model.advisory)
    p, _ = cbr_pipeline(t)
    twists = dual_twists(t, model)
    table = {f"b{l}": b.inverse() for l, b in twists.items()}
    lay = dual_layout(t)
    digon = {f"b{lay.folded[0]}", f"b{lay.folded[1]}"} if lay.folded else set()
    for tag, rel in zip(p.tags, p.relators):
        b = relator_braid(model, rel, p.generators, table)
        name = f"{tag.kind}({','.join(tag.args)})" + (f" part {tag.part}" if tag.part else "")
        if tag.kind == "Co" and set(tag.args) == digon:
            want = digon_l_word(t, model)
            if tag.args[0] != f"b{lay.folded[1]}":
                want = want.inverse()
            report.add(f"{name} equals its L-square word", b.equals(want))
            report.add(f"{name} alone is not the identity", not b.is_identity())
        else:
            report.add(f"{name} is the identity", b.is_identity())
    return report
