import pytest

import oracles

from vortex_braid.exchange import (
    PENTAGON,
    SQUARE1,
    SQUARE2,
    SQUARE3,
    VertexLimitExceeded,
    classify_pair,
    enumerate_graph,
    export,
    graph_from_json,
    verify_groupoid_cycle,
)
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.triangulation import seed_triangulation


def test_export_round_trip_and_dot():
    g = enumerate_graph(MarkedSurfaceSpec.disk(3, 1))
    h = graph_from_json(export(g, "json"))
    assert h.vertices.keys() == g.vertices.keys() and h.edges == g.edges
    dot = export(g, "dot").decode()
    assert dot.startswith("digraph") and dot.count("->") == len(g.edges)
    with pytest.raises(ValueError):
        export(g, "xml")


def test_output_independent_of_workers():
    spec = MarkedSurfaceSpec.disk(4, 1)
    assert export(enumerate_graph(spec, workers=1), "json") == export(enumerate_graph(spec, workers=3), "json")


def test_vertex_limit():
    with pytest.raises(VertexLimitExceeded) as exc:
        enumerate_graph(MarkedSurfaceSpec.disk(7), vertex_limit=10)
    assert len(exc.value.partial.vertices) == 11
    with pytest.raises(ValueError):
        enumerate_graph(MarkedSurfaceSpec.disk(5), vertex_limit=0)


def test_pair_classes_on_seeds():
    t = seed_triangulation(MarkedSurfaceSpec.disk(6))
    kinds = {classify_pair(t, a, b) for a in t.arc_labels() for b in t.arc_labels() if a < b}
    assert kinds <= {SQUARE1, PENTAGON}
    t = seed_triangulation(MarkedSurfaceSpec.disk(4, 1))
    edge, loop, _ = t.base.self_folded()[0]
    assert classify_pair(t, edge, loop) == SQUARE3


def _class_counts(spec):
    g = enumerate_graph(spec)
    out = {}
    for t in g.vertices.values():
        for a in t.arc_labels():
            for b in t.arc_labels():
                if a < b:
                    k = verify_groupoid_cycle(g, t, a, b).kind
                    out[k] = out.get(k, 0) + 1
    return out


@pytest.mark.parametrize("m", [5, 6, 7])
def test_disk_pair_classes_match_oracle(m):
    assert _class_counts(MarkedSurfaceSpec.disk(m)) == {k: v for k, v in oracles.disk_pair_classes(m).items() if v}


def test_punctured_pair_classes_frozen():
    assert _class_counts(MarkedSurfaceSpec.disk(3, 1)) == {PENTAGON: 30, SQUARE3: 6, SQUARE2: 6}
    assert _class_counts(MarkedSurfaceSpec.disk(4, 1)) == {PENTAGON: 180, SQUARE1: 80, SQUARE3: 20, SQUARE2: 20}


def test_annulus_graph_is_regular_and_connected():
    g = enumerate_graph(MarkedSurfaceSpec(0, 2, 0, (1, 1)), vertex_limit=500)
    assert g.is_connected()
    assert g.regularity_exceptions() == []
