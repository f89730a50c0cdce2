import json

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.triangulation import (
    canonical_form,
    flip,
    from_json,
    from_tagged,
    is_equivalent,
    normalize,
    polygon_arc_signature,
    seed_triangulation,
    to_json,
    to_tagged,
)
from vortex_braid.exchange import enumerate_graph

SURFACES = [
    MarkedSurfaceSpec.disk(6),
    MarkedSurfaceSpec.disk(4, 1),
    MarkedSurfaceSpec.disk(3, 2),
    MarkedSurfaceSpec(0, 2, 0, (1, 2)),
    MarkedSurfaceSpec(1, 1, 0, (1,)),
    MarkedSurfaceSpec(0, 1, 2, (3,), (1, -1)),
]


@st.composite
def walks(draw):
    spec = draw(st.sampled_from(SURFACES))
    t = seed_triangulation(spec)
    for _ in range(draw(st.integers(0, 8))):
        t = flip(t, draw(st.sampled_from(t.arc_labels())))
    return t


@settings(max_examples=60, deadline=None)
@given(walks(), st.data())
def test_flip_is_an_involution(t, data):
    label = data.draw(st.sampled_from(t.arc_labels()))
    back = flip(flip(t, label), label)
    assert is_equivalent(back, t, labelled=True)
    assert canonical_form(normalize(back)) == canonical_form(normalize(t))


@settings(max_examples=60, deadline=None)
@given(walks())
def test_round_trips(t):
    assert is_equivalent(from_json(to_json(t)), t, labelled=True)
    assert is_equivalent(from_tagged(to_tagged(t)), t, labelled=True)
    json.loads(to_json(t))


@settings(max_examples=40, deadline=None)
@given(walks())
def test_flip_keeps_arc_count(t):
    for label in t.arc_labels():
        u = flip(t, label)
        assert sorted(u.arc_labels()) == sorted(t.arc_labels())
        u.base.validate()


def test_flip_of_unknown_label():
    with pytest.raises(KeyError):
        flip(seed_triangulation(MarkedSurfaceSpec.disk(5)), 7)


def _oracle_form(sig, m, punctured):
    out = set()
    for kind, a, b in sig:
        if kind == "radial":
            out.add(("p", a - 1, b))
        elif punctured:
            out.add(("b", a - 1, (b - a) % m))
        else:
            out.add((a - 1, b - 1))
    return frozenset(out)


@pytest.mark.parametrize("m,p", [(5, 0), (6, 0), (7, 0), (3, 1), (4, 1), (5, 1)])
def test_graph_vertices_are_exactly_the_oracle_arc_sets(m, p):
    spec = MarkedSurfaceSpec.disk(m, p)
    g = enumerate_graph(spec)
    got = {_oracle_form(polygon_arc_signature(t), m, p) for t in g.vertices.values()}
    want = set(oracles.punctured_tagged_triangulations(m) if p else oracles.disk_triangulations(m))
    assert got == want
