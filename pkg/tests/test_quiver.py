import pytest
from hypothesis import given, settings, strategies as st

from vortex_braid.exchange import enumerate_graph
from vortex_braid.quiver import Potential, Quiver, check_flip_mutation, mutate, potential_of, quiver_from_json, quiver_of
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.triangulation import seed_triangulation


def matrix_mutation(B, k):
    """Entry-wise mutation rule, written independently of the arrow version."""
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


@st.composite
def quivers(draw):
    n = draw(st.integers(2, 6))
    arrows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = draw(st.integers(-2, 2))
            arrows += [(i, j)] * c if c > 0 else [(j, i)] * -c
    return Quiver.from_arrows(n, arrows)


@given(quivers(), st.data())
def test_mutation_is_an_involution(q, data):
    k = data.draw(st.integers(1, q.vertices))
    assert mutate(mutate(q, k), k) == q


@given(quivers(), st.data())
def test_mutation_matches_matrix_rule(q, data):
    k = data.draw(st.integers(1, q.vertices))
    assert mutate(q, k).matrix() == matrix_mutation(q.matrix(), k - 1)


def test_seed_quiver_of_punctured_square():
    t = seed_triangulation(MarkedSurfaceSpec.disk(4, 1))
    assert quiver_of(t).arrows == ((1, 2), (2, 3), (2, 4))
    assert potential_of(t).cycles == ()


def test_potential_cycles_are_cycles_of_the_quiver():
    g = enumerate_graph(MarkedSurfaceSpec.disk(4, 1))
    with_cycles = 0
    for t in g.vertices.values():
        q, w = quiver_of(t), potential_of(t)
        assert w.is_valid_for(q)
        with_cycles += bool(w.cycles)
    assert with_cycles > 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([MarkedSurfaceSpec.disk(6), MarkedSurfaceSpec.disk(3, 2), MarkedSurfaceSpec(0, 2, 0, (2, 1))]),
       st.lists(st.integers(0, 10), max_size=6))
def test_flip_mutation_along_random_walks(spec, steps):
    from vortex_braid.triangulation import flip

    t = seed_triangulation(spec)
    for s in steps:
        labels = t.arc_labels()
        lab = labels[s % len(labels)]
        assert check_flip_mutation(t, lab)
        t = flip(t, lab)


def test_json_round_trip():
    t = seed_triangulation(MarkedSurfaceSpec.disk(3, 1))
    q, w = quiver_of(t), potential_of(t)
    assert quiver_from_json(q.to_json(w)) == (q, w)
    with pytest.raises(IndexError):
        mutate(q, 0)
    assert not Potential(((((1, 2)),),)).is_valid_for(Quiver.from_arrows(2, [(1, 2)]))
