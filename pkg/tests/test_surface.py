import pytest
from hypothesis import given, strategies as st

from vortex_braid.surface import AbelianGroupInvariants, MarkedSurfaceSpec, SurfaceSpecError, h1_punctured, h1_vortex
from vortex_braid.triangulation import UnsupportedSurfaceError, seed_triangulation


def test_disk_numbers():
    s = MarkedSurfaceSpec.disk(6)
    assert (s.rank(), s.decoration_count(), s.loop_count()) == (3, 4, 0)
    s = MarkedSurfaceSpec(0, 1, 2, (3,))
    assert (s.rank(), s.decoration_count(), s.loop_count()) == (6, 5, 2)
    assert h1_vortex(s).as_dict() == {"free_rank": 0, "torsion": [2, 2]}
    assert h1_punctured(s).free_rank == 2


@pytest.mark.parametrize("bad", [
    '{"genus": -1, "boundary": [3]}',
    '{"genus": 0, "boundary": []}',
    '{"genus": 0, "boundary": [0]}',
    '{"genus": 0, "boundary": [3], "punctures": 1, "vortex_signs": [2]}',
    '{"boundary": 3}',
    'not json',
])
def test_rejects_malformed(bad):
    with pytest.raises(SurfaceSpecError):
        MarkedSurfaceSpec.from_json(bad)


def test_invariants_normalize():
    assert AbelianGroupInvariants(1, (6, 2)).torsion == (2, 6)
    with pytest.raises(ValueError):
        AbelianGroupInvariants(0, (2, 3))


specs = st.builds(
    lambda g, ms, p: MarkedSurfaceSpec(g, len(ms), p, tuple(ms)),
    st.integers(0, 1), st.lists(st.integers(1, 4), min_size=1, max_size=2), st.integers(0, 2),
).filter(lambda s: s.rank() >= 1)


@given(specs)
def test_json_round_trip(s):
    assert MarkedSurfaceSpec.from_json(s.to_json()) == s


def test_once_punctured_monogon_is_refused():
    with pytest.raises(UnsupportedSurfaceError):
        seed_triangulation(MarkedSurfaceSpec.disk(1, 1))


@given(specs.filter(lambda s: s != MarkedSurfaceSpec.disk(1, 1)))
def test_seed_has_rank_many_arcs_and_decorations(s):
    t = seed_triangulation(s)
    assert len(t.arc_labels()) == s.rank()
    # one decoration per triangle
    assert t.base.triangle_count == s.decoration_count()
