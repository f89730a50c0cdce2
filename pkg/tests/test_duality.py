import pytest

from vortex_braid.duality import dual_layout, verify_cbr_relators
from vortex_braid.exchange import enumerate_graph
from vortex_braid.quiver import quiver_of
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.triangulation import UnsupportedSurfaceError, seed_triangulation


def _eligible(spec):
    for t in enumerate_graph(spec).vertices.values():
        if quiver_of(t).has_double_arrows():
            continue
        if spec.puncture_count and not t.base.self_folded():
            continue
        yield t


@pytest.mark.parametrize("spec", [MarkedSurfaceSpec.disk(5), MarkedSurfaceSpec.disk(6),
                                  MarkedSurfaceSpec.disk(3, 1), MarkedSurfaceSpec.disk(4, 1)])
def test_pipeline_over_graph(spec):
    n = 0
    for t in _eligible(spec):
        rep = verify_cbr_relators(t)
        assert rep.ok and all(c.status == "pass" for c in rep.checks), [c.name for c in rep.checks if c.status != "pass"]
        n += 1
    assert n > 0


def test_layout_is_a_bijection():
    t = seed_triangulation(MarkedSurfaceSpec.disk(7))
    lay = dual_layout(t)
    assert sorted(lay.positions.values()) == list(range(1, 6))
    assert len(lay.arcs) == 4 and lay.folded is None


def test_layout_refusals():
    with pytest.raises(UnsupportedSurfaceError):
        dual_layout(seed_triangulation(MarkedSurfaceSpec(0, 2, 0, (1, 2))))
    with pytest.raises(UnsupportedSurfaceError):
        dual_layout(seed_triangulation(MarkedSurfaceSpec.disk(3, 2)))
    punctured = enumerate_graph(MarkedSurfaceSpec.disk(4, 1)).vertices.values()
    no_fold = next(t for t in punctured if not t.base.self_folded())
    with pytest.raises(UnsupportedSurfaceError):
        dual_layout(no_fold)
