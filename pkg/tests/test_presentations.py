import pytest
from hypothesis import given, settings, strategies as st

import oracles
from vortex_braid.engine import PlanarModel
from vortex_braid.presentations import (
    ArcConfiguration,
    ConfigurationError,
    UnsupportedParametersError,
    abelianization,
    bt_presentation_alternative,
    bt_presentation_punctured,
    bt_presentation_vortex,
    cbr_presentation_from_qp,
    export,
    parse_text_relator,
    presentation_from_json,
    relator_matrix,
    weyl_quotient,
)
from vortex_braid.quiver import Potential, Quiver
from vortex_braid.smith import abelian_invariants, smith_diagonal
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.verify import relator_braid, vortex_correction

ONE = MarkedSurfaceSpec(0, 1, 1, (4,))
TWO = MarkedSurfaceSpec(0, 1, 2, (3,))


def test_relator_counts():
    assert len(bt_presentation_punctured(ONE).relators) == 6
    assert len(bt_presentation_vortex(ONE).relators) == 7
    assert len(bt_presentation_punctured(TWO).relators) == 15
    assert len(bt_presentation_vortex(TWO).relators) == 17
    # six decorations, no loops: braid relations of the 5-strand braid group only
    p = bt_presentation_punctured(MarkedSurfaceSpec(0, 1, 0, (6,)))
    assert p.generators == ("s1", "s2", "s3") and sorted(p.kinds()) == ["Br", "Br", "Co"]


def test_hypothesis_checked():
    with pytest.raises(UnsupportedParametersError):
        bt_presentation_punctured(MarkedSurfaceSpec(0, 1, 0, (4,)))
    with pytest.raises(UnsupportedParametersError):
        bt_presentation_punctured(MarkedSurfaceSpec(0, 1, 1, (2,)))


def test_golden_text():
    co = cbr_presentation_from_qp(Quiver.from_arrows(2, []), Potential(), ["a", "b"])
    br = cbr_presentation_from_qp(Quiver.from_arrows(2, [(1, 2)]), Potential(), ["a", "b"])
    assert export(co) == b"a b a' b'\n"
    assert export(br) == b"a b a b' a' b'\n"


def test_cbr_examples():
    a3 = cbr_presentation_from_qp(Quiver.from_arrows(3, [(1, 2), (2, 3)]), Potential())
    assert sorted(a3.kinds()) == ["Br", "Br", "Co"]
    cyc = cbr_presentation_from_qp(Quiver.from_arrows(3, [(1, 2), (2, 3), (3, 1)]),
                                   Potential((((1, 2), (2, 3), (3, 1)),)))
    assert sorted(t.kind for t in cyc.relations()) == ["Br", "Br", "Br", "Tr"]
    with pytest.raises(UnsupportedParametersError):
        cbr_presentation_from_qp(Quiver.from_arrows(2, [(1, 2), (1, 2)]), Potential())


@pytest.mark.parametrize("spec", [ONE, TWO, MarkedSurfaceSpec(1, 1, 1, (1,))])
def test_json_and_text_round_trip(spec):
    p = bt_presentation_vortex(spec)
    assert presentation_from_json(export(p, "json")) == p
    lines = export(p).decode().splitlines()
    assert tuple(parse_text_relator(l, p.generators) for l in lines) == p.relators


def test_weyl_is_idempotent():
    w = weyl_quotient(bt_presentation_vortex(TWO))
    assert weyl_quotient(w) == w
    assert abelianization(w).torsion == (2,)


def test_abelianizations_agree():
    for spec in (TWO, MarkedSurfaceSpec(0, 1, 3, (3,)), MarkedSurfaceSpec(0, 2, 1, (2, 2)), MarkedSurfaceSpec(0, 1, 1, (6,))):
        v, a = bt_presentation_vortex(spec), bt_presentation_alternative(spec)
        assert abelianization(v) == abelianization(a)
        assert (abelianization(v).free_rank, abelianization(v).torsion) == (1, ())


def test_alternative_generators():
    assert bt_presentation_alternative(TWO).generators == ("s1", "x1", "y1", "y2", "tp1", "tp2")
    with pytest.raises(UnsupportedParametersError):
        bt_presentation_alternative(TWO, (5,))
    with pytest.raises(UnsupportedParametersError):
        bt_presentation_alternative(MarkedSurfaceSpec(1, 1, 1, (1,)))


def _alt_table(model, spec):
    x, y = model.x(), model.y()
    if spec == TWO:
        return {"s1": model.half(1), "x1": x, "y1": y, "y2": model.half(4),
                "tp1": model.tau(1).braid, "tp2": model.tau(2).braid.conj(x.inverse() * y)}
    return {"s1": model.half(1), "y1": y, "y2": model.half(3), "tp1": model.tau(1).braid}


@pytest.mark.parametrize("spec", [ONE, TWO])
def test_alternative_relators_in_the_engine(spec):
    m = PlanarModel(spec)
    p = bt_presentation_alternative(spec)
    table = _alt_table(m, spec)
    for tag, rel in zip(p.tags, p.relators):
        b = relator_braid(m, rel, p.generators, table)
        if tag.family == "vortex digon":
            # Co(s1, tp1) is the vortex relation at the first loop
            assert b.equals(vortex_correction(m, 1).inverse())
        elif tag.kind == "Rec":
            assert not b.is_identity()
        else:
            assert b.is_identity(), (tag, p.format_relator(rel))


def test_arc_configuration_validation():
    with pytest.raises(ConfigurationError):
        ArcConfiguration({"a": (1, 2)}, (("disjoint", ("a", "b")),)).validate()


# Smith normal form against the determinantal-divisor oracle

matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_matches_determinantal_divisors(M):
    inv = abelian_invariants(M, len(M[0]))
    assert (inv.free_rank, inv.torsion) == oracles.determinantal_invariants(M, len(M[0]))
    assert len(smith_diagonal(M)) == oracles.rational_rank(M)


def test_smith_example():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert relator_matrix(bt_presentation_punctured(ONE))[0] == [0, 0, 0, 0]
