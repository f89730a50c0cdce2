import json

from vortex_braid.engine import PlanarModel
from vortex_braid.surface import MarkedSurfaceSpec
from vortex_braid.verify import (
    commutator_formula_check,
    verify_epsilon_chains,
    verify_commutator_form,
    verify_commutator_formula,
    verify_corrected_vortex_relators,
    verify_vortex_relation,
)

TWO = PlanarModel(MarkedSurfaceSpec(0, 1, 2, (3,)))


def test_commutator_reading():
    res = commutator_formula_check(TWO, 1, 2)
    assert res.status == "refuted" and "a=x,b=s2 letterwise" in res.detail
    assert not verify_commutator_formula(TWO, 1, 2)
    assert res.ok  # a refuted reading is reported, not counted as a failure


def test_commutator_form_used_by_the_chains():
    for spec in ((0, 1, 2, (3,)), (0, 1, 3, (2,))):
        m = PlanarModel(MarkedSurfaceSpec(spec[0], spec[1], spec[2], spec[3]))
        for s in range(1, m.loops + 1):
            for r in range(s + 1, m.loops + 1):
                assert verify_commutator_form(m, s, r)


def test_chain_failures_are_confined_to_one_case():
    rep = verify_epsilon_chains(TWO)
    failing = {c.name for c in rep.checks if c.status == "fail"}
    assert failing and all("s=1" in name for name in failing)
    assert rep.counts()["pass"] > 30
    assert any(c.status == "skipped" for c in rep.checks)


def test_advisory_and_json():
    m = PlanarModel(MarkedSurfaceSpec(0, 2, 2, (2, 2)))
    rep = verify_corrected_vortex_relators(m)
    assert rep.advisory and rep.ok
    json.dumps(rep.as_dict())


def test_negative_control_fails_when_forced():
    from vortex_braid.verify import Report

    rep = Report("vortex")
    assert verify_vortex_relation(TWO, 2, rep)
    neg = [c for c in rep.checks if "negative control" in c.name]
    assert neg and neg[0].status == "pass"
