"""Exact verification suites run on the planar model.

Every check compares two mapping classes through their action on all free
generators, so a pass is an exact identity.  Chains of equalities
are checked link by link and the failing links are reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Braid, ImageTooLarge, PlanarModel, commutator

IMAGE_LIMIT = 20000


def _image_table(b: Braid):
    try:
        return [list(b.apply((k,), IMAGE_LIMIT)) for k in range(1, b.rank + 1)]
    except ImageTooLarge:
        return f"omitted: images exceed {IMAGE_LIMIT} letters"


@dataclass
class CheckResult:
    name: str
    status: str  # pass, fail, skipped, refuted
    detail: str = ""
    images: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skipped", "refuted")

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.images:
            out["images"] = self.images
        return out


@dataclass
class Report:
    suite: str
    advisory: bool = False
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail="", lhs=None, rhs=None):
        images = None
        if not passed and lhs is not None and rhs is not None:
            images = {"lhs": _image_table(lhs), "rhs": _image_table(rhs)}
        self.checks.append(CheckResult(name, "pass" if passed else "fail", detail, images))
        return passed

    def eq(self, name, lhs: Braid, rhs: Braid):
        """Record ``lhs == rhs``; failures keep both image tables."""
        return self.add(name, lhs.equals(rhs), lhs=lhs, rhs=rhs)

    def trivial(self, name, b: Braid):
        return self.add(name, b.is_identity(), lhs=b, rhs=Braid(b.rank))

    def skip(self, name, reason):
        self.checks.append(CheckResult(name, "skipped", reason))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def counts(self) -> dict:
        out: dict = {}
        for c in self.checks:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "advisory": self.advisory,
            "ok": self.ok,
            "counts": self.counts(),
            "checks": [c.as_dict() for c in self.checks],
        }


def _inv(b: Braid) -> Braid:
    return b.inverse()


def _prod(*bs: Braid) -> Braid:
    out = bs[0]
    for b in bs[1:]:
        out = out * b
    return out


def _chain(report: Report, name: str, terms, lhs_label="0"):
    """Check consecutive equalities of a chain."""
    ok = True
    for k in range(1, len(terms)):
        a, b = terms[k - 1], terms[k]
        ok &= report.add(f"{name} step {k}", a.equals(b), lhs=a, rhs=b)
    return ok


# relators


def relator_braid(model: PlanarModel, relator, names, table=None) -> Braid:
    """Evaluate a relator given as signed 1-based generator indices."""
    word = [(names[abs(a) - 1], 1 if a > 0 else -1) for a in relator]
    return model.evaluate(word, table)


def verify_relator(model: PlanarModel, relator, names, table=None) -> bool:
    return relator_braid(model, relator, names, table).is_identity()


class _Digon:
    """Collision paths and L-twists of the digon between tau_{r-1} and tau_r.

    ``eta1 = tau_{r-1}`` and ``eta2 = tau_r``.  The path ``s2`` runs from the
    first decoration to the vortex; ``s1`` runs from the second decoration,
    obtained by sliding the endpoint of ``tau_r`` into the vortex along
    ``s2``.  ``delta_i`` is the completion of ``s_i``.
    """

    def __init__(self, model: PlanarModel, r: int):
        self.model = model
        q = model.loop_position(r)
        self.eta1 = model.tau(r - 1).braid
        self.eta2 = model.tau(r).braid
        self.s2 = model.arc_twist(1, q)
        slide = self.s2.inverse() * model.epsilon(r).braid
        self.s1 = slide * model.half(1) * slide.inverse()
        self.L2 = model.l_twist(1, (q,)).braid
        self.L1 = slide * model.l_twist(2, (1,)).braid * slide.inverse()

    def correction(self) -> Braid:
        """The L-square word equal to the commutator ``[tau_r, tau_{r-1}]``."""
        c = _inv(self.eta2) * _inv(self.eta1)
        return (self.L2 ** 2 * self.L1 ** -2).conj(c)


def vortex_correction(model: PlanarModel, r: int) -> Braid:
    return _Digon(model, r).correction()


def verify_vortex_relation(model: PlanarModel, r: int, report: Report | None = None) -> bool:
    if not model.holes + 1 <= r <= model.loops:
        raise ValueError(f"index {r} is not a vortex loop")
    report = report if report is not None else Report("vortex", model.advisory)
    d = _Digon(model, r)
    e1, e2, s1, s2 = d.eta1, d.eta2, d.s1, d.s2
    ok = report.eq(f"r={r} eta1 = s1 s2 s1^-1", e1, s1 * s2 * _inv(s1))
    ok &= report.eq(f"r={r} eta2 = s2 s1 s2^-1", e2, s2 * s1 * _inv(s2))
    ok &= report.eq(f"r={r} L-twist at first end = s2^2", d.L2, s2 ** 2)
    ok &= report.eq(f"r={r} L-twist at second end = s1^2", d.L1, s1 ** 2)
    lhs = e1 * e2 * d.L2 ** 2
    rhs = e2 * e1 * d.L1 ** 2
    ok &= report.add(f"r={r} eta1 eta2 L2^2 = eta2 eta1 L1^2", lhs.equals(rhs), lhs=lhs, rhs=rhs)
    common = _prod(s1, s2, s1, s2, s1, s2)
    ok &= report.eq(f"r={r} common value s1 s2 s1 s2 s1 s2", lhs, common)
    taurus = model.taurus(r)
    ok &= report.add(f"r={r} Taurus = L-square word", taurus.equals(d.correction()),
                     lhs=taurus, rhs=d.correction())
    neg = e1 * e2 * d.L1 ** 2
    report.add(f"r={r} negative control (mismatched delta) fails", not neg.equals(rhs))
    return ok and not neg.equals(rhs)


def verify_corrected_vortex_relators(model: PlanarModel, report: Report | None = None) -> Report:
    """Co(tau_r, tau_{r-1}) fails alone and holds after the L-square correction."""
    report = report if report is not None else Report("vortex", model.advisory)
    for r in range(model.holes + 1, model.loops + 1):
        plain = commutator(model.tau(r).braid, model.tau(r - 1).braid)
        corrected = plain * _inv(vortex_correction(model, r))
        report.trivial(f"Co(t{r},t{r-1}) corrected is identity", corrected)
        report.add(f"Co(t{r},t{r-1}) uncorrected is not identity", not plain.is_identity())
    return report


# conjugation formulas


def verify_conjugation_formulas(model: PlanarModel) -> Report:
    report = Report("conjugation", model.advisory)
    s = model.half
    T = lambda r: model.tau(r).braid
    E = lambda t: model.epsilon(t).braid
    x = model.x()
    P = model.loops
    for t in range(1, P + 1):
        for i in range(1, model.aleph):
            want = T(t) if i == 1 else s(i)
            got = s(i).conj(_inv(E(t)))
            report.add(f"sigma by e^-1: s{i}^(e{t}^-1)", got.equals(want), lhs=got, rhs=want)
            want = T(t).conj(_inv(s(1))) if i == 1 else s(i)
            got = s(i).conj(E(t))
            report.add(f"sigma by e: s{i}^(e{t})", got.equals(want), lhs=got, rhs=want)
        for r in range(1, P + 1):
            got = T(r).conj(_inv(E(t)))
            if r == t:
                want = x.conj(s(2) * T(t))
            elif r < t:
                want = T(r).conj(_prod(x, T(t), s(2), T(t)))
            else:
                want = T(r).conj(_prod(_inv(x), _inv(T(t)), s(2), T(t)))
            report.add(f"tau by e^-1: t{r}^(e{t}^-1)", got.equals(want), lhs=got, rhs=want)
            got = T(r).conj(E(t))
            if r == t:
                want = s(1)
            elif r < t:
                want = T(r).conj(_prod(_inv(s(2)), _inv(T(t)), _inv(s(1)), _inv(s(2))))
            else:
                want = T(r).conj(_prod(s(2), T(t), _inv(s(1)), _inv(s(2))))
            report.add(f"tau by e: t{r}^(e{t})", got.equals(want), lhs=got, rhs=want)
    # the Taurus elements transform by the same conjugators
    for r in range(model.holes + 2, P + 1):
        tau_r = model.taurus(r)
        for t in range(1, P + 1):
            got = tau_r.conj(_inv(E(t)))
            if r <= t:
                want = tau_r.conj(_prod(x, T(t), s(2), T(t)))
            else:
                want = tau_r.conj(_prod(_inv(x), _inv(T(t)), s(2), T(t)))
            report.eq(f"Taurus{r}^(e{t}^-1)", got, want)
            got = tau_r.conj(E(t))
            if r <= t:
                want = tau_r.conj(_prod(_inv(s(2)), _inv(T(t)), _inv(s(1)), _inv(s(2))))
            else:
                want = tau_r.conj(_prod(s(2), T(t), _inv(s(1)), _inv(s(2))))
            report.eq(f"Taurus{r}^(e{t})", got, want)
    return report


# commutators of the eps generators


def commutator_formula_word(model: PlanarModel, s: int, r: int, a: Braid, b: Braid) -> Braid:
    """Right-hand side of the commutator formula, bars read as letter-wise inverses."""
    ts, tr = model.tau(s).braid, model.tau(r).braid
    return _prod(_inv(ts), _inv(b), a, _inv(tr), _inv(a), _inv(ts), a, b, tr, b)


def verify_commutator_formula(model: PlanarModel, s: int, r: int) -> bool:
    """True when the commutator formula holds under the reading a = s1, b = s2."""
    return commutator_formula_check(model, s, r).status == "pass"


def commutator_formula_check(model: PlanarModel, s: int, r: int) -> CheckResult:
    """Test the commutator formula under the working reading a = s1, b = s2.

    Returns ``pass`` when the reading holds and ``refuted`` otherwise; in the
    refuted case the detail names the readings that do hold.
    """
    if not 1 <= s < r <= model.loops:
        raise ValueError("need 1 <= s < r <= number of loops")
    comm = commutator(model.epsilon(s).braid, model.epsilon(r).braid)
    s1, s2, x = model.half(1), model.half(2), model.x()
    ts, tr = model.tau(s).braid, model.tau(r).braid
    readings = {
        "a=s1,b=s2 letterwise": commutator_formula_word(model, s, r, s1, s2),
        "a=s1,b=s2 grouped": _prod(_inv(ts * s2), s1, _inv(tr * s1 * ts), s1, s2, tr, s2),
        "a=x,b=s2 letterwise": commutator_formula_word(model, s, r, x, s2),
        "a=x,b=s2 grouped": _prod(_inv(ts * s2), x, _inv(tr * x * ts), x, s2, tr, s2),
    }
    holding = [k for k, w in readings.items() if comm.equals(w)]
    name = f"[e{s},e{r}] commutator formula"
    if "a=s1,b=s2 letterwise" in holding or "a=s1,b=s2 grouped" in holding:
        return CheckResult(name, "pass", "holds with a=s1, b=s2; readings holding: " + ", ".join(holding))
    return CheckResult(name, "refuted", "hypothesis refuted; readings holding: " + (", ".join(holding) or "none"))


def verify_commutator_form(model: PlanarModel, s: int, r: int) -> bool:
    """[e_s, e_r] = t_s^-1 s1 (t_s^-1)^(x t_r s2) t_r, the form used in the epsilon chains."""
    ts, tr = model.tau(s).braid, model.tau(r).braid
    w = _prod(_inv(ts), model.half(1), _inv(ts).conj(_prod(model.x(), tr, model.half(2))), tr)
    return commutator(model.epsilon(s).braid, model.epsilon(r).braid).equals(w)


# epsilon commutator chains


def verify_epsilon_chains(model: PlanarModel) -> Report:
    report = Report("appendix", model.advisory)
    s1, s2, x = model.half(1), model.half(2), model.x()
    T = lambda r: model.tau(r).braid
    E = lambda t: model.epsilon(t).braid
    I = _inv
    first = model.holes + 1
    for r in range(first, model.loops + 1):
        if r - 1 < 1:
            report.skip(f"r={r} chains", "tau_{r-1} has index 0, outside the range of the conjugation formulas")
            continue
        tr, tq = T(r), T(r - 1)
        er, eq = E(r), E(r - 1)
        taurus = model.taurus(r)
        # Lambda_r
        outer = _prod(I(tr), tq, I(s1), I(s2))
        lam = [
            I(tq).conj(er) * tr.conj(eq),
            I(tq).conj(_prod(I(s2), I(tr), I(s1), I(s2))) * tr.conj(_prod(s2, tq, I(s1), I(s2))),
            I(s2).conj(_prod(tq, I(tr), I(s1), I(s2))) * s2.conj(outer),
            (I(s2).conj(_prod(tq, I(tr), I(tq), tr)) * s2).conj(outer),
            (I(taurus.conj(tr)) * taurus.conj(tr * s2)).conj(outer),
        ]
        _chain(report, f"Lambda_{r}", lam)
        Lam = lam[0]
        # the generator s1
        chain = [
            s1.conj(er * I(eq)) * I(s1).conj(eq * I(er)),
            tr.conj(I(s1) * I(eq)) * I(tq).conj(I(s1) * I(er)),
            tr.conj(_prod(I(x), I(tq), s2)) * I(tq).conj(_prod(x, tr, s2)),
            (tr.conj(I(x) * I(tq)) * I(tq).conj(x * tr)).conj(s2),
            (x.conj(tr * I(tq)) * I(x).conj(I(tq) * tr)).conj(s2),
        ]
        _chain(report, f"r={r} case s1", chain)
        report.add(f"r={r} case s_i (i>=2) commutes with delta_r^2",
                   all(commutator(model.half(i), model.delta(r).braid ** 2).is_identity()
                       for i in range(2, model.aleph)))
        for s in range(1, model.loops + 1):
            ts = T(s)
            start = ts.conj(er * I(eq)) * I(ts).conj(eq * I(er))
            if s >= r:
                inner1 = _prod(I(x), I(tq), s2, tq, s2, tr.conj(_prod(I(x), I(tq), s2, tq)), I(tq), I(s2))
                inner2 = _prod(I(x), I(tr), s2, tr, s2, tq.conj(_prod(x, tr, s2, tr)), I(tr), I(s2))
                chain = [
                    start,
                    ts.conj(_prod(s2, tr, I(s1), I(s2), I(eq))) * I(ts).conj(_prod(s2, tq, I(s1), I(s2), I(er))),
                    ts.conj(inner1) * I(ts).conj(inner2),
                    ts.conj(_prod(I(x), tq, x, tr, I(x), I(tq))) * I(ts).conj(_prod(I(x), I(tr), I(x), tq, x, tr)),
                    ts.conj(_prod(I(x), tq, I(tr), x, tr, I(tq))) * I(ts).conj(_prod(I(x), I(tr), tq, x, I(tq), tr)),
                ]
                _chain(report, f"r={r} case t{s} (s>=r)", chain)
            else:
                inner1 = _prod(x, tq, s2, tq, I(s2), I(tr).conj(_prod(I(x), I(tq), s2, tq)), I(tq), I(s2))
                inner2 = _prod(x, tr, s2, tr, I(s2), I(tq).conj(_prod(x, tr, s2, tr)), I(tr), I(s2))
                chain = [
                    start,
                    ts.conj(_prod(I(s2), I(tr), I(s1), I(s2), I(eq))) * I(ts).conj(_prod(I(s2), I(tq), I(s1), I(s2), I(er))),
                    ts.conj(inner1) * I(ts).conj(inner2),
                    ts.conj(_prod(x, tq, x, I(tr), I(x), I(tq))) * I(ts).conj(_prod(x, I(tr), I(x), I(tq), x, tr)),
                    ts.conj(_prod(x, tq, I(tr), I(x), tr, I(tq))) * I(ts).conj(_prod(x, I(tr), tq, I(x), I(tq), tr)),
                ]
                _chain(report, f"r={r} case t{s} (s<=r-1)", chain)
        # eps generators
        dr = model.delta(r).braid
        report.eq(f"r={r} delta_r = e_r e_(r-1)^-1", dr, er * I(eq))
        for s in range(1, model.loops + 1):
            es = E(s)
            c_sr = commutator(es, er)
            c_qs = commutator(eq, es)
            lhs = commutator(es, dr ** 2)
            rhs = _prod(c_sr, c_qs.conj(I(dr)), c_sr.conj(I(dr)), c_qs.conj(I(dr) ** 2))
            report.eq(f"r={r} s={s} [e_s, delta_r^2] expansion", lhs, rhs)
            report.add(f"r={r} s={s} last factor rewrite",
                       c_qs.conj(I(dr) ** 2).equals(commutator(dr ** 2, c_qs) * c_qs))
            m = c_qs * c_sr
            four = _prod(c_sr, c_qs.conj(I(dr)), c_sr.conj(I(dr)), c_qs)
            regroup = [
                four,
                _prod(c_sr.conj(er), c_qs.conj(eq), c_sr.conj(eq), c_qs.conj(er)).conj(I(er)),
                (m.conj(er) * m.conj(eq)).conj(c_qs.conj(er) * I(er)),
            ]
            _chain(report, f"r={r} s={s} regrouping", regroup)
            if s >= r:
                report.trivial(f"r={r} s={s} Co(t_s^(x^-1), e_r)", commutator(ts_x := T(s).conj(I(x)), er))
                F = _prod(I(tq), (I(tq) * tr).conj(ts_x * s2), tr)
                chain = [
                    m,
                    c_qs * I(commutator(er, es)),
                    _prod(I(tq), s1, I(tq).conj(_prod(x, T(s), s2)), T(s))
                    * I(_prod(I(tr), s1, I(tr).conj(_prod(x, T(s), s2)), T(s))),
                    _prod(I(tq), (I(tq) * tr).conj(_prod(x, T(s), s2, I(s1))), tr),
                    F,
                ]
                _chain(report, f"r={r} s={s} commutator product (s>=r)", chain)
                Fr = _prod(I(tq).conj(er), (I(tq).conj(er) * s1).conj(ts_x * s2), s1)
                Fq = _prod(I(s1), (I(s1) * tr.conj(eq)).conj(ts_x * s2), tr.conj(eq))
                report.eq(f"r={r} s={s} conjugate by e_r", m.conj(er), Fr)
                report.eq(f"r={r} s={s} conjugate by e_(r-1)", m.conj(eq), Fq)
                report.eq(f"r={r} s={s} product via Lambda",
                          m.conj(er) * m.conj(eq), _prod(I(tq).conj(er), Lam.conj(ts_x * s2), tr.conj(eq)))
            else:
                tsx = T(s).conj(x)
                report.trivial(f"r={r} s={s} Co(t_s^x, e_r)", commutator(tsx, er))
                chain = [
                    m,
                    I(commutator(es, eq)) * commutator(es, er),
                    I(_prod(I(T(s)), s1, I(T(s)).conj(_prod(x, tq, s2)), tq))
                    * _prod(I(T(s)), s1, I(T(s)).conj(_prod(x, tr, s2)), tr),
                    _prod(I(tq), T(s).conj(_prod(x, tq, s2)), I(T(s)).conj(_prod(x, tr, s2)), tr),
                ]
                _chain(report, f"r={r} s={s} commutator product (s<=r-1)", chain)
                Fr = _prod(I(tq).conj(er), tsx.conj(tq.conj(er) * s2), I(tsx).conj(s1 * s2), s1)
                Fq = _prod(I(s1), tsx.conj(s1 * s2), I(tsx).conj(tr.conj(eq) * s2), tr.conj(eq))
                report.eq(f"r={r} s={s} conjugate by e_r", m.conj(er), Fr)
                report.eq(f"r={r} s={s} conjugate by e_(r-1)", m.conj(eq), Fq)
                report.eq(f"r={r} s={s} product", m.conj(er) * m.conj(eq),
                          _prod(I(tq).conj(er), tsx.conj(tq.conj(er) * s2), I(tsx).conj(tr.conj(eq) * s2), tr.conj(eq)))
    if model.spec.genus == 0:
        report.skip("genus-dependent branches", "branches indexed by odd numbers up to 2g-1 are empty at genus 0")
    return report
