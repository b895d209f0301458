"""Identity-verification suite shared by the CLI and the acceptance tests.

Each identity is a named predicate evaluated over odd triples and seeded
random Alexander-form data. Counts and the first counterexample are kept
per identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .alexform import (
    AlexSeries,
    D2_closed_form,
    D2_decomposed,
    D_abc,
    D_sigma,
    E_abc,
    build_alexander_series,
    delta_AB,
    a_ub_wedge_Atilde,
    dehn_twist_transform,
    gamma_from_series,
    normalize_alexander_series,
    pull_back,
    quad_of,
    random_alexform_data,
    random_rational,
    random_unit_exponent,
)
from .invariants import (
    CurveLambdas,
    QuadForm,
    SurfaceTriple,
    W_s_eval,
    alexander_from_seifert,
    cyclic,
    delta2,
    delta_Delta,
    dehn_twist_triple,
    lambda_prime_triple,
    mirror,
    odd_triples,
    p_star,
    recover_from_w3,
    triple_from_seifert,
    w3,
    w_del_surface,
    w_del_triple,
    w_sl,
)
from .ring import UA, UB, UC
from .series import TruncSeries, bar_series, exp_series, restrict, sih_series

F = Fraction
UA_UC = QuadForm(-1, -1, 0)  # ua*uc with uc = -ua - ub


@dataclass
class IdentityResult:
    name: str
    checked: int = 0
    failed: int = 0
    first_counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class Report:
    results: dict[str, IdentityResult] = field(default_factory=dict)

    def record(self, name: str, ok: bool, where: Callable[[], str] | str = "") -> None:
        r = self.results.setdefault(name, IdentityResult(name))
        r.checked += 1
        if not ok:
            r.failed += 1
            if r.first_counterexample is None:
                r.first_counterexample = where() if callable(where) else where

    def check(self, name: str, fn: Callable[[], bool], where: Callable[[], str] | str = "") -> None:
        try:
            ok = bool(fn())
        except Exception as exc:  # an exception is a failed identity, not a crash
            ok = False
            base = where() if callable(where) else where
            where = f"{base} [{type(exc).__name__}: {exc}]"
        self.record(name, ok, where)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def lines(self) -> list[str]:
        out = []
        for r in self.results.values():
            status = "ok" if r.ok else "FAIL"
            out.append(f"{status:4} {r.name}: {r.checked - r.failed}/{r.checked}")
            if not r.ok:
                out.append(f"     first counterexample: {r.first_counterexample}")
        return out


# triple-level identities


def check_triples(report: Report, triples: Iterable[SurfaceTriple], degree: int, fault: bool = False) -> None:
    sih3 = sih_series(UA, degree + 1) * sih_series(UB, degree + 1) * sih_series(UC, degree + 1)
    for t in triples:
        where = f"t={t}"
        lam = lambda_prime_triple(t)
        wd = w_del_triple(t)
        tau = dehn_twist_triple(t)
        report.check("lambda' invariant under twist/cyclic/mirror", lambda: all(
            lambda_prime_triple(u) == lam for u in (tau, cyclic(t), mirror(t))), where)
        report.check("w_delta cyclic-invariant and mirror-odd",
                     lambda: w_del_triple(cyclic(t)) == wd and w_del_triple(mirror(t)) == -wd, where)
        report.check("w_delta twist change b(b^2-1)/2",
                     lambda: w_del_triple(tau) - wd == t.b * (t.b**2 - 1) / 2, where)
        report.check("W_s(delta2) = w_delta(a,b,c)", lambda: W_s_eval(delta2(t), t) == wd, where)
        report.check("W_s(P) = 4 lambda' - 1", lambda: W_s_eval(p_star(t), t) == 4 * lam - 1, where)
        report.check("seifert bridge lambda' = det V",
                     lambda: _seifert_bridge(t), where)

        D = D_abc(t, degree)
        e = E_abc(t, degree)
        report.check("sih^3 D(a,b,c) = E - bar E", lambda: (D * sih3).agrees(e - bar_series(e)), where)
        report.check("D(a,b,c) even with degree-0 lambda'",
                     lambda: D.agrees(bar_series(D)) and D.coeff(0, 0) == lam, where)
        d2 = quad_of(D)
        if fault:
            d2 = QuadForm(d2.aa + 1, d2.ab, d2.bb)
        report.check("D_2 closed form", lambda: d2 == D2_closed_form(t), where)
        report.check("D_2 = -(w_delta/12) P + (lambda'/4) delta2", lambda: d2 == D2_decomposed(t), where)


def _seifert_bridge(t: SurfaceTriple) -> bool:
    from .invariants import seifert_from_triple

    V = seifert_from_triple(t)
    back = triple_from_seifert(V)
    det = V.det()
    delta = alexander_from_seifert(V, 1)
    return (back.as_tuple() == t.as_tuple() and lambda_prime_triple(back) == det
            and delta.terms == {k: v for k, v in {F(1): det, F(0): 1 - 2 * det, F(-1): det}.items() if v})


# per-datum identities


def check_datum(report: Report, rng: random.Random, d, triples: list[SurfaceTriple],
                lambda_samples: int = 1) -> None:
    where = f"d={d}"
    A = build_alexander_series(d)
    h1, ell = d.h1, d.ell
    lam_d = d.lambdas

    r = random_unit_exponent(rng, d.context)
    raw = A.series * exp_series(r, d.cap)
    if rng.random() < 0.5:
        raw = -raw

    def round_trip():
        v, An, ex = normalize_alexander_series(raw, h1, ell)
        return v == -r and ex == (d.lA, d.lB, d.lC, d.lE) and An.series == A.series

    report.check("normalize(build(d) * unit) recovers lambda'", round_trip, where)

    gamma = gamma_from_series(A)
    expected_gamma = TruncSeries.from_terms(
        {(0, 0): -h1 * d.lE, **{m: c for part in d.gamma_tail.values() for m, c in part.items()}},
        gamma.valid_to,
    )
    report.check("Gamma even, Gamma_0 = -h1 lE, tail recovered",
                 lambda: gamma.valid_to == d.cap - 3 and gamma.agrees(bar_series(gamma))
                 and gamma.agrees(expected_gamma), where)

    dab = delta_AB(A)
    A2 = quad_of(A.series)
    uc2 = QuadForm(1, 2, 1)
    expected2 = uc2 * (h1 * ell * (1 - ell**2) / 24) - A2 * ell - QuadForm(0, 1, 0) * (h1 * d.lE)

    def delta_ab_shape():
        return (dab.agrees(bar_series(dab)) and dab.coeff(0, 0) == -h1 * ell
                and quad_of(dab) == expected2)

    report.check("Delta(A,B) even, degree 0 and degree 2", delta_ab_shape, where)

    def cubic_rearranged():
        # 2 A_3 = h1 ell (1 - ell^2)/24 uc^3 - uc (ell A_2 + Delta_2)
        n = 3
        lhs = TruncSeries.from_terms({m: 2 * c for m, c in _deg(A.series, 3).items()}, n)
        uc = TruncSeries.from_terms({(1, 0): -1, (0, 1): -1}, n)
        q = TruncSeries.from_terms({m: ell * c for m, c in _deg(A.series, 2).items()}, n) + \
            TruncSeries.from_terms(_deg(dab, 2), n)
        rhs = uc * uc * uc * (h1 * ell * (1 - ell**2) / 24) - uc * q
        return lhs.agrees(rhs)

    report.check("2 A_3 = h1 ell(1-ell^2)/24 uc^3 - uc(ell A_2 + Delta_2)", cubic_rearranged, where)

    if ell == 0:
        report.check("ell = 0: Delta(A,B) = sih(ua) sih(ub) Gamma",
                     lambda: dab.agrees(sih_series(UA, d.cap) * sih_series(UB, d.cap) * gamma), where)

    wedge = a_ub_wedge_Atilde(A)
    report.check("exp((ell-1)uc/2) * A(ub ^ A~) = Delta(A,B)",
                 lambda: (exp_series(UC * ((ell - 1) / 2), wedge.valid_to) * wedge).agrees(dab), where)

    report.check("one-variable restrictions read lA, lB, lC",
                 lambda: _deg(restrict(A.series, "ua"), 2) == _nz({(0, 2): h1 * d.lA})
                 and _deg(restrict(A.series, "ub"), 2) == _nz({(2, 0): h1 * d.lB})
                 and _deg(restrict(A.series, "uc"), 2) == _nz({(2, 0): h1 * d.lC})
                 and not _deg(restrict(A.series, "uc"), 1), where)

    for t in triples:
        tw = f"{where} t={t}"
        lam = lambda_prime_triple(t)
        wsl = w_sl(t, lam_d)
        wds = w_del_surface(t, lam_d)
        dd = delta_Delta(t, lam_d)
        d2 = delta2(t)
        Ds = D_sigma(A, t, gamma)
        Ds2 = quad_of(Ds)
        report.check("D(Sigma) degree 0 = h1 lambda'", lambda: Ds.coeff(0, 0) == h1 * lam, tw)
        report.check("D(Sigma) degree 2 = h1(w_SL P + (lambda'/4) delta_E)",
                     lambda: Ds2 == (p_star(t) * wsl + (d2 + dd * 4) * (lam / 4)) * h1, tw)
        wsd2 = W_s_eval(Ds2, t)
        report.check("W_s(D_2) = h1((4 lambda'-1) w_SL + (lambda'/4) w_delta(Sigma))",
                     lambda: wsd2 == h1 * ((4 * lam - 1) * wsl + lam / 4 * wds), tw)
        report.check("W_s(delta2 + 4 delta_Delta) = w_delta(Sigma)",
                     lambda: W_s_eval(d2 + dd * 4, t) == wds, tw)
        report.check("w3 = (3/2) w_SL - (1/8) w_delta(Sigma)",
                     lambda: w3(t, lam_d) == F(3, 2) * wsl - wds / 8, tw)
        if 7 * lam != 1:
            report.check("recovery from w3 round trip",
                         lambda: recover_from_w3(w3(t, lam_d), wsd2, h1, lam) == (wsl, wds), tw)
        for _ in range(lambda_samples):
            lv = CurveLambdas(random_rational(rng), random_rational(rng), random_rational(rng))
            report.check("W_s(delta_Delta) = a lA + b lB + c lC",
                         lambda: W_s_eval(delta_Delta(t, lv), t) == t.a * lv.lA + t.b * lv.lB + t.c * lv.lC,
                         f"t={t} lambda={lv}")

    t = triples[rng.randrange(len(triples))]
    check_dehn(report, A, t, lam_d, where)


def check_dehn(report: Report, A: AlexSeries, t: SurfaceTriple, lam_d: CurveLambdas, where: str) -> None:
    where = f"{where} t={t}"
    b = t.b
    A2, t2 = dehn_twist_transform(A, t)
    try:
        v, _, ex = normalize_alexander_series(A2.series, A2.h1, A2.ell)
    except Exception as exc:
        report.record("Dehn transform keeps the Alexander shape", False, f"{where} [{type(exc).__name__}: {exc}]")
        return
    report.record("Dehn transform keeps the Alexander shape", v.is_zero(), where)
    lam2 = CurveLambdas(*ex)
    dd_change = pull_back(delta_Delta(t2, lam2)) - delta_Delta(t, lam_d)
    d2_change = pull_back(delta2(t2)) - delta2(t)
    report.check("Dehn: delta_Delta change (1/8)(b^2-1) ua uc",
                 lambda: dd_change == UA_UC * ((b * b - 1) / 8), where)
    report.check("Dehn: delta2 change (1/2)(1-b^2) ua uc",
                 lambda: d2_change == UA_UC * ((1 - b * b) / 2), where)
    report.check("Dehn: delta2 + 4 delta_Delta invariant",
                 lambda: (d2_change + dd_change * 4).is_zero(), where)


def check_dehn_unit(report: Report, cap: int) -> None:
    one = AlexSeries(TruncSeries.one(cap), 1)
    for b in (1, -1):
        for a in (-3, -1, 1, 3):
            for c in (-3, -1, 1, 3):
                t = SurfaceTriple.of(a, b, c)
                report.check("Dehn transform of A = 1 at b = +-1 is 1",
                             lambda: dehn_twist_transform(one, t)[0].series == TruncSeries.one(cap - 1),
                             f"t={t}")


def _deg(s: TruncSeries, d: int):
    return {(i, d - i): c for i, c in s.part(d).items()}


def _nz(m):
    return {k: v for k, v in m.items() if v}


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    trials: int = 50
    degree: int = 8
    rng_range: int = 5
    pipeline_range: int = 3
    fault: bool = False


def run_verify(seed: int = 0, trials: int = 50, degree: int = 8, rng_range: int = 5,
               fault: bool = False, pipeline_range: int = 3) -> Report:
    """Run every identity; the seed fixes all random data."""
    return run_config(VerifyConfig(seed, trials, degree, rng_range, pipeline_range, fault))


def run_config(cfg: VerifyConfig) -> Report:
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    if cfg.degree < 6:
        raise ValueError("degree must be >= 6")
    report = Report()
    check_triples(report, odd_triples(cfg.rng_range), cfg.degree, cfg.fault)
    check_dehn_unit(report, cfg.degree)
    rng = random.Random(cfg.seed)
    small = list(odd_triples(min(cfg.pipeline_range, cfg.rng_range)))
    ells = [F(k) for k in (-2, -1, 0, 1, 2)]
    for k in range(cfg.trials):
        d = random_alexform_data(rng, cfg.degree, ell=ells[k % len(ells)])
        check_datum(report, rng, d, small)
    return report
