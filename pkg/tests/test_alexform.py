from fractions import Fraction
import random

import pytest
import sympy as sp

from genusone.alexform import (
    AlexFormData,
    AlexSeries,
    D2_closed_form,
    D2_decomposed,
    D_abc,
    D_abc_via_E,
    D_sigma,
    E_abc,
    E_abc_six_term,
    NotAlexanderForm,
    WrongConstantTerm,
    a_ub_wedge_Atilde,
    build_alexander_series,
    dehn_twist_transform,
    delta_AB,
    gamma_from_series,
    normalize_alexander_series,
    pull_back,
    quad_of,
    random_alexform_data,
    random_unit_exponent,
)
from genusone.invariants import (
    CurveLambdas,
    QuadForm,
    SurfaceTriple,
    W_s_eval,
    delta2,
    delta_Delta,
    lambda_prime_triple,
    odd_triples,
    p_star,
    w_del_surface,
    w_del_triple,
)
from genusone.ring import UA, UB, UC
from genusone.series import TruncSeries, bar_series, exp_series, restrict, sih_series
from oracles import R, poly_terms, sih, taylor_terms, truncate_terms, ua, ub, uc, univariate, x

F = Fraction
T = SurfaceTriple.of
ONE = AlexSeries(TruncSeries.one(8), 1)


def data(seed, **kw):
    return random_alexform_data(random.Random(seed), 8, **kw)


# building and normalizing


def test_trivial_embedding_builds_one():
    assert build_alexander_series(AlexFormData()).series == TruncSeries.one(8)


def test_lE_only_against_taylor():
    # Gamma = -1, and sih^3 Gamma = bar(A) - A = -2 A_odd, so A = 1 + sih^3 / 2
    A = build_alexander_series(AlexFormData(lE=1)).series
    assert A.terms() == taylor_terms(1 + sih(ua) * sih(ub) * sih(uc) / 2, 8)
    assert {m: c for m, c in A.terms().items() if sum(m) == 3} == poly_terms(ua * ub * uc / 2)


def test_lA_only_degree_two():
    A = build_alexander_series(AlexFormData(lA=1)).series
    assert quad_of(A) == QuadForm(0, 1, 1)


def test_normalize_removes_exponential():
    raw = exp_series(UA, 8)
    v, A, ex = normalize_alexander_series(raw, 1)
    assert v == -UA and A.series == TruncSeries.one(8) and ex == (0, 0, 0, 0)


def test_normalize_round_trip_with_sign():
    rng = random.Random(11)
    for _ in range(10):
        d = random_alexform_data(rng)
        r = random_unit_exponent(rng, d.context)
        raw = -(build_alexander_series(d).series * exp_series(r, 8))
        v, A, ex = normalize_alexander_series(raw, d.h1, d.ell)
        assert v == -r
        assert ex == (d.lA, d.lB, d.lC, d.lE)


def test_normalize_rejects_cubic():
    with pytest.raises(NotAlexanderForm):
        normalize_alexander_series(TruncSeries.from_terms({(0, 0): 1, (3, 0): 1}, 8), 1)


def test_normalize_rejects_non_divisible_odd_part():
    # degree 3 passes the shape test, degree 5 is not a multiple of ua*ub*uc
    raw = TruncSeries.from_terms({(0, 0): 1, (5, 0): 1}, 8)
    with pytest.raises(NotAlexanderForm):
        normalize_alexander_series(raw, 1)


def test_normalize_wrong_constant():
    with pytest.raises(WrongConstantTerm):
        normalize_alexander_series(TruncSeries.constant(2, 8), 1)


def test_data_validation():
    with pytest.raises(NotAlexanderForm):
        AlexFormData(even_tail={3: {(3, 0): 1}})
    with pytest.raises(ValueError):
        AlexFormData(cap=5)


# Gamma and Delta(A, B)


def test_gamma_of_one_is_zero():
    assert gamma_from_series(ONE).is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_gamma_round_trip(seed):
    d = data(seed)
    g = gamma_from_series(build_alexander_series(d))
    expected = TruncSeries.from_terms(
        {(0, 0): -d.h1 * d.lE, **{m: c for p in d.gamma_tail.values() for m, c in p.items()}}, 5)
    assert g.valid_to == 5
    assert g == expected
    assert bar_series(g) == g


def test_delta_AB_of_one():
    assert delta_AB(ONE).is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_delta_AB_two_routes_when_unlinked(seed):
    d = data(seed, ell=0)
    A = build_alexander_series(d)
    g = gamma_from_series(A)
    assert delta_AB(A).agrees(sih_series(UA, 8) * sih_series(UB, 8) * g)


@pytest.mark.parametrize("ell", [-2, -1, 0, 1, 2])
def test_delta_AB_degree_two(ell):
    d = data(40 + ell, ell=ell)
    A = build_alexander_series(d)
    dab = delta_AB(A)
    h1 = d.h1
    expected = (QuadForm(1, 2, 1) * (h1 * F(ell) * (1 - ell**2) / 24) - quad_of(A.series) * ell
                - QuadForm(0, 1, 0) * (h1 * d.lE))
    assert dab.coeff(0, 0) == -h1 * ell
    assert quad_of(dab) == expected
    assert bar_series(dab).agrees(dab)


@pytest.mark.parametrize("ell", [-2, 1, 2])
def test_wedge_consistency(ell):
    d = data(50 + ell, ell=ell)
    A = build_alexander_series(d)
    w = a_ub_wedge_Atilde(A)
    assert (exp_series(UC * (F(ell - 1) / 2), 7) * w).agrees(delta_AB(A))
    if ell == 1:
        assert w.coeff(0, 0) == -d.h1


def test_wedge_of_one():
    assert a_ub_wedge_Atilde(ONE).is_zero()


def test_one_variable_restrictions():
    d = data(3)
    A = build_alexander_series(d).series
    assert restrict(A, "ua").part(2) == ({0: d.h1 * d.lA} if d.lA else {})
    assert restrict(A, "ub").part(2) == ({2: d.h1 * d.lB} if d.lB else {})
    assert restrict(A, "uc").part(2) == ({2: d.h1 * d.lC} if d.lC else {})


# E and D of a triple


def _sympy_E(t):
    a, b, c = (R(x) for x in t.as_tuple())
    am, bp, cm, cp = (a - 1) / 2, (b + 1) / 2, (c - 1) / 2, (c + 1) / 2
    alpha = cm * uc - bp * ub
    beta = (a - 1) / 2 * ua - cp * uc
    return sp.exp(am * ua / 2) * sih(ub) * sih(alpha) - sp.exp(bp * ub / 2) * sih(ua) * sih(beta)


@pytest.mark.parametrize("t", [T(1, 1, 1), T(-1, -1, 1), T(3, -1, 5)])
def test_E_against_sympy(t):
    assert E_abc(t, 6).terms() == taylor_terms(_sympy_E(t), 6)


def test_E_six_term_agrees_and_degree_two():
    for t in odd_triples(3):
        assert E_abc_six_term(t, 8) == E_abc(t, 8)
        assert quad_of(E_abc(t, 8)) == -p_star(t)
    assert quad_of(E_abc(T(1, 1, 1), 4)) == QuadForm(-1, -1, -1)


def _sympy_D(t, n):
    a, b, c = (R(x) for x in t.as_tuple())
    am, bp, cm, cp = (a - 1) / 2, (b + 1) / 2, (c - 1) / 2, (c + 1) / 2

    def ratio(k, L):
        return univariate(sih(k * x) / sih(x), L, n) if k else 0

    def ex(L):
        return univariate(sp.exp(x), L, n)

    expr = (ex(am * ua / 2) * ratio(bp, ub) * ratio(cp, uc)
            + ex(bp * ub / 2) * ratio(cm, uc) * ratio(am, ua)
            + ex(cp * uc / 2 + ub / 2) * ratio(am, ua) * ratio(bp, ub))
    return truncate_terms(expr, n)


@pytest.mark.parametrize("t", [T(1, 3, 1), T(3, 1, 5), T(-3, -1, -5)])
def test_D_against_sympy(t):
    assert D_abc(t, 6).terms() == _sympy_D(t, 6)


def test_D_examples():
    assert quad_of(D_abc(T(1, 1, 1), 8)).is_zero()
    assert quad_of(D_abc(T(1, 3, 1), 8)) == QuadForm(0, 0, F(1, 4))
    assert D_abc(T(1, 3, 1), 8).coeff(0, 0) == 2


def test_D_identity_small_range():
    sih3 = sih_series(UA, 9) * sih_series(UB, 9) * sih_series(UC, 9)
    for t in odd_triples(3):
        D = D_abc(t, 8)
        e = E_abc(t, 8)
        assert (D * sih3).agrees(e - bar_series(e))
        assert D.agrees(D_abc_via_E(t, 8))
        assert bar_series(D) == D
        assert D.coeff(0, 0) == lambda_prime_triple(t)


@pytest.mark.parametrize("t", [T(1, 1, 1), T(1, 3, 1), T(-5, 3, 1), T(5, 5, -3)])
def test_D2_closed_form_against_expansion(t):
    a, b, c = (R(x) for x in t.as_tuple())
    expr = ((a**2 - 1) / 384 * (3 + 3 * b * c + a * (b + c)) * ua**2
            + (b**2 - 1) / 384 * (3 + 3 * c * a + b * (c + a)) * ub**2
            + (c**2 - 1) / 384 * (3 + 3 * a * b + c * (a + b)) * uc**2)
    assert D2_closed_form(t) == QuadForm.from_terms(poly_terms(expr))
    assert quad_of(D_abc(t, 8)) == D2_closed_form(t) == D2_decomposed(t)


def test_rational_triple_D_identity():
    t = T("1/3", "-5/2", "7/4")
    sih3 = sih_series(UA, 7) * sih_series(UB, 7) * sih_series(UC, 7)
    e = E_abc(t, 6)
    assert (D_abc(t, 6) * sih3).agrees(e - bar_series(e))


# the surface series


def test_D_sigma_trivial_embedding():
    for t in [T(1, 1, 1), T(-1, 3, -1)]:
        assert D_sigma(ONE, t).agrees(D_abc(t, 8))


@pytest.mark.parametrize("seed", range(4))
def test_D_sigma_low_degrees(seed):
    d = data(seed)
    A = build_alexander_series(d)
    lam = d.lambdas
    for t in [T(1, 1, 1), T(-3, 1, 3), T(1, -1, -3)]:
        Ds = D_sigma(A, t)
        lk = lambda_prime_triple(t)
        wsl = d.lE - w_del_triple(t) / 12
        assert Ds.valid_to == 5
        assert bar_series(Ds) == Ds
        assert Ds.coeff(0, 0) == d.h1 * lk
        expected = (p_star(t) * wsl + (delta2(t) + delta_Delta(t, lam) * 4) * (lk / 4)) * d.h1
        assert quad_of(Ds) == expected
        assert W_s_eval(quad_of(Ds), t) == d.h1 * ((4 * lk - 1) * wsl + lk / 4 * w_del_surface(t, lam))


# Dehn twist


@pytest.mark.parametrize("abc", [(1, 1, 1), (3, -1, 5), (-1, 1, -3), (5, -1, -1)])
def test_dehn_transform_of_one(abc):
    A2, t2 = dehn_twist_transform(ONE, T(*abc))
    assert A2.series == TruncSeries.one(7)


@pytest.mark.parametrize("seed", range(6))
def test_dehn_laws(seed):
    rng = random.Random(100 + seed)
    d = random_alexform_data(rng)
    t = T(*(rng.choice((-5, -3, -1, 1, 3, 5)) for _ in range(3)))
    A = build_alexander_series(d)
    A2, t2 = dehn_twist_transform(A, t)
    v, _, ex = normalize_alexander_series(A2.series, A2.h1)
    assert v.is_zero()
    lam2 = CurveLambdas(*ex)
    b = t.b
    ua_uc = QuadForm(-1, -1, 0)
    dd = pull_back(delta_Delta(t2, lam2)) - delta_Delta(t, d.lambdas)
    d2 = pull_back(delta2(t2)) - delta2(t)
    assert dd == ua_uc * ((b * b - 1) / 8)
    assert d2 == ua_uc * ((1 - b * b) / 2)
    assert (d2 + dd * 4).is_zero()
    # the two-component lambda' moves so that w_SL stays put
    assert ex[3] - w_del_triple(t2) / 12 == d.lE - w_del_triple(t) / 12
