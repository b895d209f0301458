"""Alexander-form series of a genus two handlebody exterior and the surface series built from them.

An Alexander form enters as data (:class:`AlexFormData`): |H_1|, lk(A, B),
the lambda' values and the free even tails. From it we build the normalized
two-variable series, check and renormalize arbitrary candidates, extract the
odd-part quotient Gamma and the two-component series Delta(A, B), and
assemble the surface series D(Sigma).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping

from .invariants import (
    CurveLambdas,
    QuadForm,
    SurfaceTriple,
    delta2,
    delta_Delta,
    dehn_twist_triple,
    lambda_prime_triple,
    p_star,
    w_del_triple,
)
from .ring import UA, UB, UC, ExpVec, GroupRingElem, as_fraction, context_denominator
from .series import (
    NotDivisible,
    TruncSeries,
    bar_series,
    degree_part,
    divide_by_sih,
    embed,
    exp_series,
    odd_part,
    restrict,
    sih_series,
    subst_linear,
)

__all__ = [
    "AlexFormData",
    "AlexSeries",
    "NotAlexanderForm",
    "WrongConstantTerm",
    "build_alexander_series",
    "raw_alexander_series",
    "normalize_alexander_series",
    "check_alexander_shape",
    "gamma_from_series",
    "delta_AB",
    "a_ub_wedge_Atilde",
    "E_abc",
    "E_abc_six_term",
    "D_abc",
    "D2_closed_form",
    "D2_decomposed",
    "D_abc_via_E",
    "E_abc_element",
    "E_abc_six_term_element",
    "pull_back",
    "one_variable_reduction",
    "random_rational",
    "D_sigma",
    "dehn_twist_transform",
    "random_alexform_data",
    "random_unit_exponent",
    "quad_of",
    "DEHN_TO_PRIMED",
    "DEHN_PULLBACK",
]

F = Fraction

# old (ua, ub) written in primed variables: ua = ua', ub = ub' - ua'
DEHN_TO_PRIMED = ((1, 0), (-1, 1))
# primed variables written in old ones: ua' = ua, ub' = ua + ub = -uc
DEHN_PULLBACK = ((1, 0), (1, 1))


class NotAlexanderForm(ValueError):
    """The series violates the shape every normalized Alexander form must have."""


class WrongConstantTerm(ValueError):
    pass


Tail = Mapping[int, Mapping[tuple[int, int], Fraction]]


def _clean_tail(tail) -> dict[int, dict[tuple[int, int], Fraction]]:
    out: dict[int, dict[tuple[int, int], Fraction]] = {}
    for d, part in dict(tail).items():
        d = int(d)
        cleaned = {}
        for (i, j), c in dict(part).items():
            i, j = int(i), int(j)
            if i < 0 or j < 0 or i + j != d:
                raise ValueError(f"monomial ({i},{j}) does not have degree {d}")
            c = as_fraction(c)
            if c:
                cleaned[(i, j)] = cleaned.get((i, j), F(0)) + c
        if cleaned:
            out[d] = cleaned
    return out


@dataclass(frozen=True)
class AlexFormData:
    h1: int = 1
    ell: Fraction = F(0)
    lA: Fraction = F(0)
    lB: Fraction = F(0)
    lC: Fraction = F(0)
    lE: Fraction = F(0)
    even_tail: Tail = field(default_factory=dict)
    gamma_tail: Tail = field(default_factory=dict)
    cap: int = 8
    orders: tuple[int, int, int] = (1, 1, 1)
    strict: bool = True

    def __post_init__(self):
        for name in ("ell", "lA", "lB", "lC", "lE"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        object.__setattr__(self, "even_tail", _clean_tail(self.even_tail))
        object.__setattr__(self, "gamma_tail", _clean_tail(self.gamma_tail))
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        if not isinstance(self.h1, int) or self.h1 < 1:
            raise ValueError("h1 must be a positive integer")
        if len(self.orders) != 3 or min(self.orders) < 1:
            raise ValueError("orders must be three positive integers")
        if self.cap < 6:
            raise ValueError("cap must be at least 6")
        if self.strict:
            self.validate()

    def validate(self) -> None:
        for d in self.even_tail:
            if d % 2 or not 4 <= d <= self.cap:
                raise NotAlexanderForm(f"even tail has a part in degree {d}")
        for d in self.gamma_tail:
            if d % 2 or not 2 <= d <= self.cap - 3:
                raise NotAlexanderForm(f"gamma tail has a part in degree {d}")

    @property
    def lambdas(self) -> CurveLambdas:
        return CurveLambdas(self.lA, self.lB, self.lC, self.lE, self.ell)

    @property
    def context(self) -> int:
        return lcm(*self.orders)


@dataclass(frozen=True)
class AlexSeries:
    series: TruncSeries
    h1: int
    ell: Fraction = F(0)

    @property
    def cap(self) -> int:
        return self.series.valid_to


def quad_of(s: TruncSeries) -> QuadForm:
    return QuadForm.from_terms(degree_part(s, 2))


@lru_cache(maxsize=None)
def _sih_cube(cap: int) -> TruncSeries:
    return sih_series(UA, cap) * sih_series(UB, cap) * sih_series(UC, cap)


def _tail_series(tail, cap: int) -> TruncSeries:
    return TruncSeries.from_terms({m: c for part in tail.values() for m, c in part.items()}, cap)


def raw_alexander_series(d: AlexFormData) -> TruncSeries:
    """h1(1 + delta_Delta) + even_tail - (1/2) sih(ua)sih(ub)sih(uc) Gamma, no shape checks."""
    cap = d.cap
    dd = delta_Delta(SurfaceTriple(1, 1, 1), d.lambdas)
    even = TruncSeries.from_terms({(0, 0): 1, **dd.terms()}, cap) * d.h1 + _tail_series(d.even_tail, cap)
    gamma = TruncSeries.constant(-d.h1 * d.lE, cap) + _tail_series(d.gamma_tail, cap)
    return even - _sih_cube(cap) * gamma * F(1, 2)


def build_alexander_series(d: AlexFormData) -> AlexSeries:
    return AlexSeries(raw_alexander_series(d), d.h1, d.ell)


def check_alexander_shape(s: TruncSeries, h1: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Check a normalized candidate and return (lA, lB, lC, lE)."""
    if s.coeff(0, 0) != h1:
        raise WrongConstantTerm(f"constant term {s.coeff(0, 0)} != {h1}")
    if s.part(1):
        raise NotAlexanderForm("degree-one part is nonzero")
    q = quad_of(s) * F(1, h1)
    lB, lA = q.aa, q.bb
    lC = lA + lB - q.ab
    c30, c21, c12, c03 = (s.coeff(i, 3 - i) for i in (3, 2, 1, 0))
    if c30 or c03 or c21 != c12:
        raise NotAlexanderForm("degree-three part is not a multiple of ua*ub*uc")
    lE = -2 * c21 / h1
    try:
        q1 = divide_by_sih(odd_part(s), UA)
        q2 = divide_by_sih(q1, UB)
        divide_by_sih(q2, UC)
    except NotDivisible as exc:
        raise NotAlexanderForm(f"odd part is not divisible by sih(ua)sih(ub)sih(uc): {exc}") from None
    return lA, lB, lC, lE


def normalize_alexander_series(raw: TruncSeries, h1: int, ell=0):
    """Fix sign and unit so the degree-one part vanishes; return (v, AlexSeries, (lA, lB, lC, lE))."""
    c0 = raw.coeff(0, 0)
    if c0 == -h1:
        raw = -raw
    elif c0 != h1:
        raise WrongConstantTerm(f"|constant term| = {abs(c0)} but h1 = {h1}")
    lin = raw.part(1)
    v = ExpVec(-lin.get(1, F(0)) / h1, -lin.get(0, F(0)) / h1)
    s = exp_series(v, raw.valid_to) * raw if not v.is_zero() else raw
    extracted = check_alexander_shape(s, h1)
    return v, AlexSeries(s, h1, as_fraction(ell)), extracted


def gamma_from_series(A: AlexSeries) -> TruncSeries:
    s = A.series
    g = bar_series(s) - s
    for L in (UA, UB, UC):
        g = divide_by_sih(g, L)
    return g


def delta_AB(A: AlexSeries) -> TruncSeries:
    s, n, ell = A.series, A.series.valid_to, A.ell
    num = exp_series(UC * (-ell / 2), n) * bar_series(s) - exp_series(UC * (ell / 2), n) * s
    return divide_by_sih(num, UC)


def a_ub_wedge_Atilde(A: AlexSeries) -> TruncSeries:
    s, n, ell = A.series, A.series.valid_to, A.ell
    num = exp_series(UC * ((1 - 2 * ell) / 2), n) * bar_series(s) - exp_series(UC * F(1, 2), n) * s
    return divide_by_sih(num, UC)


# series attached to the triple (a, b, c)


def _elem(terms: list[tuple[ExpVec, Fraction]]) -> GroupRingElem:
    D = context_denominator(*(x for x, _ in terms))
    return GroupRingElem(terms, D)


def _sih_times(prefix: ExpVec, lins: list[ExpVec]) -> list[tuple[ExpVec, Fraction]]:
    """Monomials of exp(prefix) * prod sih(L) for L in lins."""
    terms = [(prefix, F(1))]
    for L in lins:
        h = L * F(1, 2)
        terms = [(x + s * h, c * s) for x, c in terms for s in (1, -1)]
    return terms


def E_abc_element(t: SurfaceTriple) -> GroupRingElem:
    """Defining form as a Laurent element."""
    am, bm, cm = t.minus()
    ap, bp, cp = t.plus()
    alpha = UC * cm - UB * bp
    beta = UA * am - UC * cp
    first = _sih_times(UA * (am / 2), [UB, alpha])
    second = [(x, -c) for x, c in _sih_times(UB * (bp / 2), [UA, beta])]
    return _elem(first + second)


def E_abc_six_term_element(t: SurfaceTriple) -> GroupRingElem:
    terms = []
    trip = list(zip(t.minus(), t.plus(), (UA, UB, UC)))
    for k in range(3):
        (xm, xp, ux), (ym, yp, uy), (zm, zp, uz) = trip[k:] + trip[:k]
        terms.append(((ux * xm + uy * ym - uz * zm) * F(1, 2), F(1)))
        terms.append(((ux * xp + uy * yp - uz * zp) * F(1, 2), F(-1)))
    return _elem(terms)


def E_abc_six_term(t: SurfaceTriple, cap: int) -> TruncSeries:
    return embed(E_abc_six_term_element(t), cap)


@lru_cache(maxsize=4096)
def E_abc(t: SurfaceTriple, cap: int) -> TruncSeries:
    e = E_abc_element(t)
    six = E_abc_six_term_element(t)
    assert e == six, (t, e, six)
    return embed(e, cap)


def _sih_ratio(k: Fraction, L: ExpVec, cap: int) -> TruncSeries:
    """sih(k L) / sih(L), valid to cap."""
    if k == 0:
        return TruncSeries.zero(cap)
    return divide_by_sih(sih_series(L * k, cap + 1), L)


@lru_cache(maxsize=4096)
def D_abc(t: SurfaceTriple, cap: int) -> TruncSeries:
    """Three-term product formula; every sih ratio is built one degree higher so the result is valid to cap."""
    am, bm, cm = t.minus()
    ap, bp, cp = t.plus()
    r_bp_b = _sih_ratio(bp, UB, cap)
    r_cp_c = _sih_ratio(cp, UC, cap)
    r_cm_c = _sih_ratio(cm, UC, cap)
    r_am_a = _sih_ratio(am, UA, cap)
    term1 = exp_series(UA * (am / 2), cap) * r_bp_b * r_cp_c
    term2 = exp_series(UB * (bp / 2), cap) * r_cm_c * r_am_a
    term3 = exp_series(UC * (cp / 2) + UB * F(1, 2), cap) * r_am_a * r_bp_b
    return term1 + term2 + term3


def D_abc_via_E(t: SurfaceTriple, cap: int) -> TruncSeries:
    """(E - bar E) / (sih(ua) sih(ub) sih(uc)), valid to cap."""
    e = E_abc(t, cap + 3)
    g = e - bar_series(e)
    for L in (UA, UB, UC):
        g = divide_by_sih(g, L)
    return g


def D2_closed_form(t: SurfaceTriple) -> QuadForm:
    a, b, c = t.as_tuple()

    def coeff(x, y, z):
        return (x * x - 1) / 384 * (3 + 3 * y * z + x * (y + z))

    return QuadForm.from_products(sq_a=coeff(a, b, c), sq_b=coeff(b, c, a), sq_c=coeff(c, a, b))


def D2_decomposed(t: SurfaceTriple) -> QuadForm:
    return p_star(t) * (-w_del_triple(t) / 12) + delta2(t) * (lambda_prime_triple(t) / 4)


def D_sigma(A: AlexSeries, t: SurfaceTriple, gamma: TruncSeries | None = None) -> TruncSeries:
    if gamma is None:
        gamma = gamma_from_series(A)
    cap = A.series.valid_to
    return D_abc(t, cap) * A.series + E_abc(t, cap) * gamma


# Dehn twist along the curve carrying b


def dehn_twist_transform(A: AlexSeries, t: SurfaceTriple) -> tuple[AlexSeries, SurfaceTriple]:
    """Transformed series in the primed variables, paired with the twisted triple."""
    s, n, b = A.series, A.series.valid_to, t.b
    num = (
        -(sih_series(UC, n) * exp_series(UA * (b / 2), n) * s)
        - sih_series(UA, n) * exp_series(UC * (-b / 2), n) * bar_series(s)
    )
    S = divide_by_sih(num, UB)
    return AlexSeries(subst_linear(S, DEHN_TO_PRIMED), A.h1, A.ell), dehn_twist_triple(t)


def pull_back(q: QuadForm) -> QuadForm:
    """Quadratic form in primed variables rewritten in the old ones."""
    s = subst_linear(TruncSeries.from_terms(q.terms(), 2), DEHN_PULLBACK)
    return quad_of(s)


def one_variable_reduction(A: AlexSeries, variable: str) -> TruncSeries:
    """Restriction of the series to the line where `variable` vanishes."""
    return restrict(A.series, variable)


# seeded random data

_DENS = (1, 2, 3, 4, 6, 8, 12, 24)


def random_rational(rng: random.Random) -> Fraction:
    return F(rng.randint(-20, 20), rng.choice(_DENS))


def _random_part(rng: random.Random, d: int, density: float = 0.5) -> dict[tuple[int, int], Fraction]:
    return {(i, d - i): random_rational(rng) for i in range(d + 1) if rng.random() < density}


def random_alexform_data(rng: random.Random, cap: int = 8, ell=None) -> AlexFormData:
    orders = tuple(rng.choice((1, 1, 2, 3)) for _ in range(3))
    return AlexFormData(
        h1=rng.choice((1, 1, 2, 3, 5)),
        ell=F(rng.randint(-2, 2)) if ell is None else as_fraction(ell),
        lA=random_rational(rng),
        lB=random_rational(rng),
        lC=random_rational(rng),
        lE=random_rational(rng),
        even_tail={d: _random_part(rng, d) for d in range(4, cap + 1, 2)},
        gamma_tail={d: _random_part(rng, d) for d in range(2, cap - 2, 2)},
        cap=cap,
        orders=orders,
    )


def random_unit_exponent(rng: random.Random, context: int) -> ExpVec:
    step = 2 * context
    return ExpVec(F(rng.randint(-2 * step, 2 * step), step), F(rng.randint(-2 * step, 2 * step), step))
