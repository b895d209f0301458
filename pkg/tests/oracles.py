"""Independent reference computations built on sympy, used only by the tests."""

from fractions import Fraction

import sympy as sp

ua, ub, s = sp.symbols("ua ub s")
uc = -ua - ub


def sih(x):
    return sp.exp(x / 2) - sp.exp(-x / 2)


def taylor_terms(expr, n):
    """{(i, j): Fraction} for the Taylor expansion of expr in (ua, ub) up to total degree n."""
    scaled = expr.subs({ua: s * ua, ub: s * ub}, simultaneous=True)
    poly = sp.series(scaled, s, 0, n + 1).removeO()
    poly = sp.expand(poly.subs(s, 1))
    out = {}
    if poly == 0:
        return out
    for (i, j), c in sp.Poly(poly, ua, ub).terms():
        c = sp.Rational(c)
        if c != 0:
            out[(i, j)] = Fraction(int(c.p), int(c.q))
    return out


def poly_terms(expr):
    expr = sp.expand(expr)
    if expr == 0:
        return {}
    return {(i, j): Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q))
            for (i, j), c in sp.Poly(expr, ua, ub).terms() if c != 0}


def half(x):
    return sp.Rational(x.numerator, x.denominator) / 2


def R(x):
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


x = sp.symbols("x")


def univariate(expr_in_x, linear, n):
    """Taylor polynomial of expr(x) to order n, with x replaced by a linear form in ua, ub."""
    poly = sp.series(expr_in_x, x, 0, n + 1).removeO()
    return sp.expand(poly.subs(x, linear))


def truncate_terms(expr, n):
    return {m: c for m, c in poly_terms(expr).items() if sum(m) <= n}
