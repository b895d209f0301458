"""Scalar and low-degree invariants of genus one Seifert surfaces.

Everything here is a closed-form function of the triple (a, b, c) and the
curve data (lA, lB, lC, lAB). Quadratic forms are kept in the (ua, ub) basis
with uc = -ua - ub already substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Mapping, Sequence

from .ring import as_fraction

__all__ = [
    "SurfaceTriple",
    "SeifertMatrix",
    "CurveLambdas",
    "QuadForm",
    "LaurentPoly",
    "BadSymplectic",
    "OddDimension",
    "NotHomogeneous",
    "WrongDegree",
    "DegenerateLambda",
    "NotOddTriple",
    "lambda_prime_triple",
    "w_del_triple",
    "w_del_surface",
    "triple_from_seifert",
    "seifert_from_triple",
    "alexander_from_seifert",
    "p_star",
    "delta2",
    "delta_Delta",
    "W_s_eval",
    "W_s_2k",
    "w_sl",
    "w3",
    "recover_from_w3",
    "dehn_twist_triple",
    "cyclic",
    "mirror",
    "odd_triples",
    "pairing_count",
    "TRIVIAL",
]

F = Fraction


class BadSymplectic(ValueError):
    """Seifert matrix with v12 - v21 != 1."""


class OddDimension(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class WrongDegree(ValueError):
    pass


class DegenerateLambda(ZeroDivisionError):
    """7*lambda' - 1 vanishes, so w3 does not determine the pair."""


class NotOddTriple(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceTriple:
    a: Fraction
    b: Fraction
    c: Fraction
    strict_odd: bool = False

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.strict_odd:
            for x in (self.a, self.b, self.c):
                if x.denominator != 1 or x.numerator % 2 == 0:
                    raise NotOddTriple(f"{x} is not an odd integer")

    @classmethod
    def of(cls, a, b, c, strict_odd: bool = False) -> "SurfaceTriple":
        return cls(as_fraction(a), as_fraction(b), as_fraction(c), strict_odd)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def minus(self) -> tuple[Fraction, Fraction, Fraction]:
        """(a-1)/2, (b-1)/2, (c-1)/2."""
        return tuple((x - 1) / 2 for x in self.as_tuple())  # type: ignore[return-value]

    def plus(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple((x + 1) / 2 for x in self.as_tuple())  # type: ignore[return-value]

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class SeifertMatrix:
    v11: Fraction
    v12: Fraction
    v21: Fraction
    v22: Fraction

    def __post_init__(self):
        for name in ("v11", "v12", "v21", "v22"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.v12 - self.v21 != 1:
            raise BadSymplectic(f"v12 - v21 = {self.v12 - self.v21}, expected 1")

    def rows(self) -> list[list[Fraction]]:
        return [[self.v11, self.v12], [self.v21, self.v22]]

    def det(self) -> Fraction:
        return self.v11 * self.v22 - self.v12 * self.v21


@dataclass(frozen=True)
class CurveLambdas:
    """lambda' of the three boundary curves, the two-component lambda' of (A, B), and lk(A, B).

    The curves on the surface and their images on the handlebody boundary
    share one slot each.
    """

    lA: Fraction = F(0)
    lB: Fraction = F(0)
    lC: Fraction = F(0)
    lAB: Fraction = F(0)
    ell: Fraction = F(0)

    def __post_init__(self):
        for name in ("lA", "lB", "lC", "lAB", "ell"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))


TRIVIAL = CurveLambdas()


@dataclass(frozen=True)
class QuadForm:
    """aa*ua^2 + ab*ua*ub + bb*ub^2."""

    aa: Fraction = F(0)
    ab: Fraction = F(0)
    bb: Fraction = F(0)

    def __post_init__(self):
        for name in ("aa", "ab", "bb"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def from_products(cls, sq_a=0, sq_b=0, sq_c=0, ab=0, bc=0, ca=0) -> "QuadForm":
        """Expand a form given on ua^2, ub^2, uc^2, ua*ub, ub*uc, uc*ua with uc = -ua - ub."""
        sq_a, sq_b, sq_c, ab, bc, ca = map(as_fraction, (sq_a, sq_b, sq_c, ab, bc, ca))
        # uc^2 = ua^2 + 2ua ub + ub^2, ub uc = -ua ub - ub^2, uc ua = -ua^2 - ua ub
        return cls(sq_a + sq_c - ca, 2 * sq_c + ab - bc - ca, sq_b + sq_c - bc)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Fraction]) -> "QuadForm":
        bad = [m for m in terms if sum(m) != 2 and terms[m] != 0]
        if bad:
            raise NotHomogeneous(f"monomials {bad} are not quadratic")
        return cls(terms.get((2, 0), F(0)), terms.get((1, 1), F(0)), terms.get((0, 2), F(0)))

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {m: c for m, c in (((2, 0), self.aa), ((1, 1), self.ab), ((0, 2), self.bb)) if c}

    def __add__(self, o: "QuadForm") -> "QuadForm":
        return QuadForm(self.aa + o.aa, self.ab + o.ab, self.bb + o.bb)

    def __sub__(self, o: "QuadForm") -> "QuadForm":
        return QuadForm(self.aa - o.aa, self.ab - o.ab, self.bb - o.bb)

    def __neg__(self) -> "QuadForm":
        return QuadForm(-self.aa, -self.ab, -self.bb)

    def __mul__(self, k) -> "QuadForm":
        k = as_fraction(k)
        return QuadForm(self.aa * k, self.ab * k, self.bb * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not (self.aa or self.ab or self.bb)

    def __str__(self) -> str:
        from .series import TruncSeries, format_series

        return format_series(TruncSeries.from_terms(self.terms(), 2))


def _linear_product(x: tuple[Fraction, Fraction], y: tuple[Fraction, Fraction]) -> QuadForm:
    """Product of two linear forms x0*ua + x1*ub and y0*ua + y1*ub."""
    return QuadForm(x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1])


# scalar invariants


def lambda_prime_triple(t: SurfaceTriple) -> Fraction:
    a, b, c = t.as_tuple()
    return (a * b + a * c + b * c + 1) / 4


def w_del_triple(t: SurfaceTriple) -> Fraction:
    a, b, c = t.as_tuple()
    first = (a + b) / 2 * (b + c) / 2 * (c + a) / 2 - lambda_prime_triple(t) * (a + b + c)
    second = -(a * a * (b + c) + b * b * (c + a) + c * c * (a + b)) / 8 - a * b * c / 2 - (a + b + c) / 4
    assert first == second, (t, first, second)
    return first


def w_del_surface(t: SurfaceTriple, lam: CurveLambdas) -> Fraction:
    return 4 * t.a * lam.lA + 4 * t.b * lam.lB + 4 * t.c * lam.lC + w_del_triple(t)


def triple_from_seifert(V: SeifertMatrix, strict_odd: bool = False) -> SurfaceTriple:
    c = -V.v12 - V.v21
    b = 2 * V.v11 - c
    a = 2 * V.v22 - c
    return SurfaceTriple(a, b, c, strict_odd)


def seifert_from_triple(t: SurfaceTriple) -> SeifertMatrix:
    a, b, c = t.as_tuple()
    return SeifertMatrix((b + c) / 2, -(c - 1) / 2, -(c + 1) / 2, (a + c) / 2)


# Alexander polynomial from a Seifert matrix


class LaurentPoly:
    """Finite sum of c * t^e with rational (typically half-integer) exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping):
        self.terms = {as_fraction(e): as_fraction(c) for e, c in terms.items() if c != 0}

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def at_one(self) -> Fraction:
        return sum(self.terms.values(), F(0))

    def is_palindromic(self) -> bool:
        return all(self.terms.get(-e) == c for e, c in self.terms.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, e in enumerate(sorted(self.terms, reverse=True)):
            c = self.terms[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "t"
            elif e.denominator == 1:
                mono = f"t^{e.numerator}"
            else:
                mono = f"t^{{{e}}}"
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(out)


def _det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    A = [list(map(as_fraction, row)) for row in M]
    n = len(A)
    det = F(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return F(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                for k in range(col, n):
                    A[r][k] -= f * A[col][k]
    return det


def alexander_from_seifert(V, h1: int = 1) -> LaurentPoly:
    """h1 * det(t^(1/2) V - t^(-1/2) V^T) as a Laurent polynomial in t^(1/2)."""
    if isinstance(V, SeifertMatrix):
        V = V.rows()
    M = [list(map(as_fraction, row)) for row in V]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("Seifert matrix must be square")
    if n % 2:
        raise OddDimension(f"size {n} is odd")
    if h1 < 1:
        raise ValueError("h1 must be a positive integer")
    # det(xV - V^T) has degree <= n in x; recover it by interpolation at x = 0..n
    xs = list(range(n + 1))
    ys = [_det([[x * M[i][j] - M[j][i] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = _newton_to_monomial(xs, ys)
    half = F(n, 2)
    return LaurentPoly({k - half: h1 * c for k, c in enumerate(coeffs)})


def _newton_to_monomial(xs, ys) -> list[Fraction]:
    n = len(xs)
    dd = [F(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    # Horner on the Newton basis
    poly = [F(0)] * n
    poly[0] = dd[-1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + dd[i]
        new = [F(0)] * n
        for k in range(deg + 1):
            new[k + 1] += poly[k]
            new[k] -= xs[i] * poly[k]
        new[0] += dd[i]
        poly = new
        deg += 1
    return poly


# quadratic forms


def p_star(t: SurfaceTriple) -> QuadForm:
    a, b, c = t.as_tuple()
    am, bm, cm = t.minus()
    ap, bp, cp = t.plus()
    direct = QuadForm.from_products(sq_a=a / 2, sq_b=b / 2, sq_c=c / 2)
    uc = (F(-1), F(-1))
    alpha = (cm * uc[0], cm * uc[1] - bp)
    beta = (am - cp * uc[0], -cp * uc[1])
    wedge = _linear_product((F(1), F(0)), beta) - _linear_product((F(0), F(1)), alpha)
    assert direct == wedge, (t, direct, wedge)
    return direct


def delta2(t: SurfaceTriple) -> QuadForm:
    a, b, c = t.as_tuple()
    lam = lambda_prime_triple(t)
    first = QuadForm.from_products(
        sq_a=a * a + 2 * a * b + 2 * a * c + 3,
        sq_b=b * b + 2 * b * c + 2 * b * a + 3,
        sq_c=c * c + 2 * c * a + 2 * c * b + 3,
    ) * F(-1, 24)
    second = (
        QuadForm.from_products(sq_a=a * a, sq_b=b * b, sq_c=c * c) * F(1, 24)
        - p_star(t) * ((a + b + c) / 6)
        - QuadForm.from_products(1, 1, 1) * F(1, 8)
    )
    third = QuadForm.from_products(
        ab=(a + b) ** 2 + 8 * lam + 4,
        bc=(b + c) ** 2 + 8 * lam + 4,
        ca=(c + a) ** 2 + 8 * lam + 4,
    ) * F(1, 24)
    assert first == second == third, (t, first, second, third)
    return first


def delta_Delta(t: SurfaceTriple, lam: CurveLambdas) -> QuadForm:
    return QuadForm.from_products(bc=-lam.lA, ca=-lam.lB, ab=-lam.lC)


def W_s_eval(q: QuadForm, t: SurfaceTriple) -> Fraction:
    return q.aa * (t.b + t.c) + q.bb * (t.c + t.a) - q.ab * t.c


def _pair_value(x: int, y: int, t: SurfaceTriple) -> Fraction:
    # 0 stands for ua, 1 for ub
    if x == y == 0:
        return t.b + t.c
    if x == y == 1:
        return t.c + t.a
    return -t.c


def _hafnian(items: tuple[int, ...], t: SurfaceTriple, memo: dict) -> Fraction:
    if not items:
        return F(1)
    if items in memo:
        return memo[items]
    first, rest = items[0], items[1:]
    total = F(0)
    for k in range(len(rest)):
        total += _pair_value(first, rest[k], t) * _hafnian(rest[:k] + rest[k + 1 :], t, memo)
    memo[items] = total
    return total


def pairing_count(k: int) -> int:
    return factorial(2 * k) // (factorial(k) * 2**k)


def W_s_2k(h, t: SurfaceTriple, k: int) -> Fraction:
    """Sum over perfect pairings of the 2k variables in each monomial, weighted by the pair values."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    if k > 4:
        raise ValueError("k <= 4 is enforced")
    if isinstance(h, QuadForm):
        terms = h.terms()
    else:
        terms = {m: as_fraction(c) for m, c in dict(h).items() if c != 0}
    degrees = {i + j for i, j in terms}
    if len(degrees) > 1:
        raise NotHomogeneous(f"mixed degrees {sorted(degrees)}")
    if degrees and degrees != {2 * k}:
        raise WrongDegree(f"degree {degrees.pop()} but 2k = {2 * k}")
    memo: dict = {}
    return sum((c * _hafnian((0,) * i + (1,) * j, t, memo) for (i, j), c in terms.items()), F(0))


def w_sl(t: SurfaceTriple, lam: CurveLambdas) -> Fraction:
    return lam.lAB - w_del_triple(t) / 12


def w3(t: SurfaceTriple, lam: CurveLambdas) -> Fraction:
    return (
        F(3, 2) * lam.lAB
        - w_del_triple(t) / 4
        - t.a / 2 * lam.lA
        - t.b / 2 * lam.lB
        - t.c / 2 * lam.lC
    )


def recover_from_w3(w3_value, WsD2, h1: int, lam_k) -> tuple[Fraction, Fraction]:
    """(w_SL, w_delta(Sigma)) from w3, W_s(D_2), |H_1| and lambda'."""
    w3_value, WsD2, lam_k = map(as_fraction, (w3_value, WsD2, lam_k))
    den = 7 * lam_k - 1
    if den == 0:
        raise DegenerateLambda("7*lambda' = 1")
    r = WsD2 / h1
    return (2 * lam_k * w3_value + r) / den, 4 * ((2 - 8 * lam_k) * w3_value + 3 * r) / den


# actions on triples


def dehn_twist_triple(t: SurfaceTriple) -> SurfaceTriple:
    a, b, c = t.as_tuple()
    return SurfaceTriple(a + 2 * b, 2 * b + c, -b, t.strict_odd)


def cyclic(t: SurfaceTriple) -> SurfaceTriple:
    return SurfaceTriple(t.b, t.c, t.a, t.strict_odd)


def mirror(t: SurfaceTriple) -> SurfaceTriple:
    return SurfaceTriple(-t.a, -t.b, -t.c, t.strict_odd)


def odd_triples(r: int):
    """All odd integer triples in [-r, r]^3."""
    odds = [x for x in range(-r, r + 1) if x % 2]
    for a, b, c in product(odds, repeat=3):
        yield SurfaceTriple(F(a), F(b), F(c), True)
