"""Truncated power series in Q[[ua, ub]] (uc = -ua - ub eliminated).

Series are stored by homogeneous degree. Degree d is a dict mapping the
power i of ua to the coefficient of ua^i ub^(d-i). Two bounds are tracked:
``cap`` is the truncation the series was built with, ``valid_to`` the
highest degree whose coefficients are still exact after divisions. Only
degrees 0..valid_to are stored, and reading past valid_to raises.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Iterable, Mapping, Sequence

from .ring import ExpVec, GroupRingElem, as_fraction

__all__ = [
    "TruncSeries",
    "TruncationError",
    "NotDivisible",
    "ZeroConstantTerm",
    "SingularMatrix",
    "embed",
    "bar_series",
    "mul",
    "add",
    "scale",
    "even_part",
    "odd_part",
    "degree_part",
    "divide_by_linear",
    "divide_by_unit",
    "divide_by_sih",
    "subst_linear",
    "restrict",
    "exp_series",
    "sih_series",
    "linear_series",
    "format_series",
    "format_linear",
]


class TruncationError(LookupError):
    """A coefficient above the valid degree frontier was requested."""


class NotDivisible(ArithmeticError):
    """Exact division by a linear form left a nonzero remainder."""


class ZeroConstantTerm(ZeroDivisionError):
    """Attempted to invert a series with zero constant term."""


class SingularMatrix(ValueError):
    pass


_ZERO = Fraction(0)


class TruncSeries:
    __slots__ = ("_parts", "cap", "valid_to")

    def __init__(self, parts: Sequence[Mapping[int, Fraction]], cap: int, valid_to: int | None = None):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        if valid_to is None:
            valid_to = cap
        if valid_to > cap:
            raise ValueError("valid_to cannot exceed cap")
        clean = []
        for d in range(valid_to + 1):
            part = parts[d] if d < len(parts) else {}
            clean.append({i: as_fraction(c) for i, c in part.items() if c != 0})
        for d, part in enumerate(clean):
            if any(not 0 <= i <= d for i in part):
                raise ValueError(f"bad monomial index in degree {d}")
        self._parts = tuple(clean)
        self.cap = cap
        self.valid_to = valid_to

    @classmethod
    def _raw(cls, parts, cap, valid_to):
        obj = cls.__new__(cls)
        obj._parts = tuple(parts)
        obj.cap = cap
        obj.valid_to = valid_to
        return obj

    # construction helpers

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], object] | Iterable, cap: int) -> "TruncSeries":
        """Build from {(i, j): coeff} (power of ua, power of ub); terms above cap are dropped."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        parts: list[dict[int, Fraction]] = [{} for _ in range(cap + 1)]
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent in power series term")
            d = i + j
            if d <= cap:
                parts[d][i] = parts[d].get(i, _ZERO) + as_fraction(c)
        return cls(parts, cap)

    @classmethod
    def zero(cls, cap: int) -> "TruncSeries":
        return cls._raw([{} for _ in range(cap + 1)], cap, cap)

    @classmethod
    def constant(cls, c, cap: int) -> "TruncSeries":
        parts = [{} for _ in range(cap + 1)]
        c = as_fraction(c)
        if c:
            parts[0] = {0: c}
        return cls._raw(parts, cap, cap)

    @classmethod
    def one(cls, cap: int) -> "TruncSeries":
        return cls.constant(1, cap)

    # access

    def _need(self, d: int) -> None:
        if d > self.valid_to:
            raise TruncationError(f"degree {d} is beyond the valid frontier {self.valid_to}")

    def coeff(self, i: int, j: int) -> Fraction:
        self._need(i + j)
        return self._parts[i + j].get(i, _ZERO)

    def part(self, d: int) -> dict[int, Fraction]:
        """Degree-d component as {power of ua: coeff}."""
        self._need(d)
        return dict(self._parts[d])

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {(i, d - i): c for d, part in enumerate(self._parts) for i, c in part.items()}

    @property
    def parts(self) -> tuple[dict[int, Fraction], ...]:
        return tuple(dict(p) for p in self._parts)

    def is_zero(self) -> bool:
        return not any(self._parts)

    def order(self) -> int:
        """Lowest degree with a nonzero coefficient (valid_to + 1 if none)."""
        for d, part in enumerate(self._parts):
            if part:
                return d
        return self.valid_to + 1

    def truncate(self, n: int) -> "TruncSeries":
        """Forget everything above degree n."""
        n = min(n, self.valid_to)
        return TruncSeries._raw(self._parts[: n + 1], min(self.cap, n), n)

    def agrees(self, other: "TruncSeries", upto: int | None = None) -> bool:
        """Coefficientwise equality up to the common valid degree (or `upto`)."""
        n = min(self.valid_to, other.valid_to)
        if upto is not None:
            if upto > n:
                raise TruncationError(f"cannot compare up to {upto}; valid only to {n}")
            n = upto
        return all(self._parts[d] == other._parts[d] for d in range(n + 1))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(other, self.cap)
            return self.agrees(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.valid_to == other.valid_to and self._parts == other._parts

    __hash__ = None  # type: ignore[assignment]

    # arithmetic

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return add(self, -Fraction(other))
        return add(self, scale(other, -1))

    def __rsub__(self, other):
        return add(scale(self, -1), other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def bar(self) -> "TruncSeries":
        return bar_series(self)

    def __repr__(self) -> str:
        return f"TruncSeries({format_series(self)}; cap={self.cap}, valid_to={self.valid_to})"

    def __str__(self) -> str:
        return format_series(self)


# elementary operations


def add(s: TruncSeries, t) -> TruncSeries:
    if isinstance(t, (int, Fraction)):
        t = TruncSeries.constant(t, s.cap)
    n = min(s.valid_to, t.valid_to)
    parts = []
    for d in range(n + 1):
        acc = dict(s._parts[d])
        for i, c in t._parts[d].items():
            v = acc.get(i, _ZERO) + c
            if v:
                acc[i] = v
            else:
                acc.pop(i, None)
        parts.append(acc)
    return TruncSeries._raw(parts, min(s.cap, t.cap), n)


def scale(s: TruncSeries, k) -> TruncSeries:
    k = as_fraction(k)
    if k == 0:
        return TruncSeries._raw([{} for _ in s._parts], s.cap, s.valid_to)
    return TruncSeries._raw([{i: c * k for i, c in p.items()} for p in s._parts], s.cap, s.valid_to)


def _integerize(parts) -> tuple[int, list[list[tuple[int, int]]]]:
    den = 1
    for p in parts:
        for c in p.values():
            den = lcm(den, c.denominator)
    ints = [[(i, c.numerator * (den // c.denominator)) for i, c in p.items()] for p in parts]
    return den, ints


def mul(s: TruncSeries, t: TruncSeries) -> TruncSeries:
    """Product; exact up to the smaller valid degree."""
    if isinstance(t, (int, Fraction)):
        return scale(s, t)
    n = min(s.valid_to, t.valid_to)
    ds, a = _integerize(s._parts[: n + 1])
    dt, b = _integerize(t._parts[: n + 1])
    den = ds * dt
    parts = []
    for d in range(n + 1):
        acc: dict[int, int] = {}
        for d1 in range(d + 1):
            pa, pb = a[d1], b[d - d1]
            if not pa or not pb:
                continue
            for i1, x in pa:
                for i2, y in pb:
                    acc[i1 + i2] = acc.get(i1 + i2, 0) + x * y
        parts.append({i: Fraction(v, den) for i, v in acc.items() if v})
    return TruncSeries._raw(parts, min(s.cap, t.cap), n)


def bar_series(s: TruncSeries) -> TruncSeries:
    """exp(x) -> exp(-x) transported to series: degree d picks up (-1)^d."""
    return TruncSeries._raw(
        [p if d % 2 == 0 else {i: -c for i, c in p.items()} for d, p in enumerate(s._parts)],
        s.cap,
        s.valid_to,
    )


def even_part(s: TruncSeries) -> TruncSeries:
    return TruncSeries._raw([p if d % 2 == 0 else {} for d, p in enumerate(s._parts)], s.cap, s.valid_to)


def odd_part(s: TruncSeries) -> TruncSeries:
    return TruncSeries._raw([p if d % 2 else {} for d, p in enumerate(s._parts)], s.cap, s.valid_to)


def degree_part(s: TruncSeries, d: int) -> dict[tuple[int, int], Fraction]:
    """Homogeneous degree-d polynomial as {(i, j): coeff}."""
    return {(i, d - i): c for i, c in s.part(d).items()}


# the exponential embedding


def _linear_powers(L: ExpVec, n: int) -> list[dict[int, Fraction]]:
    """(p*ua + q*ub)^k / k! for k = 0..n, as homogeneous parts."""
    p, q = L.p, L.q
    out = []
    for k in range(n + 1):
        part = {}
        for i in range(k + 1):
            c = (p**i) * (q ** (k - i)) / (factorial(i) * factorial(k - i))
            if c:
                part[i] = c
        out.append(part)
    return out


def embed(x: GroupRingElem, cap: int) -> TruncSeries:
    """exp(v) -> sum v^n/n!, truncated at cap."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    parts: list[dict[int, Fraction]] = [{} for _ in range(cap + 1)]
    for e, c in x.terms.items():
        for d, part in enumerate(_linear_powers(e, cap)):
            tgt = parts[d]
            for i, v in part.items():
                tgt[i] = tgt.get(i, _ZERO) + c * v
    return TruncSeries(parts, cap)


@lru_cache(maxsize=None)
def exp_series(L: ExpVec, cap: int) -> TruncSeries:
    """embed(exp(L)) without building the group-ring element."""
    return TruncSeries._raw(_linear_powers(L, cap), cap, cap)


@lru_cache(maxsize=None)
def sih_series(L: ExpVec, cap: int) -> TruncSeries:
    """embed(exp(L/2) - exp(-L/2))."""
    h = L * Fraction(1, 2)
    return odd_part(exp_series(h, cap)) * 2


def linear_series(L: ExpVec, cap: int) -> TruncSeries:
    parts: list[dict[int, Fraction]] = [{} for _ in range(cap + 1)]
    if cap >= 1:
        parts[1] = {i: c for i, c in ((1, L.p), (0, L.q)) if c}
    return TruncSeries._raw(parts, cap, cap)


# division


def _divide_part(part: Mapping[int, Fraction], d: int, p: Fraction, q: Fraction) -> dict[int, Fraction]:
    """Divide a homogeneous degree-d polynomial by p*ua + q*ub (d >= 1)."""
    g: dict[int, Fraction] = {}
    if p != 0:
        # coefficient of ua^k ub^(d-k) in L*g is p*g[k-1] + q*g[k]
        nxt = _ZERO
        for k in range(d, 0, -1):
            val = (part.get(k, _ZERO) - q * nxt) / p
            if val:
                g[k - 1] = val
            nxt = val
        if part.get(0, _ZERO) != q * nxt:
            raise NotDivisible(f"nonzero remainder in degree {d}")
    else:
        if part.get(d, _ZERO) != 0:
            raise NotDivisible(f"nonzero remainder in degree {d}")
        for k in range(d):
            val = part.get(k, _ZERO) / q
            if val:
                g[k] = val
    return g


def divide_by_linear(s: TruncSeries, L: ExpVec) -> TruncSeries:
    """The series g with L*g = s; valid one degree less than s."""
    if L.is_zero():
        raise ZeroDivisionError("division by the zero linear form")
    if s.valid_to < 1:
        raise TruncationError("series has no valid degree left to divide")
    if s._parts[0]:
        raise NotDivisible("nonzero constant term")
    parts = [_divide_part(s._parts[d], d, L.p, L.q) for d in range(1, s.valid_to + 1)]
    return TruncSeries._raw(parts, s.cap, s.valid_to - 1)


def _inverse(u: TruncSeries) -> TruncSeries:
    c0 = u._parts[0].get(0, _ZERO)
    if c0 == 0:
        raise ZeroConstantTerm("constant term is zero")
    inv0 = 1 / c0
    n = u.valid_to
    out: list[dict[int, Fraction]] = [{0: inv0}]
    for d in range(1, n + 1):
        acc: dict[int, Fraction] = {}
        for k in range(1, d + 1):
            pu, pv = u._parts[k], out[d - k]
            for i1, x in pu.items():
                for i2, y in pv.items():
                    acc[i1 + i2] = acc.get(i1 + i2, _ZERO) + x * y
        out.append({i: -v * inv0 for i, v in acc.items() if v})
    return TruncSeries._raw(out, u.cap, n)


def divide_by_unit(s: TruncSeries, u: TruncSeries) -> TruncSeries:
    """s * u^-1 for u with nonzero constant term."""
    n = min(s.valid_to, u.valid_to)
    return mul(s, _inverse(u.truncate(n)))


@lru_cache(maxsize=None)
def _sih_unit_inverse(L: ExpVec, n: int) -> TruncSeries:
    # (sih(L)/L)^-1 up to degree n
    ratio = divide_by_linear(sih_series(L, n + 1), L)
    return _inverse(ratio)


def divide_by_sih(s: TruncSeries, L: ExpVec) -> TruncSeries:
    """Exact division by sih(L) = exp(L/2) - exp(-L/2): by L, then by the unit sih(L)/L."""
    g = divide_by_linear(s, L)
    return mul(g, _sih_unit_inverse(L, g.valid_to))


# substitutions


def _apply_rows(s: TruncSeries, rows) -> TruncSeries:
    img_a = ExpVec(as_fraction(rows[0][0]), as_fraction(rows[0][1]))
    img_b = ExpVec(as_fraction(rows[1][0]), as_fraction(rows[1][1]))
    n = s.valid_to
    # plain powers (not divided by factorials)
    pa = [{0: Fraction(1)}]
    pb = [{0: Fraction(1)}]
    for _ in range(n):
        pa.append(_times_linear(pa[-1], img_a))
        pb.append(_times_linear(pb[-1], img_b))
    parts = []
    for d in range(n + 1):
        acc: dict[int, Fraction] = {}
        for i, c in s._parts[d].items():
            for i1, x in pa[i].items():
                for i2, y in pb[d - i].items():
                    acc[i1 + i2] = acc.get(i1 + i2, _ZERO) + c * x * y
        parts.append({i: v for i, v in acc.items() if v})
    return TruncSeries._raw(parts, s.cap, n)


def _times_linear(part: Mapping[int, Fraction], L: ExpVec) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, c in part.items():
        if L.p:
            out[i + 1] = out.get(i + 1, _ZERO) + c * L.p
        if L.q:
            out[i] = out.get(i, _ZERO) + c * L.q
    return {i: v for i, v in out.items() if v}


def subst_linear(s: TruncSeries, M) -> TruncSeries:
    """Substitute ua -> M[0][0]*ua + M[0][1]*ub and ub -> M[1][0]*ua + M[1][1]*ub."""
    det = as_fraction(M[0][0]) * as_fraction(M[1][1]) - as_fraction(M[0][1]) * as_fraction(M[1][0])
    if det == 0:
        raise SingularMatrix("substitution matrix is singular")
    return _apply_rows(s, M)


def restrict(s: TruncSeries, variable: str) -> TruncSeries:
    """Set one of ua, ub, uc to zero. Setting uc = 0 means ub -> -ua."""
    if variable == "ua":
        rows = ((0, 0), (0, 1))
    elif variable == "ub":
        rows = ((1, 0), (0, 0))
    elif variable == "uc":
        rows = ((1, 0), (-1, 0))
    else:
        raise ValueError(f"unknown variable {variable!r}")
    return _apply_rows(s, rows)


# rendering


def _monomial(i: int, j: int) -> str:
    bits = []
    if i:
        bits.append("ua" if i == 1 else f"ua^{i}")
    if j:
        bits.append("ub" if j == 1 else f"ub^{j}")
    return "*".join(bits)


def _join(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_series(s: TruncSeries, upto: int | None = None) -> str:
    """Canonical text: terms by degree, then by power of ua descending."""
    n = s.valid_to if upto is None else min(upto, s.valid_to)
    terms = []
    for d in range(n + 1):
        for i in sorted(s._parts[d], reverse=True):
            terms.append((s._parts[d][i], _monomial(i, d - i)))
    return _join(terms)


def format_linear(L: ExpVec) -> str:
    return _join([(c, m) for c, m in ((L.p, "ua"), (L.q, "ub")) if c])


def series_terms_json(s: TruncSeries, upto: int | None = None) -> list[list]:
    n = s.valid_to if upto is None else min(upto, s.valid_to)
    out = []
    for d in range(n + 1):
        for i in sorted(s._parts[d], reverse=True):
            out.append([i, d - i, str(s._parts[d][i])])
    return out
