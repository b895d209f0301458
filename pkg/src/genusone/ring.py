"""Group ring of Laurent monomials exp(p*ua + q*ub) with rational exponents.

The third boundary variable uc is never stored: it is eliminated through
uc = -ua - ub as soon as it appears. Every element lives on the lattice
(1/(2D)) Z^2 for a context denominator D (default 1).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, NamedTuple, Union

Number = Union[int, Fraction]


class LatticeError(ValueError):
    """An exponent falls off the context lattice, or two contexts differ."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to Fraction (never floats)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class ExpVec(NamedTuple):
    """A linear form p*ua + q*ub (an element of H_1(E; Q))."""

    p: Fraction
    q: Fraction

    @classmethod
    def of(cls, p: Number | str = 0, q: Number | str = 0) -> "ExpVec":
        return cls(as_fraction(p), as_fraction(q))

    def __add__(self, other):  # type: ignore[override]
        return ExpVec(self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        return ExpVec(self.p - other.p, self.q - other.q)

    def __neg__(self):
        return ExpVec(-self.p, -self.q)

    def __mul__(self, k):  # type: ignore[override]
        k = as_fraction(k)
        return ExpVec(self.p * k, self.q * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __str__(self) -> str:
        from .series import format_linear

        return format_linear(self)


UA = ExpVec(Fraction(1), Fraction(0))
UB = ExpVec(Fraction(0), Fraction(1))
UC = ExpVec(Fraction(-1), Fraction(-1))
ZERO = ExpVec(Fraction(0), Fraction(0))


def context_denominator(*vectors: ExpVec) -> int:
    """Smallest D such that every vector lies on (1/(2D)) Z^2."""
    d = 1
    for v in vectors:
        for x in (v.p, v.q):
            d = lcm(d, (2 * x).denominator)
    return d


def _on_lattice(v: ExpVec, denom: int) -> bool:
    return (2 * denom * v.p).denominator == 1 and (2 * denom * v.q).denominator == 1


class GroupRingElem:
    """Finite Laurent combination sum_x c_x exp(x); immutable."""

    __slots__ = ("_terms", "denom")

    def __init__(self, terms: Mapping[ExpVec, Number] | Iterable = (), denom: int = 1):
        if denom < 1:
            raise ValueError("context denominator must be a positive integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExpVec, Fraction] = {}
        for x, c in items:
            x = ExpVec(as_fraction(x[0]), as_fraction(x[1]))
            if not _on_lattice(x, denom):
                raise LatticeError(f"exponent {tuple(map(str, x))} is not on the 1/{2 * denom} lattice")
            acc[x] = acc.get(x, Fraction(0)) + as_fraction(c)
        self._terms = {x: c for x, c in acc.items() if c != 0}
        self.denom = denom

    @classmethod
    def _raw(cls, terms: dict, denom: int) -> "GroupRingElem":
        obj = cls.__new__(cls)
        obj._terms = {x: c for x, c in terms.items() if c != 0}
        obj.denom = denom
        return obj

    @classmethod
    def one(cls, denom: int = 1) -> "GroupRingElem":
        return cls._raw({ZERO: Fraction(1)}, denom)

    @classmethod
    def monomial(cls, x: ExpVec, coeff: Number = 1, denom: int | None = None) -> "GroupRingElem":
        if denom is None:
            denom = context_denominator(x)
        return cls({x: coeff}, denom)

    @property
    def terms(self) -> Mapping[ExpVec, Fraction]:
        return dict(self._terms)

    def lift(self, denom: int) -> "GroupRingElem":
        """Re-house this element in a finer context (denom a multiple of self.denom)."""
        if denom % self.denom:
            raise LatticeError(f"cannot lift context {self.denom} to {denom}")
        return GroupRingElem._raw(self._terms, denom)

    def _check(self, other: "GroupRingElem") -> None:
        if self.denom != other.denom:
            raise LatticeError(f"context denominators differ: {self.denom} vs {other.denom}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem.one(self.denom) * other
        self._check(other)
        acc = dict(self._terms)
        for x, c in other._terms.items():
            acc[x] = acc.get(x, Fraction(0)) + c
        return GroupRingElem._raw(acc, self.denom)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem._raw({x: -c for x, c in self._terms.items()}, self.denom)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem.one(self.denom) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = Fraction(other)
            return GroupRingElem._raw({x: c * k for x, c in self._terms.items()}, self.denom)
        return grg_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = GroupRingElem.one(self.denom)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem.one(self.denom) * other
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def bar(self) -> "GroupRingElem":
        return grg_bar(self)

    def sorted_terms(self) -> list[tuple[ExpVec, Fraction]]:
        """Terms in graded lexicographic order on the integer coordinates (2Dp, 2Dq)."""
        s = 2 * self.denom

        def key(item):
            x = item[0]
            i, j = int(x.p * s), int(x.q * s)
            return (abs(i) + abs(j), -i, -j)

        return sorted(self._terms.items(), key=key)

    def __repr__(self) -> str:
        if not self._terms:
            return "GroupRingElem(0)"
        body = " + ".join(f"{c}*exp({x})" for x, c in self.sorted_terms())
        return f"GroupRingElem({body})"


def grg_mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    """Bilinear product; exponents add."""
    x._check(y)
    acc: dict[ExpVec, Fraction] = {}
    for ex, cx in x._terms.items():
        for ey, cy in y._terms.items():
            e = ExpVec(ex.p + ey.p, ex.q + ey.q)
            acc[e] = acc.get(e, Fraction(0)) + cx * cy
    return GroupRingElem._raw(acc, x.denom)


def grg_bar(x: GroupRingElem) -> GroupRingElem:
    """The involution exp(v) -> exp(-v)."""
    return GroupRingElem._raw({-e: c for e, c in x._terms.items()}, x.denom)


def sih_elem(L: ExpVec, denom: int | None = None) -> GroupRingElem:
    """exp(L/2) - exp(-L/2)."""
    h = L * Fraction(1, 2)
    if denom is None:
        denom = context_denominator(h)
    return GroupRingElem({h: 1}, denom) - GroupRingElem({-h: 1}, denom)


def cosh_elem(L: ExpVec, denom: int | None = None) -> GroupRingElem:
    """(exp(L/2) + exp(-L/2)) / 2."""
    h = L * Fraction(1, 2)
    if denom is None:
        denom = context_denominator(h)
    return GroupRingElem({h: Fraction(1, 2)}, denom) + GroupRingElem({-h: Fraction(1, 2)}, denom)


def exp_elem(L: ExpVec, denom: int | None = None) -> GroupRingElem:
    if denom is None:
        denom = context_denominator(L)
    return GroupRingElem({L: 1}, denom)
