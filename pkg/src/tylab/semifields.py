"""Coefficient semifields for mutation dynamics.

Four semifields are supported, selected by tag:

* ``trivial``           -- the one-element semifield {1},
* ``tropical``          -- Laurent monomials in the initial coefficients,
                           with a (+) b = pointwise-min of exponents,
* ``positive_rational`` -- exact positive rationals, a (+) b = a + b,
* ``coeff_poly``        -- ratios of polynomials with nonnegative integer
                           coefficients (subtraction-free), a (+) b = a + b.

Every element of each semifield is strictly positive in the evaluation
sense, so inversion is total.  ``classify_sign`` grades a tropical
monomial by its exponent signs; mixed-sign monomials can occur away from
mutation points and are tracked explicitly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core_algebra import VertexId

_EXP_LIMIT = 2**63  # exponents must stay in machine range


class SignClass(enum.Enum):
    Positive = "+"
    Negative = "-"
    One = "1"
    Mixed = "mixed"


class TropMonomial:
    """Laurent monomial in the initial coefficients y_v, v a vertex."""

    __slots__ = ("exps",)

    def __init__(self, exps: Mapping[VertexId, int] | None = None):
        clean = {}
        for v, e in (exps or {}).items():
            if e:
                if abs(e) >= _EXP_LIMIT:
                    raise OverflowError("tropical exponent out of range")
                clean[v] = e
        self.exps: dict[VertexId, int] = clean

    @classmethod
    def variable(cls, v: VertexId, e: int = 1) -> "TropMonomial":
        return cls({v: e})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TropMonomial):
            return NotImplemented
        return self.exps == other.exps

    def __hash__(self) -> int:
        return hash(frozenset(self.exps.items()))

    def __mul__(self, other: "TropMonomial") -> "TropMonomial":
        exps = dict(self.exps)
        for v, e in other.exps.items():
            exps[v] = exps.get(v, 0) + e
        return TropMonomial(exps)

    def inv(self) -> "TropMonomial":
        return TropMonomial({v: -e for v, e in self.exps.items()})

    def __pow__(self, n: int) -> "TropMonomial":
        return TropMonomial({v: e * n for v, e in self.exps.items()})

    def trop_add(self, other: "TropMonomial") -> "TropMonomial":
        """a (+) b with exponentwise min (absent exponents count as 0)."""
        exps = {}
        for v in set(self.exps) | set(other.exps):
            exps[v] = min(self.exps.get(v, 0), other.exps.get(v, 0))
        return TropMonomial(exps)

    def is_one(self) -> bool:
        return not self.exps

    def exponent(self, v: VertexId) -> int:
        return self.exps.get(v, 0)

    def exponent_vector(self, order: Iterable[VertexId]) -> list[int]:
        return [self.exps.get(v, 0) for v in order]

    def text_form(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for v in sorted(self.exps, key=lambda w: (w.i, w.ip)):
            e = self.exps[v]
            head = f"y[{v.i},{v.ip}]"
            parts.append(head if e == 1 else f"{head}^{e}")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"TropMonomial({self.text_form()})"


def classify_sign(m: TropMonomial) -> SignClass:
    if not m.exps:
        return SignClass.One
    has_pos = any(e > 0 for e in m.exps.values())
    has_neg = any(e < 0 for e in m.exps.values())
    if has_pos and has_neg:
        return SignClass.Mixed
    return SignClass.Positive if has_pos else SignClass.Negative


class PosRational(Fraction):
    """Strictly positive rational; arithmetic is exact (inherited)."""

    def __new__(cls, numerator=1, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self <= 0:
            raise ValueError("PosRational must be strictly positive")
        return self


# ----------------------------------------------------------------------
# Subtraction-free rational functions
# ----------------------------------------------------------------------

Poly = dict[tuple[int, ...], int]  # exponent tuple -> coefficient > 0


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {e: c for e, c in out.items() if c}

def _poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


class CoeffPoly:
    """Ratio num/den of polynomials with positive integer coefficients.

    Equality is decided by cross-multiplication; no cancellation is ever
    attempted, so representatives are not canonical but comparisons are
    exact.
    """

    __slots__ = ("nvars", "num", "den")

    def __init__(self, nvars: int, num: Poly, den: Poly | None = None):
        self.nvars = nvars
        if den is None:
            den = {(0,) * nvars: 1}
        if not num or not den:
            raise ValueError("zero numerator or denominator")
        for poly in (num, den):
            for e, c in poly.items():
                if len(e) != nvars:
                    raise ValueError("bad exponent arity")
                if c <= 0:
                    raise ValueError("coefficients must be positive")
                if any(x < 0 for x in e):
                    raise ValueError("polynomial exponents must be >= 0")
        self.num = dict(num)
        self.den = dict(den)

    @classmethod
    def one(cls, nvars: int) -> "CoeffPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "CoeffPoly":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): 1})

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        return CoeffPoly(self.nvars, _poly_mul(self.num, other.num),
                         _poly_mul(self.den, other.den))

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        num = _poly_add(_poly_mul(self.num, other.den),
                        _poly_mul(other.num, self.den))
        return CoeffPoly(self.nvars, num, _poly_mul(self.den, other.den))

    def inv(self) -> "CoeffPoly":
        return CoeffPoly(self.nvars, self.den, self.num)

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            return self.inv() ** (-n)
        out = CoeffPoly.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return _poly_mul(self.num, other.den) == _poly_mul(other.num, self.den)

    def __hash__(self):  # pragma: no cover
        raise TypeError("CoeffPoly is unhashable")

    def evaluate(self, point: Iterable[Fraction]) -> Fraction:
        pt = list(point)

        def ev(p: Poly) -> Fraction:
            tot = Fraction(0)
            for e, c in p.items():
                term = Fraction(c)
                for x, k in zip(pt, e):
                    term *= x**k
                tot += term
            return tot

        return ev(self.num) / ev(self.den)

    def __repr__(self) -> str:
        return f"CoeffPoly(num={self.num}, den={self.den})"


# ----------------------------------------------------------------------
# Uniform operation bundles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SemifieldOps:
    """Operations a mutation walk needs, independent of the carrier type."""

    tag: str
    one: object
    mul: object  # (a, b) -> a * b
    inv: object  # a -> a^-1
    oplus: object  # (a, b) -> a (+) b
    embed_var: object  # VertexId -> initial coefficient value
    is_one: object  # a -> bool

    def power(self, a, n: int):
        if n == 0:
            return self.one
        if n < 0:
            return self.power(self.inv(a), -n)
        out = a
        for _ in range(n - 1):
            out = self.mul(out, a)
        return out


def semifield_ops(
    tag: str,
    *,
    vertices: Iterable[VertexId] | None = None,
    point: Mapping[VertexId, Fraction] | None = None,
) -> SemifieldOps:
    """Operation bundle for the requested semifield.

    ``tropical`` needs nothing extra; ``positive_rational`` needs a
    ``point`` assigning a positive rational to each initial coefficient;
    ``coeff_poly`` needs the ordered ``vertices`` tuple fixing variable
    slots.
    """
    if tag == "trivial":
        return SemifieldOps(
            tag,
            one=1,
            mul=lambda a, b: 1,
            inv=lambda a: 1,
            oplus=lambda a, b: 1,
            embed_var=lambda v: 1,
            is_one=lambda a: True,
        )
    if tag == "tropical":
        return SemifieldOps(
            tag,
            one=TropMonomial(),
            mul=lambda a, b: a * b,
            inv=lambda a: a.inv(),
            oplus=lambda a, b: a.trop_add(b),
            embed_var=lambda v: TropMonomial.variable(v),
            is_one=lambda a: a.is_one(),
        )
    if tag == "positive_rational":
        if point is None:
            raise ValueError("positive_rational semifield needs a point")
        pt = dict(point)
        if any(x <= 0 for x in pt.values()):
            raise ValueError("the evaluation point must be positive")
        return SemifieldOps(
            tag,
            one=Fraction(1),
            mul=lambda a, b: a * b,
            inv=lambda a: 1 / a,
            oplus=lambda a, b: a + b,
            embed_var=lambda v: Fraction(pt[v]),
            is_one=lambda a: a == 1,
        )
    if tag == "coeff_poly":
        if vertices is None:
            raise ValueError("coeff_poly semifield needs the vertex order")
        order = tuple(vertices)
        idx = {v: k for k, v in enumerate(order)}
        n = len(order)
        return SemifieldOps(
            tag,
            one=CoeffPoly.one(n),
            mul=lambda a, b: a * b,
            inv=lambda a: a.inv(),
            oplus=lambda a, b: a + b,
            embed_var=lambda v: CoeffPoly.variable(n, idx[v]),
            is_one=lambda a: a == CoeffPoly.one(n),
        )
    raise ValueError(f"unknown semifield tag {tag!r}")
