"""Seeds and their mutations: coefficients, clusters, F-polynomials.

A seed holds an exchange matrix ``B``, coefficients ``y`` in a chosen
semifield, and (optionally) cluster variables ``x`` as exact Laurent
polynomials in the initial cluster.  Mutation at vertex ``k``:

* coefficients:  y'_k = y_k^-1 and, for i != k with c = B[k][i],
      y'_i = y_i (y_k / (1 (+) y_k))^c     if c >= 0,
      y'_i = y_i (1 (+) y_k)^(-c)          if c <= 0;
* cluster:  x_k x'_k = p+ prod_{B[j][k]>0} x_j^B[j][k]
                     + p- prod_{B[j][k]<0} x_j^(-B[j][k]),
  where (p+, p-) = (y_k/(1(+)y_k), 1/(1(+)y_k)) pushed into the
  coefficient ring of the cluster; with principal coefficients both are
  honest monomials in the initial y, so the right side is a polynomial
  and the division by x_k is exact (Laurent phenomenon, asserted).

With tropical coefficients a fast path applies: when the tropical sign
of y_k is not mixed, 1 (+) y_k is 1 or y_k and the update is a monomial
multiplication.  Mixed signs fall back to the generic rule and are
counted, so callers can assert where sign coherence is expected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .core_algebra import SkewMatrix, VertexId, mutate_matrix
from .semifields import SemifieldOps, SignClass, TropMonomial, classify_sign


class ExactDivisionError(ArithmeticError):
    pass


def _lex_max(keys) -> tuple[int, ...]:
    return max(keys)


class LaurentPoly:
    """Laurent polynomial with exact rational coefficients.

    Terms map exponent tuples (fixed arity) to nonzero Fractions; term
    order for display/serialization is lexicographic on exponents.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction | int]):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError("bad exponent arity")
            c = Fraction(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: Fraction | int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, idx: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[idx] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: tuple[int, ...], c: Fraction | int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): Fraction(c)})

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def min_exponents(self) -> list[int]:
        if not self.terms:
            return [0] * self.nvars
        return [min(e[i] for e in self.terms) for i in range(self.nvars)]

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(self.nvars, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) - c
        return LaurentPoly(self.nvars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return LaurentPoly(self.nvars, out)

    def shift(self, offsets: Iterable[int]) -> "LaurentPoly":
        off = tuple(offsets)
        return LaurentPoly(
            self.nvars,
            {tuple(x + o for x, o in zip(e, off)): c for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ExactDivisionError("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            return LaurentPoly(self.nvars, {tuple(x * n for x in e): c**n})
        out = LaurentPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ExactDivisionError if not divisible."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_monomial():
            (e, c), = other.terms.items()
            return LaurentPoly(
                self.nvars,
                {
                    tuple(x - y for x, y in zip(ea, e)): ca / c
                    for ea, ca in self.terms.items()
                },
            )
        if self.is_zero():
            return self
        # shift both to honest polynomials, then eliminate leading terms
        f = self.shift([-m for m in self.min_exponents()])
        shift_g = [-m for m in other.min_exponents()]
        g = other.shift(shift_g)
        glead = _lex_max(g.terms)
        gc = g.terms[glead]
        quo: dict[tuple[int, ...], Fraction] = {}
        cap = 8 * len(f.terms) + 256
        steps = 0
        while not f.is_zero():
            steps += 1
            if steps > cap:
                raise ExactDivisionError("division did not terminate; not exact")
            flead = _lex_max(f.terms)
            q = tuple(a - b for a, b in zip(flead, glead))
            qc = f.terms[flead] / gc
            quo[q] = qc
            f = f - LaurentPoly.monomial(self.nvars, q, qc) * g
        # undo the shifts: self = (f0 * S) and other = (g0 * T) => quo * S/T
        net = [
            -(a) + b
            for a, b in zip([-m for m in self.min_exponents()], shift_g)
        ]
        return LaurentPoly(self.nvars, quo).shift(net)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):  # pragma: no cover
        raise TypeError("LaurentPoly is unhashable")

    # -- specialization ------------------------------------------------------
    def project_ones(self, idxs: Iterable[int]) -> "LaurentPoly":
        """Set the listed variables to 1 (drop their exponents)."""
        drop = sorted(set(idxs))
        keep = [i for i in range(self.nvars) if i not in drop]
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, Fraction(0)) + c
        return LaurentPoly(len(keep), out)

    def evaluate(self, point: Iterable[Fraction]) -> Fraction:
        pt = list(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                term *= x**k
            total += term
        return total

    def text_form(self, names: Iterable[str]) -> str:
        ns = list(names)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [
                f"{ns[i]}^{k}" if k != 1 else ns[i] for i, k in enumerate(e) if k
            ]
            body = "*".join(factors) if factors else "1"
            parts.append(f"{c}*{body}" if c != 1 or not factors else body)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {len(self.terms)} terms)"


class FPolynomial(LaurentPoly):
    """Polynomial in the initial coefficients with constant term 1."""

    def __init__(self, nvars, terms):
        super().__init__(nvars, terms)
        if any(x < 0 for e in self.terms for x in e):
            raise ValueError("negative exponent in an F-polynomial")
        if self.constant_term() != 1:
            raise ValueError("constant term of an F-polynomial must be 1")


# ----------------------------------------------------------------------
# Coefficient mutation
# ----------------------------------------------------------------------


def mutate_coeffs(
    B: SkewMatrix,
    y: Mapping[VertexId, object],
    ops: SemifieldOps,
    k: VertexId,
) -> dict[VertexId, object]:
    yk = y[k]
    denom = ops.oplus(ops.one, yk)  # 1 (+) y_k
    out: dict[VertexId, object] = {}
    for v in B.vertices:
        if v == k:
            out[v] = ops.inv(yk)
            continue
        c = B.entry(k, v)
        if c > 0:
            out[v] = ops.mul(y[v], ops.power(ops.mul(yk, ops.inv(denom)), c))
        elif c < 0:
            out[v] = ops.mul(y[v], ops.power(denom, -c))
        else:
            out[v] = y[v]
    return out


def mutate_coeffs_tropical_fast(
    B: SkewMatrix,
    y: Mapping[VertexId, TropMonomial],
    k: VertexId,
) -> tuple[dict[VertexId, TropMonomial], bool]:
    """Tropical coefficient mutation via the sign of y_k.

    Returns the new coefficients and a flag saying whether y_k had mixed
    sign (in which case the generic rule was used).
    """
    yk = y[k]
    sign = classify_sign(yk)
    if sign is SignClass.Mixed:
        from .semifields import semifield_ops

        return mutate_coeffs(B, y, semifield_ops("tropical"), k), True
    out: dict[VertexId, TropMonomial] = {}
    for v in B.vertices:
        if v == k:
            out[v] = yk.inv()
            continue
        c = B.entry(k, v)
        if (c > 0 and sign is SignClass.Positive) or (
            c < 0 and sign is SignClass.Negative
        ):
            out[v] = y[v] * yk ** abs(c)
        else:
            out[v] = y[v]
    return out, False


# ----------------------------------------------------------------------
# Seeds
# ----------------------------------------------------------------------


@dataclass
class Seed:
    """Exchange matrix + coefficients (+ optional exact cluster).

    ``cluster`` maps vertices to Laurent polynomials in the initial
    cluster variables.  With ``principal=True`` the polynomial ring has
    one x-slot and one y-slot per vertex (x first, then y, both in
    ``B.vertices`` order) and ``y`` must be tropical monomials.
    """

    B: SkewMatrix
    y: dict[VertexId, object]
    ops: SemifieldOps
    cluster: dict[VertexId, LaurentPoly] | None = None
    principal: bool = False
    mixed_fallbacks: int = 0

    @classmethod
    def initial(
        cls,
        B: SkewMatrix,
        ops: SemifieldOps,
        *,
        with_cluster: bool = False,
        principal: bool = False,
    ) -> "Seed":
        y = {v: ops.embed_var(v) for v in B.vertices}
        cluster = None
        if with_cluster or principal:
            n = B.n
            nvars = 2 * n if principal else n
            cluster = {
                v: LaurentPoly.variable(nvars, a)
                for a, v in enumerate(B.vertices)
            }
        return cls(B=B, y=y, ops=ops, cluster=cluster, principal=principal)

    def copy(self) -> "Seed":
        return Seed(
            B=self.B,
            y=dict(self.y),
            ops=self.ops,
            cluster=dict(self.cluster) if self.cluster is not None else None,
            principal=self.principal,
            mixed_fallbacks=self.mixed_fallbacks,
        )

    def x_names(self) -> list[str]:
        names = [f"x[{v.i},{v.ip}]" for v in self.B.vertices]
        if self.principal:
            names += [f"y[{v.i},{v.ip}]" for v in self.B.vertices]
        return names


def _principal_coeff_monomials(
    seed: Seed, k: VertexId
) -> tuple[LaurentPoly, LaurentPoly]:
    """(y_k/(1(+)y_k), 1/(1(+)y_k)) as polynomials in the y-slots.

    Tropically 1 (+) y_k has exponents min(0, e), so the two ratios have
    exponents max(e, 0) and max(-e, 0): both honest monomials.
    """
    n = seed.B.n
    yk: TropMonomial = seed.y[k]
    idx = {v: a for a, v in enumerate(seed.B.vertices)}
    plus = [0] * (2 * n)
    minus = [0] * (2 * n)
    for v, e in yk.exps.items():
        plus[n + idx[v]] = max(e, 0)
        minus[n + idx[v]] = max(-e, 0)
    return (
        LaurentPoly.monomial(2 * n, tuple(plus)),
        LaurentPoly.monomial(2 * n, tuple(minus)),
    )


def mutate_cluster(seed: Seed, k: VertexId) -> dict[VertexId, LaurentPoly]:
    """Exchange the cluster variable at ``k``; division must be exact."""
    if seed.cluster is None:
        raise ValueError("seed carries no cluster")
    B = seed.B
    nvars = 2 * B.n if seed.principal else B.n
    if seed.principal:
        p_plus, p_minus = _principal_coeff_monomials(seed, k)
    else:
        if seed.ops.tag != "trivial":
            raise ValueError(
                "cluster tracking supports trivial or principal coefficients"
            )
        p_plus = p_minus = LaurentPoly.one(nvars)
    term_plus, term_minus = p_plus, p_minus
    for j in B.vertices:
        c = B.entry(j, k)
        if c > 0:
            term_plus = term_plus * seed.cluster[j] ** c
        elif c < 0:
            term_minus = term_minus * seed.cluster[j] ** (-c)
    new = dict(seed.cluster)
    new[k] = (term_plus + term_minus).div_exact(seed.cluster[k])
    return new


def mutate_seed(seed: Seed, k: VertexId) -> Seed:
    """Full seed mutation at ``k`` (coefficients, cluster, matrix)."""
    mixed = seed.mixed_fallbacks
    if seed.ops.tag == "tropical":
        new_y, fell_back = mutate_coeffs_tropical_fast(seed.B, seed.y, k)
        mixed += int(fell_back)
    else:
        new_y = mutate_coeffs(seed.B, seed.y, seed.ops, k)
    new_cluster = mutate_cluster(seed, k) if seed.cluster is not None else None
    return Seed(
        B=mutate_matrix(seed.B, k),
        y=new_y,
        ops=seed.ops,
        cluster=new_cluster,
        principal=seed.principal,
        mixed_fallbacks=mixed,
    )


def f_polynomial(seed: Seed, v: VertexId) -> FPolynomial:
    """Specialize the principal-coefficient cluster variable at x = 1."""
    if not seed.principal or seed.cluster is None:
        raise ValueError("F-polynomials need a principal-coefficient cluster")
    n = seed.B.n
    proj = seed.cluster[v].project_ones(range(n))
    return FPolynomial(proj.nvars, proj.terms)
