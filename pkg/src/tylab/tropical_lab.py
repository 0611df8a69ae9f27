"""Tropical evaluation of the coefficient dynamics, and its consequences.

The tropical walk assigns to every vertex and half-integer time a Laurent
monomial in the initial coefficients.  This module packages:

* sign regions: every forward mutation point in 0 <= u < l carries a
  positive monomial; in -h_dual <= u < 0 the open and bullet- points
  carry negative monomials while bullet+ points alternate (negative at
  odd u, positive at even u);
* boundary snapshots: at u = l and u = -h_dual the monomials are inverse
  initial coefficients at reflected positions;
* periodicity: half period h_dual + l composed with the half-turn of the
  grid, full period 2(h_dual + l);
* sign counts over a full period (positivity / negativity totals);
* the bottom-block projection: restricted to the lowest rows, the trace
  of a level-l system reproduces the level-2 system during the backward
  sweep;
* F-polynomial identities: the exchange relation for F-polynomials with
  tropical monomial coefficients, and the separation formulas expressing
  exact coefficient values through F-polynomials times the tropical
  monomial, verified at random positive rational points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .br_systems import (
    BrConfig,
    BrWalk,
    g_map,
    g_prime_map,
    iter_t_centers,
    iter_t_centers_pplus,
    iter_y_labels,
    random_positive_points,
    t_relation_shape,
    y_relation_shape,
)
from .core_algebra import VertexId
from .seed_mutation import FPolynomial, LaurentPoly, f_polynomial
from .semifields import SignClass, TropMonomial, classify_sign

EXPONENT_BOUND = 64


@dataclass
class TropicalTrace:
    """Tropical walk snapshots with bounded exponents and sign access."""

    cfg: BrConfig
    walk: BrWalk

    @classmethod
    def run(cls, cfg: BrConfig, u2_min: int, u2_max: int) -> "TropicalTrace":
        walk = BrWalk(cfg, "tropical", u2_min, u2_max)
        trace = cls(cfg, walk)
        for u2 in range(u2_min, u2_max + 1):
            for v in walk.B0.vertices:
                m = walk.y_at(v, u2)
                if any(abs(e) > EXPONENT_BOUND for e in m.exps.values()):
                    raise OverflowError(
                        f"tropical exponent exceeds {EXPONENT_BOUND} at {v}, u2={u2}"
                    )
        return trace

    @property
    def u2_min(self) -> int:
        return self.walk.u2_min

    @property
    def u2_max(self) -> int:
        return self.walk.u2_max

    def monomial(self, v: VertexId, u2: int) -> TropMonomial:
        return self.walk.y_at(v, u2)

    def sign(self, v: VertexId, u2: int) -> SignClass:
        return classify_sign(self.monomial(v, u2))

    def parity(self, v: VertexId, u2: int) -> str:
        if self.cfg.p_plus(v, u2):
            return "+"
        if self.cfg.p_minus(v, u2):
            return "-"
        return "."

    def csv_rows(self) -> list[list]:
        """Rows (i, i', u2, parity, sign, exponents...) in a fixed order."""
        order = sorted(self.walk.B0.vertices)
        rows = []
        for u2 in range(self.u2_min, self.u2_max + 1):
            for v in order:
                m = self.monomial(v, u2)
                rows.append(
                    [v.i, v.ip, u2, self.parity(v, u2), self.sign(v, u2).value]
                    + m.exponent_vector(order)
                )
        return rows


def run_tropical(cfg: BrConfig, u2_min: int, u2_max: int) -> TropicalTrace:
    return TropicalTrace.run(cfg, u2_min, u2_max)


# ----------------------------------------------------------------------
# Sign structure
# ----------------------------------------------------------------------


def check_sign_regions(cfg: BrConfig, trace: TropicalTrace | None = None) -> dict[str, int]:
    """Sign of every forward mutation point in -h_dual <= u < l."""
    lo, hi = -2 * cfg.h_dual, 2 * cfg.level
    if trace is None:
        trace = run_tropical(cfg, lo, hi)
    counts = {"positive_window": 0, "negative_window": 0, "alternating": 0}
    for u2 in range(lo, hi):
        for v in cfg.mutation_batch(u2):
            s = trace.sign(v, u2)
            if s is SignClass.Mixed:
                raise AssertionError(f"mixed sign at mutation point {v}, u2={u2}")
            if 0 <= u2:
                if s is not SignClass.Positive:
                    raise AssertionError(
                        f"expected positive monomial at {v}, u2={u2}, got {s}"
                    )
                counts["positive_window"] += 1
            else:
                bullet_plus = cfg.is_bullet(v) and v.sign == 1
                if not bullet_plus:
                    if s is not SignClass.Negative:
                        raise AssertionError(
                            f"expected negative monomial at {v}, u2={u2}, got {s}"
                        )
                    counts["negative_window"] += 1
                else:
                    # bullet+ points sit at integer u; odd u negative, even positive
                    assert u2 % 2 == 0
                    u = u2 // 2
                    want = SignClass.Negative if u % 2 else SignClass.Positive
                    if s is not want:
                        raise AssertionError(
                            f"expected {want} at bullet+ {v}, u2={u2}, got {s}"
                        )
                    counts["alternating"] += 1
    return counts


def check_boundaries(cfg: BrConfig, trace: TropicalTrace | None = None) -> int:
    """Monomials at u = l and u = -h_dual are inverses at mirror vertices."""
    if trace is None:
        trace = run_tropical(cfg, -2 * cfg.h_dual, 2 * cfg.level)
    checked = 0
    r, l = cfg.r, cfg.level
    for v in cfg.vertices():
        if cfg.is_bullet(v):
            at_l = VertexId(r, 2 * l - v.ip)
        else:
            at_l = VertexId(v.i, l - v.ip)
        want_l = TropMonomial.variable(at_l, -1)
        if trace.monomial(v, 2 * l) != want_l:
            raise AssertionError(f"boundary at u=l fails at {v}")
        want_back = TropMonomial.variable(cfg.reflect(v), -1)
        if trace.monomial(v, -2 * cfg.h_dual) != want_back:
            raise AssertionError(f"boundary at u=-h_dual fails at {v}")
        checked += 2
    return checked


def count_signs(cfg: BrConfig, u2_start: int = 0) -> dict[str, int]:
    """Sign totals over the forward mutation points of one full period."""
    period = 4 * (cfg.h_dual + cfg.level)
    trace = run_tropical(cfg, min(u2_start, 0), u2_start + period)
    pos = neg = mixed = 0
    for u2 in range(u2_start, u2_start + period):
        for v in cfg.mutation_batch(u2):
            s = trace.sign(v, u2)
            if s is SignClass.Positive:
                pos += 1
            elif s is SignClass.Negative:
                neg += 1
            elif s is SignClass.Mixed:
                mixed += 1
            else:  # the constant monomial 1 never occurs at mutation points
                raise AssertionError(f"unit monomial at mutation point {v}, u2={u2}")
    return {"positive": pos, "negative": neg, "mixed": mixed}


def expected_sign_counts(cfg: BrConfig) -> dict[str, int]:
    r, l = cfg.r, cfg.level
    return {
        "positive": 2 * l * (l * r + l - 1),
        "negative": 2 * r * (2 * l * r - 2 * r + 1),
        "mixed": 0,
    }


def mutation_points_per_period(cfg: BrConfig) -> int:
    return sum(
        len(cfg.mutation_batch(u2)) for u2 in range(4 * (cfg.h_dual + cfg.level))
    )


# ----------------------------------------------------------------------
# Periodicity
# ----------------------------------------------------------------------


def check_tropical_periodicity(cfg: BrConfig) -> dict[str, int]:
    """Half periodicity with the half-turn, and full periodicity."""
    p2 = 2 * (cfg.h_dual + cfg.level)
    trace = run_tropical(cfg, 0, 3 * p2)
    half = full = 0
    for u2 in range(0, p2):
        for v in cfg.vertices():
            if trace.monomial(v, u2 + p2) != trace.monomial(cfg.omega(v), u2):
                raise AssertionError(
                    f"tropical half periodicity fails at {v}, u2={u2}"
                )
            half += 1
            if trace.monomial(v, u2 + 2 * p2) != trace.monomial(v, u2):
                raise AssertionError(
                    f"tropical full periodicity fails at {v}, u2={u2}"
                )
            full += 1
    return {"half": half, "full": full}


# ----------------------------------------------------------------------
# Bottom-block projection
# ----------------------------------------------------------------------


def check_factorization(cfg: BrConfig) -> int:
    """During -h_dual <= u <= 0 the bottom rows reproduce level 2."""
    if cfg.level < 3:
        raise ValueError("the projection claim compares level >= 3 against 2")
    low = BrConfig(cfg.r, 2)
    block = [v.bare() for v in low.vertices()]
    lo = -2 * cfg.h_dual
    big = run_tropical(cfg, lo, 0)
    small = run_tropical(low, lo, 0)
    checked = 0
    for u2 in range(lo, 1):
        for v in block:
            m_big = big.monomial(v, u2)
            projected = TropMonomial(
                {w: e for w, e in m_big.exps.items() if w in set(block)}
            )
            if projected != small.monomial(v, u2):
                raise AssertionError(
                    f"bottom-block projection fails at {v}, u2={u2}"
                )
            checked += 1
    return checked


# ----------------------------------------------------------------------
# F-polynomial identities
# ----------------------------------------------------------------------


class FWalk:
    """Principal-coefficient walk with cached F-polynomials per label."""

    def __init__(self, cfg: BrConfig, u2_min: int, u2_max: int):
        self.cfg = cfg
        self.walk = BrWalk(cfg, "principal", u2_min, u2_max)
        self._cache: dict[tuple[VertexId, int], FPolynomial] = {}

    def F_value(self, a: int, m: int, v2: int) -> LaurentPoly:
        cfg = self.cfg
        n = self.walk.B0.n
        if a == 0 or m == 0 or (1 <= a <= cfg.r and m == cfg.t(a) * cfg.level):
            return LaurentPoly.one(n)
        vertex, u2 = g_map(cfg, a, m, v2)
        key = (vertex, u2)
        if key not in self._cache:
            self._cache[key] = f_polynomial(self.walk.seed(u2), vertex)
        return self._cache[key]


def _monomial_to_poly(m: TropMonomial, order: list[VertexId], clip: int) -> LaurentPoly:
    """[y^e]_T -> monomial with exponents max(clip*e, 0) in the F-ring."""
    exps = [0] * len(order)
    for k, v in enumerate(order):
        e = m.exponent(v)
        exps[k] = max(clip * e, 0)
    return LaurentPoly.monomial(len(order), tuple(exps))


def check_f_identities(
    cfg: BrConfig,
    n_points: int = 5,
    seed: int = 20240801,
) -> dict[str, int]:
    """Exchange and separation identities for F-polynomials.

    * exchange:  F(u-d) F(u+d) = [y/(1+y)]_T prod_G F^G + [1/(1+y)]_T F F
      (exact polynomial identity at every admissible center),
    * separation: at each random positive point, the exact coefficient
      value equals the tropical monomial times the F-ratio, and likewise
      1 + y equals [1 (+) y]_T times its F-ratio,
    * periodicity: F(u + h_dual + l) at level-reflected label equals F(u),
      full period 2(h_dual + l).
    """
    p2 = 2 * (cfg.h_dual + cfg.level)
    hi = 3 * p2 + 2
    fw = FWalk(cfg, 0, hi)
    trop = BrWalk(cfg, "tropical", 0, hi)
    order = list(fw.walk.B0.vertices)
    counts = {"exchange": 0, "separation": 0, "half": 0, "full": 0}

    # exchange relation at P'+ centers across one full period
    for a, m, u2 in iter_t_centers(cfg, 2, 2 * p2):
        lhs_ix, mid, side = t_relation_shape(cfg, a, m, u2)
        if any(ix.u2 < 0 or ix.u2 + 2 > hi for ix in lhs_ix + mid + side):
            continue
        y_center = trop.Y_value(a, m, u2)
        coeff_plus = _monomial_to_poly(y_center, order, +1)   # y/(1 (+) y)
        coeff_minus = _monomial_to_poly(y_center, order, -1)  # 1/(1 (+) y)
        lhs = fw.F_value(lhs_ix[0].a, lhs_ix[0].m, lhs_ix[0].u2) * fw.F_value(
            lhs_ix[1].a, lhs_ix[1].m, lhs_ix[1].u2
        )
        term1 = coeff_plus
        for ix in mid:
            term1 = term1 * fw.F_value(ix.a, ix.m, ix.u2)
        term2 = coeff_minus
        for ix in side:
            term2 = term2 * fw.F_value(ix.a, ix.m, ix.u2)
        if lhs != term1 + term2:
            raise AssertionError(
                f"F exchange relation fails at center ({a},{m},u2={u2})"
            )
        counts["exchange"] += 1

    # separation of additions at random positive rational points
    points = random_positive_points(cfg, n_points, seed)
    for point in points:
        rat = BrWalk(cfg, "positive_rational", 0, 2 * p2 + 2, point=point)
        pt = [point[v.bare()] for v in order]
        for a, m, u2 in iter_y_labels(cfg, 2, 2 * p2 - 2):
            lhs_ix, mid, side = t_relation_shape(cfg, a, m, u2)
            if any(ix.u2 < 0 or ix.u2 + 2 > fw.walk.u2_max for ix in lhs_ix):
                continue
            d2 = 2 // cfg.t(a)
            y_val = rat.Y_value(a, m, u2)
            y_trop = trop.Y_value(a, m, u2)
            mono = Fraction(1)
            for v, e in y_trop.exps.items():
                mono *= point[v.bare()] ** e
            num = Fraction(1)
            for ix in mid:
                num *= fw.F_value(ix.a, ix.m, ix.u2).evaluate(pt)
            den = Fraction(1)
            for ix in side:
                den *= fw.F_value(ix.a, ix.m, ix.u2).evaluate(pt)
            if y_val != mono * num / den:
                raise AssertionError(
                    f"separation (coefficient) fails at ({a},{m},u2={u2})"
                )
            # 1 (+) y tropicalizes to the min-clipped exponent monomial
            mono_plus = Fraction(1)
            for v, e in y_trop.exps.items():
                mono_plus *= point[v.bare()] ** min(e, 0)
            up = fw.F_value(a, m, u2 - d2).evaluate(pt)
            dn = fw.F_value(a, m, u2 + d2).evaluate(pt)
            if 1 + y_val != mono_plus * up * dn / den:
                raise AssertionError(
                    f"separation (1 + coefficient) fails at ({a},{m},u2={u2})"
                )
            counts["separation"] += 1

    # F periodicity: half with the level reflection, then full
    for a, m, v2 in iter_t_centers_pplus(cfg, 0, p2 - 1):
        if fw.F_value(a, cfg.t(a) * cfg.level - m, v2) != fw.F_value(a, m, v2 + p2):
            raise AssertionError(f"F half periodicity fails at ({a},{m},u2={v2})")
        counts["half"] += 1
        if fw.F_value(a, m, v2) != fw.F_value(a, m, v2 + 2 * p2):
            raise AssertionError(f"F full periodicity fails at ({a},{m},u2={v2})")
        counts["full"] += 1
    return counts
