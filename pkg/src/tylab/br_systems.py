"""The type-B level-restricted T/Y lattice as a mutation walk.

Geometry.  For rank ``r`` and level ``l`` the quiver lives on a grid of
``2r-1`` columns: the middle column ``i = r`` ("bullet") has rows
``1 .. 2l-1``; every other column ("open") has rows ``1 .. l-1``.  Each
vertex carries a sign: for ``i <= r`` the sign is + iff ``r + i + i'``
is odd, for ``i > r`` iff it is even.  Arrows:

* within a column, between vertically adjacent vertices, from + to -;
* between horizontally adjacent open vertices in the same row, - to +;
* (r, 2j) -> (r-1, j) and (r, 2j) -> (r+1, j);
* (r-1, j) -> (r, 2j-1), (r, 2j+1) exactly when (r-1, j) has sign -,
  and the mirror image of this rule at column r+1.

Schedule.  Time u advances in half steps (stored doubled as ``u2``).
The forward mutation batch depends on ``u2 mod 4``:

    0: open+ and bullet+     1: bullet-
    2: open- and bullet+     3: bullet-

Batches are totally disconnected in the current exchange matrix, so the
order inside a batch is immaterial (asserted).  Along the walk the
matrix cycles through B, -B, rho(B), -rho(B) where rho is the left-right
reflection of the grid; this four-step pattern is asserted as a
construction self-check.

Labels.  T-variables are triples (a, m, u) with 1 <= a <= r,
1 <= m <= t_a l - 1 (t_a = 1 for a < r, 2 for a = r) and u in half
integers, subject to the parity "P+": 2u even when a != r, m + 2u even
when a = r.  Y-variables use the parity "P'+": same for a != r but
m + 2u odd for a = r.  The label maps g (for T) and g' (for Y) identify
admissible labels with forward mutation points of the walk; values are
read off the walk snapshots through them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .core_algebra import (
    Quiver,
    SkewMatrix,
    VertexId,
    apply_vertex_map,
    mutate_matrix,
)
from .seed_mutation import LaurentPoly, Seed, mutate_seed
from .semifields import SemifieldOps, TropMonomial, semifield_ops


@dataclass(frozen=True)
class TimePoint:
    """A half-integer time, stored doubled so arithmetic stays integral."""

    u2: int

    @property
    def u(self) -> Fraction:
        return Fraction(self.u2, 2)

    @property
    def is_integer(self) -> bool:
        return self.u2 % 2 == 0

    def __add__(self, half_steps: int) -> "TimePoint":
        return TimePoint(self.u2 + half_steps)


@dataclass(frozen=True)
class SystemIndex:
    """A T- or Y-label (a, m, u); the time is stored doubled."""

    a: int
    m: int
    u2: int


@dataclass(frozen=True)
class BrConfig:
    """Rank and level of the restricted system."""

    r: int
    level: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("rank must be at least 2")
        if self.level < 2:
            raise ValueError("level must be at least 2")

    @property
    def h(self) -> int:
        return 2 * self.r

    @property
    def h_dual(self) -> int:
        return 2 * self.r - 1

    def t(self, a: int) -> int:
        if not 1 <= a <= self.r:
            raise ValueError("node index out of range")
        return 2 if a == self.r else 1

    # -- grid ---------------------------------------------------------------
    def vertices(self) -> list[VertexId]:
        out = []
        for i in range(1, 2 * self.r):
            if i == self.r:
                rows = range(1, 2 * self.level)
            else:
                rows = range(1, self.level)
            for ip in rows:
                out.append(
                    VertexId(
                        i,
                        ip,
                        cls="bullet" if i == self.r else "open",
                        sign=self.sign(i, ip),
                    )
                )
        return out

    def sign(self, i: int, ip: int) -> int:
        odd = (self.r + i + ip) % 2 == 1
        if i <= self.r:
            return 1 if odd else -1
        return -1 if odd else 1

    def is_bullet(self, v: VertexId) -> bool:
        return v.i == self.r

    def reflect(self, v: VertexId) -> VertexId:
        """Left-right reflection of the grid (fixes the bullet column)."""
        return VertexId(2 * self.r - v.i, v.ip)

    def omega(self, v: VertexId) -> VertexId:
        """Half-turn of the grid."""
        if v.i == self.r:
            return VertexId(self.r, 2 * self.level - v.ip)
        return VertexId(2 * self.r - v.i, self.level - v.ip)

    # -- schedule -------------------------------------------------------------
    def mutation_batch(self, u2: int) -> tuple[VertexId, ...]:
        m = u2 % 4
        vs = self.vertices()
        if m == 0:
            chosen = [v for v in vs if v.sign == 1]
        elif m == 2:
            chosen = [
                v
                for v in vs
                if (self.is_bullet(v) and v.sign == 1)
                or (not self.is_bullet(v) and v.sign == -1)
            ]
        else:
            chosen = [v for v in vs if self.is_bullet(v) and v.sign == -1]
        return tuple(sorted(chosen))

    def p_plus(self, v: VertexId, u2: int) -> bool:
        """Is (v, u) a forward mutation point?"""
        return v.bare() in {w.bare() for w in self.mutation_batch(u2)}

    def p_minus(self, v: VertexId, u2: int) -> bool:
        return self.p_plus(v, u2 - 1)

    # -- label parities --------------------------------------------------------
    def in_label_range(self, a: int, m: int) -> bool:
        return 1 <= a <= self.r and 1 <= m <= self.t(a) * self.level - 1

    def P_plus(self, a: int, m: int, u2: int) -> bool:
        if a != self.r:
            return u2 % 2 == 0
        return (m + u2) % 2 == 0

    def P_prime_plus(self, a: int, m: int, u2: int) -> bool:
        if a != self.r:
            return u2 % 2 == 0
        return (m + u2) % 2 == 1

    def labels_per_u2(self) -> int:
        """|{(a, m)}| = r*l + l - r (each u2 carries this many labels)."""
        return sum(self.t(a) * self.level - 1 for a in range(1, self.r + 1))


# ----------------------------------------------------------------------
# Quiver construction
# ----------------------------------------------------------------------


def build_quiver_B(cfg: BrConfig) -> Quiver:
    """The level-restricted quiver; gated by the four-step matrix check."""
    vs = cfg.vertices()
    pos = {(v.i, v.ip): v for v in vs}
    r, l = cfg.r, cfg.level
    arrows: dict[tuple[VertexId, VertexId], int] = {}

    def add(s, t):
        arrows[(pos[s], pos[t])] = arrows.get((pos[s], pos[t]), 0) + 1

    # vertical, + -> -
    for v in vs:
        up = (v.i, v.ip + 1)
        if up in pos:
            if v.sign == 1:
                add((v.i, v.ip), up)
            else:
                add(up, (v.i, v.ip))
    # horizontal between open columns, - -> +
    for v in vs:
        if v.i == r or v.i + 1 == r:
            continue
        right = (v.i + 1, v.ip)
        if right in pos:
            if v.sign == -1:
                add((v.i, v.ip), right)
            else:
                add(right, (v.i, v.ip))
    # bullet even rows feed the neighbouring open columns
    for j in range(1, l):
        for side in (r - 1, r + 1):
            if (side, j) in pos:
                add((r, 2 * j), (side, j))
    # negative open neighbours feed the two odd bullet rows around them
    for j in range(1, l):
        for side in (r - 1, r + 1):
            if (side, j) in pos and pos[(side, j)].sign == -1:
                add((side, j), (r, 2 * j - 1))
                add((side, j), (r, 2 * j + 1))

    Q = Quiver(vs, arrows)
    _check_four_step_pattern(cfg, Q.to_matrix())
    return Q


def _check_four_step_pattern(cfg: BrConfig, B0: SkewMatrix) -> None:
    """Mutating the four scheduled batches must walk B -> -B -> rho(B) ->
    -rho(B) -> B; this pins both the arrow rules and the schedule."""
    refl = {v: cfg.reflect(v) for v in B0.vertices}
    expected = [
        B0.negated(),
        apply_vertex_map(B0, refl),
        apply_vertex_map(B0, refl).negated(),
        B0,
    ]
    B = B0
    for step in range(4):
        for k in cfg.mutation_batch(step):
            B = mutate_matrix(B, k)
        if B != expected[step]:
            raise AssertionError(
                f"schedule self-check failed at step {step} for {cfg}"
            )


def expected_matrix(cfg: BrConfig, B0: SkewMatrix, u2: int) -> SkewMatrix:
    m = u2 % 4
    if m == 0:
        return B0
    if m == 1:
        return B0.negated()
    refl = apply_vertex_map(B0, {v: cfg.reflect(v) for v in B0.vertices})
    return refl if m == 2 else refl.negated()


# ----------------------------------------------------------------------
# Label maps
# ----------------------------------------------------------------------


def _column_for(cfg: BrConfig, a: int, m: int, u_int: int) -> int:
    """Choose i in {a, 2r-a} so that r + i + m + u is odd (open columns)."""
    if (cfg.r + a + m + u_int) % 2 == 1:
        return a
    return 2 * cfg.r - a


def g_map(cfg: BrConfig, a: int, m: int, v2: int) -> tuple[VertexId, int]:
    """T-label (a, m, v) -> (vertex, u) with u = v + 1/t_a."""
    if not cfg.in_label_range(a, m):
        raise ValueError("label out of range")
    if not cfg.P_plus(a, m, v2):
        raise ValueError("T-label must have parity P+")
    u2 = v2 + 2 // cfg.t(a)
    if a == cfg.r:
        return VertexId(cfg.r, m), u2
    return VertexId(_column_for(cfg, a, m, u2 // 2), m), u2


def g_inverse(cfg: BrConfig, v: VertexId, u2: int) -> tuple[int, int, int]:
    """Forward mutation point -> T-label (a, m, v2)."""
    if not cfg.p_plus(v, u2):
        raise ValueError("not a forward mutation point")
    if v.i == cfg.r:
        return cfg.r, v.ip, u2 - 1
    odd = (cfg.r + v.i + v.ip + u2 // 2) % 2 == 1
    a = v.i if odd else 2 * cfg.r - v.i
    return a, v.ip, u2 - 2


def g_prime_map(cfg: BrConfig, a: int, m: int, u2: int) -> tuple[VertexId, int]:
    """Y-label (a, m, u) -> (vertex, u) at the same time."""
    if not cfg.in_label_range(a, m):
        raise ValueError("label out of range")
    if not cfg.P_prime_plus(a, m, u2):
        raise ValueError("Y-label must have parity P'+")
    if a == cfg.r:
        return VertexId(cfg.r, m), u2
    return VertexId(_column_for(cfg, a, m, u2 // 2), m), u2


def g_prime_inverse(cfg: BrConfig, v: VertexId, u2: int) -> tuple[int, int, int]:
    if not cfg.p_plus(v, u2):
        raise ValueError("not a forward mutation point")
    if v.i == cfg.r:
        return cfg.r, v.ip, u2
    odd = (cfg.r + v.i + v.ip + u2 // 2) % 2 == 1
    a = v.i if odd else 2 * cfg.r - v.i
    return a, v.ip, u2


# ----------------------------------------------------------------------
# Relation shapes
# ----------------------------------------------------------------------


def t_relation_shape(
    cfg: BrConfig, a: int, m: int, u2: int
) -> tuple[list[SystemIndex], list[SystemIndex], list[SystemIndex]]:
    """(lhs pair, middle product, side product) at a P'+ center.

    The T-relation reads  lhs[0] * lhs[1] = prod(middle) + prod(side),
    where boundary labels (unit T's) are silently dropped from the
    returned lists.
    """
    r, l = cfg.r, cfg.level
    if not cfg.P_prime_plus(a, m, u2):
        raise ValueError("T-relations are centered at P'+ points")
    d2 = 2 // cfg.t(a)
    lhs = [SystemIndex(a, m, u2 - d2), SystemIndex(a, m, u2 + d2)]
    if a <= r - 2:
        mid = [SystemIndex(a - 1, m, u2), SystemIndex(a + 1, m, u2)]
    elif a == r - 1:
        mid = [SystemIndex(r - 2, m, u2), SystemIndex(r, 2 * m, u2)]
    elif m % 2 == 0:
        mid = [
            SystemIndex(r - 1, m // 2, u2 - 1),
            SystemIndex(r - 1, m // 2, u2 + 1),
        ]
    else:
        mid = [
            SystemIndex(r - 1, (m - 1) // 2, u2),
            SystemIndex(r - 1, (m + 1) // 2, u2),
        ]
    side = [SystemIndex(a, m - 1, u2), SystemIndex(a, m + 1, u2)]

    def interior(ix: SystemIndex) -> bool:
        return cfg.in_label_range(ix.a, ix.m)

    return lhs, [ix for ix in mid if interior(ix)], [ix for ix in side if interior(ix)]


def G_exponent(
    cfg: BrConfig, b: int, k: int, v2: int, a: int, m: int, u2: int
) -> int:
    """Multiplicity of T-label (b, k, v) in the middle product at (a, m, u)."""
    _, mid, _ = t_relation_shape(cfg, a, m, u2)
    return sum(1 for ix in mid if ix == SystemIndex(b, k, v2))


def y_relation_shape(
    cfg: BrConfig, a: int, m: int, u2: int
) -> tuple[list[SystemIndex], list[SystemIndex], list[SystemIndex]]:
    """(lhs pair, numerator labels, denominator labels) at a P+ center.

    The Y-relation reads
        lhs[0] * lhs[1] = prod_num (1 + Y) / prod_den (1 + Y^-1),
    with boundary labels dropped (their factors are 1).
    """
    r = cfg.r
    if not cfg.P_plus(a, m, u2):
        raise ValueError("Y-relations are centered at P+ points")
    d2 = 2 // cfg.t(a)
    lhs = [SystemIndex(a, m, u2 - d2), SystemIndex(a, m, u2 + d2)]
    if a <= r - 2:
        num = [SystemIndex(a - 1, m, u2), SystemIndex(a + 1, m, u2)]
    elif a == r - 1:
        num = [
            SystemIndex(r - 2, m, u2),
            SystemIndex(r, 2 * m - 1, u2),
            SystemIndex(r, 2 * m + 1, u2),
            SystemIndex(r, 2 * m, u2 - 1),
            SystemIndex(r, 2 * m, u2 + 1),
        ]
    elif m % 2 == 0:
        num = [SystemIndex(r - 1, m // 2, u2)]
    else:
        num = []
    den = [SystemIndex(a, m - 1, u2), SystemIndex(a, m + 1, u2)]

    def interior(ix: SystemIndex) -> bool:
        return cfg.in_label_range(ix.a, ix.m)

    return lhs, [ix for ix in num if interior(ix)], [ix for ix in den if interior(ix)]


# ----------------------------------------------------------------------
# The walk
# ----------------------------------------------------------------------


class BrWalk:
    """Seed snapshots of the mutation walk on a contiguous u2 window.

    mode selects the carrier:
      * ``tropical``          tropical coefficients only,
      * ``trivial_laurent``   trivial coefficients + exact Laurent cluster,
      * ``positive_rational`` exact rational coefficients at ``point``,
      * ``principal``         tropical coefficients + principal cluster.
    """

    def __init__(
        self,
        cfg: BrConfig,
        mode: str,
        u2_min: int,
        u2_max: int,
        point: dict[VertexId, Fraction] | None = None,
    ):
        if u2_min > 0 or u2_max < 0:
            raise ValueError("the window must contain u = 0")
        self.cfg = cfg
        self.mode = mode
        self.quiver = build_quiver_B(cfg)
        B0 = self.quiver.to_matrix()
        self.B0 = B0
        if mode == "tropical":
            seed0 = Seed.initial(B0, semifield_ops("tropical"))
        elif mode == "trivial_laurent":
            seed0 = Seed.initial(B0, semifield_ops("trivial"), with_cluster=True)
        elif mode == "positive_rational":
            if point is None:
                raise ValueError("positive_rational mode needs a point")
            seed0 = Seed.initial(
                B0, semifield_ops("positive_rational", point=point)
            )
        elif mode == "principal":
            seed0 = Seed.initial(B0, semifield_ops("tropical"), principal=True)
        else:
            raise ValueError(f"unknown walk mode {mode!r}")
        self.snapshots: dict[int, Seed] = {0: seed0}
        for u2 in range(0, u2_max):
            self.snapshots[u2 + 1] = self._apply_batch(self.snapshots[u2], u2)
        for u2 in range(0, u2_min, -1):
            self.snapshots[u2 - 1] = self._apply_batch(self.snapshots[u2], u2 - 1)
        self.u2_min = u2_min
        self.u2_max = u2_max

    def _apply_batch(self, seed: Seed, batch_u2: int) -> Seed:
        batch = self.cfg.mutation_batch(batch_u2)
        for i, v in enumerate(batch):
            for w in batch[i + 1 :]:
                if seed.B.entry(v, w) != 0:
                    raise AssertionError(
                        f"mutation batch at u2={batch_u2} is not disconnected"
                    )
        out = seed
        for v in batch:
            out = mutate_seed(out, v)
        return out

    # -- raw access -----------------------------------------------------------
    def seed(self, u2: int) -> Seed:
        return self.snapshots[u2]

    def y_at(self, v: VertexId, u2: int):
        return self.snapshots[u2].y[VertexId(v.i, v.ip)]

    def x_at(self, v: VertexId, u2: int) -> LaurentPoly:
        return self.snapshots[u2].cluster[VertexId(v.i, v.ip)]

    @property
    def mixed_fallbacks(self) -> int:
        return max(s.mixed_fallbacks for s in self.snapshots.values())

    def check_matrix_pattern(self) -> None:
        for u2, seed in self.snapshots.items():
            if seed.B != expected_matrix(self.cfg, self.B0, u2):
                raise AssertionError(f"matrix pattern broken at u2={u2}")

    # -- label access -----------------------------------------------------------
    def T_value(self, a: int, m: int, v2: int) -> LaurentPoly:
        """T^{(a)}_m(v) as an exact Laurent polynomial (trivial mode)."""
        nvars = self.B0.n
        if a == 0 or m == 0 or (1 <= a <= self.cfg.r and m == self.cfg.t(a) * self.cfg.level):
            return LaurentPoly.one(nvars)
        vertex, u2 = g_map(self.cfg, a, m, v2)
        return self.x_at(vertex, u2)

    def Y_value(self, a: int, m: int, u2: int):
        vertex, w2 = g_prime_map(self.cfg, a, m, u2)
        return self.y_at(vertex, w2)


# ----------------------------------------------------------------------
# Relation checks
# ----------------------------------------------------------------------


def iter_t_centers(cfg: BrConfig, u2_lo: int, u2_hi: int) -> Iterator[tuple[int, int, int]]:
    for u2 in range(u2_lo, u2_hi + 1):
        for a in range(1, cfg.r + 1):
            for m in range(1, cfg.t(a) * cfg.level):
                if cfg.P_prime_plus(a, m, u2):
                    yield a, m, u2


def iter_y_centers(cfg: BrConfig, u2_lo: int, u2_hi: int) -> Iterator[tuple[int, int, int]]:
    for u2 in range(u2_lo, u2_hi + 1):
        for a in range(1, cfg.r + 1):
            for m in range(1, cfg.t(a) * cfg.level):
                if cfg.P_plus(a, m, u2):
                    yield a, m, u2


def check_T_relations(cfg: BrConfig, u2_lo: int = 0, u2_hi: int | None = None) -> int:
    """Verify every T-relation whose labels fit in the window; return count."""
    if u2_hi is None:
        u2_hi = 4 * (cfg.h_dual + cfg.level)
    pad = 2
    walk = BrWalk(cfg, "trivial_laurent", min(u2_lo - pad, 0), u2_hi + pad)
    checked = 0
    for a, m, u2 in iter_t_centers(cfg, u2_lo, u2_hi - 2):
        lhs, mid, side = t_relation_shape(cfg, a, m, u2)
        if any(ix.u2 < u2_lo - pad or ix.u2 + 2 > u2_hi + pad for ix in lhs + mid + side):
            continue
        L = walk.T_value(*_ix(lhs[0])) * walk.T_value(*_ix(lhs[1]))
        P = LaurentPoly.one(walk.B0.n)
        for ix in mid:
            P = P * walk.T_value(*_ix(ix))
        Q = LaurentPoly.one(walk.B0.n)
        for ix in side:
            Q = Q * walk.T_value(*_ix(ix))
        if L != P + Q:
            raise AssertionError(f"T-relation fails at center ({a},{m},u2={u2})")
        checked += 1
    return checked


def _ix(ix: SystemIndex) -> tuple[int, int, int]:
    return ix.a, ix.m, ix.u2


def check_Y_relations(
    cfg: BrConfig,
    points: Iterable[dict[VertexId, Fraction]],
    u2_lo: int = 0,
    u2_hi: int | None = None,
) -> int:
    """Verify every Y-relation at each evaluation point; return count."""
    if u2_hi is None:
        u2_hi = 4 * (cfg.h_dual + cfg.level)
    pad = 2
    total = 0
    for point in points:
        walk = BrWalk(
            cfg, "positive_rational", min(u2_lo - pad, 0), u2_hi + pad, point=point
        )
        for a, m, u2 in iter_y_centers(cfg, u2_lo, u2_hi - 2):
            lhs, num, den = y_relation_shape(cfg, a, m, u2)
            if any(
                ix.u2 < u2_lo - pad or ix.u2 > u2_hi + pad for ix in lhs + num + den
            ):
                continue
            L = walk.Y_value(*_ix(lhs[0])) * walk.Y_value(*_ix(lhs[1]))
            R = Fraction(1)
            for ix in num:
                R *= 1 + walk.Y_value(*_ix(ix))
            for ix in den:
                R /= 1 + 1 / walk.Y_value(*_ix(ix))
            if L != R:
                raise AssertionError(
                    f"Y-relation fails at center ({a},{m},u2={u2})"
                )
            total += 1
    return total


# ----------------------------------------------------------------------
# Periodicity checks
# ----------------------------------------------------------------------


def check_T_periodicity(cfg: BrConfig) -> dict[str, int]:
    """Exact half and full periodicity of the T-system Laurent solution.

    Half:  T^{(a)}_m(u + h_dual + l) = T^{(a)}_{t_a l - m}(u);
    full:  period 2 (h_dual + l).  Returns the number of label pairs
    checked for each.
    """
    p2 = 2 * (cfg.h_dual + cfg.level)
    walk = BrWalk(cfg, "trivial_laurent", 0, 3 * p2 + 2)
    half = full = 0
    for a, m, v2 in iter_t_centers_pplus(cfg, 0, p2 - 1):
        lhs = walk.T_value(a, cfg.t(a) * cfg.level - m, v2)
        rhs = walk.T_value(a, m, v2 + p2)
        if lhs != rhs:
            raise AssertionError(f"T half-periodicity fails at ({a},{m},u2={v2})")
        half += 1
    for a, m, v2 in iter_t_centers_pplus(cfg, 0, p2 - 1):
        if walk.T_value(a, m, v2) != walk.T_value(a, m, v2 + 2 * p2):
            raise AssertionError(f"T full periodicity fails at ({a},{m},u2={v2})")
        full += 1
    return {"half": half, "full": full}


def iter_t_centers_pplus(cfg: BrConfig, u2_lo: int, u2_hi: int):
    for u2 in range(u2_lo, u2_hi + 1):
        for a in range(1, cfg.r + 1):
            for m in range(1, cfg.t(a) * cfg.level):
                if cfg.P_plus(a, m, u2):
                    yield a, m, u2


def iter_y_labels(cfg: BrConfig, u2_lo: int, u2_hi: int):
    for u2 in range(u2_lo, u2_hi + 1):
        for a in range(1, cfg.r + 1):
            for m in range(1, cfg.t(a) * cfg.level):
                if cfg.P_prime_plus(a, m, u2):
                    yield a, m, u2


def check_Y_periodicity(
    cfg: BrConfig, points: Iterable[dict[VertexId, Fraction]]
) -> dict[str, int]:
    """Exact half and full periodicity of the Y-system at rational points."""
    p2 = 2 * (cfg.h_dual + cfg.level)
    half = full = 0
    for point in points:
        walk = BrWalk(cfg, "positive_rational", 0, 3 * p2, point=point)
        for a, m, u2 in iter_y_labels(cfg, 0, p2 - 1):
            lhs = walk.Y_value(a, cfg.t(a) * cfg.level - m, u2)
            rhs = walk.Y_value(a, m, u2 + p2)
            if lhs != rhs:
                raise AssertionError(
                    f"Y half-periodicity fails at ({a},{m},u2={u2})"
                )
            half += 1
            if walk.Y_value(a, m, u2) != walk.Y_value(a, m, u2 + 2 * p2):
                raise AssertionError(
                    f"Y full periodicity fails at ({a},{m},u2={u2})"
                )
            full += 1
    return {"half": half, "full": full}


def random_positive_points(
    cfg: BrConfig, count: int, seed: int, max_num: int = 7
) -> list[dict[VertexId, Fraction]]:
    """Deterministic positive rational points, numerators/denominators <= 7."""
    import random as _random

    rng = _random.Random(seed)
    pts = []
    for _ in range(count):
        pts.append(
            {
                v.bare(): Fraction(rng.randint(1, max_num), rng.randint(1, max_num))
                for v in cfg.vertices()
            }
        )
    return pts
