"""Piecewise-linear reflection dynamics on almost positive roots.

The backward tropical evolution of the level-2 system is governed by a
piecewise-linear analogue of simple reflections acting on the almost
positive roots of a type-A chain: each positive root moves by the usual
simple reflection, while the negative simple roots are frozen except at
their own index.  The composite map built from the two bipartition
halves and the middle node twice organizes the almost positive roots
into orbits whose interiors sweep out every positive root exactly once.

This module provides the root arithmetic, the orbit decomposition with
its time anchors, the middle-node erasing bijection onto a chain with
one fewer node, the time-indexed root family with its recurrences, and
the check that the projected tropical exponent vectors of the level-2
walk coincide with the negated family.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .br_systems import BrConfig
from .core_algebra import VertexId
from .tropical_lab import TropicalTrace, run_tropical


@dataclass(frozen=True)
class Root:
    """Element of the root lattice of a chain diagram.

    ``labels`` are the node labels in chain order (adjacent entries are
    adjacent nodes); ``coords`` are the simple-root coefficients.
    """

    labels: tuple[int, ...]
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.coords):
            raise ValueError("labels and coords must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate chain labels")

    # -- constructors --------------------------------------------------

    @classmethod
    def negative_simple(cls, labels: Iterable[int], k: int) -> "Root":
        labels = tuple(labels)
        if k not in labels:
            raise ValueError(f"label {k} not on the chain")
        return cls(labels, tuple(-1 if j == k else 0 for j in labels))

    @classmethod
    def interval(cls, labels: Iterable[int], lo: int, hi: int) -> "Root":
        """Sum of the simple roots with labels in [lo, hi]."""
        labels = tuple(labels)
        if lo > hi:
            raise ValueError("empty interval")
        coords = tuple(1 if lo <= j <= hi else 0 for j in labels)
        if sum(coords) == 0:
            raise ValueError("interval misses the chain")
        return cls(labels, coords)

    @classmethod
    def zero(cls, labels: Iterable[int]) -> "Root":
        labels = tuple(labels)
        return cls(labels, (0,) * len(labels))

    # -- classification ------------------------------------------------

    def negative_simple_label(self) -> int | None:
        if sum(self.coords) == -1 and all(c in (0, -1) for c in self.coords):
            return self.labels[self.coords.index(-1)]
        return None

    def is_positive_root(self) -> bool:
        ones = [k for k, c in enumerate(self.coords) if c == 1]
        if not ones or any(c not in (0, 1) for c in self.coords):
            return False
        return ones == list(range(ones[0], ones[-1] + 1))

    def is_almost_positive(self) -> bool:
        return self.is_positive_root() or self.negative_simple_label() is not None

    def support(self) -> tuple[int, int]:
        if not self.is_positive_root():
            raise ValueError("support is defined for positive roots")
        ones = [j for j, c in zip(self.labels, self.coords) if c == 1]
        return ones[0], ones[-1]

    def contains(self, label: int) -> bool:
        return self.coords[self.labels.index(label)] != 0

    def token(self) -> str:
        neg = self.negative_simple_label()
        if neg is not None:
            return f"-a{neg}"
        lo, hi = self.support()
        return f"[{lo},{hi}]"

    def coords_map(self) -> dict[int, int]:
        return dict(zip(self.labels, self.coords))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Root") -> "Root":
        if self.labels != other.labels:
            raise ValueError("chain mismatch")
        return Root(self.labels, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Root":
        return Root(self.labels, tuple(-c for c in self.coords))

    def reflect_simple(self, k: int) -> "Root":
        """Linear simple reflection at node k (chain pairing)."""
        pos = self.labels.index(k)
        pairing = 2 * self.coords[pos]
        if pos > 0:
            pairing -= self.coords[pos - 1]
        if pos + 1 < len(self.labels):
            pairing -= self.coords[pos + 1]
        new = list(self.coords)
        new[pos] -= pairing
        return Root(self.labels, tuple(new))


def sigma_i(root: Root, k: int) -> Root:
    """Piecewise-linear reflection: frozen negatives except at k."""
    neg = root.negative_simple_label()
    if neg is not None:
        if neg == k:
            return -root
        return root
    if not root.is_positive_root():
        raise ValueError("piecewise reflection needs an almost positive root")
    return root.reflect_simple(k)


@dataclass(frozen=True)
class SigmaAction:
    """Composite piecewise reflection over a bipartitioned chain.

    Applies, in order, all reflections of ``j_plus``, then the middle
    node (if any), then all of ``j_minus``, then the middle node again.
    The factors within each half commute (they are pairwise non-adjacent).
    """

    labels: tuple[int, ...]
    j_plus: tuple[int, ...]
    j_minus: tuple[int, ...]
    middle: int | None = None

    def _word(self) -> list[int]:
        word = list(self.j_plus)
        if self.middle is not None:
            word.append(self.middle)
        word.extend(self.j_minus)
        if self.middle is not None:
            word.append(self.middle)
        return word

    def apply(self, root: Root) -> Root:
        for k in self._word():
            root = sigma_i(root, k)
        return root

    def apply_inverse(self, root: Root) -> Root:
        for k in reversed(self._word()):
            root = sigma_i(root, k)
        return root

    def power(self, root: Root, k: int) -> Root:
        step = self.apply if k >= 0 else self.apply_inverse
        for _ in range(abs(k)):
            root = step(root)
        return root


def j_bipartition(r: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bipartition of the chain 1..2r-1 away from the middle node r."""
    plus, minus = [], []
    for i in range(1, 2 * r):
        if i == r:
            continue
        if (i < r and i % 2 == r % 2) or (i > r and i % 2 != r % 2):
            plus.append(i)
        else:
            minus.append(i)
    return tuple(plus), tuple(minus)


def ambient_labels(r: int) -> tuple[int, ...]:
    return tuple(range(1, 2 * r))


def sigma_B(r: int) -> SigmaAction:
    plus, minus = j_bipartition(r)
    return SigmaAction(ambient_labels(r), plus, minus, middle=r)


def coxeter_s(r: int) -> SigmaAction:
    """Bipartite composite on the chain with the middle node removed."""
    plus, minus = j_bipartition(r)
    labels = tuple(i for i in ambient_labels(r) if i != r)
    return SigmaAction(labels, plus, minus, middle=None)


# ----------------------------------------------------------------------
# Orbit decomposition
# ----------------------------------------------------------------------


def orbit_rows(r: int) -> list[dict]:
    """Orbit table: each chain node's full orbit with time anchors.

    Nodes of the plus half close after r steps, minus half after r + 1;
    the middle node carries two interleaved orbits of r steps each, one
    from the negative simple root and one from the simple root itself.
    Anchors step by -4 in doubled time, starting at 0 (plus), 2 (minus),
    1 (middle negative) and -1 (middle positive).
    """
    sig = sigma_B(r)
    labels = ambient_labels(r)
    plus, minus = j_bipartition(r)
    rows: list[dict] = []
    for i in range(1, 2 * r):
        if i == r:
            start_minus = Root.negative_simple(labels, r)
            start_alpha = -start_minus
            rows.append(
                {
                    "i": i,
                    "orbit_minus": [
                        sig.power(start_minus, k).token() for k in range(r + 1)
                    ],
                    "u2_minus": [1 - 4 * k for k in range(r + 1)],
                    "orbit_alpha": [
                        sig.power(start_alpha, k).token() for k in range(r + 1)
                    ],
                    "u2_alpha": [-1 - 4 * k for k in range(r + 1)],
                }
            )
            continue
        length = r if i in plus else r + 1
        start = Root.negative_simple(labels, i)
        rows.append(
            {
                "i": i,
                "sign": "+" if i in plus else "-",
                "orbit": [sig.power(start, k).token() for k in range(length + 1)],
                "u2": [
                    (0 if i in plus else 2) - 4 * k for k in range(length + 1)
                ],
            }
        )
    return rows


def check_orbit_lemma(r: int) -> dict[str, int]:
    """Orbit closures, interior positivity, and exhaustion of Phi+."""
    sig = sigma_B(r)
    labels = ambient_labels(r)
    plus, minus = j_bipartition(r)
    seen: list[str] = []
    for i in plus:
        root = Root.negative_simple(labels, i)
        for k in range(1, r):
            root = sig.apply(root)
            assert root.is_positive_root(), (i, k)
            seen.append(root.token())
        end = sig.apply(root)
        assert end.negative_simple_label() == 2 * r - i, i
    for i in minus:
        root = Root.negative_simple(labels, i)
        for k in range(1, r + 1):
            root = sig.apply(root)
            assert root.is_positive_root(), (i, k)
            seen.append(root.token())
        end = sig.apply(root)
        assert end.negative_simple_label() == 2 * r - i, i
    root = Root.negative_simple(labels, r)
    for k in range(1, r):
        root = sig.apply(root)
        assert root.is_positive_root(), ("mid-", k)
        seen.append(root.token())
    assert sig.apply(root).negative_simple_label() == r
    root = -Root.negative_simple(labels, r)
    for k in range(r):
        assert root.is_positive_root(), ("mid+", k)
        seen.append(root.token())
        root = sig.apply(root)
    assert root == -Root.negative_simple(labels, r)
    # exhaustion: every positive root appears exactly once
    all_pos = {
        Root.interval(labels, lo, hi).token()
        for lo in labels
        for hi in labels
        if lo <= hi
    }
    assert len(seen) == len(set(seen)) == len(all_pos) == r * (2 * r - 1)
    assert set(seen) == all_pos
    return {"positive_roots": len(seen)}


# ----------------------------------------------------------------------
# Middle-node erasure
# ----------------------------------------------------------------------


def rho(r: int, root: Root) -> Root:
    """Erase the middle node's coefficient (defined on orbit interiors)."""
    if not root.is_positive_root():
        raise ValueError("the erasing map acts on positive roots")
    labels = tuple(i for i in root.labels if i != r)
    coords = tuple(c for j, c in zip(root.labels, root.coords) if j != r)
    out = Root(labels, coords)
    if not out.is_positive_root():
        raise ValueError("image is not a positive root of the shorter chain")
    return out


def rho_inverse(r: int, root: Root) -> Root:
    """Insert the middle node back when the left neighbour is present."""
    labels = ambient_labels(r)
    cmap = root.coords_map()
    fill = 1 if cmap.get(r - 1, 0) == 1 else 0
    coords = tuple(fill if j == r else cmap.get(j, 0) for j in labels)
    out = Root(labels, coords)
    if not out.is_positive_root():
        raise ValueError("preimage is not a positive root")
    return out


def rho_domain(r: int) -> list[Root]:
    """Interiors of the non-middle orbits (positive roots only)."""
    sig = sigma_B(r)
    labels = ambient_labels(r)
    plus, minus = j_bipartition(r)
    roots = []
    for i, length in [(i, r) for i in plus] + [(i, r + 1) for i in minus]:
        root = Root.negative_simple(labels, i)
        for _ in range(1, length + 1):
            root = sig.apply(root)
            if root.is_positive_root():
                roots.append(root)
    return roots


def check_rho_conjugacy(r: int) -> dict[str, int]:
    """rho is a bijection onto the shorter chain's positive roots and
    intertwines the composite reflection with the bipartite composite."""
    dom = rho_domain(r)
    images = [rho(r, x).token() for x in dom]
    n_small = 2 * r - 2
    assert len(images) == len(set(images)) == n_small * (n_small + 1) // 2
    # round trip
    for x in dom:
        assert rho_inverse(r, rho(r, x)) == x
    # conjugacy wherever the image stays positive
    sig = sigma_B(r)
    s = coxeter_s(r)
    conjugated = 0
    for x in dom:
        y = sig.apply(x)
        if not y.is_positive_root():
            continue
        assert rho(r, y) == s.apply(rho(r, x)), x.token()
        conjugated += 1
    return {"domain": len(dom), "conjugated": conjugated}


# ----------------------------------------------------------------------
# The time-indexed root family and its recurrences
# ----------------------------------------------------------------------


def alpha_congruence(r: int, i: int, u2: int) -> bool:
    """Does index i carry a root at doubled time u2?"""
    plus, _ = j_bipartition(r)
    if i == r:
        return u2 % 2 == 1
    if i in plus:
        return u2 % 4 == 0
    return u2 % 4 == 2


def alpha_of(r: int, i: int, u2: int) -> Root:
    """The root attached to index i at doubled time u2 in [-2 h_dual, 0)."""
    h_dual = 2 * r - 1
    if not (-2 * h_dual <= u2 < 0):
        raise ValueError(f"u2={u2} outside [-2 h_dual, 0)")
    if not alpha_congruence(r, i, u2):
        raise ValueError(f"index {i} carries no root at u2={u2}")
    sig = sigma_B(r)
    labels = ambient_labels(r)
    if i == r:
        if u2 % 4 == 1:  # doubled time 1 mod 4: the negative chain
            k = -(u2 - 1) // 4
            return sig.power(Root.negative_simple(labels, r), k)
        k = -(u2 + 1) // 4
        return sig.power(-Root.negative_simple(labels, r), k)
    plus, _ = j_bipartition(r)
    if i in plus:
        k = -u2 // 4
    else:
        k = -(u2 - 2) // 4
    return sig.power(Root.negative_simple(labels, i), k)


def iter_alpha_domain(r: int) -> Iterator[tuple[int, int]]:
    h_dual = 2 * r - 1
    for u2 in range(-2 * h_dual, 0):
        for i in range(1, 2 * r):
            if alpha_congruence(r, i, u2):
                yield i, u2


def check_alpha_recurrences(r: int) -> int:
    """Neighbour-sum recurrences of the family, as lattice vectors."""
    h_dual = 2 * r - 1
    labels = ambient_labels(r)
    zero = Root.zero(labels)

    def val(i: int, u2: int) -> Root | None:
        if i in (0, 2 * r):
            return zero
        if not (-2 * h_dual <= u2 < 0):
            return None
        return alpha_of(r, i, u2)

    checked = 0
    for u2 in range(-2 * h_dual, 0):
        for i in range(1, 2 * r):
            if i == r:
                # middle pair sums to a neighbour, side chosen by parity
                if u2 % 4 not in (0, 2):
                    continue
                lhs_a = val(r, u2 - 1)
                lhs_b = val(r, u2 + 1)
                target = r - 1 if u2 % 4 == 2 else r + 1
                rhs = val(target, u2)
                if None in (lhs_a, lhs_b, rhs):
                    continue
                assert lhs_a + lhs_b == rhs, (i, u2)
                checked += 1
                continue
            if not alpha_congruence(r, i, u2 - 2):
                continue
            lhs_a = val(i, u2 - 2)
            lhs_b = val(i, u2 + 2)
            if i == r - 1:
                parts = [val(r - 2, u2), val(r + 1, u2)]
            elif i == r + 1:
                parts = [val(r - 1, u2), val(r + 2, u2)]
            else:
                parts = [val(i - 1, u2), val(i + 1, u2)]
            if lhs_a is None or lhs_b is None or None in parts:
                continue
            assert lhs_a + lhs_b == parts[0] + parts[1], (i, u2)
            checked += 1
    return checked


# ----------------------------------------------------------------------
# Correspondence with the level-2 tropical walk
# ----------------------------------------------------------------------


def a_index_vertex(r: int, i: int) -> VertexId:
    """Grid vertex carrying chain index i at level 2."""
    return VertexId(r, 2) if i == r else VertexId(i, 1)


def projected_t_vector(trace: TropicalTrace, r: int, v: VertexId, u2: int) -> list[int]:
    """Exponent vector after forcing the two odd bullet rows to 1."""
    m = trace.monomial(v, u2)
    return [m.exponent(a_index_vertex(r, k)) for k in range(1, 2 * r)]


def check_tvec_correspondence(r: int) -> dict[str, int]:
    """Projected tropical exponent vectors equal the negated root family."""
    cfg = BrConfig(r, 2)
    h_dual = cfg.h_dual
    trace = run_tropical(cfg, -2 * h_dual, 0)
    matched = 0
    for i, u2 in iter_alpha_domain(r):
        want = [-c for c in alpha_of(r, i, u2).coords]
        got = projected_t_vector(trace, r, a_index_vertex(r, i), u2)
        if got != want:
            raise AssertionError(f"t-vector mismatch at index {i}, u2={u2}")
        matched += 1
    # the two odd bullet rows project to 1 at doubled times 0 mod 4
    trivial = 0
    for u2 in range(-2 * h_dual, 0):
        if u2 % 4 != 0:
            continue
        for row in (1, 3):
            vec = projected_t_vector(trace, r, VertexId(r, row), u2)
            if any(vec):
                raise AssertionError(f"odd bullet row {row} not trivial at u2={u2}")
            trivial += 1
    # endpoint: every index lands on the negated reflected simple root
    for i in range(1, 2 * r):
        want = [0] * (2 * r - 1)
        want[(2 * r - i) - 1] = -1
        got = projected_t_vector(trace, r, a_index_vertex(r, i), -2 * h_dual)
        if got != want:
            raise AssertionError(f"endpoint mismatch at index {i}")
    return {"matched": matched, "trivial": trivial}


def check_t_recurrences(r: int) -> int:
    """Three-term recurrences of the projected exponent vectors.

    The middle pair at half-integer offsets sums with the two odd bullet
    rows projected away, so the neighbour lines acquire both middle
    terms; substituting the middle line back recovers the root-family
    recurrences.
    """
    cfg = BrConfig(r, 2)
    h_dual = cfg.h_dual
    trace = run_tropical(cfg, -2 * h_dual, 0)

    def t(i: int, u2: int) -> list[int] | None:
        if i in (0, 2 * r):
            return [0] * (2 * r - 1)
        if not (-2 * h_dual <= u2 < 0) or not alpha_congruence(r, i, u2):
            return None
        return projected_t_vector(trace, r, a_index_vertex(r, i), u2)

    def add(*vecs: list[int]) -> list[int]:
        return [sum(col) for col in zip(*vecs)]

    checked = 0
    for u2 in range(-2 * h_dual, 0):
        for i in range(1, 2 * r):
            if i == r:
                if u2 % 4 not in (0, 2):
                    continue
                a, b = t(r, u2 - 1), t(r, u2 + 1)
                target = r - 1 if u2 % 4 == 2 else r + 1
                rhs = t(target, u2)
                if None in (a, b, rhs):
                    continue
                assert add(a, b) == rhs, (i, u2)
                checked += 1
                continue
            if not alpha_congruence(r, i, u2 - 2):
                continue
            a, b = t(i, u2 - 2), t(i, u2 + 2)
            if i == r - 1:
                mid = [t(r - 2, u2), t(r, u2 - 1), t(r, u2 + 1)]
            elif i == r + 1:
                mid = [t(r + 2, u2), t(r, u2 - 1), t(r, u2 + 1)]
            else:
                mid = [t(i - 1, u2), t(i + 1, u2)]
            if a is None or b is None or any(m is None for m in mid):
                continue
            assert add(a, b) == add(*mid), (i, u2)
            checked += 1
    return checked
