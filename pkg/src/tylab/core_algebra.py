"""Exact skew-symmetric exchange matrices, quivers, and their mutations.

Vertices are decorated grid positions ``(i, i')``.  Decorations (column
class, sign) ride along for display and scheduling but never participate
in equality: two vertices are the same point iff their coordinates agree,
and mutation never alters a decoration.

Matrix mutation at vertex ``k`` follows the exchange rule

    B'[i][j] = -B[i][j]                          if i == k or j == k,
    B'[i][j] = B[i][j] + (|B[i][k]| B[k][j] + B[i][k] |B[k][j]|) / 2
                                                 otherwise,

and quiver mutation is the equivalent three-step arrow rule (compose
through k, cancel 2-cycles, reverse at k).  Both are involutive.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True, order=True)
class VertexId:
    """Grid point ``(i, i')`` with optional display decorations."""

    i: int
    ip: int
    cls: str | None = field(default=None, compare=False)
    sign: int | None = field(default=None, compare=False)

    def bare(self) -> "VertexId":
        return VertexId(self.i, self.ip)

    def __repr__(self) -> str:  # compact, stable across decoration choices
        return f"({self.i},{self.ip})"


class SkewMatrix:
    """Integer skew-symmetric matrix indexed by an ordered vertex tuple."""

    __slots__ = ("vertices", "_rows", "_index")

    def __init__(self, vertices: Iterable[VertexId], rows: Iterable[Iterable[int]]):
        self.vertices: tuple[VertexId, ...] = tuple(vertices)
        self._rows: list[list[int]] = [list(r) for r in rows]
        n = len(self.vertices)
        if len(self._rows) != n or any(len(r) != n for r in self._rows):
            raise ValueError("matrix shape does not match vertex count")
        self._index = {v: a for a, v in enumerate(self.vertices)}
        if len(self._index) != n:
            raise ValueError("duplicate vertices")
        for a in range(n):
            if self._rows[a][a] != 0:
                raise ValueError("nonzero diagonal")
            for b in range(a + 1, n):
                if self._rows[a][b] != -self._rows[b][a]:
                    raise ValueError("matrix is not skew-symmetric")

    # -- access -----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: VertexId) -> int:
        return self._index[v]

    def entry(self, v: VertexId, w: VertexId) -> int:
        return self._rows[self._index[v]][self._index[w]]

    def row(self, v: VertexId) -> dict[VertexId, int]:
        a = self._index[v]
        return {w: c for w, c in zip(self.vertices, self._rows[a]) if c}

    def neighbors(self, v: VertexId) -> list[VertexId]:
        a = self._index[v]
        return [w for w, c in zip(self.vertices, self._rows[a]) if c]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    # -- algebra ----------------------------------------------------------
    def negated(self) -> "SkewMatrix":
        return SkewMatrix(self.vertices, [[-c for c in r] for r in self._rows])

    def reordered(self, vertices: Iterable[VertexId]) -> "SkewMatrix":
        vs = tuple(vertices)
        if set(vs) != set(self.vertices) or len(vs) != self.n:
            raise ValueError("reorder must permute the same vertex set")
        return SkewMatrix(vs, [[self.entry(v, w) for w in vs] for v in vs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        if set(self.vertices) != set(other.vertices):
            return False
        return all(
            self.entry(v, w) == other.entry(v, w)
            for v in self.vertices
            for w in self.vertices
        )

    def __hash__(self):  # pragma: no cover - not used as dict key
        raise TypeError("SkewMatrix is unhashable")

    def __repr__(self) -> str:
        return f"SkewMatrix({list(self.vertices)!r}, {self._rows!r})"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": [[v.i, v.ip, v.cls, v.sign] for v in self.vertices],
                "rows": self._rows,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "SkewMatrix":
        data = json.loads(text)
        vs = [VertexId(i, ip, c, s) for (i, ip, c, s) in data["vertices"]]
        return cls(vs, data["rows"])


def mutate_matrix(B: SkewMatrix, k: VertexId) -> SkewMatrix:
    """Mutation of the exchange matrix at vertex ``k`` (involutive)."""
    a = B.index(k)
    old = B.rows()
    n = B.n
    new = [row[:] for row in old]
    for i in range(n):
        for j in range(n):
            if i == a or j == a:
                new[i][j] = -old[i][j]
            else:
                new[i][j] = old[i][j] + (
                    abs(old[i][a]) * old[a][j] + old[i][a] * abs(old[a][j])
                ) // 2
    return SkewMatrix(B.vertices, new)


def apply_vertex_map(B: SkewMatrix, sigma: Mapping[VertexId, VertexId]) -> SkewMatrix:
    """Relabel vertices by the bijection ``sigma``; entries move with labels."""
    new_vs = [sigma[v] for v in B.vertices]
    if len(set(new_vs)) != len(new_vs):
        raise ValueError("vertex map is not injective on this vertex set")
    return SkewMatrix(new_vs, B.rows())


class Quiver:
    """Finite quiver without loops or 2-cycles; parallel arrows allowed."""

    __slots__ = ("vertices", "arrows")

    def __init__(
        self,
        vertices: Iterable[VertexId],
        arrows: Mapping[tuple[VertexId, VertexId], int] | Iterable[tuple[VertexId, VertexId]],
    ):
        self.vertices: tuple[VertexId, ...] = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertices")
        counts: dict[tuple[VertexId, VertexId], int] = {}
        if isinstance(arrows, Mapping):
            items = arrows.items()
        else:
            items = [(a, 1) for a in arrows]
        for (s, t), c in items:
            if c < 0:
                raise ValueError("negative arrow multiplicity")
            if c:
                counts[(s, t)] = counts.get((s, t), 0) + c
        for (s, t), c in counts.items():
            if s == t:
                raise ValueError("loop arrow")
            if s not in vset or t not in vset:
                raise ValueError("arrow endpoint is not a vertex")
            if (t, s) in counts:
                raise ValueError("2-cycle")
        self.arrows: dict[tuple[VertexId, VertexId], int] = dict(
            sorted(counts.items(), key=lambda kv: (repr(kv[0][0]), repr(kv[0][1])))
        )

    def arrow_count(self, s: VertexId, t: VertexId) -> int:
        return self.arrows.get((s, t), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.arrows == other.arrows

    def __hash__(self):  # pragma: no cover
        raise TypeError("Quiver is unhashable")

    def __repr__(self) -> str:
        return f"Quiver({list(self.vertices)!r}, {self.arrows!r})"

    # -- conversions -------------------------------------------------------
    def to_matrix(self) -> SkewMatrix:
        n = len(self.vertices)
        idx = {v: a for a, v in enumerate(self.vertices)}
        rows = [[0] * n for _ in range(n)]
        for (s, t), c in self.arrows.items():
            rows[idx[s]][idx[t]] += c
            rows[idx[t]][idx[s]] -= c
        return SkewMatrix(self.vertices, rows)

    @classmethod
    def from_matrix(cls, B: SkewMatrix) -> "Quiver":
        arrows = {}
        for v in B.vertices:
            for w in B.vertices:
                c = B.entry(v, w)
                if c > 0:
                    arrows[(v, w)] = c
        return cls(B.vertices, arrows)

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": [[v.i, v.ip, v.cls, v.sign] for v in self.vertices],
                "arrows": [
                    [s.i, s.ip, t.i, t.ip, c] for (s, t), c in self.arrows.items()
                ],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        data = json.loads(text)
        vs = [VertexId(i, ip, c, s) for (i, ip, c, s) in data["vertices"]]
        pos = {(v.i, v.ip): v for v in vs}
        arrows = {}
        for (si, sp, ti, tp, c) in data["arrows"]:
            arrows[(pos[(si, sp)], pos[(ti, tp)])] = c
        return cls(vs, arrows)


def mutate_quiver(Q: Quiver, k: VertexId) -> Quiver:
    """Quiver mutation at ``k``: compose through k, cancel 2-cycles, reverse."""
    counts = dict(Q.arrows)
    into = {s: c for (s, t), c in counts.items() if t == k}
    outof = {t: c for (s, t), c in counts.items() if s == k}
    # step 1: a path i -> k -> j contributes one new arrow i -> j
    for i, a in into.items():
        for j, b in outof.items():
            if i != j:
                counts[(i, j)] = counts.get((i, j), 0) + a * b
    # step 2: cancel opposite pairs
    for (s, t) in list(counts):
        if s < t and (t, s) in counts:
            m = min(counts[(s, t)], counts[(t, s)])
            counts[(s, t)] -= m
            counts[(t, s)] -= m
    # step 3: reverse every arrow incident to k
    reversed_counts: dict[tuple[VertexId, VertexId], int] = {}
    for (s, t), c in counts.items():
        if c == 0:
            continue
        if s == k or t == k:
            reversed_counts[(t, s)] = reversed_counts.get((t, s), 0) + c
        else:
            reversed_counts[(s, t)] = reversed_counts.get((s, t), 0) + c
    return Quiver(Q.vertices, reversed_counts)


def apply_vertex_map_quiver(Q: Quiver, sigma: Mapping[VertexId, VertexId]) -> Quiver:
    new_vs = [sigma[v] for v in Q.vertices]
    arrows = {(sigma[s], sigma[t]): c for (s, t), c in Q.arrows.items()}
    return Quiver(new_vs, arrows)
