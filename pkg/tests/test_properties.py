"""Randomized property suites over the core mutation machinery.

Each suite draws 10,000 cases from a seeded generator, so failures are
reproducible.  Plain loops rather than a shrinking framework: the case
count is the contract, and every case is cheap by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction

from tylab.core_algebra import Quiver, SkewMatrix, VertexId, mutate_matrix
from tylab.seed_mutation import Seed, mutate_seed
from tylab.semifields import CoeffPoly, TropMonomial, semifield_ops

CASES = 10_000


def vertex_pool(n: int) -> tuple[VertexId, ...]:
    return tuple(VertexId(0, j) for j in range(1, n + 1))


def random_skew(rng: random.Random, vertices, spread: int = 3) -> SkewMatrix:
    n = len(vertices)
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            c = rng.randint(-spread, spread)
            rows[a][b] = c
            rows[b][a] = -c
    return SkewMatrix(vertices, rows)


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def random_tropical(rng: random.Random, vertices) -> TropMonomial:
    chosen = rng.sample(vertices, rng.randint(0, len(vertices)))
    return TropMonomial({v: rng.randint(-5, 5) for v in chosen})


def random_coeff_poly(rng: random.Random, nvars: int) -> CoeffPoly:
    def poly():
        out = {}
        for _ in range(rng.randint(1, 2)):
            e = tuple(rng.randint(0, 2) for _ in range(nvars))
            out[e] = out.get(e, 0) + rng.randint(1, 3)
        return out

    return CoeffPoly(nvars, poly(), poly())


def test_seed_mutation_is_involutive():
    rng = random.Random(93101)
    carriers = ("tropical", "positive_rational", "coeff_poly", "cluster", "principal")
    for case in range(CASES):
        vs = vertex_pool(rng.randint(2, 5))
        B = random_skew(rng, vs)
        k = rng.choice(vs)
        carrier = carriers[case % len(carriers)]
        if carrier == "cluster":
            seed = Seed.initial(B, semifield_ops("trivial"), with_cluster=True)
        elif carrier == "principal":
            seed = Seed.initial(B, semifield_ops("tropical"), principal=True)
        elif carrier == "positive_rational":
            point = {v: random_fraction(rng) for v in vs}
            seed = Seed.initial(B, semifield_ops(carrier, point=point))
        elif carrier == "coeff_poly":
            seed = Seed.initial(B, semifield_ops(carrier, vertices=vs))
        else:
            seed = Seed.initial(B, semifield_ops("tropical"))
        twice = mutate_seed(mutate_seed(seed, k), k)
        assert twice.B == seed.B, (case, carrier)
        assert twice.y == seed.y, (case, carrier)
        assert twice.cluster == seed.cluster, (case, carrier)


def test_semifield_axioms():
    rng = random.Random(93102)
    vs = vertex_pool(3)
    bundles = {
        "tropical": semifield_ops("tropical"),
        "positive_rational": semifield_ops("positive_rational", point={}),
        "coeff_poly": semifield_ops("coeff_poly", vertices=vs),
    }
    tags = tuple(bundles)
    for case in range(CASES):
        tag = tags[case % len(tags)]
        ops = bundles[tag]
        if tag == "tropical":
            a, b, c = (random_tropical(rng, vs) for _ in range(3))
        elif tag == "positive_rational":
            a, b, c = (random_fraction(rng) for _ in range(3))
        else:
            a, b, c = (random_coeff_poly(rng, len(vs)) for _ in range(3))
        assert ops.oplus(a, b) == ops.oplus(b, a), (case, tag)
        assert ops.oplus(ops.oplus(a, b), c) == ops.oplus(a, ops.oplus(b, c)), (case, tag)
        assert ops.mul(a, b) == ops.mul(b, a), (case, tag)
        assert ops.mul(ops.mul(a, b), c) == ops.mul(a, ops.mul(b, c)), (case, tag)
        assert ops.mul(a, ops.oplus(b, c)) == ops.oplus(ops.mul(a, b), ops.mul(a, c)), (
            case,
            tag,
        )
        assert ops.is_one(ops.mul(a, ops.inv(a))), (case, tag)
        assert ops.mul(ops.one, a) == a, (case, tag)


def test_matrix_mutation_preserves_skew_symmetry():
    rng = random.Random(93103)
    for case in range(CASES):
        vs = vertex_pool(rng.randint(2, 6))
        B = random_skew(rng, vs, spread=4)
        k = rng.choice(vs)
        Bp = mutate_matrix(B, k)
        rows = Bp.rows()
        n = len(vs)
        for a in range(n):
            assert rows[a][a] == 0, case
            for b in range(a + 1, n):
                assert rows[a][b] == -rows[b][a], case
        for v in vs:
            assert Bp.entry(k, v) == -B.entry(k, v), case
            assert Bp.entry(v, k) == -B.entry(v, k), case


def test_quiver_matrix_round_trip():
    rng = random.Random(93104)
    for case in range(CASES):
        vs = vertex_pool(rng.randint(2, 6))
        B = random_skew(rng, vs, spread=4)
        Q = Quiver.from_matrix(B)
        assert Q.to_matrix() == B, case
        assert Quiver.from_matrix(Q.to_matrix()) == Q, case
        for (s, t), count in Q.arrows.items():
            assert count > 0 and (t, s) not in Q.arrows, case
            assert B.entry(s, t) == count, case
