"""Rogers dilogarithm, constant Y-system solver, and dilogarithm sums."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from tylab.br_systems import BrConfig
from tylab.dilogarithm import (
    ConstantYSolution,
    build_K,
    central_charge,
    check_constant_DI,
    check_functional_DI,
    functional_targets,
    reports_to_csv,
    reports_to_json,
    rogers_L,
    solve_constant_Y,
    system_labels,
    uniqueness_spread,
    wzw_charge_form,
    ybc_residual,
    ybc_rows,
)

PI2_6 = math.pi ** 2 / 6

# Exact rational fixed points of the constant system, verified by hand
# against every relation (see test_exact_solutions_satisfy_relations).
CONSTANT_SOLUTIONS = {
    (2, 2): {
        (1, 1): Fraction(3),
        (2, 1): Fraction(2, 3),
        (2, 2): Fraction(4, 5),
        (2, 3): Fraction(2, 3),
    },
    (3, 2): {
        (1, 1): Fraction(3),
        (2, 1): Fraction(8),
        (3, 1): Fraction(3, 4),
        (3, 2): Fraction(9, 7),
        (3, 3): Fraction(3, 4),
    },
}


# ----------------------------------------------------------------------
# Rogers dilogarithm
# ----------------------------------------------------------------------


def test_rogers_special_values():
    assert rogers_L(0) == 0.0
    assert abs(rogers_L(1) - PI2_6) < 1e-12
    assert abs(rogers_L(0.5) - math.pi ** 2 / 12) < 1e-12
    assert abs(rogers_L(Fraction(1, 2)) - math.pi ** 2 / 12) < 1e-12


def test_rogers_reflection_identity():
    rng = random.Random(20240801)
    for _ in range(100):
        x = rng.random()
        assert abs(rogers_L(x) + rogers_L(1 - x) - PI2_6) < 1e-11


def test_rogers_against_quadrature():
    # Independent oracle: numeric integral of the defining integrand.
    def quad_L(x: float) -> float:
        with mp.workdps(40):
            val = mp.quad(
                lambda y: mp.log(1 - y) / y + mp.log(y) / (1 - y), [0, x]
            )
            return float(-val / 2)

    for x in (0.1, 0.25, 0.5, 0.75, 0.9):
        assert abs(rogers_L(x) - quad_L(x)) < 1e-12


def test_rogers_domain_errors():
    with pytest.raises(ValueError):
        rogers_L(-0.1)
    with pytest.raises(ValueError):
        rogers_L(1.1)


# ----------------------------------------------------------------------
# K-matrix
# ----------------------------------------------------------------------


def test_K_full_matrix_2_2():
    K = build_K(BrConfig(2, 2))
    assert K.labels == ((1, 1), (2, 1), (2, 2), (2, 3))
    h = Fraction(1, 2)
    expected = (
        (1, -h, -1, -h),
        (-h, 3 * h, 1, h),
        (-1, 1, 2, 1),
        (-h, h, 1, 3 * h),
    )
    assert K.rows == tuple(tuple(Fraction(e) for e in row) for row in expected)


def test_K_diagonal_entries_2_2():
    K = build_K(BrConfig(2, 2))
    # long root: 2*(min(1,1) - 1/2) = 1; short root: 1*(min(2,2) - 1/2) = 3/2
    assert K.entry((1, 1), (1, 1)) == 1
    assert K.entry((2, 1), (2, 1)) == Fraction(3, 2)


def test_K_symmetric_and_positive_definite_small_grids():
    for r in (2, 3, 4):
        for level in (2, 3, 4):
            K = build_K(BrConfig(r, level))
            n = len(K.labels)
            for i in range(n):
                for j in range(n):
                    assert K.rows[i][j] == K.rows[j][i]
            minors = K.leading_principal_minors()
            assert len(minors) == n
            assert all(minor > 0 for minor in minors)


def test_label_count_matches_per_time_count():
    for r in (2, 3, 4):
        for level in (2, 3, 4):
            cfg = BrConfig(r, level)
            assert len(system_labels(cfg)) == cfg.labels_per_u2()


# ----------------------------------------------------------------------
# Constant Y-system
# ----------------------------------------------------------------------


def test_exact_solutions_satisfy_relations():
    for (r, level), Y in CONSTANT_SOLUTIONS.items():
        for label, lhs, rhs in ybc_rows(BrConfig(r, level), Y):
            assert lhs == rhs, f"relation at {label} fails"
        assert ybc_residual(BrConfig(r, level), Y) == 0.0


def test_solver_finds_exact_solution_2_2():
    cfg = BrConfig(2, 2)
    sol = solve_constant_Y(cfg)
    assert isinstance(sol, ConstantYSolution)
    assert sol.labels == system_labels(cfg)
    for label, got in zip(sol.labels, sol.Y):
        assert abs(got - float(CONSTANT_SOLUTIONS[(2, 2)][label])) < 1e-9
    assert sol.residual < 1e-10


def test_solver_finds_exact_solution_3_2():
    cfg = BrConfig(3, 2)
    sol = solve_constant_Y(cfg)
    for label, got in zip(sol.labels, sol.Y):
        assert abs(got - float(CONSTANT_SOLUTIONS[(3, 2)][label])) < 1e-9


def test_solver_solution_2_3_closed_form():
    cfg = BrConfig(2, 3)
    sol = solve_constant_Y(cfg)
    s = math.sqrt(3)
    expected = {
        (1, 1): s,
        (1, 2): s,
        (2, 1): 1 / s,
        (2, 2): 0.5,
        (2, 3): 1 / 3,
        (2, 4): 0.5,
        (2, 5): 1 / s,
    }
    for label, got in zip(sol.labels, sol.Y):
        assert abs(got - expected[label]) < 1e-9


def test_solver_residual_and_range_all_grids():
    for r in (2, 3, 4):
        for level in (2, 3, 4):
            sol = solve_constant_Y(BrConfig(r, level))
            assert sol.residual < 1e-10
            assert all(0 < f < 1 for f in sol.f)
            for Y, f in zip(sol.Y, sol.f):
                assert abs(Y - f / (1 - f)) < 1e-12 * max(1.0, Y)


def test_solver_multi_start_uniqueness():
    assert uniqueness_spread(BrConfig(2, 2)) < 1e-8
    assert uniqueness_spread(BrConfig(3, 2)) < 1e-8


def test_solver_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        solve_constant_Y(BrConfig(2, 2), tol=0)


# ----------------------------------------------------------------------
# Constant dilogarithm sum
# ----------------------------------------------------------------------


def test_charge_forms_agree_exactly():
    for r in range(2, 7):
        for level in range(2, 7):
            cfg = BrConfig(r, level)
            assert central_charge(cfg) == wzw_charge_form(cfg)


def test_constant_sum_2_2_is_two():
    report = check_constant_DI(BrConfig(2, 2))
    assert report.rhs == 2.0
    assert abs(report.lhs - 2.0) < 1e-8
    assert report.residual < 1e-10


def test_constant_sum_3_2_is_three():
    report = check_constant_DI(BrConfig(3, 2))
    assert report.rhs == 3.0
    assert abs(report.lhs - 3.0) < 1e-8


def test_constant_sum_all_grids():
    for r in (2, 3, 4):
        for level in (2, 3, 4):
            cfg = BrConfig(r, level)
            report = check_constant_DI(cfg, tol=1e-8)
            assert report.diff < 1e-8
            assert report.rhs == float(central_charge(cfg))


# ----------------------------------------------------------------------
# Functional dilogarithm sums
# ----------------------------------------------------------------------


def test_functional_targets_arithmetic():
    assert functional_targets(BrConfig(2, 2)) == {"DI2": 40, "DI3": 40, "DI4": 20}
    assert functional_targets(BrConfig(2, 3)) == {"DI2": 72, "DI3": 96, "DI4": 36}
    for r in range(2, 7):
        for level in range(2, 7):
            cfg = BrConfig(r, level)
            t = functional_targets(cfg)
            # the two full sums exhaust the label count over one period
            total = 4 * (cfg.h_dual + cfg.level) * cfg.labels_per_u2() // 2
            assert t["DI2"] + t["DI3"] == 2 * total
            # full sums are the period multiple of the constant charge
            period = 2 * (cfg.h_dual + cfg.level)
            assert t["DI4"] == period * central_charge(cfg)
            assert t["DI2"] == 2 * period * central_charge(cfg)


def test_functional_sums_2_2():
    reports = {rep.name: rep for rep in check_functional_DI(BrConfig(2, 2))}
    assert abs(reports["DI2"].lhs - 40) < 1e-6 * 40
    assert abs(reports["DI3"].lhs - 40) < 1e-6 * 40
    assert abs(reports["DI4[0]"].lhs - 20) < 1e-6 * 20
    assert abs(reports["DI4[1]"].lhs - 20) < 1e-6 * 20


def test_functional_sums_2_3():
    reports = {rep.name: rep for rep in check_functional_DI(BrConfig(2, 3))}
    assert abs(reports["DI2"].lhs - 72) < 1e-6 * 72
    assert abs(reports["DI3"].lhs - 96) < 1e-6 * 96
    assert abs(reports["DI4[0]"].lhs - 36) < 1e-6 * 36


def test_functional_sums_seed_invariance():
    values = []
    for seed in (1, 2, 3, 4, 5):
        reports = {rep.name: rep for rep in check_functional_DI(BrConfig(2, 2), seed=seed)}
        values.append((reports["DI2"].lhs, reports["DI3"].lhs))
    for a, b in zip(values, values[1:]):
        assert abs(a[0] - b[0]) < 1e-9 * 40
        assert abs(a[1] - b[1]) < 1e-9 * 40


def test_functional_sums_from_constant_data():
    # Initial data built from the exact constant solution is one more
    # admissible positive point; the sums must hit the same integers,
    # which equal the constant charge times the period multiplicity.
    cfg = BrConfig(2, 2)
    const = CONSTANT_SOLUTIONS[(2, 2)]
    point = {}
    for v in cfg.vertices():
        a = v.i if v.i <= cfg.r else 2 * cfg.r - v.i
        point[v.bare()] = const[(a, v.ip)]
    reports = {rep.name: rep for rep in check_functional_DI(cfg, points=[point, point])}
    assert abs(reports["DI2"].lhs - 40) < 1e-6 * 40
    assert reports["DI4[0]"].rhs == 2 * (cfg.h_dual + cfg.level) * float(
        central_charge(cfg)
    )


def test_functional_requires_two_points():
    with pytest.raises(ValueError):
        check_functional_DI(BrConfig(2, 2), points=[])


# ----------------------------------------------------------------------
# Report serialization
# ----------------------------------------------------------------------


def test_report_serialization_round_trip():
    import csv as _csv
    import io as _io
    import json as _json

    reports = check_functional_DI(BrConfig(2, 2))
    decoded = _json.loads(reports_to_json(reports))
    assert [d["name"] for d in decoded] == [rep.name for rep in reports]
    assert decoded[0]["r"] == 2 and decoded[0]["level"] == 2
    rows = list(_csv.DictReader(_io.StringIO(reports_to_csv(reports))))
    assert len(rows) == len(reports)
    assert float(rows[-1]["rhs"]) == reports[-1].rhs
