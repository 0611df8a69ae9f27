"""Rogers dilogarithm identities for the restricted Y-system.

Three layers of verification live here:

* ``rogers_L`` evaluates the Rogers dilogarithm
  ``L(x) = -1/2 * integral_0^x [log(1-y)/y + log(y)/(1-y)] dy``
  on ``[0, 1]``.
* ``build_K`` / ``solve_constant_Y`` construct the positive-definite
  K-matrix ``K^{mk}_{ab} = (alpha_a|alpha_b)(min(t_b m, t_a k) - mk/l)``
  and solve the constant Y-system, whose unique positive solution feeds
  the constant central-charge identity
  ``(6/pi^2) sum L(Y/(1+Y)) = r(l*h - h_dual)/(h_dual + l)``.
* ``check_functional_DI`` evolves the coefficient walk over one full
  period with exact rational coefficients and confirms the functional
  sums: ``4r(2rl - 2r + 1)`` for ``L(Y/(1+Y))``, ``4l(rl + l - 1)`` for
  ``L(1/(1+Y))``, and the per-walk half sum ``2r(2rl - 2r + 1)``.

Rational coefficient data stays exact through the walk; floats appear
only inside ``L``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath as mp
import numpy as np
from scipy import optimize, special

from .br_systems import BrConfig, BrWalk, iter_y_labels, random_positive_points

_DPS = 30


# ----------------------------------------------------------------------
# Rogers dilogarithm
# ----------------------------------------------------------------------


def _rogers_mp(x: mp.mpf) -> mp.mpf:
    """L(x) for an mpf in [0, 1] at working precision."""
    if x == 0:
        return mp.mpf(0)
    if x == 1:
        return mp.pi ** 2 / 6
    return mp.polylog(2, x) + mp.log(x) * mp.log(1 - x) / 2


def _to_mpf(x) -> mp.mpf:
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


def rogers_L(x) -> float:
    """Rogers dilogarithm on [0, 1]; accepts float or Fraction."""
    xf = x if isinstance(x, Fraction) else float(x)
    if xf < 0 or xf > 1:
        raise ValueError(f"rogers_L domain is [0, 1], got {x}")
    with mp.workdps(_DPS):
        return float(_rogers_mp(_to_mpf(x)))


# ----------------------------------------------------------------------
# K-matrix
# ----------------------------------------------------------------------


def system_labels(cfg: BrConfig) -> tuple[tuple[int, int], ...]:
    """All (a, m) with 1 <= m <= t_a*level - 1, row-major in a."""
    return tuple(
        (a, m)
        for a in range(1, cfg.r + 1)
        for m in range(1, cfg.t(a) * cfg.level)
    )


def bilinear_form(cfg: BrConfig, a: int, b: int) -> int:
    """(alpha_a|alpha_b) normalized to 2 on long roots."""
    if a == b:
        return 2 if a < cfg.r else 1
    return -1 if abs(a - b) == 1 else 0


@dataclass(frozen=True)
class KMatrix:
    """Symmetric positive-definite matrix over the (a, m) labels."""

    labels: tuple[tuple[int, int], ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def entry(self, la: tuple[int, int], lb: tuple[int, int]) -> Fraction:
        return self.rows[self.labels.index(la)][self.labels.index(lb)]

    def as_float(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.rows])

    def leading_principal_minors(self) -> list[Fraction]:
        """Exact minors det(K[:k, :k]) via fraction Gaussian elimination."""
        n = len(self.labels)
        work = [list(row) for row in self.rows]
        minors: list[Fraction] = []
        det = Fraction(1)
        for k in range(n):
            pivot = work[k][k]
            if pivot == 0:
                raise ArithmeticError("zero pivot; matrix is not positive definite")
            det *= pivot
            minors.append(det)
            for i in range(k + 1, n):
                factor = work[i][k] / pivot
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
        return minors


def build_K(cfg: BrConfig) -> KMatrix:
    """Exact K-matrix; symmetry and positive definiteness are asserted."""
    labels = system_labels(cfg)
    rows = tuple(
        tuple(
            Fraction(bilinear_form(cfg, a, b))
            * (min(cfg.t(b) * m, cfg.t(a) * k) - Fraction(m * k, cfg.level))
            for (b, k) in labels
        )
        for (a, m) in labels
    )
    K = KMatrix(labels, rows)
    for i in range(len(labels)):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise AssertionError("K-matrix is not symmetric")
    if any(minor <= 0 for minor in K.leading_principal_minors()):
        raise AssertionError("K-matrix is not positive definite")
    return K


# ----------------------------------------------------------------------
# Constant Y-system
# ----------------------------------------------------------------------


def ybc_rows(cfg: BrConfig, Y: Mapping[tuple[int, int], object]):
    """Yield (label, lhs, rhs) for every constant Y-system relation.

    Boundary conventions: Y^{(0)}_m = 0 and 1/Y^{(a)}_0 = 1/Y^{(a)}_{t_a l} = 0.
    Arithmetic is generic, so exact Fractions and floats both work.
    """

    def plus1(a: int, m: int):
        if a == 0:
            return 1
        return 1 + Y[(a, m)]

    def plus1_inv(a: int, m: int):
        if m < 1 or m > cfg.t(a) * cfg.level - 1:
            return 1
        return 1 + 1 / Y[(a, m)]

    r = cfg.r
    for a, m in system_labels(cfg):
        lhs = Y[(a, m)] ** 2
        if a <= r - 2:
            rhs = (plus1(a - 1, m) * plus1(a + 1, m)) / (
                plus1_inv(a, m - 1) * plus1_inv(a, m + 1)
            )
        elif a == r - 1:
            rhs = (
                plus1(r - 2, m)
                * plus1(r, 2 * m - 1)
                * plus1(r, 2 * m) ** 2
                * plus1(r, 2 * m + 1)
            ) / (plus1_inv(r - 1, m - 1) * plus1_inv(r - 1, m + 1))
        elif m % 2 == 0:
            rhs = plus1(r - 1, m // 2) / (
                plus1_inv(r, m - 1) * plus1_inv(r, m + 1)
            )
        else:
            rhs = 1 / (plus1_inv(r, m - 1) * plus1_inv(r, m + 1))
        yield (a, m), lhs, rhs


def ybc_residual(cfg: BrConfig, Y: Mapping[tuple[int, int], object]) -> float:
    """Max relative defect |lhs/rhs - 1| over the constant relations."""
    return max(float(abs(lhs / rhs - 1)) for _, lhs, rhs in ybc_rows(cfg, Y))


@dataclass(frozen=True)
class ConstantYSolution:
    """Unique positive fixed point of the constant Y-system."""

    labels: tuple[tuple[int, int], ...]
    Y: tuple[float, ...]
    f: tuple[float, ...]
    iterations: int
    residual: float
    method: str

    def y_map(self) -> dict[tuple[int, int], float]:
        return dict(zip(self.labels, self.Y))

    def f_map(self) -> dict[tuple[int, int], float]:
        return dict(zip(self.labels, self.f))


def _gap_sigmoid(K: np.ndarray, z: np.ndarray) -> np.ndarray:
    """log f - K log(1-f) at f = expit(z); zeros are the fixed points.

    The sigmoid chart keeps f inside (0,1) for every real z, so the
    root-finder never leaves the domain of the logarithms:
    log f = -log(1+e^-z) and log(1-f) = -log(1+e^z).
    """
    return K @ np.logaddexp(0, z) - np.logaddexp(0, -z)


def _gap_sigmoid_jac(K: np.ndarray, z: np.ndarray) -> np.ndarray:
    f = special.expit(z)
    return K @ np.diag(f) + np.diag(1 - f)


def _solve_from(K: np.ndarray, z0: np.ndarray) -> np.ndarray:
    """Root of the fixed-point gap from start z0; returns f."""
    result = optimize.root(
        lambda z: _gap_sigmoid(K, z),
        z0,
        jac=lambda z: _gap_sigmoid_jac(K, z),
        method="hybr",
        tol=1e-13,
    )
    # hybr can stop with "xtol too small" at an already-excellent root,
    # so judge by the achieved gap rather than the success flag.
    if np.max(np.abs(_gap_sigmoid(K, result.x))) > 1e-10:
        raise RuntimeError(f"constant Y-system solver failed: {result.message}")
    f = special.expit(result.x)
    return f, int(result.nfev)


def solve_constant_Y(
    cfg: BrConfig,
    tol: float = 1e-12,
    damping: float = 0.5,
    max_iter: int = 100_000,
) -> ConstantYSolution:
    """Solve f = prod (1 - f)^K elementwise, then Y = f/(1-f).

    Damped iteration on log f runs first; the iteration map is checked to
    stay inside (0,1)^N each step.  On divergence or stalling (the map is
    locally repelling for these K), a derivative-based root-finder on
    log f takes over.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = build_K(cfg).as_float()
    n = len(K)
    x = np.full(n, math.log(0.5))
    iterations = 0
    method = "damped"
    converged = False
    for _ in range(max_iter):
        iterations += 1
        f = np.exp(x)
        phi = K @ np.log1p(-f)
        if not np.all(np.isfinite(phi)) or np.any(phi >= 0):
            break  # image left (0,1)^N: iteration is diverging
        if np.max(np.abs(f - np.exp(phi))) < tol:
            converged = True
            break
        x = (1 - damping) * x + damping * phi
        if np.max(np.abs(x)) > 500:
            break
    if not converged:
        method = "damped+root"
        f, nfev = _solve_from(K, np.zeros(n))
        iterations += nfev
    else:
        f = np.exp(x)
    if not np.all((f > 0) & (f < 1)):
        raise RuntimeError("solved point left (0,1)^N")
    gap = np.max(np.abs(f - np.exp(K @ np.log1p(-f))))
    if gap >= tol:
        raise RuntimeError(f"fixed-point residual {gap:.2e} above tolerance {tol:.2e}")
    Y = f / (1 - f)
    labels = system_labels(cfg)
    residual = ybc_residual(cfg, dict(zip(labels, Y)))
    return ConstantYSolution(
        labels=labels,
        Y=tuple(float(v) for v in Y),
        f=tuple(float(v) for v in f),
        iterations=iterations,
        residual=residual,
        method=method,
    )


def uniqueness_spread(
    cfg: BrConfig, starts: int = 10, seed: int = 20240801, tol: float = 1e-12
) -> float:
    """Max pairwise sup-distance of solutions from random starts in (0,1)^N."""
    import random as _random

    rng = _random.Random(seed)
    K = build_K(cfg).as_float()
    n = len(K)
    points = []
    for _ in range(starts):
        f0 = np.array([rng.uniform(0.05, 0.95) for _ in range(n)])
        f, _ = _solve_from(K, special.logit(f0))
        if np.max(np.abs(f - np.exp(K @ np.log1p(-f)))) >= tol:
            raise RuntimeError("random-start solution misses tolerance")
        points.append(f)
    return max(
        float(np.max(np.abs(p - q))) for i, p in enumerate(points) for q in points[:i]
    )


# ----------------------------------------------------------------------
# Central charges and reports
# ----------------------------------------------------------------------


def central_charge(cfg: BrConfig) -> Fraction:
    """r(l*h - h_dual)/(h_dual + l), the constant-sum target."""
    return Fraction(
        cfg.r * (cfg.level * cfg.h - cfg.h_dual), cfg.h_dual + cfg.level
    )


def wzw_charge_form(cfg: BrConfig) -> Fraction:
    """l*dim(g)/(h_dual + l) - r with dim(g) = r(h + 1)."""
    dim_g = cfg.r * (cfg.h + 1)
    return Fraction(cfg.level * dim_g, cfg.h_dual + cfg.level) - cfg.r


@dataclass(frozen=True)
class DilogReport:
    """One verified identity: lhs vs rhs at the stated tolerance."""

    name: str
    r: int
    level: int
    lhs: float
    rhs: float
    diff: float
    iterations: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "level": self.level,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": self.diff,
            "iterations": self.iterations,
            "residual": self.residual,
        }


_CSV_FIELDS = ("name", "r", "level", "lhs", "rhs", "diff", "iterations", "residual")


def reports_to_json(reports: Iterable[DilogReport]) -> str:
    return json.dumps([rep.to_dict() for rep in reports], indent=2, sort_keys=True)


def reports_to_csv(reports: Iterable[DilogReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.to_dict())
    return buf.getvalue()


def check_constant_DI(cfg: BrConfig, tol: float = 1e-8) -> DilogReport:
    """(6/pi^2) sum L(f) against the rational central charge."""
    sol = solve_constant_Y(cfg)
    with mp.workdps(_DPS):
        total = mp.fsum(_rogers_mp(_to_mpf(v)) for v in sol.f)
        lhs = float(6 / mp.pi ** 2 * total)
    rhs = float(central_charge(cfg))
    diff = abs(lhs - rhs)
    if diff >= tol:
        raise AssertionError(
            f"constant dilogarithm sum off target: |{lhs} - {rhs}| = {diff:.3e}"
        )
    return DilogReport(
        name="constant",
        r=cfg.r,
        level=cfg.level,
        lhs=lhs,
        rhs=rhs,
        diff=diff,
        iterations=sol.iterations,
        residual=sol.residual,
    )


# ----------------------------------------------------------------------
# Functional identities along the coefficient walk
# ----------------------------------------------------------------------


def functional_targets(cfg: BrConfig) -> dict[str, int]:
    r, level = cfg.r, cfg.level
    return {
        "DI2": 4 * r * (2 * r * level - 2 * r + 1),
        "DI3": 4 * level * (r * level + level - 1),
        "DI4": 2 * r * (2 * r * level - 2 * r + 1),
    }


def _sector_sums(cfg: BrConfig, point) -> tuple[mp.mpf, mp.mpf, int]:
    """Exact-rational walk over one full period; returns L-sums and count."""
    p2 = 2 * (cfg.h_dual + cfg.level)
    walk = BrWalk(cfg, "positive_rational", 0, 2 * p2 - 1, point=point)
    sum_f = mp.mpf(0)
    sum_rest = mp.mpf(0)
    count = 0
    for a, m, u2 in iter_y_labels(cfg, 0, 2 * p2 - 1):
        Y = walk.Y_value(a, m, u2)
        f = Y / (1 + Y)
        sum_f += _rogers_mp(_to_mpf(f))
        sum_rest += _rogers_mp(_to_mpf(1 - f))
        count += 1
    return sum_f, sum_rest, count


def check_functional_DI(
    cfg: BrConfig,
    points: Sequence[Mapping] | None = None,
    seed: int = 20240801,
    tol: float = 1e-6,
) -> list[DilogReport]:
    """Functional dilogarithm sums over one full period.

    The label set at half-integer times splits into two independent
    parity sectors; each is realized by its own coefficient walk, so the
    full sums combine two walks with independent positive rational data.
    Returns reports for the two per-walk half sums and the combined
    sums, asserting each within relative tolerance.
    """
    if points is None:
        points = random_positive_points(cfg, 2, seed)
    if len(points) != 2:
        raise ValueError("need exactly two initial points, one per parity sector")
    targets = functional_targets(cfg)
    expected_count = 2 * (cfg.h_dual + cfg.level) * cfg.labels_per_u2()
    reports: list[DilogReport] = []
    with mp.workdps(_DPS):
        norm = 6 / mp.pi ** 2
        total_f = mp.mpf(0)
        total_rest = mp.mpf(0)
        for sector, point in enumerate(points):
            sum_f, sum_rest, count = _sector_sums(cfg, point)
            if count != expected_count:
                raise AssertionError(
                    f"sector {sector} visited {count} labels, expected {expected_count}"
                )
            total_f += sum_f
            total_rest += sum_rest
            reports.append(
                _functional_report(cfg, f"DI4[{sector}]", float(norm * sum_f), targets["DI4"], tol)
            )
        reports.append(
            _functional_report(cfg, "DI2", float(norm * total_f), targets["DI2"], tol)
        )
        reports.append(
            _functional_report(cfg, "DI3", float(norm * total_rest), targets["DI3"], tol)
        )
    return reports


def _functional_report(
    cfg: BrConfig, name: str, lhs: float, rhs: int, tol: float
) -> DilogReport:
    diff = abs(lhs - rhs)
    if diff >= tol * max(1.0, abs(rhs)):
        raise AssertionError(f"{name} sum off target: |{lhs} - {rhs}| = {diff:.3e}")
    return DilogReport(
        name=name,
        r=cfg.r,
        level=cfg.level,
        lhs=lhs,
        rhs=float(rhs),
        diff=diff,
        iterations=0,
        residual=0.0,
    )
