"""Command-line front end: verification suites and data dumps.

Commands::

    tylab verify {tropical,tsystem,ysystem,roots,dilog,pairs,all} [flags]
    tylab dump   {trace,orbits,fpolys} [flags]

``verify`` runs a named suite and emits a JSON report (stdout or
``--out``); exit status is 0 when every record passes, 1 when any
fails, 2 on usage errors.  ``dump`` writes trace CSV, orbit-table JSON,
or F-polynomial JSON artifacts.

Grids come from built-in defaults or a config file (``--grid PATH``)
with ``key = value`` lines.  Recognized keys (comma-separated values)::

    tropical         = 2:2, 2:3          # rank:level pairs
    tsystem          = 2:2, 3:2
    ysystem          = 2:2, 2:3, 3:2
    roots            = 2, 3, 4, 5, 6     # ranks
    dilog_constant   = 2:2, 2:3, ...     # rank:level pairs
    dilog_functional = 2:2, 2:3
    pairs            = A2:A1, A3:A2, D4:A1
    seed             = 20240801
    tol              = 1e-8

Command-line flags override config-file values.  Reports are
deterministic for a fixed seed; per-record timings are included only
with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .br_systems import (
    BrConfig,
    check_T_periodicity,
    check_T_relations,
    check_Y_periodicity,
    check_Y_relations,
    iter_t_centers_pplus,
    random_positive_points,
)
from .dilogarithm import check_constant_DI, check_functional_DI
from .root_systems import (
    check_alpha_recurrences,
    check_orbit_lemma,
    check_rho_conjugacy,
    check_t_recurrences,
    check_tvec_correspondence,
    orbit_rows,
)
from .simply_laced import check_pair_periodicity, dynkin, run_pair_systems
from .tropical_lab import (
    FWalk,
    TropicalTrace,
    check_boundaries,
    check_factorization,
    check_sign_regions,
    check_tropical_periodicity,
    count_signs,
    expected_sign_counts,
)

REPORT_SCHEMA = "tylab-report/1"

DEFAULTS = {
    "tropical": "2:2, 2:3, 3:2, 3:3, 4:2, 2:4",
    "tsystem": "2:2, 3:2",
    "ysystem": "2:2, 2:3, 3:2",
    "roots": "2, 3, 4, 5, 6",
    "dilog_constant": "2:2, 2:3, 2:4, 3:2, 3:3, 3:4, 4:2, 4:3, 4:4",
    "dilog_functional": "2:2, 2:3",
    "pairs": "A1:A1, A2:A1, A3:A2, D4:A1",
    "seed": "20240801",
    "tol": "1e-8",
}

SUITES = ("tropical", "tsystem", "ysystem", "roots", "dilog", "pairs", "all")
DUMP_TARGETS = ("trace", "orbits", "fpolys")


# ----------------------------------------------------------------------
# Config and reports
# ----------------------------------------------------------------------


def parse_config(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _parse_rank_level_list(text: str) -> list[tuple[int, int]]:
    grids = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        r, _, level = item.partition(":")
        grids.append((int(r), int(level)))
    return grids


def _parse_int_list(text: str) -> list[int]:
    return [int(s) for s in filter(None, (s.strip() for s in text.split(",")))]


def _parse_pair_list(text: str) -> list[tuple[str, str]]:
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        a, _, b = item.partition(":")
        pairs.append((a.strip(), b.strip()))
    return pairs


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: grids, tolerance, seed, output."""

    command: str
    target: str
    grids: dict[str, str]
    tol: float
    seed: int
    out: Path | None
    timings: bool
    rank: int | None = None
    level: int | None = None
    pair: tuple[str, str] | None = None
    mode: str | None = None
    u_from: int | None = None
    u_to: int | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class Record:
    name: str
    params: dict
    status: str
    details: dict
    seconds: float | None = None

    def to_dict(self, timings: bool) -> dict:
        data = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "details": self.details,
        }
        if timings and self.seconds is not None:
            data["seconds"] = round(self.seconds, 3)
        return data


def _run_record(name: str, params: dict, fn) -> Record:
    start = time.perf_counter()
    try:
        details = fn()
        status = "pass"
    except Exception as exc:  # a failing check is a report entry, not a crash
        details = {"error": f"{type(exc).__name__}: {exc}"}
        status = "fail"
    return Record(name, params, status, dict(details), time.perf_counter() - start)


def _grid_config(suite: str, r: int, level: int) -> tuple[BrConfig | None, Record | None]:
    """Build the grid point, or a fail record if the point is invalid."""
    try:
        return BrConfig(r, level), None
    except ValueError as exc:
        params = {"rank": r, "level": level}
        return None, Record(f"{suite}_setup", params, "fail", {"error": str(exc)})


# ----------------------------------------------------------------------
# Verification suites
# ----------------------------------------------------------------------


def _suite_tropical(grids: list[tuple[int, int]]) -> list[Record]:
    records = []
    for r, level in grids:
        cfg, bad = _grid_config("tropical", r, level)
        if bad is not None:
            records.append(bad)
            continue
        params = {"rank": r, "level": level}

        def signs(cfg=cfg):
            got = count_signs(cfg)
            want = expected_sign_counts(cfg)
            if got != want:
                raise AssertionError(f"sign counts {got} != expected {want}")
            return {"N_plus": got["positive"], "N_minus": got["negative"], "mixed": got["mixed"]}

        records.append(_run_record("tropical_periodicity", params, lambda cfg=cfg: check_tropical_periodicity(cfg)))
        records.append(_run_record("sign_counts", params, signs))
        records.append(_run_record("sign_regions", params, lambda cfg=cfg: check_sign_regions(cfg)))
        records.append(_run_record("boundaries", params, lambda cfg=cfg: {"checked": check_boundaries(cfg)}))
        if level >= 3:
            records.append(_run_record("factorization", params, lambda cfg=cfg: {"matched": check_factorization(cfg)}))
    return records


def _suite_tsystem(grids: list[tuple[int, int]]) -> list[Record]:
    records = []
    for r, level in grids:
        cfg, bad = _grid_config("tsystem", r, level)
        if bad is not None:
            records.append(bad)
            continue
        params = {"rank": r, "level": level}
        records.append(_run_record("t_relations", params, lambda cfg=cfg: {"checked": check_T_relations(cfg)}))
        records.append(_run_record("t_periodicity", params, lambda cfg=cfg: check_T_periodicity(cfg)))
    return records


def _suite_ysystem(grids: list[tuple[int, int]], seed: int) -> list[Record]:
    records = []
    for r, level in grids:
        cfg, bad = _grid_config("ysystem", r, level)
        if bad is not None:
            records.append(bad)
            continue
        params = {"rank": r, "level": level, "points": 5}

        def relations(cfg=cfg):
            points = random_positive_points(cfg, 5, seed)
            return {"checked": check_Y_relations(cfg, points)}

        def periodicity(cfg=cfg):
            points = random_positive_points(cfg, 5, seed)
            return check_Y_periodicity(cfg, points)

        records.append(_run_record("y_relations", params, relations))
        records.append(_run_record("y_periodicity", params, periodicity))
    return records


def _suite_roots(ranks: list[int]) -> list[Record]:
    records = []
    for r in ranks:
        params = {"rank": r}
        records.append(_run_record("orbit_lemma", params, lambda r=r: check_orbit_lemma(r)))
        records.append(_run_record("rho_conjugacy", params, lambda r=r: check_rho_conjugacy(r)))
        records.append(_run_record("alpha_recurrences", params, lambda r=r: {"checked": check_alpha_recurrences(r)}))
        records.append(_run_record("tvec_correspondence", params, lambda r=r: check_tvec_correspondence(r)))
        records.append(_run_record("t_recurrences", params, lambda r=r: {"checked": check_t_recurrences(r)}))
    return records


def _suite_dilog(
    constant_grids: list[tuple[int, int]],
    functional_grids: list[tuple[int, int]],
    tol: float,
    seed: int,
) -> list[Record]:
    records = []
    for r, level in constant_grids:
        cfg, bad = _grid_config("dilog", r, level)
        if bad is not None:
            records.append(bad)
            continue
        params = {"rank": r, "level": level, "tol": tol}
        records.append(
            _run_record(
                "constant_dilogarithm",
                params,
                lambda cfg=cfg: check_constant_DI(cfg, tol=tol).to_dict(),
            )
        )
    for r, level in functional_grids:
        cfg, bad = _grid_config("dilog", r, level)
        if bad is not None:
            records.append(bad)
            continue
        params = {"rank": r, "level": level, "seed": seed}
        records.append(
            _run_record(
                "functional_dilogarithm",
                params,
                lambda cfg=cfg: {
                    rep.name: {"lhs": rep.lhs, "rhs": rep.rhs}
                    for rep in check_functional_DI(cfg, seed=seed)
                },
            )
        )
    return records


def _suite_pairs(pairs: list[tuple[str, str]], seed: int, mode: str | None = None) -> list[Record]:
    modes = (mode,) if mode else ("tropical", "trivial_laurent", "positive_rational")
    records = []
    for xa, xb in pairs:
        params = {"pair": f"({xa},{xb})"}
        try:
            X, Xp = dynkin(xa), dynkin(xb)
        except ValueError as exc:
            records.append(Record("pairs_setup", params, "fail", {"error": str(exc)}))
            continue
        for mode in modes:
            records.append(
                _run_record(
                    f"pair_relations_{mode}",
                    params,
                    lambda X=X, Xp=Xp, mode=mode: run_pair_systems(X, Xp, mode, seed=seed),
                )
            )
        records.append(
            _run_record(
                "pair_periodicity", params, lambda X=X, Xp=Xp: check_pair_periodicity(X, Xp, seed=seed)
            )
        )
    return records


def run_verify(cfg: RunConfig) -> dict:
    """Execute the requested suite(s) and assemble the report."""
    g = cfg.grids
    if cfg.rank is not None and cfg.level is not None:
        single = f"{cfg.rank}:{cfg.level}"
        g = dict(
            g,
            tropical=single,
            tsystem=single,
            ysystem=single,
            dilog_constant=single,
            dilog_functional=single,
        )
    if cfg.rank is not None:
        g = dict(g, roots=str(cfg.rank))
    if cfg.pair is not None:
        g = dict(g, pairs=f"{cfg.pair[0]}:{cfg.pair[1]}")
    suites = SUITES[:-1] if cfg.target == "all" else (cfg.target,)
    records: list[Record] = []
    for suite in suites:
        if suite == "tropical":
            records += _suite_tropical(_parse_rank_level_list(g["tropical"]))
        elif suite == "tsystem":
            records += _suite_tsystem(_parse_rank_level_list(g["tsystem"]))
        elif suite == "ysystem":
            records += _suite_ysystem(_parse_rank_level_list(g["ysystem"]), cfg.seed)
        elif suite == "roots":
            records += _suite_roots(_parse_int_list(g["roots"]))
        elif suite == "dilog":
            records += _suite_dilog(
                _parse_rank_level_list(g["dilog_constant"]),
                _parse_rank_level_list(g["dilog_functional"]),
                cfg.tol,
                cfg.seed,
            )
        elif suite == "pairs":
            records += _suite_pairs(_parse_pair_list(g["pairs"]), cfg.seed, cfg.mode)
    return {
        "schema": REPORT_SCHEMA,
        "command": "verify",
        "suite": cfg.target,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "records": [rec.to_dict(cfg.timings) for rec in records],
        "status": "pass" if all(rec.status == "pass" for rec in records) else "fail",
    }


# ----------------------------------------------------------------------
# Dumps
# ----------------------------------------------------------------------


def dump_trace(rank: int, level: int, u_from: int, u_to: int) -> str:
    """CSV of the tropical trace over u in [u_from, u_to]."""
    cfg = BrConfig(rank, level)
    trace = TropicalTrace.run(cfg, 2 * u_from, 2 * u_to)
    order = sorted(trace.walk.B0.vertices)
    header = ["i", "ip", "u2", "parity", "sign"] + [f"y[{v.i},{v.ip}]" for v in order]
    lines = [",".join(header)]
    for row in trace.csv_rows():
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def dump_orbits(rank: int) -> str:
    """JSON orbit table in the golden-fixture schema."""
    payload = {"rank": rank, "rows": orbit_rows(rank)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def dump_fpolys(rank: int, level: int) -> str:
    """JSON list of F-polynomials over one half period."""
    cfg = BrConfig(rank, level)
    p2 = 2 * (cfg.h_dual + cfg.level)
    fwalk = FWalk(cfg, 0, p2 + 2)
    order = sorted(fwalk.walk.B0.vertices)
    entries = []
    for a, m, v2 in iter_t_centers_pplus(cfg, 0, p2 - 1):
        poly = fwalk.F_value(a, m, v2)
        terms = [
            {"exps": list(exps), "coeff": str(coeff)}
            for exps, coeff in sorted(poly.terms.items())
        ]
        entries.append({"a": a, "m": m, "u2": v2, "terms": terms})
    payload = {
        "rank": rank,
        "level": level,
        "variables": [f"y[{v.i},{v.ip}]" for v in order],
        "fpolynomials": entries,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run_dump(cfg: RunConfig) -> str:
    if cfg.target == "trace":
        u_from = cfg.u_from if cfg.u_from is not None else -BrConfig(cfg.rank, cfg.level).h_dual
        u_to = cfg.u_to if cfg.u_to is not None else BrConfig(cfg.rank, cfg.level).level
        return dump_trace(cfg.rank, cfg.level, u_from, u_to)
    if cfg.target == "orbits":
        return dump_orbits(cfg.rank)
    return dump_fpolys(cfg.rank, cfg.level)


# ----------------------------------------------------------------------
# Argument parsing and entry point
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tylab",
        description="Verification lab for restricted T/Y-system periodicities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    dump = sub.add_parser("dump", help="write trace/orbit/F-polynomial artifacts")
    dump.add_argument("target", choices=DUMP_TARGETS)

    for p in (verify, dump):
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--level", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", type=Path, default=None)
    verify.add_argument("--pair", default=None, help="pair like A2:A1")
    verify.add_argument("--mode", default=None, help="restrict pair relation mode")
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--grid", default="default", help="config file path or 'default'")
    verify.add_argument("--timings", action="store_true")
    dump.add_argument("--from", dest="u_from", type=int, default=None)
    dump.add_argument("--to", dest="u_to", type=int, default=None)
    return parser


def _resolve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    grids = dict(DEFAULTS)
    if args.command == "verify" and args.grid != "default":
        try:
            grids.update(parse_config(Path(args.grid).read_text()))
        except (OSError, ValueError) as exc:
            parser.error(f"cannot load grid config: {exc}")
    seed = args.seed if args.seed is not None else int(grids["seed"])
    tol = getattr(args, "tol", None)
    tol = tol if tol is not None else float(grids["tol"])
    pair = None
    if getattr(args, "pair", None):
        a, sep, b = args.pair.partition(":")
        if not sep or not a or not b:
            parser.error("--pair expects X:X', e.g. A2:A1")
        pair = (a.strip(), b.strip())
    mode = getattr(args, "mode", None)
    if mode is not None:
        mode = mode.strip().lower().replace("-", "_")
        if mode not in ("tropical", "trivial_laurent", "positive_rational"):
            parser.error("--mode must be tropical, trivial_laurent, or positive_rational")
    if args.command == "dump":
        if args.rank is None:
            parser.error("dump requires --rank")
        if args.rank < 2:
            parser.error("--rank must be at least 2")
        if args.target in ("trace", "fpolys"):
            if args.level is None:
                parser.error(f"dump {args.target} requires --level")
            if args.level < 2:
                parser.error("--level must be at least 2")
    try:
        return RunConfig(
            command=args.command,
            target=args.suite if args.command == "verify" else args.target,
            grids=grids,
            tol=tol,
            seed=seed,
            out=args.out,
            timings=getattr(args, "timings", False),
            rank=args.rank,
            level=args.level,
            pair=pair,
            mode=mode,
            u_from=getattr(args, "u_from", None),
            u_to=getattr(args, "u_to", None),
        )
    except ValueError as exc:
        parser.error(str(exc))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _resolve(args, parser)
    if cfg.command == "verify":
        report = run_verify(cfg)
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
        if cfg.out is not None:
            try:
                cfg.out.write_text(text)
            except OSError as exc:
                print(f"cannot write report: {exc}", file=sys.stderr)
                return 1
        else:
            print(text, end="")
        return 0 if report["status"] == "pass" else 1
    try:
        text = run_dump(cfg)
        if cfg.out is not None:
            cfg.out.write_text(text)
        else:
            print(text, end="")
    except OSError as exc:
        print(f"dump failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
