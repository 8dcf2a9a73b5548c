"""Command-line interface.

Exit status: 0 success, 1 validation failure, 2 I/O or usage error,
3 solver failure (limit exceeded, infeasible, or external solver error).

``report.csv`` has columns ``quantity, subject, category, value``:

* ``alpha, <group>, <category|total>``: weighted deviations of a group
* ``weighted_total, all, <category|total>``: summed over groups
* ``alpha_max, all, total``
* ``composition_pct, all, <category>`` and ``group_share, <group>, total``
* ``distance_deviation, <location>, distance`` (miles) with
  ``avg_distance_deviation`` / ``max_distance_deviation`` rows
* ``overcrowding, <location>, capacity`` with average and maximum rows
  (capacitated runs only)
* ``park_load, <park>, capacity``
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .evaluate import DeviationReport
from .instance import CATEGORIES, AccessConfig, InstanceError, ObjectiveKind, ParkInstance, load_instance
from .milp import build_model
from .mps import write_mps
from .policy import (
    DEFAULT_BUDGETS,
    DEFAULT_EMPHASIS_GRID,
    DEFAULT_THRESHOLDS,
    AnalysisError,
    PlanMode,
    budget_sweep,
    calibrate_emphasis,
    plan_horizon,
    summarize,
    threshold_sensitivity,
)
from .solve import EnumerationSolver, ExternalSolver, Provenance, SolveLimits, Solution, SolverError, Status

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_SOLVER = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------
# helpers


def _load(args) -> tuple[ParkInstance, AccessConfig]:
    config = Path(args.config) if args.config else Path(args.instance_dir) / "config.json"
    args.config_path = config
    try:
        inst, cfg = load_instance(args.instance_dir, config)
    except (FileNotFoundError, OSError) as exc:
        raise CliError(str(exc), EXIT_IO) from None
    except InstanceError as exc:
        raise CliError("\n".join(exc.problems), EXIT_VALIDATION) from None
    if getattr(args, "budget", None) is not None:
        inst = inst.with_budget(args.budget)
    if getattr(args, "objective", None):
        cfg = replace(cfg, objective_kind=ObjectiveKind(args.objective))
    if getattr(args, "capacitated", None) is not None:
        cfg = replace(cfg, capacitated=args.capacitated)
    return inst, cfg


def _solver(args):
    backend = args.backend
    if backend == "enumerate":
        return EnumerationSolver(SolveLimits(time_limit=args.time_limit), jobs=args.jobs)
    if backend.startswith("external:"):
        template = backend[len("external:"):]
        if "{mps}" not in template or "{sol}" not in template:
            raise CliError("external backend template needs {mps} and {sol} placeholders", EXIT_IO)
        return ExternalSolver(template)
    raise CliError(f"unknown backend {backend!r}; use 'enumerate' or 'external:<template>'", EXIT_IO)


def _call_solver(solver, inst, cfg) -> Solution:
    try:
        sol = solver(inst, cfg)
    except SolverError as exc:
        raise CliError(f"solver error: {exc}", EXIT_SOLVER) from None
    if not sol.is_optimal:
        raise CliError(f"solver status {sol.status.value}: {sol.message}", EXIT_SOLVER)
    return sol


def _out_dir(path: str) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {out}: {exc}", EXIT_IO) from None
    return out


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _write_json(path: Path, data) -> None:
    _write_text(path, json.dumps(data, indent=2) + "\n")


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _manifest(args, out: Path, provenance: str | None, extra: dict | None = None) -> None:
    config = Path(args.config_path)
    digest = hashlib.sha256(config.read_bytes()).hexdigest() if config.is_file() else None
    data = {
        "command": args.command,
        "argv": list(args.argv),
        "inputs": {"instance_dir": str(args.instance_dir), "config": str(config)},
        "config_sha256": digest,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "provenance": provenance,
    }
    if extra:
        data.update(extra)
    _write_json(out / "manifest.json", data)


def solution_to_dict(inst: ParkInstance, cfg: AccessConfig, sol: Solution) -> dict:
    return {
        "status": sol.status.value,
        "provenance": sol.provenance.value,
        "objective_kind": cfg.objective_kind.value,
        "capacitated": cfg.capacitated,
        "budget": inst.budget,
        "max_distance": inst.max_distance,
        "objective": sol.objective,
        "alpha_max": sol.alpha_max,
        "alpha": dict(sol.alpha),
        "opened": list(sol.opened),
        "purchased": [k for k in sol.opened if not inst.parks[inst.park_index(k)].existing],
        "assignment": dict(sol.assignment),
    }


def report_rows(report: DeviationReport) -> list[tuple]:
    rows: list[tuple] = []
    for r, cats in report.by_group_category.items():
        for c in CATEGORIES:
            rows.append(("alpha", r, c, cats[c]))
        rows.append(("alpha", r, "total", report.alpha[r]))
    for c in CATEGORIES:
        rows.append(("weighted_total", "all", c, report.by_category[c]))
    rows.append(("weighted_total", "all", "total", report.total))
    rows.append(("alpha_max", "all", "total", report.alpha_max))
    for c, pct in report.composition().items():
        rows.append(("composition_pct", "all", c, pct))
    for r, share in report.group_shares().items():
        rows.append(("group_share", r, "total", share))
    for loc, dev in report.distance_deviation.items():
        rows.append(("distance_deviation", loc, "distance", dev))
    rows.append(("avg_distance_deviation", "all", "distance", report.avg_distance_deviation))
    rows.append(("max_distance_deviation", "all", "distance", report.max_distance_deviation))
    if report.overcrowding is not None:
        for loc, over in report.overcrowding.items():
            rows.append(("overcrowding", loc, "capacity", over))
        rows.append(("avg_overcrowding", "all", "capacity", report.avg_overcrowding))
        rows.append(("max_overcrowding", "all", "capacity", report.max_overcrowding))
    for park, load in report.park_load.items():
        rows.append(("park_load", park, "capacity", load))
    return rows


def geojson(inst: ParkInstance, sol: Solution) -> dict | None:
    """FeatureCollection of parks with coordinates, or ``None`` if none have any."""
    features = []
    served = {p.id: 0.0 for p in inst.parks}
    for loc in inst.locations:
        served[sol.assignment[loc.id]] += loc.total_population
    opened = set(sol.opened)
    for p in inst.parks:
        if not p.has_coordinates:
            continue
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [p.lon, p.lat]},
            "properties": {
                "id": p.id,
                "existing": p.existing,
                "selected": p.id in opened,
                "assigned_population": served[p.id],
            },
        })
    if not features:
        return None
    return {"type": "FeatureCollection", "features": features}


SERIES_STATS = ("objective", "alpha_max", "weighted_total")


def _series_header(inst: ParkInstance, lead: Sequence[str]) -> list[str]:
    return [
        *lead, *SERIES_STATS,
        *(f"weighted_{c}" for c in CATEGORIES),
        *(f"alpha_{r}" for r in inst.races),
        "avg_distance_deviation", "max_distance_deviation", "avg_overcrowding", "max_overcrowding",
        "opened",
    ]


def _series_values(sol: Solution, rep: DeviationReport) -> list:
    def blank(x):
        return "" if x is None else x

    return [
        sol.objective, rep.alpha_max, rep.total,
        *(rep.by_category[c] for c in CATEGORIES),
        *rep.alpha.values(),
        rep.avg_distance_deviation, rep.max_distance_deviation,
        blank(rep.avg_overcrowding), blank(rep.max_overcrowding),
        ";".join(sol.opened),
    ]


def _write_run(runs: Path, stem: str, inst: ParkInstance, cfg: AccessConfig, sol: Solution) -> None:
    runs.mkdir(exist_ok=True)
    _write_json(runs / f"{stem}.json", solution_to_dict(inst, cfg, sol))


def _partial(out: Path, message: str) -> None:
    _write_text(out / "PARTIAL", message + "\n")


def _clear_partial(out: Path) -> None:
    marker = out / "PARTIAL"
    if marker.exists():
        marker.unlink()


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    try:
        _load(args)
    except CliError as exc:
        if exc.code != EXIT_VALIDATION:
            raise
        for line in str(exc).splitlines():
            print(line)
        return EXIT_VALIDATION
    print("ok: no violations")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst, cfg = _load(args)
    solver = _solver(args)
    out = _out_dir(args.out)
    sol = _call_solver(solver, inst, cfg)
    report = summarize(inst, cfg, sol)
    _write_json(out / "solution.json", solution_to_dict(inst, cfg, sol))
    _write_csv(out / "report.csv", ["quantity", "subject", "category", "value"], report_rows(report))
    gj = geojson(inst, sol)
    if gj is not None:
        _write_json(out / "selected_parks.geojson", gj)
    _manifest(args, out, sol.provenance.value)
    print(f"objective {sol.objective!r} ({sol.provenance.value}); opened {', '.join(sol.opened)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    inst, cfg = _load(args)
    solver = _solver(args)
    out = _out_dir(args.out)
    budgets = args.budgets if args.budgets else list(DEFAULT_BUDGETS)
    try:
        series = budget_sweep(inst, cfg, budgets, _checked(solver))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    rows = []
    for i, pt in enumerate(series.points):
        rows.append([pt.budget, pt.solution.status.value, *_series_values(pt.solution, pt.report)])
        _write_run(out / "runs", f"budget_{i:03d}", inst.with_budget(pt.budget), cfg, pt.solution)
    _write_csv(out / "series.csv", _series_header(inst, ["budget", "status"]), rows)
    provenance = series.points[0].solution.provenance.value if series.points else None
    _manifest(args, out, provenance, {"complete": series.complete, "budgets": budgets})
    if not series.complete:
        msg = f"sweep stopped after {len(series.points)} of {len(budgets)} budgets: {series.failure.message}"
        _partial(out, msg)
        raise CliError(msg, EXIT_SOLVER)
    _clear_partial(out)
    print(f"{len(rows)} budgets solved")
    return EXIT_OK


class _StrictSolver:
    """Wraps a solver so external-solver errors become failed solutions."""

    def __init__(self, solver):
        self.solver = solver

    def __call__(self, inst, cfg):
        try:
            return self.solver(inst, cfg)
        except SolverError as exc:
            return Solution.failed(Status.LIMIT_EXCEEDED, Provenance.EXTERNAL, str(exc))


def _checked(solver):
    return _StrictSolver(solver)


def _analysis_failed(out: Path, exc: AnalysisError) -> CliError:
    msg = str(exc)
    _partial(out, msg)
    return CliError(msg, EXIT_SOLVER)


def cmd_horizon(args) -> int:
    inst, cfg = _load(args)
    solver = _checked(_solver(args))
    out = _out_dir(args.out)
    total = args.total_budget if args.total_budget is not None else inst.budget
    modes = [PlanMode.LONG_TERM, PlanMode.MYOPIC] if args.mode == "both" else [PlanMode(args.mode)]
    rows, purchases, finals = [], [], {}
    for mode in modes:
        try:
            plan = plan_horizon(inst, cfg, total, args.periods, mode, solver)
        except AnalysisError as exc:
            raise _analysis_failed(out, exc) from None
        for rec in plan.periods:
            rows.append([mode.value, rec.period, rec.budget, rec.spent, rec.carryover, ";".join(rec.purchased),
                         *_series_values(rec.solution, rec.report)])
            purchases.extend([mode.value, rec.period, k] for k in rec.purchased)
        finals[mode.value] = plan.final.objective
        _write_run(out / "runs", f"final_{mode.value}", inst.with_budget(total), cfg, plan.final)
    header = _series_header(inst, ["mode", "period", "budget", "spent", "carryover", "purchased"])
    _write_csv(out / "series.csv", header, rows)
    _write_csv(out / "purchases.csv", ["mode", "period", "park_id"], purchases)
    _manifest(args, out, None, {"total_budget": total, "periods": args.periods, "final_objective": finals})
    _clear_partial(out)
    for mode, obj in finals.items():
        print(f"{mode}: final objective {obj!r}")
    return EXIT_OK


def cmd_emphasize(args) -> int:
    inst, cfg = _load(args)
    solver = _checked(_solver(args))
    out = _out_dir(args.out)
    grid = args.grid if args.grid else list(DEFAULT_EMPHASIS_GRID)
    try:
        result = calibrate_emphasis(inst, cfg, args.group, grid, solver)
    except AnalysisError as exc:
        raise _analysis_failed(out, exc) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    rows = []
    base_cfg = replace(cfg, emphasis={r: 1.0 for r in inst.races}, default_emphasis=1.0)
    rep = summarize(inst, base_cfg, result.baseline)
    rows.append(["baseline", 1.0, "", *_series_values(result.baseline, rep)])
    _write_run(out / "runs", "baseline", inst, base_cfg, result.baseline)
    for i, (g, sol) in enumerate(zip(result.grid, result.solutions)):
        run_cfg = replace(base_cfg, emphasis={**base_cfg.emphasis, args.group: g})
        changed = set(sol.opened) != set(result.baseline.opened)
        rows.append(["grid", g, int(changed), *_series_values(sol, summarize(inst, run_cfg, sol))])
        _write_run(out / "runs", f"weight_{i:03d}", inst, run_cfg, sol)
    _write_csv(out / "series.csv", _series_header(inst, ["run", "weight", "changed"]), rows)
    _manifest(args, out, None, {"group": args.group, "grid": list(result.grid), "threshold": result.threshold})
    _clear_partial(out)
    print(f"threshold for {args.group}: {result.threshold if result.threshold is not None else 'none'}")
    return EXIT_OK


def cmd_thresholds(args) -> int:
    inst, cfg = _load(args)
    solver = _checked(_solver(args))
    out = _out_dir(args.out)
    m_values = args.m if args.m else list(DEFAULT_THRESHOLDS)
    try:
        points = threshold_sensitivity(inst, cfg, m_values, solver)
    except AnalysisError as exc:
        raise _analysis_failed(out, exc) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    rows = []
    for i, pt in enumerate(points):
        overlap = "" if pt.overlap_with_previous is None else pt.overlap_with_previous
        rows.append([pt.max_distance, overlap, *_series_values(pt.solution, pt.report)])
        _write_run(out / "runs", f"threshold_{i:03d}", inst.with_max_distance(pt.max_distance), cfg, pt.solution)
    _write_csv(out / "series.csv", _series_header(inst, ["max_distance", "overlap_with_previous"]), rows)
    _manifest(args, out, None, {"m_values": m_values})
    _clear_partial(out)
    print(f"{len(rows)} thresholds solved")
    return EXIT_OK


def cmd_export_mps(args) -> int:
    inst, cfg = _load(args)
    model = build_model(inst, cfg)
    path = Path(args.out)
    try:
        write_mps(model, path)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None
    print(f"wrote {path}: {model.n_binary} integer columns, {model.n_continuous} continuous columns, "
          f"{len(model.constraints)} rows")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, problem_flags: bool = True) -> None:
    p.add_argument("instance_dir", help="directory holding parks.csv, locations.csv, population.csv, distances.csv")
    p.add_argument("--config", help="configuration JSON (default: <instance_dir>/config.json)")
    if problem_flags:
        p.add_argument("--objective", choices=[k.value for k in ObjectiveKind])
        p.add_argument("--capacitated", action=argparse.BooleanOptionalAction, default=None)


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", default="enumerate", help="'enumerate' or 'external:<command with {mps} and {sol}>'")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--time-limit", type=float, default=60.0, help="seconds per enumeration solve")
    p.add_argument("--out", default="out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parkequity", description="Equity-aware park location planning.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an instance directory")
    _add_common(p, problem_flags=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="solve one instance")
    _add_common(p)
    p.add_argument("--budget", type=float)
    _add_solver(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve over a budget grid")
    _add_common(p)
    p.add_argument("--budgets", type=float, nargs="+", help="default: 0 to 3,000,000 in steps of 250,000")
    _add_solver(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("horizon", help="compare long-term and myopic planning")
    _add_common(p)
    p.add_argument("--total-budget", type=float, help="default: the config budget")
    p.add_argument("--periods", type=int, default=10)
    p.add_argument("--mode", choices=["both", PlanMode.LONG_TERM.value, PlanMode.MYOPIC.value], default="both")
    _add_solver(p)
    p.set_defaults(func=cmd_horizon)

    p = sub.add_parser("emphasize", help="calibrate the emphasis on one group")
    _add_common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--grid", type=float, nargs="+", help="default: 0 to 50 in steps of 5")
    p.add_argument("--budget", type=float)
    _add_solver(p)
    p.set_defaults(func=cmd_emphasize)

    p = sub.add_parser("thresholds", help="solve over distance thresholds")
    _add_common(p)
    p.add_argument("--m", type=float, nargs="+", help="default: 0.5 1.0 1.5 miles")
    p.add_argument("--budget", type=float)
    _add_solver(p)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("export-mps", help="write the model in MPS format")
    _add_common(p)
    p.add_argument("--budget", type=float)
    p.add_argument("--out", default="model.mps", help="output MPS path")
    p.set_defaults(func=cmd_export_mps)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_IO
    args.argv = argv
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
