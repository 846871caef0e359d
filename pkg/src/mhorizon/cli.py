"""Command-line driver: validate, build, solve, report and study a case.

    mhorizon validate 3node
    mhorizon build northsea-mini --no-russian-gas --mps model.mps
    mhorizon solve 3node --gas costly --out runs/3node
    mhorizon report 3node runs/3node/solution.json --out runs/3node/report
    mhorizon study northsea-mini --out runs/study

Exit codes: 0 success, 1 validation / input error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .builder import BuiltModel, build_model
from .case_io import CaseData, apply_scenario_flags, expand_deterministic_equivalent, load_case
from .errors import (IoFailure, MhorizonError, NonOptimalSolution, SolverError,
                     UnknownSubcommand, ValidationError)
from .lp import SimplexOptions, Solution, check_solution, export_mps, solve_simplex
from .report import electrolysis_share, emit_plots, emit_tables, extract_reports

PERMUTATIONS = (
    (True, "affordable"),
    (True, "costly"),
    (False, "affordable"),
    (False, "costly"),
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors to exit code 1
        raise UnknownSubcommand(message)


def _write(path: Path, data: bytes | str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data.encode("utf-8") if isinstance(data, str) else data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def run_label(russian_gas: bool, gas_cost: str) -> str:
    return f"{'russian' if russian_gas else 'no-russian'}-{gas_cost}"


@dataclass
class RunResult:
    case: CaseData
    model: BuiltModel
    solution: Solution
    out: Path | None


def _prepare(args) -> CaseData:
    case = load_case(args.case)
    return apply_scenario_flags(case, russian_gas=not args.no_russian_gas, gas_cost=args.gas)


def _manifest(case: CaseData, model: BuiltModel, sol: Solution, opts: SimplexOptions) -> str:
    doc = {
        "package": "mhorizon",
        "version": __version__,
        "case": case.name,
        "flags": {"russian_gas": case.settings.russian_gas, "gas_cost": case.settings.gas_cost},
        "options": {"max_iters": opts.max_iters, "tol": opts.tol},
        "inputs": dict(sorted(case.file_hashes.items())),
        "lp": {"rows": model.lp.n_rows, "columns": model.lp.n_cols, "nonzeros": int(len(model.lp.vals))},
        "status": sol.status,
        "objective": float(sol.objective) if np.isfinite(sol.objective) else None,
        "iterations": sol.iterations,
    }
    return json.dumps(doc, indent=1) + "\n"


def solve_case(case: CaseData, opts: SimplexOptions, out: Path | None = None,
               mps: Path | None = None) -> RunResult:
    """Build, solve and (when ``out`` is given) write solution, residuals and reports."""
    model = build_model(case)
    if mps is not None:
        _write(mps, export_mps(model.lp))
    sol = solve_simplex(model.lp, opts)
    if out is not None:
        _write(out / "solution.json", sol.to_json(model.lp))
        _write(out / "run_manifest.json", _manifest(case, model, sol, opts))
        if sol.optimal:
            rep = check_solution(model.lp, sol)
            _write(out / "residuals.txt", rep.format())
            bundle = extract_reports(model, sol)
            emit_tables(bundle, out / "report")
            emit_plots(bundle, out / "report")
    return RunResult(case, model, sol, out)


def load_solution(path: Path, model: BuiltModel) -> Solution:
    """Read a ``solution.json`` written by ``solve`` back against ``model``."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise IoFailure(f"cannot read solution {path}: {exc}") from exc
    lp = model.lp
    primal, duals = doc.get("primal", {}), doc.get("duals", {})
    missing = [c for c in lp.col_names if c not in primal]
    if missing or len(primal) != lp.n_cols:
        raise ValidationError(f"solution {path} does not match the model "
                              f"({len(missing)} columns missing, {len(primal)} given)")
    x = np.array([primal[c] if primal[c] is not None else np.nan for c in lp.col_names], dtype=float)
    y = np.array([duals.get(r) or 0.0 for r in lp.row_names], dtype=float)
    d = lp.objective - lp.matrix("csr").T @ y
    return Solution(doc.get("status", "unknown"), x, y, d, float(lp.objective @ x),
                    doc.get("iterations", 0))


# -- subcommands --------------------------------------------------------------------------

def cmd_validate(args) -> int:
    case = load_case(args.case)
    ts = case.time
    print(f"case {case.name}: {len(case.nodes)} nodes, {len(ts.scenarios)} scenarios, "
          f"{len(ts.periods)} periods, {len(case.catalog.assets)} assets, "
          f"{len(case.catalog.arcs)} arcs")
    print(expand_deterministic_equivalent(case).format(), end="")
    print("ok")
    return 0


def cmd_build(args) -> int:
    case = _prepare(args)
    model = build_model(case)
    counts = model.registry.counts()
    print(f"built {case.name}: {model.lp.n_rows} rows, {model.lp.n_cols} columns, "
          f"{len(model.lp.vals)} nonzeros")
    for k in sorted(counts):
        print(f"  {k:<6} {counts[k]}")
    if args.mps:
        _write(Path(args.mps), export_mps(model.lp))
        print(f"wrote {args.mps}")
    if args.out:
        _write(Path(args.out) / "rows.txt", model.audit())
    return 0


def _opts(args) -> SimplexOptions:
    return SimplexOptions(max_iters=args.max_iters, tol=args.tol)


def cmd_solve(args) -> int:
    case = _prepare(args)
    out = Path(args.out) if args.out else None
    res = solve_case(case, _opts(args), out, Path(args.mps) if args.mps else None)
    sol = res.solution
    print(f"status {sol.status} after {sol.iterations} iterations")
    if not sol.optimal:
        print(f"error: LP is {sol.status}", file=sys.stderr)
        return 2
    print(f"objective {sol.objective!r}")
    print(check_solution(res.model.lp, sol).format(), end="")
    return 0


def cmd_report(args) -> int:
    sol_path = Path(args.solution)
    russian, gas = not args.no_russian_gas, args.gas
    manifest = sol_path.parent / "run_manifest.json"
    if manifest.exists() and not args.ignore_manifest:
        flags = json.loads(manifest.read_text(encoding="utf-8"))["flags"]
        russian, gas = flags["russian_gas"], flags["gas_cost"]
    case = apply_scenario_flags(load_case(args.case), russian_gas=russian, gas_cost=gas)
    model = build_model(case)
    sol = load_solution(sol_path, model)
    if not sol.optimal:
        raise NonOptimalSolution(f"solution {sol_path} has status {sol.status}")
    out = Path(args.out) if args.out else sol_path.parent / "report"
    bundle = extract_reports(model, sol)
    emit_tables(bundle, out)
    emit_plots(bundle, out)
    print(f"wrote report to {out}")
    return 0


def cmd_study(args) -> int:
    base = load_case(args.case)
    out = Path(args.out) if args.out else None
    rows = []
    results = {}
    for russian, gas in PERMUTATIONS:
        label = run_label(russian, gas)
        case = apply_scenario_flags(base, russian_gas=russian, gas_cost=gas)
        res = solve_case(case, _opts(args), out / label if out else None)
        res.solution.raise_for_status()
        results[(russian, gas)] = res
        share = electrolysis_share(res.model, res.solution.x)
        rows.append((label, russian, gas, res.solution.objective, share, res.solution.iterations))
        print(f"{label:<22} objective {res.solution.objective:.6e}  "
              f"electrolysis share {share:.4f}")
    obj = {k: r.solution.objective for k, r in results.items()}
    checks = []
    for gas in ("affordable", "costly"):
        checks.append((f"no-russian >= russian ({gas})", obj[(False, gas)] >= obj[(True, gas)]))
    for russian in (True, False):
        checks.append((f"costly >= affordable ({'russian' if russian else 'no-russian'})",
                       obj[(russian, "costly")] >= obj[(russian, "affordable")]))
    for name, ok in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    if out is not None:
        lines = ["run,russian_gas,gas_cost,objective,electrolysis_share_final,iterations"]
        lines += [f"{l},{str(r).lower()},{g},{o!r},{s!r},{it}" for l, r, g, o, s, it in rows]
        _write(out / "comparison.csv", "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mhorizon", description="Multi-horizon capacity expansion desk model.")
    p.add_argument("--version", action="version", version=f"mhorizon {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def case_arg(sp):
        sp.add_argument("case", nargs="?", default=None,
                        help="case directory or bundled case name (default: $MHORIZON_CASE_DIR)")

    def flags(sp):
        sp.add_argument("--no-russian-gas", action="store_true", help="remove Russian supply")
        sp.add_argument("--gas", choices=("affordable", "costly"), default="affordable",
                        help="gas price track (default affordable)")

    def solver(sp):
        sp.add_argument("--max-iters", type=int, default=SimplexOptions.max_iters)
        sp.add_argument("--tol", type=float, default=SimplexOptions.tol)

    sp = sub.add_parser("validate", help="load a case and report its dimensions")
    case_arg(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("build", help="assemble the LP, optionally export MPS")
    case_arg(sp)
    flags(sp)
    sp.add_argument("--mps", help="write the LP in MPS format to this path")
    sp.add_argument("--out", help="directory for the row audit listing")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("solve", help="assemble and solve, print residual report")
    case_arg(sp)
    flags(sp)
    solver(sp)
    sp.add_argument("--mps", help="also export the LP in MPS format")
    sp.add_argument("--out", help="directory for solution.json, residuals and reports")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("report", help="emit tables and plots for a saved solution")
    sp.add_argument("case")
    sp.add_argument("solution", help="solution.json written by 'solve'")
    flags(sp)
    sp.add_argument("--ignore-manifest", action="store_true",
                    help="use the command-line flags even if a run manifest is present")
    sp.add_argument("--out", help="report directory (default: next to the solution)")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("study", help="solve the four gas-flag permutations and compare")
    case_arg(sp)
    solver(sp)
    sp.add_argument("--out", help="directory for one sub-directory per permutation")
    sp.set_defaults(func=cmd_study)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UnknownSubcommand("a subcommand is required "
                                    "(validate, build, solve, report, study)")
        return args.func(args)
    except SolverError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except MhorizonError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
