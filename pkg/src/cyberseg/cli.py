"""Command-line front door: generate, score, solve, export and validate models.

Every subcommand writes one JSON document to stdout (machine-readable) and
a short human summary to stderr.  Exit codes: 0 success, 1 usage error,
2 data error, 3 solver finished without proving optimality (timeout).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

from .exact import ObjectiveMode, SolveConfig, SolveStatus, solve_direct, solve_oracle
from .greedy import GreedyConfig, solve_greedy
from .ilp import IlpMode, build_model, emit_lp, parse_assignment, validate_assignment
from .instances import (
    Instance,
    ParseError,
    Rounding,
    generate_full_ary_tree,
    instance_to_json_dict,
    load_instance,
    load_karate,
    parse_instance_text,
    sample_attacked,
)
from .wire import chosen_labels, solution_to_dict, whatif_to_dict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_TIMEOUT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so we control exit codes."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cyberseg", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add_instance_flags(p: _Parser) -> None:
        p.add_argument("--instance", metavar="PATH", help="instance file, or 'karate' for the bundled network")
        p.add_argument("--stdin", action="store_true", help="read the instance from standard input")

    gen = sub.add_parser("gen", help="generate an instance", add_help=True)
    gen.add_argument("--tree", type=int, metavar="N", help="full tree with N devices")
    gen.add_argument("--branching", type=int, default=5, metavar="R", help="tree branching factor (default 5)")
    gen.add_argument("--karate", action="store_true", help="use the bundled karate-club network")
    gen.add_argument("--p", type=float, default=0.0, help="attacked-device fraction")
    gen.add_argument("--seed", type=int, default=0, help="attack sampling seed")
    gen.add_argument("--rounding", choices=[r.value for r in Rounding], default="half_even")
    gen.add_argument("--k", type=int, default=None, help="embed an isolation budget")
    gen.add_argument("--out", metavar="PATH", help="write the instance here instead of stdout")

    scorecmd = sub.add_parser("score", help="score an instance, optionally after a manual cut")
    add_instance_flags(scorecmd)
    scorecmd.add_argument("--isolate", default="", metavar="IDS", help="comma-separated device ids to cut first")

    solve = sub.add_parser("solve", help="compute an isolation set")
    add_instance_flags(solve)
    solve.add_argument("--k", type=int, default=None, help="isolation budget (default: instance budget)")
    solve.add_argument("--algo", choices=["direct", "greedy", "oracle"], default="direct")
    solve.add_argument("--x", type=int, default=3, help="greedy chunk size (default 3)")
    solve.add_argument("--mode", choices=[m.value for m in ObjectiveMode], default="snpv")
    solve.add_argument("--no-filter", action="store_true", help="disable the degree-one exclusion")
    solve.add_argument("--timeout", type=float, default=600.0, metavar="SECONDS")
    solve.add_argument("--jobs", type=int, default=None, help="worker processes (env CYBERSEG_JOBS)")
    solve.add_argument("--out", metavar="PATH", help="write the result JSON here as well")

    export = sub.add_parser("export-ilp", help="emit the integer program in LP format")
    add_instance_flags(export)
    export.add_argument("--k", type=int, default=None)
    export.add_argument("--mode", choices=[m.value for m in IlpMode], default="lexicographic")
    export.add_argument("--out", metavar="PATH", help="write the LP file here (stdout gets a JSON summary)")

    validate = sub.add_parser("validate-ilp", help="check an external solver assignment")
    add_instance_flags(validate)
    validate.add_argument("--k", type=int, default=None)
    validate.add_argument("--mode", choices=[m.value for m in IlpMode], default="lexicographic")
    validate.add_argument("--assignment", required=True, metavar="PATH", help="'name value' per line")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data-dir", default=None, help="instance storage (env CYBERSEG_DATA_DIR)")

    return parser


def _read_instance(args: argparse.Namespace) -> Instance:
    if getattr(args, "stdin", False):
        return parse_instance_text(sys.stdin.read())
    path = getattr(args, "instance", None)
    if path is None:
        raise UsageError("an instance is required: pass --instance PATH or --stdin")
    if path == "karate":
        from .graph import AttackSet

        return Instance(load_karate(), AttackSet())
    return load_instance(path)


def _resolve_budget(args: argparse.Namespace, inst: Instance) -> int:
    if args.k is not None:
        return args.k
    if inst.budget is not None:
        return inst.budget
    raise UsageError("no budget: pass --k or embed 'budget' in the instance")


def _parse_isolate(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"--isolate expects integer ids, got {text!r}") from None


def _emit(doc: dict, summary: str, out: Optional[str] = None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, "utf-8")
    print(summary, file=sys.stderr)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.karate and args.tree is not None:
        raise UsageError("--karate and --tree are mutually exclusive")
    if args.karate:
        g = load_karate()
    elif args.tree is not None:
        g = generate_full_ary_tree(args.tree, args.branching)
    else:
        raise UsageError("pick a topology: --tree N or --karate")
    attacked = sample_attacked(g, args.p, args.seed, Rounding(args.rounding))
    inst = Instance(g, attacked, args.k)
    doc = instance_to_json_dict(inst)
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)
    print(
        f"generated instance: {g.device_count} devices, {g.connection_count} connections, "
        f"{len(attacked.attacked)} attacked",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_score(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    doc = whatif_to_dict(inst, _parse_isolate(args.isolate))
    report = doc["report"]
    _emit(doc, f"vulnerability={report['vulnerability']} healthiness={report['healthiness']} phi={report['phi']}")
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    k = _resolve_budget(args, inst)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("CYBERSEG_JOBS", "1"))
    config = SolveConfig(
        budget_k=k,
        objective_mode=ObjectiveMode(args.mode),
        use_degree_one_filter=not args.no_filter,
        timeout_seconds=args.timeout,
        parallelism=max(1, jobs),
    )
    if args.algo == "direct":
        solution = solve_direct(inst.graph, inst.attacked, config)
    elif args.algo == "greedy":
        solution = solve_greedy(
            inst.graph, inst.attacked, GreedyConfig(budget_k=k, chunk_x=args.x, inner=replace(config, budget_k=0))
        )
    else:
        solution = solve_oracle(inst.graph, inst.attacked, k, ObjectiveMode(args.mode))

    doc = solution_to_dict(solution)
    doc["algo"] = args.algo
    doc["mode"] = args.mode
    doc["k"] = k
    labels = chosen_labels(inst.graph, solution.chosen)
    if labels is not None:
        doc["chosen_labels"] = labels
    report = solution.report
    _emit(
        doc,
        f"{args.algo}: chose {sorted(solution.chosen)} "
        f"vulnerability={report.vulnerability} healthiness={report.healthiness} ({solution.status.value})",
        args.out,
    )
    return EXIT_OK if solution.status is SolveStatus.OPTIMAL else EXIT_TIMEOUT


def _cmd_export_ilp(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    k = _resolve_budget(args, inst)
    model = build_model(inst.graph, inst.attacked, k, IlpMode(args.mode))
    text = emit_lp(model)
    summary = {
        "variables": len(model.node_vars) + len(model.pair_vars),
        "constraints": len(model.constraints),
        "mode": model.mode.value,
        "k": k,
    }
    if args.out:
        Path(args.out).write_text(text, "utf-8")
        summary["out"] = args.out
        _emit(summary, f"wrote {summary['constraints']} rows to {args.out}")
    else:
        sys.stdout.write(text)
        print(f"emitted {summary['constraints']} rows", file=sys.stderr)
    return EXIT_OK


def _cmd_validate_ilp(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    k = _resolve_budget(args, inst)
    model = build_model(inst.graph, inst.attacked, k, IlpMode(args.mode))
    try:
        asg = parse_assignment(Path(args.assignment).read_text("utf-8"))
        report = validate_assignment(model, asg, inst.graph, inst.attacked)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    doc = {
        "violated_constraints": [
            {"row": v.row, "lhs": v.lhs, "sense": v.sense, "rhs": v.rhs}
            for v in report.violated_constraints
        ],
        "implied_cut": sorted(report.implied_cut),
        "recomputed": {
            "vulnerability": report.recomputed.vulnerability,
            "healthiness": report.recomputed.healthiness,
            "phi": report.recomputed.phi,
            "multiplier_base": report.recomputed.multiplier_base,
        },
        "objective_value": report.objective_value,
        "objective_gap": report.objective_gap,
        "certified": report.certified,
    }
    verdict = "certified" if report.certified else "NOT certified"
    _emit(doc, f"{verdict}: {len(report.violated_constraints)} violations, gap {report.objective_gap}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    data_dir = args.data_dir or os.environ.get("CYBERSEG_DATA_DIR") or "./cyberseg-data"
    app = create_app(data_dir)
    print(f"serving on {args.host}:{args.port} (data: {data_dir})", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "score": _cmd_score,
    "solve": _cmd_solve,
    "export-ilp": _cmd_export_ilp,
    "validate-ilp": _cmd_validate_ilp,
    "serve": _cmd_serve,
}


def run(argv: Optional[list[str]] = None) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (gen, score, solve, export-ilp, validate-ilp, serve)")
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "detail": str(exc)}), file=sys.stdout)
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, OSError, ValueError) as exc:
        print(json.dumps({"error": "data", "detail": str(exc)}), file=sys.stdout)
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
