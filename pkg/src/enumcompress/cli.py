"""Command-line entry point.

Subcommands: compress, verify, table, game, density, report, serve.
Exit codes: 0 success, 1 check/assertion failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import game as game_mod
from .checks import ALL_CHECKS, GAINLESS_COVERING_C, run_checks
from .density import ScenarioError, load_scenario, run_construction
from .gainless import compress_gainless
from .report import (
    blocks_report,
    checks_report,
    density_curve,
    density_run_report,
    pq_history_report,
    solve_report,
    targets_report,
)
from .strong import compress_iterated, compress_strong
from .table import RENDER_CAP, TableView, blocks_csv, label_blocks, render_table
from .traces import (
    TraceError,
    normalize_trace,
    parse_trace,
    run_from_jsonl,
    run_to_jsonl,
)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_trace(path):
    return normalize_trace(parse_trace(_read_text(path).strip()))


def _cmd_compress(args):
    trace = _load_trace(args.infile)
    if args.algo == "strong":
        runs = compress_iterated(trace, args.iterate)
        if args.iterate == 1:
            Path(args.out).write_text(run_to_jsonl(runs[0]))
        else:
            stem = Path(args.out)
            for depth, run in enumerate(runs, start=1):
                target = stem.with_suffix(f".{depth}{stem.suffix}")
                target.write_text(run_to_jsonl(run))
                print(target)
        return 0
    run, targets = compress_gainless(trace)
    Path(args.out).write_text(run_to_jsonl(run))
    if args.targets:
        Path(args.targets).write_text(targets_report(targets))
    return 0


def _cmd_verify(args):
    run = run_from_jsonl(_read_text(args.run))
    names = args.checks.split(",") if args.checks else None
    try:
        reports = run_checks(run, names, c=args.c, f=args.f)
    except KeyError as exc:
        print(f"unknown check {exc}", file=sys.stderr)
        return 2
    for r in reports:
        status = "PASS" if r.passed else f"FAIL counterexample={r.counterexample}"
        print(f"{r.name}: {status}")
    if args.report:
        Path(args.report).write_text(checks_report(reports))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_table(args):
    run = run_from_jsonl(_read_text(args.run))
    horizon = args.horizon if args.horizon is not None else run.horizon
    view = TableView(run, horizon)
    if args.csv:
        if run.is_exclusive():
            view = label_blocks(view)
        print(blocks_csv(view), end="")
        return 0
    if horizon > RENDER_CAP:
        print(f"horizon {horizon} exceeds render cap {RENDER_CAP}; use --csv", file=sys.stderr)
        return 2
    print(render_table(view))
    return 0


def _game_config(args):
    return game_mod.GameConfig(
        k=args.k,
        variant=args.variant,
        max_rounds=args.rounds,
        universe_bound=getattr(args, "universe", None),
    )


def _cmd_game_solve(args):
    result = game_mod.solve(_game_config(args))
    print(solve_report(result), end="")
    return 0


def _format_state(state):
    lines = [f"p1: {sorted(state.p1_chosen)}  p2: {sorted(state.p2_chosen)}"]
    if state.pending_r:
        lines.append(f"pending R: {sorted(state.pending_r)}")
    lines.append(f"outcome: {state.outcome}  to move: {state.to_move}")
    return "\n".join(lines)


def _cmd_game_play(args):
    config = _game_config(args)
    sid = game_mod.new_session(config, human=args.human, policy=args.policy, seed=args.seed)
    print(f"session {sid}: {config.variant} game, k={config.k}, you are {args.human}")
    while True:
        state = game_mod.get_state(sid)
        print(_format_state(state))
        if state.outcome != game_mod.ONGOING:
            return 0
        prompt = (
            f"your move ({config.k} numbers, space-separated): "
            if state.to_move == game_mod.P1
            else "your reply (one even number): "
        )
        line = input(prompt).strip()
        if not line:
            continue
        try:
            numbers = [int(tok) for tok in line.split()]
            move = numbers if state.to_move == game_mod.P1 else numbers[0]
            game_mod.submit_move(sid, move)
        except (ValueError, game_mod.IllegalMove) as exc:
            print(f"rejected: {exc}")


def _cmd_game_replay(args):
    config = None
    state = None
    for line in _read_text(args.session).splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if config is None:
            config = game_mod.GameConfig(
                k=obj.get("k", 3),
                variant=obj.get("variant", game_mod.REDUCED),
                max_rounds=obj.get("max_rounds", 8),
            )
            state = game_mod.start_state()
            continue
        move = obj["numbers"] if obj["player"] == "p1" else obj["number"]
        try:
            state = game_mod.apply_move(state, config, move)
        except game_mod.IllegalMove as exc:
            print(f"illegal move at {obj}: {exc}", file=sys.stderr)
            return 1
        print(_format_state(state))
    return 0


def _cmd_density(args):
    try:
        state = load_scenario(args.config)
        d_trace, histories, log = run_construction(state)
    except ScenarioError as exc:
        for violation in exc.violations:
            print(violation, file=sys.stderr)
        return 1
    text = density_run_report(d_trace, histories, log)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    return 0


def _cmd_report(args):
    outdir = Path(args.out or os.environ.get("ENUMCOMPRESS_REPORT_DIR", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if args.run:
        run = run_from_jsonl(_read_text(args.run))
        if args.format == "csv":
            for name, text in (
                ("blocks.csv", blocks_report(run)),
                ("density_curve.csv", density_curve(run)),
            ):
                (outdir / name).write_text(text)
                written.append(outdir / name)
        else:
            (outdir / "run.json").write_text(run_to_jsonl(run))
            written.append(outdir / "run.json")
    if args.density:
        payload = json.loads(_read_text(args.density))
        histories = {
            side: {int(e): h for e, h in payload["histories"][side].items()}
            for side in ("p", "q")
        }
        (outdir / "pq_history.csv").write_text(pq_history_report(histories))
        written.append(outdir / "pq_history.csv")
    if not written:
        print("nothing to report: pass --run and/or --density", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


def _cmd_serve(args):
    from .server import serve_forever

    serve_forever(args.port, args.static, args.session_log)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="enumcompress",
        description="compression of effective enumerations: compressors, "
        "verifiers, positional games and density simulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="run a compressor over a trace file")
    p.add_argument("--algo", choices=["strong", "gainless"], required=True)
    p.add_argument("--in", dest="infile", required=True, help="trace text file or -")
    p.add_argument("--out", required=True, help="output run JSONL")
    p.add_argument("--iterate", type=int, default=1, help="strong only: chain depth")
    p.add_argument("--targets", help="gainless only: write target records CSV")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("verify", help="run invariant checks over a run")
    p.add_argument("--run", required=True, help="run JSONL file or -")
    p.add_argument("--checks", help=f"comma list of {','.join(sorted(ALL_CHECKS))}")
    p.add_argument("--c", type=int, default=GAINLESS_COVERING_C)
    p.add_argument("--f", choices=["id", "half"], default="id")
    p.add_argument("--report", help="write JSON report here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", help="render the (A, D) table or its block CSV")
    p.add_argument("--run", required=True)
    p.add_argument("--horizon", type=int)
    p.add_argument("--csv", action="store_true", help="emit block records instead")
    p.set_defaults(func=_cmd_table)

    g = sub.add_parser("game", help="solve, play or replay the positional games")
    gsub = g.add_subparsers(dest="game_command", required=True)
    p = gsub.add_parser("solve")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--variant", choices=["even", "reduced"], default="reduced")
    p.add_argument("--universe", type=int, required=True)
    p.add_argument("--rounds", type=int, default=6)
    p.set_defaults(func=_cmd_game_solve)
    p = gsub.add_parser("play")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--variant", choices=["even", "reduced"], default="reduced")
    p.add_argument("--rounds", type=int, default=8)
    p.add_argument("--human", choices=["p1", "p2"], default="p2")
    p.add_argument("--policy", default="survival")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_game_play)
    p = gsub.add_parser("replay")
    p.add_argument("session", help="session JSONL file or -")
    p.set_defaults(func=_cmd_game_replay)

    d = sub.add_parser("density", help="run a density-construction scenario")
    dsub = d.add_subparsers(dest="density_command", required=True)
    p = dsub.add_parser("run")
    p.add_argument("--config", required=True, help="scenario JSON")
    p.add_argument("--out", help="write the JSON report here (default stdout)")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("report", help="emit CSV/JSON report files")
    p.add_argument("--run", help="run JSONL input")
    p.add_argument("--density", help="density run-report JSON input")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output directory (default $ENUMCOMPRESS_REPORT_DIR or .)")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="serve the game API and static UI")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--static", help="static asset directory")
    p.add_argument("--session-log", help="append-only JSONL session log")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TraceError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
