"""File reports over runs, density simulations and solver output.

All emitters return text with a stable column order, so identical inputs give
byte-identical files; the CLI writes them under a target directory (flag or
the ENUMCOMPRESS_REPORT_DIR environment variable).
"""

from __future__ import annotations

import csv
import io
import json

from .table import TableView, blocks_of_row, label_blocks
from .traces import JointRun


def blocks_report(run: JointRun) -> str:
    """CSV of every closed block: row, left, right, load, label."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["row", "left", "right", "load", "label"])
    view = TableView.of(run)
    if run.is_exclusive():
        view = label_blocks(view)
    values = [v for _, v in run.a_trace.events] + [v for _, v in run.d_trace.events]
    for row in range(max(values, default=-1) + 1):
        for b in blocks_of_row(view, row):
            writer.writerow([b.row, b.left, b.right, b.load, b.label])
    return out.getvalue()


def density_curve(run: JointRun) -> str:
    """CSV of |D below n| against |A below n| / 2 at every interesting bound."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["n", "d_card", "a_card", "a_half"])
    a_sorted = sorted(v for _, v in run.a_trace.events)
    d_sorted = sorted(v for _, v in run.d_trace.events)
    bounds = sorted({v + 1 for v in a_sorted} | {v + 1 for v in d_sorted})
    from bisect import bisect_right

    for n in bounds:
        d_card = bisect_right(d_sorted, n - 1)
        a_card = bisect_right(a_sorted, n - 1)
        writer.writerow([n, d_card, a_card, a_card / 2])
    return out.getvalue()


def pq_history_report(histories: dict) -> str:
    """CSV of the p/q agreement histories: side, e, stage, value."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["side", "e", "stage", "value"])
    for side in ("p", "q"):
        for e in sorted(histories.get(side, {})):
            for stage, value in enumerate(histories[side][e]):
                writer.writerow([side, e, stage, value])
    return out.getvalue()


def targets_report(targets) -> str:
    """CSV of gainless target records: stage, n, m, enumerated."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["stage", "n", "m", "enumerated"])
    for t in targets:
        writer.writerow([t.stage, t.interval[0], t.interval[1], t.enumerated])
    return out.getvalue()


def checks_report(reports) -> str:
    """JSON array of check reports, ordered by name."""
    return json.dumps(
        [
            {
                "name": r.name,
                "passed": r.passed,
                "counterexample": r.counterexample,
                "metrics": r.metrics,
            }
            for r in sorted(reports, key=lambda r: r.name)
        ],
        indent=2,
    ) + "\n"


def solve_report(result) -> str:
    """JSON of a solver result with its certificate line."""
    return json.dumps(
        {
            "status": result.status,
            "depth": result.depth,
            "explored": result.explored,
            "line": [[list(r), reply] for r, reply in result.line],
        },
        indent=2,
    ) + "\n"


def density_run_report(d_trace, histories, log) -> str:
    """JSON report of one density construction run."""
    return json.dumps(
        {
            "note": "relative to supplied family",
            "d": {"length": d_trace.length, "events": [list(e) for e in d_trace.events]},
            "histories": {
                side: {str(e): h for e, h in sorted(histories[side].items())}
                for side in ("p", "q")
            },
            "log": log,
        },
        indent=2,
    ) + "\n"
