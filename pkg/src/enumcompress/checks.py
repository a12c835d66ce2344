"""Machine checks over a joint run.

Each checker is a pure function returning a CheckReport.  Uncomputable
conditional-complexity statements are replaced throughout by their checkable
covering form: more than c fresh source entries below n inside a stage window
force a fresh destination entry below f(n) in that window.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .table import TYPE1, TYPE2, TYPE3, TableView, label_blocks
from .traces import JointRun

GAINLESS_COVERING_C = 9  # bridged threshold: tail loads stay <= 8


def f_identity(n):
    return n


def f_half(n):
    return n // 2


def f_shift(d):
    def f(n):
        return n >> d

    f.__name__ = f"f_div_2pow{d}"
    return f


NAMED_F = {"id": f_identity, "half": f_half}


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    counterexample: tuple | None = None
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        assert (self.counterexample is not None) == (not self.passed)


def _stage_value_arrays(trace):
    if not trace.events:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    arr = np.asarray(trace.events, dtype=np.int64)
    return arr[:, 0], arr[:, 1]


def _covering_scan(src, dst, horizon, c, f):
    """Find (s, t, n) with > c src-entries below n in (s, t] but no dst-entry
    below f(n).  Returns (witness or None, max window count observed)."""
    s_stages, s_values = _stage_value_arrays(src)
    d_stages, d_values = _stage_value_arrays(dst)
    if s_stages.size == 0:
        return None, 0
    cap = int(s_values.max()) + 1
    candidates = set(int(v) + 1 for v in s_values if v < cap)
    candidates.add(cap)
    for d in d_values:
        # least n at which this dst value starts to count
        lo, hi = 0, cap
        if f(cap) <= int(d):
            continue
        while lo < hi:
            mid = (lo + hi) // 2
            if f(mid) >= int(d) + 1:
                hi = mid
            else:
                lo = mid + 1
        candidates.add(lo)
    max_window = 0
    for n in sorted(candidates):
        a_st = np.sort(s_stages[s_values < n])
        if a_st.size <= c:
            continue
        bound = f(n)
        d_st = np.sort(d_stages[d_values < bound])
        if d_st.size == 0:
            max_window = max(max_window, int(a_st.size))
            if a_st.size > c:
                return (0, int(a_st[c]), int(n)), max_window
            continue
        left = np.searchsorted(a_st, d_st, side="left")
        right = np.searchsorted(a_st, d_st, side="right")
        seg_counts = np.concatenate(
            ([left[0]], left[1:] - right[:-1], [a_st.size - right[-1]])
        )
        max_window = max(max_window, int(seg_counts.max()))
        bad = np.flatnonzero(seg_counts > c)
        if bad.size:
            i = int(bad[0])
            start = 0 if i == 0 else int(d_st[i - 1])
            lo_idx = 0 if i == 0 else int(right[i - 1])
            t = int(a_st[lo_idx + c])
            return (start, t, int(n)), max_window
    return None, max_window


def check_covering(run: JointRun, c: int, f=f_half) -> CheckReport:
    """More than c fresh A-entries below n in a window force a fresh D-entry
    below f(n) in that window."""
    if isinstance(f, str):
        f = NAMED_F[f]
    witness, max_window = _covering_scan(run.a_trace, run.d_trace, run.horizon, c, f)
    return CheckReport(
        "covering",
        witness is None,
        witness,
        {"c": c, "f": getattr(f, "__name__", str(f)), "max_uncovered_window": max_window},
    )


def check_gain(run: JointRun) -> CheckReport:
    """Two fresh D-entries below n in a window force a fresh A-entry below n:
    the covering check with roles swapped, c=1, f identity."""
    witness, max_window = _covering_scan(run.d_trace, run.a_trace, run.horizon, 1, f_identity)
    return CheckReport("gain", witness is None, witness, {"max_uncovered_window": max_window})


def check_density(run: JointRun) -> CheckReport:
    """|D below 2n| <= n for every n; the halving ratio |D below n| <= |A below n|/2
    is reported as a metric, not asserted."""
    d_sorted = sorted(v for _, v in run.d_trace.events)
    witness = None
    for i, v in enumerate(d_sorted):
        if i >= 1 and v < 2 * i:
            # i+1 values below 2i, so |D below 2i| > i
            witness = (None, None, i)
            break
    a_sorted = sorted(v for _, v in run.a_trace.events)
    max_slack = 0.0
    bounds = sorted({v + 1 for v in d_sorted} | {v + 1 for v in a_sorted})
    for n in bounds:
        d_card = bisect_right(d_sorted, n - 1)
        a_card = bisect_right(a_sorted, n - 1)
        max_slack = max(max_slack, d_card - a_card / 2)
    return CheckReport(
        "density",
        witness is None,
        witness,
        {"halving_ratio_slack": max_slack, "halving_ratio_holds": max_slack <= 0},
    )


def check_loads(run: JointRun, threshold: int = 8) -> CheckReport:
    """No row's tail load exceeds the threshold at any settled stage.

    A stage is settled unless the next stage is a D-stage (a clearing
    enumeration is still pending for it)."""
    d_stage_set = {t for t, _ in run.d_trace.events}
    a_by_stage = {}
    for t, v in run.a_trace.events:
        a_by_stage.setdefault(t, []).append(v)
    d_by_stage = {}
    for t, v in run.d_trace.events:
        d_by_stage.setdefault(t, []).append(v)
    loads = np.zeros(1, dtype=np.int64)
    max_row = -1
    witness = None
    max_load = 0
    for s in range(1, run.horizon + 1):
        for v in a_by_stage.get(s, ()):
            if v > max_row:
                prev = loads[max_row] if max_row >= 0 else 0
                if v >= len(loads):
                    new = np.zeros(max(2 * len(loads), v + 1), dtype=np.int64)
                    new[: len(loads)] = loads
                    loads = new
                loads[max_row + 1 : v + 1] = prev
                max_row = v
            loads[v : max_row + 1] += 1
        for v in d_by_stage.get(s, ()):
            loads[v : max_row + 1] = 0
        if max_row < 0:
            continue
        settled = (s + 1 not in d_stage_set) or s == run.horizon
        peak = int(loads[: max_row + 1].max())
        if settled:
            max_load = max(max_load, peak)
            if peak > threshold and witness is None:
                row = int(np.flatnonzero(loads[: max_row + 1] > threshold)[0])
                witness = (s, None, row)
    return CheckReport(
        "loads", witness is None, witness, {"max_settled_load": max_load, "threshold": threshold}
    )


def check_block_majority(run: JointRun) -> CheckReport:
    """Per row, at least as many 4-loaded closed blocks as other blocks;
    labels cross-checked: type-1/2 blocks 4-loaded, type-1 count >= type-3.

    Between consecutive D-values a row's block boundaries and labels are those
    of the D-value row below it and its loads only grow, so checking the rows
    that are D-values covers every row."""
    view = label_blocks(TableView.of(run))
    candidate_rows = sorted(run.d_trace.values)
    a_st, a_val = _stage_value_arrays(run.a_trace)
    order = np.argsort(a_val)
    a_st, a_val = a_st[order], a_val[order]
    witness = None
    total_blocks = 0
    rows_with_blocks = 0
    for row in candidate_rows:
        changes = view.d_change_stages(row)
        if len(changes) < 2:
            continue
        stages = np.sort(a_st[: np.searchsorted(a_val, row, side="right")])
        lefts = np.asarray(changes[:-1])
        rights = np.asarray(changes[1:])
        loads = np.searchsorted(stages, rights, side="left") - np.searchsorted(
            stages, lefts, side="right"
        )
        labels = [view.labels.get((row, int(l), int(r)), "") for l, r in zip(lefts, rights)]
        m1 = int(np.count_nonzero(loads >= 4))
        m0 = len(loads) - m1
        t1 = labels.count(TYPE1)
        t3 = labels.count(TYPE3)
        rows_with_blocks += 1
        total_blocks += len(loads)
        if witness is None:
            if m1 < m0 or t1 < t3:
                witness = (None, None, int(row))
            elif any(
                lab in (TYPE1, TYPE2) and load < 4 for lab, load in zip(labels, loads)
            ):
                witness = (None, None, int(row))
    return CheckReport(
        "blocks",
        witness is None,
        witness,
        {"rows_with_blocks": rows_with_blocks, "total_blocks": total_blocks},
    )


def check_subset(run: JointRun) -> CheckReport:
    """Every D-value also occurs in A."""
    a_values = run.a_trace.values
    stray = sorted(v for v in run.d_trace.values if v not in a_values)
    witness = (None, None, stray[0]) if stray else None
    return CheckReport("subset", witness is None, witness, {"d_size": len(run.d_trace.values)})


ALL_CHECKS = {
    "covering": lambda run, c, f: check_covering(run, c, f),
    "gain": lambda run, c, f: check_gain(run),
    "density": lambda run, c, f: check_density(run),
    "loads": lambda run, c, f: check_loads(run),
    "blocks": lambda run, c, f: check_block_majority(run),
    "subset": lambda run, c, f: check_subset(run),
}


def run_checks(run: JointRun, names=None, c=GAINLESS_COVERING_C, f=f_identity):
    """Run the named checks (all by default), merged deterministically by name."""
    names = sorted(ALL_CHECKS) if names is None else sorted(names)
    reports = []
    for name in names:
        if name not in ALL_CHECKS:
            raise KeyError(f"unknown check {name!r}")
        reports.append(ALL_CHECKS[name](run, c, f))
    return reports
