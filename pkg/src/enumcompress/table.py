"""Derived quantities of the joint (A, D) enumeration table.

For a row n and stage s the central quantities are the last D-change stage
below n+1, the open tail-block it starts, and the tail load: the number of
A-enumerations of values <= n since that change.  Closed blocks of a row are
the intervals between consecutive D-change stages for that row.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .traces import JointRun, window_diff

TYPE1 = "type1"
TYPE2 = "type2"
TYPE3 = "type3"
UNLABELED = "unlabeled"

RENDER_CAP = 512


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    row: int
    left: int
    right: int
    load: int
    label: str = UNLABELED

    def is_loaded(self, p=4):
        return self.load >= p


@dataclass(frozen=True)
class TableView:
    run: JointRun
    horizon: int
    labels: dict | None = None  # (row, left, right) -> label, filled by label_blocks

    def __post_init__(self):
        if self.horizon > self.run.horizon:
            raise TableError(f"horizon {self.horizon} beyond run horizon {self.run.horizon}")

    @classmethod
    def of(cls, run, horizon=None):
        return cls(run, run.horizon if horizon is None else horizon)

    def d_change_stages(self, row):
        """Sorted stages <= horizon at which D enumerated a value <= row."""
        return sorted(t for t, v in self.run.d_trace.events if v <= row and t <= self.horizon)


def last_change(view: TableView, row: int, stage: int) -> int:
    """Largest D-change stage below row+1, up to and including the given stage.

    The stage's own events count: tail-blocks are evaluated after the stage
    has fully executed.  Defaults to 0 when D never changed below row+1.
    """
    _check(view, row, stage)
    return max((t for t, v in view.run.d_trace.events if v <= row and t <= stage), default=0)


def tail_load(view: TableView, row: int, stage: int) -> int:
    """A-enumerations of values <= row strictly after the last D-change <= row."""
    _check(view, row, stage)
    start = last_change(view, row, stage)
    return sum(
        1 for t, v in view.run.a_trace.events if v <= row and start < t <= stage
    )


def is_loaded(view: TableView, row: int, stage: int, p: int) -> bool:
    return tail_load(view, row, stage) >= p


def blocks_of_row(view: TableView, row: int) -> list[Block]:
    """Closed blocks of a row, in stage order.

    A block spans two consecutive D-change stages for the row; the open
    tail-block (last change, horizon) is not included.
    """
    changes = view.d_change_stages(row)
    blocks = []
    for left, right in zip(changes, changes[1:]):
        load = window_diff(view.run.a_trace, left, right - 1, row + 1)
        label = UNLABELED
        if view.labels is not None:
            label = view.labels.get((row, left, right), UNLABELED)
        blocks.append(Block(row, left, right, load, label))
    return blocks


def tail_block(view: TableView, row: int, stage: int | None = None):
    """(left, right) of the open tail-block of the row at the stage (or horizon)."""
    stage = view.horizon if stage is None else stage
    return (last_change(view, row, stage), stage)


def label_blocks(view: TableView) -> TableView:
    """Assign block labels by induction on rows.

    A row's blocks are its predecessor's, except where the row's own
    D-enumeration at stage u interrupts: the block ending at u is type-1; the
    block starting at u inherits type-2 from a type-1 predecessor block with
    the same right end, type-3 otherwise.  A block starting at the row's own
    stage with no predecessor block is the row's first block; it is 4-loaded
    by the target rule and counts as type-2.  Labels are only meaningful for
    runs produced by the gainless construction.
    """
    if not view.run.is_exclusive():
        raise TableError("labels are defined only for one-event-per-stage joint runs")
    d_events = {v: t for t, v in view.run.d_trace.events if t <= view.horizon}
    max_row = max(
        [v for _, v in view.run.a_trace.events] + [v for v in d_events] + [0]
    )
    labels = {}
    prev_blocks = {}  # (left, right) -> label for the previous row
    changes = []
    for row in range(max_row + 1):
        own = d_events.get(row)
        if own is not None:
            changes.append(own)
            changes.sort()
        cur = {}
        for left, right in zip(changes, changes[1:]):
            if (left, right) in prev_blocks:
                cur[(left, right)] = prev_blocks[(left, right)]
            elif right == own:
                cur[(left, right)] = TYPE1
            elif left == own:
                prior = next((lab for (l, r), lab in prev_blocks.items() if r == right), None)
                if prior is None:
                    # first block of the row: 4-loaded by the target rule but
                    # not an interruption witness, so it must not count as
                    # type-1; type-2 keeps the 4-loaded obligation and its
                    # later splits degrade to type-3
                    cur[(left, right)] = TYPE2
                elif prior == TYPE1:
                    cur[(left, right)] = TYPE2
                else:
                    cur[(left, right)] = TYPE3
            else:
                cur[(left, right)] = UNLABELED
        for (left, right), lab in cur.items():
            labels[(row, left, right)] = lab
        prev_blocks = cur
    return replace(view, labels=labels)


def render_table(view: TableView) -> str:
    """ASCII grid of the run: columns are stages, rows are numbers.

    Cell (i, s) shows 'a' when A enumerated a value <= i at stage s, 'd' for D.
    """
    if view.horizon > RENDER_CAP:
        raise TableError(f"horizon {view.horizon} exceeds render cap {RENDER_CAP}")
    a_events = {t: v for t, v in view.run.a_trace.events if t <= view.horizon}
    d_events = {t: v for t, v in view.run.d_trace.events if t <= view.horizon}
    max_row = max(list(a_events.values()) + list(d_events.values()) + [0])
    width = max(len(str(view.horizon)), 1)
    header = " " * (len(str(max_row)) + 1) + " ".join(
        str(s).rjust(width) for s in range(view.horizon + 1)
    )
    lines = [header]
    for i in range(max_row + 1):
        cells = []
        for s in range(view.horizon + 1):
            mark = ""
            if s in a_events and a_events[s] <= i:
                mark += "a"
            if s in d_events and d_events[s] <= i:
                mark += "d"
            cells.append((mark or ".").rjust(width))
        lines.append(str(i).rjust(len(str(max_row))) + " " + " ".join(cells))
    return "\n".join(lines)


def blocks_csv(view: TableView) -> str:
    """CSV of (row, left, right, load, label) over all rows with blocks."""
    max_row = max([v for _, v in view.run.a_trace.events]
                  + [v for _, v in view.run.d_trace.events] + [0])
    lines = ["row,left,right,load,label"]
    for row in range(max_row + 1):
        for b in blocks_of_row(view, row):
            lines.append(f"{b.row},{b.left},{b.right},{b.load},{b.label}")
    return "\n".join(lines) + "\n"


def _check(view, row, stage):
    if row < 0:
        raise TableError(f"negative row {row}")
    if not 0 <= stage <= view.horizon:
        raise TableError(f"stage {stage} out of range [0, {view.horizon}]")
