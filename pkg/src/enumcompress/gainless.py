"""Gainless compression: D is carved out of A itself.

The construction replays the input enumeration one event per stage.  Whenever
a stage ends with some row 8-loaded, the least such row m determines a target
interval [n, m]: n is the least row from which every row up to m is 4-loaded.
The next stage becomes a D-stage enumerating n, which resets the tail loads of
all rows >= n; pending input events wait for the following stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .traces import EnumerationTrace, JointRun, TraceError, raw_trace

HEAVY = 8
LIGHT = 4


class ConstructionError(RuntimeError):
    """A fatal invariant violation inside the gainless construction."""


@dataclass(frozen=True)
class TargetRecord:
    """One D-enumeration and the row interval that certified it."""

    stage: int  # the D-stage
    interval: tuple[int, int]  # [n, m]: m least 8-loaded, n..m all 4-loaded
    enumerated: int  # the value n


@dataclass
class GainlessState:
    """Streaming construction state; push values in, step the clock."""

    capacity: int = 64
    stage: int = 0
    loads: np.ndarray = field(default_factory=lambda: np.zeros(64, dtype=np.int64))
    max_row: int = -1
    pending_target: tuple[int, int] | None = None
    queue: list[int] = field(default_factory=list)
    queue_stages: list[int] = field(default_factory=list)
    a_events: list[tuple[int, int]] = field(default_factory=list)
    d_events: list[tuple[int, int]] = field(default_factory=list)
    d_values: set[int] = field(default_factory=set)
    targets: list[TargetRecord] = field(default_factory=list)
    stage_map: list[tuple[int, int]] = field(default_factory=list)  # input stage -> output stage

    def push(self, value: int, input_stage: int | None = None):
        """Queue an input A-value for replay."""
        self.queue.append(value)
        self.queue_stages.append(0 if input_stage is None else input_stage)

    def _grow(self, row):
        while row >= self.capacity:
            self.capacity *= 2
        if len(self.loads) < self.capacity:
            new = np.zeros(self.capacity, dtype=np.int64)
            new[: len(self.loads)] = self.loads
            self.loads = new

    def _evaluate_trigger(self):
        """After a stage's event: find the least 8-loaded row and its target."""
        if self.max_row < 0:
            return
        active = self.loads[: self.max_row + 1]
        heavy = np.flatnonzero(active >= HEAVY)
        if heavy.size == 0:
            self.pending_target = None
            return
        m = int(heavy[0])
        light_gaps = np.flatnonzero(active[: m + 1] < LIGHT)
        n = int(light_gaps[-1]) + 1 if light_gaps.size else 0
        self.pending_target = (n, m)

    def step(self):
        """Advance exactly one output stage.

        Returns (d_event, target_record), both None on A-stages and idle
        stages.  D-stages take priority over queued input values.
        """
        self.stage += 1
        s = self.stage
        if self.pending_target is not None:
            n, m = self.pending_target
            if n in self.d_values:
                raise ConstructionError(
                    f"value {n} requested into D twice (stage {s}, target [{n}, {m}])"
                )
            self.d_values.add(n)
            self.d_events.append((s, n))
            record = TargetRecord(s, (n, m), n)
            self.targets.append(record)
            self.loads[n : self.max_row + 1] = 0
            self.pending_target = None
            self._evaluate_trigger()
            if self.pending_target is not None:
                raise ConstructionError("8-loaded row survived its clearing D-stage")
            return (s, n), record
        if self.queue and max(self.queue_stages[0], self.queue[0]) <= s:
            v = self.queue.pop(0)
            in_stage = self.queue_stages.pop(0)
            if v > self.max_row:
                # rows between the old and new maximum share the old tail load
                prev = self.loads[self.max_row] if self.max_row >= 0 else 0
                self._grow(v)
                self.loads[self.max_row + 1 : v + 1] = prev
                self.max_row = v
            self.loads[v : self.max_row + 1] += 1
            self.a_events.append((s, v))
            self.stage_map.append((in_stage, s))
            self._evaluate_trigger()
        return None, None

    def busy(self):
        return bool(self.queue) or self.pending_target is not None

    def to_run(self):
        length = self.stage
        return JointRun(
            raw_trace(tuple(self.a_events), length),
            raw_trace(tuple(self.d_events), length),
        )


def compress_gainless(a: EnumerationTrace) -> tuple[JointRun, list[TargetRecord]]:
    """Replay a normalized trace through the construction until it settles."""
    if not a.is_normalized():
        raise TraceError("input trace must be normalized")
    state = GainlessState()
    for stage, value in a.events:
        state.push(value, stage)
    while state.busy():
        state.step()
    return state.to_run(), state.targets
