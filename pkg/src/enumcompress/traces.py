"""Stage-indexed enumerations of subsets of the naturals.

A trace records which number enters the set at which stage.  Stage 0 never
enumerates.  The text format is a comma-separated vector whose s-th (1-based)
token is either "." (no enumeration) or the number entering at stage s, e.g.
".,3,.,5,.,.,0,.,.".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from random import Random


class TraceError(ValueError):
    """Malformed trace text or violated trace invariant."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class EnumerationTrace:
    """Ordered enumeration events (stage, value) plus the total stage count.

    Raw traces may carry several events on one stage; normalized traces have
    at most one event per stage and value <= stage throughout.
    """

    events: tuple[tuple[int, int], ...]
    length: int

    def __post_init__(self):
        prev_stage = 0
        seen = set()
        for i, (stage, value) in enumerate(self.events):
            if stage < 1:
                raise TraceError("no enumeration may occur at stage 0", i)
            if stage < prev_stage:
                raise TraceError("event stages must be nondecreasing", i)
            if value < 0:
                raise TraceError("values must be naturals", i)
            if value in seen:
                raise TraceError(f"value {value} enumerated twice", i)
            seen.add(value)
            prev_stage = stage
        if self.events and self.events[-1][0] > self.length:
            raise TraceError("length smaller than last event stage")
        if self.length < 0:
            raise TraceError("negative length")

    @property
    def values(self):
        return frozenset(v for _, v in self.events)

    def is_normalized(self):
        prev = 0
        for stage, value in self.events:
            if stage <= prev or value > stage:
                return False
            prev = stage
        return True

    def members_at(self, stage):
        """The set of values enumerated at stages <= stage (the snapshot A_s)."""
        return frozenset(v for t, v in self.events if t <= stage)


@dataclass(frozen=True)
class SetSnapshot:
    """A finite set together with the stage it represents."""

    members: frozenset
    stage: int

    @classmethod
    def of(cls, trace, stage):
        return cls(trace.members_at(stage), stage)

    def restrict(self, bound):
        return frozenset(v for v in self.members if v < bound)


STAGE_A = "A"
STAGE_D = "D"
STAGE_BOTH = "AD"
STAGE_IDLE = "idle"


@dataclass(frozen=True)
class JointRun:
    """Two synchronized traces: the source enumeration A and its compression D."""

    a_trace: EnumerationTrace
    d_trace: EnumerationTrace

    @property
    def horizon(self):
        return max(self.a_trace.length, self.d_trace.length)

    def stage_kind(self, stage):
        a = any(t == stage for t, _ in self.a_trace.events)
        d = any(t == stage for t, _ in self.d_trace.events)
        if a and d:
            return STAGE_BOTH
        if a:
            return STAGE_A
        if d:
            return STAGE_D
        return STAGE_IDLE

    @property
    def stage_kinds(self):
        return tuple(self.stage_kind(s) for s in range(self.horizon + 1))

    def is_exclusive(self):
        """True when no stage enumerates into both sets (the joint-run convention)."""
        a_stages = {t for t, _ in self.a_trace.events}
        return all(t not in a_stages for t, _ in self.d_trace.events)


def parse_trace(text: str) -> EnumerationTrace:
    """Parse the dotted vector format into a trace."""
    tokens = [tok.strip() for tok in text.strip().split(",")]
    events = []
    seen = {}
    for pos, tok in enumerate(tokens, start=1):
        if tok == ".":
            continue
        if not tok.isdigit():
            raise TraceError(f"malformed token {tok!r}", pos)
        value = int(tok)
        if value in seen:
            raise TraceError(f"value {value} already enumerated at position {seen[value]}", pos)
        seen[value] = pos
        events.append((pos, value))
    return EnumerationTrace(tuple(events), len(tokens))


def render_trace(trace: EnumerationTrace) -> str:
    """Inverse of parse_trace for traces with at most one event per stage."""
    by_stage = {}
    for stage, value in trace.events:
        if stage in by_stage:
            raise TraceError(f"stage {stage} holds more than one event; normalize first")
        by_stage[stage] = value
    return ",".join(str(by_stage[s]) if s in by_stage else "." for s in range(1, trace.length + 1))


def normalize_trace(trace: EnumerationTrace) -> EnumerationTrace:
    """Delay each event to the least admissible stage.

    Admissible means: not before its raw stage, strictly after the previous
    event, and not before its own value.  Enumeration order is preserved and
    the result is idempotent under renormalization.
    """
    events = []
    prev = 0
    for stage, value in trace.events:
        stage = max(stage, prev + 1, value, 1)
        events.append((stage, value))
        prev = stage
    length = max(trace.length, prev)
    return EnumerationTrace(tuple(events), length)


def raw_trace(events, length=None) -> EnumerationTrace:
    """Build a possibly non-normalized trace from (stage, value) pairs."""
    events = tuple(events)
    if length is None:
        length = max((s for s, _ in events), default=0)
    return EnumerationTrace(events, length)


def restrict_card(trace: EnumerationTrace, stage: int, bound: int) -> int:
    """|X_s restricted below bound|: values < bound enumerated at stages <= stage."""
    if not 0 <= stage <= trace.length:
        raise TraceError(f"stage {stage} out of range [0, {trace.length}]")
    return sum(1 for t, v in trace.events if t <= stage and v < bound)


def window_diff(trace: EnumerationTrace, from_stage: int, to_stage: int, bound: int) -> int:
    """Values < bound entering strictly after from_stage and at or before to_stage."""
    if not 0 <= from_stage <= to_stage <= trace.length:
        raise TraceError(f"window ({from_stage}, {to_stage}] out of range for length {trace.length}")
    return sum(1 for t, v in trace.events if from_stage < t <= to_stage and v < bound)


def oplus_k(left: EnumerationTrace, right: EnumerationTrace, k: int = 2) -> EnumerationTrace:
    """Interleave two enumerations: left lands on multiples of k, right fills the rest.

    A left event with value i yields k*i; a right event with value j yields the
    k-1 values k*j+t for t in (0, k), emitted consecutively.  The result is
    renormalized.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    merged = sorted(
        [(stage, 0, value) for stage, value in left.events]
        + [(stage, 1, value) for stage, value in right.events]
    )
    events = []
    for stage, side, value in merged:
        if side == 0:
            events.append((stage, k * value))
        else:
            events.extend((stage, k * value + t) for t in range(1, k))
    return normalize_trace(raw_trace(events, max(left.length, right.length)))


def oplus_members(left_members, right_members, k: int = 2):
    """Set-level oplus_k, used as the brute-force membership oracle."""
    out = {k * i for i in left_members}
    for j in right_members:
        out.update(k * j + t for t in range(1, k))
    return frozenset(out)


def generate_trace(kind: str, params: dict, seed: int) -> EnumerationTrace:
    """Deterministic test-input generator.

    kinds:
      random      -- params count, below: distinct values < below at random gaps
      burst       -- params count, below: runs of consecutive small values,
                     packed to stress heavily loaded rows
      adversarial -- params count, below: alternating high bursts and low
                     trickles, aimed at late small-row pressure
    """
    rng = Random(seed)
    count = params.get("count", 0)
    below = params.get("below", max(2 * count, 1))
    if count > below:
        raise ValueError(f"cannot enumerate {count} distinct values below {below}")
    if kind == "random":
        values = rng.sample(range(below), count)
        events = []
        stage = 0
        for v in values:
            stage += rng.randint(1, params.get("max_gap", 3))
            events.append((stage, v))
    elif kind == "burst":
        values = rng.sample(range(below), count)
        values.sort()
        runs = []
        i = 0
        while i < len(values):
            run_len = rng.randint(1, max(1, params.get("run", 8)))
            runs.append(values[i : i + run_len])
            i += run_len
        rng.shuffle(runs)
        events = []
        stage = 0
        for run in runs:
            stage += rng.randint(1, 2)
            for v in run:
                events.append((stage, v))
                stage += 1
    elif kind == "adversarial":
        half = below // 2
        high = rng.sample(range(half, below), min(count // 2, below - half))
        low = rng.sample(range(half), min(count - len(high), half))
        events = []
        stage = 0
        for v in high + low:
            stage += 1
            events.append((stage, v))
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return normalize_trace(raw_trace(events))


def trace_to_jsonl(trace: EnumerationTrace) -> str:
    lines = [json.dumps({"length": trace.length})]
    lines.extend(json.dumps({"stage": s, "value": v}) for s, v in trace.events)
    return "\n".join(lines) + "\n"


def trace_from_jsonl(text: str) -> EnumerationTrace:
    length = 0
    events = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "length" in obj:
            length = obj["length"]
        else:
            events.append((obj["stage"], obj["value"]))
    return EnumerationTrace(tuple(sorted(events)), max(length, max((s for s, _ in events), default=0)))


def run_to_jsonl(run: JointRun) -> str:
    lines = [json.dumps({"length": run.horizon})]
    for name, trace in (("A", run.a_trace), ("D", run.d_trace)):
        lines.extend(json.dumps({"set": name, "stage": s, "value": v}) for s, v in trace.events)
    return "\n".join(lines) + "\n"


def run_from_jsonl(text: str) -> JointRun:
    length = 0
    events = {"A": [], "D": []}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "length" in obj:
            length = obj["length"]
        else:
            events[obj.get("set", "A")].append((obj["stage"], obj["value"]))
    last = max((s for evs in events.values() for s, _ in evs), default=0)
    length = max(length, last)
    return JointRun(
        EnumerationTrace(tuple(sorted(events["A"])), length),
        EnumerationTrace(tuple(sorted(events["D"])), length),
    )
