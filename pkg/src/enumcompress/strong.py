"""Strong compression of an enumeration.

At each stage s > 0 the rule looks for the least n in [3, s] whose prefix
count |A_s restricted below 2^n| just became a multiple of 16, and enumerates
the least element of [2^(n-3), 2^(n-2)) not yet in D.  The resulting D allows
recovery of A's length-n prefixes from its own length-floor(n/2) prefixes, in
the checkable covering sense (c=16, f = halving).
"""

from __future__ import annotations

from bisect import bisect_left, insort

from .traces import EnumerationTrace, JointRun, TraceError, raw_trace


class IntervalExhausted(RuntimeError):
    """The dyadic target interval ran out of fresh values.

    The counting bound |D in [2^(n-3), 2^(n-2))| <= |A below 2^n|/16 rules this
    out; reaching here means the compressor itself is broken.
    """


def compress_strong(a: EnumerationTrace) -> JointRun:
    """Run the dyadic-interval compression rule over a normalized trace.

    D-events land on the same stage as their trigger, so the output run may
    enumerate into both sets at one stage.
    """
    if not a.is_normalized():
        raise TraceError("input trace must be normalized")
    a_values = []  # sorted values enumerated so far
    d_set = set()
    d_events = []
    events_by_stage = {s: v for s, v in a.events}
    for s in range(1, a.length + 1):
        v = events_by_stage.get(s)
        if v is None:
            continue
        insort(a_values, v)
        n = 3
        while True:
            if n > s:
                break
            bound = 1 << n
            count = bisect_left(a_values, bound)
            grew = v < bound
            if grew and count % 16 == 0 and count > 0:
                lo, hi = 1 << (n - 3), 1 << (n - 2)
                fresh = next((m for m in range(lo, hi) if m not in d_set), None)
                if fresh is None:
                    raise IntervalExhausted(
                        f"[{lo}, {hi}) exhausted at stage {s} (n={n})"
                    )
                d_set.add(fresh)
                d_events.append((s, fresh))
                break
            if bound > s:
                # larger n only repeat the same total count
                break
            n += 1
    return JointRun(a, raw_trace(tuple(d_events), a.length))


def compress_iterated(a: EnumerationTrace, depth: int) -> list[JointRun]:
    """Chain the compressor: A -> D1 -> D2 -> ... -> D_depth."""
    if depth < 1:
        raise ValueError("depth must be positive")
    runs = []
    src = a
    for _ in range(depth):
        run = compress_strong(src)
        runs.append(run)
        src = run.d_trace
    return runs
