import pytest

from enumcompress.traces import (
    EnumerationTrace,
    JointRun,
    normalize_trace,
    parse_trace,
    raw_trace,
)

FIG1_A = ".,3,.,5,.,.,0,.,."
FIG1_D = ".,.,1,.,.,5,.,.,3"


@pytest.fixture
def fig1_run():
    return JointRun(parse_trace(FIG1_A), parse_trace(FIG1_D))


@pytest.fixture
def consecutive_16():
    """A = i at stage i+1 for i = 0..15 (the two-target gainless input)."""
    return normalize_trace(raw_trace([(i + 1, i) for i in range(16)]))


@pytest.fixture
def consecutive_32():
    """A = i at stage i+1 for i = 0..31 (the strong-compressor fixture)."""
    return normalize_trace(raw_trace([(i + 1, i) for i in range(32)]))


def corpus(size, *, kinds=("random", "burst"), below=4096):
    """Deterministic mixed-trace corpus used by soundness tests."""
    from enumcompress.traces import generate_trace

    traces = []
    for seed in range(size):
        kind = kinds[seed % len(kinds)]
        count = 50 + (seed * 37) % 400
        traces.append(generate_trace(kind, {"count": count, "below": below}, seed))
    return traces
