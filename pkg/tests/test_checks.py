import pytest

from enumcompress.checks import (
    ALL_CHECKS,
    GAINLESS_COVERING_C,
    CheckReport,
    check_block_majority,
    check_covering,
    check_density,
    check_gain,
    check_loads,
    check_subset,
    f_half,
    f_identity,
    f_shift,
    run_checks,
)
from enumcompress.gainless import compress_gainless
from enumcompress.strong import compress_strong
from enumcompress.traces import JointRun, parse_trace, raw_trace


@pytest.fixture
def two_target_run(consecutive_16):
    run, _ = compress_gainless(consecutive_16)
    return run


class TestCovering:
    def test_two_target_passes(self, two_target_run):
        assert check_covering(two_target_run, GAINLESS_COVERING_C, f_identity).passed

    def test_strong_run_passes_with_half(self, consecutive_32):
        assert check_covering(compress_strong(consecutive_32), 16, f_half).passed

    def test_uncovered_window_fails(self):
        # three fresh A-values below 3 with no D at all: c=2 must fail
        run = JointRun(parse_trace("0,.,1,2"), raw_trace((), 4))
        rep = check_covering(run, 2, f_identity)
        assert not rep.passed
        s, t, n = rep.counterexample
        assert (s, n) == (0, 3) and t <= 4

    def test_named_f(self, two_target_run):
        assert check_covering(two_target_run, GAINLESS_COVERING_C, "id").passed

    def test_f_shift(self):
        f = f_shift(2)
        assert f(16) == 4 and f.__name__ == "f_div_2pow2"


class TestGain:
    def test_two_target_passes(self, two_target_run):
        assert check_gain(two_target_run).passed

    def test_two_d_without_a_fails(self):
        run = JointRun(raw_trace((), 4), parse_trace("0,1,.,."))
        rep = check_gain(run)
        assert not rep.passed


class TestDensity:
    def test_two_target_passes(self, two_target_run):
        rep = check_density(two_target_run)
        assert rep.passed
        # |D restricted below 4| = 1 <= 2 and below 24 = 2 <= 12
        assert rep.metrics["halving_ratio_holds"]

    def test_d_0_1_fails_at_n_1(self):
        run = JointRun(raw_trace((), 2), parse_trace("0,1"))
        rep = check_density(run)
        assert not rep.passed
        assert rep.counterexample[2] == 1


class TestLoads:
    def test_two_target_passes(self, two_target_run):
        rep = check_loads(two_target_run)
        assert rep.passed
        assert rep.metrics["max_settled_load"] <= 8

    def test_nine_straight_fails(self):
        a = raw_trace(tuple((i + 1, i) for i in range(9)), 9)
        rep = check_loads(JointRun(a, raw_trace((), 9)))
        assert not rep.passed
        assert rep.counterexample == (9, None, 8)

    def test_pending_clearing_stage_not_settled(self, two_target_run):
        # stage 8 carries the 8-load but stage 9 is its clearing D-stage
        assert check_loads(two_target_run).passed


class TestBlocks:
    def test_two_target_passes(self, two_target_run):
        assert check_block_majority(two_target_run).passed

    def test_light_block_majority_fails(self):
        run = JointRun(parse_trace("1,.,.,."), parse_trace(".,0,.,1"))
        rep = check_block_majority(run)
        assert not rep.passed
        assert rep.counterexample[2] == 1


class TestSubset:
    def test_two_target_passes(self, two_target_run):
        assert check_subset(two_target_run).passed

    def test_stray_value_fails(self):
        run = JointRun(parse_trace("0,.,."), parse_trace(".,.,2"))
        rep = check_subset(run)
        assert not rep.passed and rep.counterexample[2] == 2


class TestRunChecks:
    def test_all_by_default_sorted(self, two_target_run):
        reports = run_checks(two_target_run)
        assert [r.name for r in reports] == sorted(ALL_CHECKS)
        assert all(r.passed for r in reports)

    def test_unknown_name(self, two_target_run):
        with pytest.raises(KeyError):
            run_checks(two_target_run, ["nope"])

    def test_report_invariant(self):
        with pytest.raises(AssertionError):
            CheckReport("x", True, counterexample=(1, 2, 3))
