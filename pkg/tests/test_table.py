import pytest

from enumcompress.gainless import compress_gainless
from enumcompress.table import (
    TYPE1,
    TableError,
    TableView,
    blocks_csv,
    blocks_of_row,
    is_loaded,
    label_blocks,
    last_change,
    render_table,
    tail_block,
    tail_load,
)
from enumcompress.traces import JointRun, parse_trace, raw_trace


class TestLastChange:
    def test_empty_d(self):
        view = TableView.of(JointRun(parse_trace(".,3,.,5"), raw_trace((), 4)))
        assert all(last_change(view, r, s) == 0 for r in range(6) for s in range(5))

    def test_fig1_row2(self, fig1_run):
        view = TableView.of(fig1_run)
        assert last_change(view, 2, 9) == 3

    def test_fig1_row9_inclusive(self, fig1_run):
        view = TableView.of(fig1_run)
        assert last_change(view, 9, 9) == 9

    def test_monotone_in_row_and_stage(self, fig1_run):
        view = TableView.of(fig1_run)
        for s in range(10):
            for r in range(9):
                assert last_change(view, r, s) <= last_change(view, r + 1, s)
        for r in range(10):
            for s in range(9):
                assert last_change(view, r, s) <= last_change(view, r, s + 1)

    def test_range_errors(self, fig1_run):
        view = TableView.of(fig1_run)
        with pytest.raises(TableError):
            last_change(view, 0, 10)
        with pytest.raises(TableError):
            last_change(view, -1, 0)


class TestTailLoad:
    def test_full_initial_segment(self, consecutive_16):
        run = JointRun(consecutive_16, raw_trace((), consecutive_16.length))
        view = TableView(run, 8)
        assert tail_load(view, 7, 8) == 8

    def test_stage_zero(self, fig1_run):
        assert tail_load(TableView.of(fig1_run), 5, 0) == 0

    def test_fig1_row2(self, fig1_run):
        assert tail_load(TableView.of(fig1_run), 2, 9) == 1

    def test_is_loaded(self, consecutive_16):
        run = JointRun(consecutive_16, raw_trace((), consecutive_16.length))
        view = TableView(run, 8)
        assert is_loaded(view, 3, 8, 4)
        assert not is_loaded(view, 2, 8, 4)

    def test_no_drop_without_d_change(self, fig1_run):
        view = TableView.of(fig1_run)
        d_changes = {(s, r) for s, v in fig1_run.d_trace.events for r in range(v, 10)}
        for r in range(10):
            for s in range(9):
                if (s + 1, r) not in d_changes:
                    assert tail_load(view, r, s + 1) >= tail_load(view, r, s)


class TestBlocks:
    def test_empty_d_no_blocks(self, consecutive_16):
        run = JointRun(consecutive_16, raw_trace((), consecutive_16.length))
        assert blocks_of_row(TableView.of(run), 7) == []

    def test_two_target_row15(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        view = label_blocks(TableView.of(run))
        blocks = blocks_of_row(view, 15)
        assert len(blocks) == 1
        b = blocks[0]
        assert (b.left, b.right, b.load, b.label) == (9, 18, 8, TYPE1)

    def test_tail_block(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        view = TableView.of(run)
        assert tail_block(view, 15) == (18, 18)
        assert tail_block(view, 2) == (0, 18)

    def test_refinement(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        view = TableView.of(run)
        for r in range(15):
            below = {(b.left, b.right) for b in blocks_of_row(view, r)}
            above = {(b.left, b.right) for b in blocks_of_row(view, r + 1)}
            # every boundary of row r persists at row r+1
            bounds_below = {x for b in below for x in b}
            bounds_above = {x for b in above for x in b}
            assert bounds_below <= bounds_above

    def test_loads_immutable_across_horizons(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        full = blocks_of_row(TableView.of(run), 11)
        assert full == blocks_of_row(TableView(run, run.horizon), 11)


class TestLabels:
    def test_row0_no_blocks(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        view = label_blocks(TableView.of(run))
        assert blocks_of_row(view, 0) == []

    def test_first_blocks_are_4_loaded(self):
        from enumcompress.traces import generate_trace

        for seed in range(8):
            tr = generate_trace("random", {"count": 120, "below": 2048}, seed)
            run, _ = compress_gainless(tr)
            view = label_blocks(TableView.of(run))
            for row in sorted(run.d_trace.values):
                blocks = blocks_of_row(view, row)
                if blocks:
                    assert blocks[0].is_loaded(4), (seed, row, blocks[0])

    def test_labels_require_exclusive_run(self, fig1_run):
        doubled = JointRun(fig1_run.a_trace, parse_trace(".,7,.,.,.,5"))
        with pytest.raises(TableError):
            label_blocks(TableView.of(doubled))


class TestRender:
    def test_fig1_bars(self, fig1_run):
        text = render_table(TableView.of(fig1_run))
        lines = text.splitlines()
        header, rows = lines[0], lines[1:]
        # row 5 (largest value) sees every event; a-bars at 2,4,7, d-bars at 3,6,9
        row5 = rows[5].split()[1:]
        assert [row5[s] for s in (2, 4, 7)] == ["a", "a", "a"]
        assert [row5[s] for s in (3, 6, 9)] == ["d", "d", "d"]
        # row 0 only sees value 0 at stage 7
        row0 = rows[0].split()[1:]
        assert row0[7] == "a" and row0[2] == "."

    def test_empty_run_blank(self):
        run = JointRun(raw_trace((), 3), raw_trace((), 3))
        text = render_table(TableView.of(run))
        assert "a" not in text and "d" not in text

    def test_deterministic(self, fig1_run):
        view = TableView.of(fig1_run)
        assert render_table(view) == render_table(view)

    def test_render_cap(self):
        run = JointRun(raw_trace(((600, 1),), 600), raw_trace((), 600))
        with pytest.raises(TableError):
            render_table(TableView.of(run))


class TestCsv:
    def test_two_target_csv(self, consecutive_16):
        run, _ = compress_gainless(consecutive_16)
        text = blocks_csv(label_blocks(TableView.of(run)))
        assert text.splitlines()[0] == "row,left,right,load,label"
        assert "15,9,18,8,type1" in text
