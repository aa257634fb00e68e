import io
import os

import pytest

from pearson_bf import _pure
from pearson_bf.sim import (
    CSV_HEADER,
    METHODS,
    ErrorRow,
    SimConfig,
    below_from,
    closed_form_error,
    emit_csv,
    first_below,
    read_csv,
    run_cell,
    run_grid,
)

GAMMA_METHODS = ("wendel", "stirling", "frame")


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(seed=1, n_min=3)
    with pytest.raises(ValueError):
        SimConfig(seed=1, n_min=10, n_max=9)
    with pytest.raises(ValueError):
        SimConfig(seed=1, iterations=0)
    with pytest.raises(ValueError):
        SimConfig(seed=1, methods=["wendel", "lanczos"])
    with pytest.raises(ValueError):
        SimConfig(seed=-1)
    assert SimConfig(seed=1, methods=["BIC", "frame"]).methods == ("bic", "frame")


def test_run_cell_rejects_small_n():
    with pytest.raises(ValueError):
        run_cell(3, 10, seed=1)


def test_run_cell_rows():
    rows = run_cell(24, 50, seed=3)
    assert [r.method for r in rows] == list(METHODS)
    assert all(r.iterations_used == 50 and r.redraws == 0 for r in rows)
    assert all(r.mean_percent_error >= 0 for r in rows)


@pytest.mark.parametrize("n_total", [4, 11, 24, 73, 100])
def test_gamma_methods_are_deterministic(n_total):
    # the tail factor cancels, so every iteration gives the closed-form error
    rows = {r.method: r for r in run_cell(n_total, 30, seed=9, median=True)}
    for m in GAMMA_METHODS:
        expected = closed_form_error(n_total, m)
        assert rows[m].mean_percent_error == pytest.approx(expected, rel=1e-12)
        assert rows[m].median_percent_error == expected


def test_wendel_at_24_is_just_above_one_percent():
    # mpmath: 100 |sqrt(2/22) / C(22) - 1| = 1.12955 %
    row = next(r for r in run_cell(24, 20, seed=1) if r.method == "wendel")
    assert row.mean_percent_error == pytest.approx(1.12955, abs=1e-5)


def test_grid_size_and_order():
    rows = run_grid(SimConfig(seed=5, iterations=3))
    assert len(rows) == 97 * 4
    keys = [(r.n_total, r.method) for r in rows]
    assert keys == sorted(keys)


def test_grid_crossings_match_oracle():
    # crossings located with mpmath at 50 digits
    rows = run_grid(SimConfig(seed=5, iterations=2, methods=GAMMA_METHODS))
    assert below_from(rows, "wendel", 1.0) == first_below(rows, "wendel", 1.0) == 27
    assert below_from(rows, "stirling", 0.01) == first_below(rows, "stirling", 0.01) == 43
    assert below_from(rows, "frame", 0.01) == first_below(rows, "frame", 0.01) == 7


def test_grid_ordering_frame_stirling_wendel():
    rows = run_grid(SimConfig(seed=2, iterations=5, methods=GAMMA_METHODS))
    by_n = {}
    for r in rows:
        by_n.setdefault(r.n_total, {})[r.method] = r.mean_percent_error
    for n, errs in by_n.items():
        assert errs["frame"] <= errs["stirling"] <= errs["wendel"], n


def test_bic_varies_with_seed_gamma_does_not():
    a = run_grid(SimConfig(seed=1, n_min=10, n_max=14, iterations=20))
    b = run_grid(SimConfig(seed=2, n_min=10, n_max=14, iterations=20))
    for ra, rb in zip(a, b):
        if ra.method == "bic":
            assert ra.mean_percent_error != rb.mean_percent_error
        else:
            assert ra.mean_percent_error == rb.mean_percent_error


@pytest.mark.parametrize("threads", [2, 5])
def test_grid_independent_of_threads(threads):
    config = SimConfig(seed=314, n_min=4, n_max=40, iterations=25)
    serial = run_grid(config)
    parallel = run_grid(config, threads=threads)
    assert [r.mean_percent_error.hex() for r in serial] == \
           [r.mean_percent_error.hex() for r in parallel]


def test_pure_kernel_gives_same_grid():
    config = SimConfig(seed=8, n_min=4, n_max=12, iterations=15)
    assert run_grid(config, kernel=_pure) == run_grid(config)


# -- CSV ----------------------------------------------------------------------

def test_csv_round_trip(tmp_path):
    rows = run_grid(SimConfig(seed=1, iterations=2))
    path = tmp_path / "grid.csv"
    emit_csv(rows, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").split("\n")
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(raw.decode().splitlines()) == 389
    back = read_csv(path)
    assert [(r.n_total, r.method, r.iterations_used) for r in back] == \
           [(r.n_total, r.method, r.iterations_used) for r in rows]
    for a, b in zip(back, rows):
        assert a.mean_percent_error == pytest.approx(b.mean_percent_error, rel=1e-9)


def test_csv_ten_significant_digits():
    buf = io.StringIO()
    emit_csv([ErrorRow(7, "frame", 0.006831883525389657, 10)], buf)
    assert buf.getvalue() == ",".join(CSV_HEADER) + "\n7,frame,0.006831883525,10\n"


def test_csv_median_column(tmp_path):
    rows = run_grid(SimConfig(seed=1, n_min=4, n_max=5, iterations=9), median=True)
    path = tmp_path / "m.csv"
    emit_csv(rows, path)
    assert path.read_text().splitlines()[0].endswith(",median_percent_error")
    assert all(r.median_percent_error is not None for r in read_csv(path))


def test_csv_empty_rows():
    with pytest.raises(ValueError):
        emit_csv([], io.StringIO())


def test_csv_unwritable_path(tmp_path):
    target = tmp_path / "missing-dir" / "x.csv"
    with pytest.raises(OSError) as info:
        emit_csv([ErrorRow(4, "bic", 1.0, 1)], target)
    assert os.fspath(target) in str(info.value)
