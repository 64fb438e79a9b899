import pytest

from minorfree import bench, io as gio


def test_unknown_suite():
    with pytest.raises(ValueError):
        bench.bench_run("nope")


@pytest.mark.parametrize("suite", ["hybrid", "width"])
def test_emitted_reports_are_byte_identical(suite):
    a = [r.row() for r in bench.bench_run(suite, 1)]
    b = [r.row() for r in bench.bench_run(suite, 1)]
    assert gio.dumps_json(a) == gio.dumps_json(b)
    assert gio.format_csv(a) == gio.format_csv(b)
    assert all("wall_time" not in r for r in a)


def test_schema_is_stable():
    rows = [r.row() for r in bench.bench_run("coloring", 1)]
    keys = {tuple(r) for r in rows}
    assert keys == {("instance", "algorithm", "params", "value", "oracle", "width", "table_entries", "ok")}
    assert "wall_time" in bench.bench_run("coloring", 1)[0].row(timing=True)
