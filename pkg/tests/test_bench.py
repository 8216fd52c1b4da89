import random

from spqrdyn.bench import BenchRow, bench_size, format_rows, grow_host
from spqrdyn.decomposition import validate
from spqrdyn.spqr import canonical_form, build_spqr


def test_grow_host_reaches_size_and_degree():
    S = grow_host(random.Random(1), 150)
    g = S.represented
    assert g.num_vertices() >= 150
    assert any(g.degree(v) == 8 for v in g.vertices)
    assert validate(S) == []
    assert canonical_form(S) == canonical_form(build_spqr(g))


def test_bench_size_row():
    row = bench_size(random.Random(2), 120, trials=4, baseline_budget=10.0)
    assert row.size == 120 and row.trials == 4
    assert row.touched_mean > 0 and row.seconds_mean > 0
    assert row.baseline_complete


def test_format_marks_incomplete_baseline():
    row = BenchRow(10, 8, 1, 5.0, 0.5, 2.0, False)
    text = format_rows([row], tsv=True)
    assert text.splitlines()[1].split("\t")[-1] == "4.0+"
    assert "size" in format_rows([row])
