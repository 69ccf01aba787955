from __future__ import annotations

from statistics import fmean

import pytest

from tristream import (
    EdgeList,
    ExperimentConfig,
    ExperimentRunError,
    InfeasibleError,
    SeededSource,
    erdos_renyi,
    make_edge,
    mix_seed,
    nes_run,
    ratio_experiment,
    read_summary_csv,
    run_experiment,
    rse_sweep,
    shuffle_stream,
    write_summary_csv,
)
from tristream.harness import (
    SUMMARY_CSV_COLUMNS,
    SWEEP_CSV_COLUMNS,
    summary_csv_row,
    write_ratio_csv,
    write_sweep_csv,
)


@pytest.fixture(scope="module")
def small_graph() -> EdgeList:
    return erdos_renyi(30, 0.4, seed=21)


def config(**overrides) -> ExperimentConfig:
    base = dict(method="nes", p=0.5, runs=50, base_seed=100, shuffle="per-run", jobs=1)
    base.update(overrides)
    return ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        config(method="bogus")
    with pytest.raises(ValueError):
        config(shuffle="sometimes")
    with pytest.raises(ValueError):
        config(method="pes")  # no pool
    with pytest.raises(ValueError):
        config(runs=0)
    with pytest.raises(ValueError):
        config(jobs=0)


def test_seed_schedule_is_index_based(small_graph):
    summary = run_experiment(small_graph, config())
    # Run i is reproducible standalone from base_seed + i.
    index = 7
    run_seed = 100 + index
    stream = shuffle_stream(small_graph, mix_seed(run_seed))
    standalone = nes_run(stream, 0.5, SeededSource(run_seed))
    assert summary.results[index] == standalone


def test_summary_fields(small_graph):
    summary = run_experiment(small_graph, config())
    assert len(summary.results) == 50
    assert summary.mean_estimate == pytest.approx(
        fmean(r.estimate for r in summary.results)
    )
    assert summary.predicted_rse == pytest.approx(
        summary.mean_triangles_observed**-0.5
    )
    assert summary.stats.triangles > 0


def test_single_run_is_infeasible(small_graph):
    with pytest.raises(InfeasibleError, match="insufficient runs"):
        run_experiment(small_graph, config(runs=1))


def test_triangle_free_graph_is_infeasible():
    star = EdgeList(tuple(make_edge(0, leaf) for leaf in range(1, 9)))
    with pytest.raises(InfeasibleError, match="no triangles"):
        run_experiment(star, config())


def test_oracle_edge_budget():
    graph = erdos_renyi(40, 0.3, seed=5)
    with pytest.raises(InfeasibleError, match="budget"):
        run_experiment(graph, config(), edge_budget=10)


def test_bad_estimator_parameters_name_the_run(small_graph):
    with pytest.raises(ExperimentRunError, match="run 0"):
        run_experiment(small_graph, config(p=2.0))


def test_parallel_equals_serial(small_graph):
    serial = run_experiment(small_graph, config(method="pes", pool=30))
    parallel = run_experiment(small_graph, config(method="pes", pool=30, jobs=2))
    assert serial.results == parallel.results
    assert serial.observed_rse == parallel.observed_rse


def test_fixed_shuffle_reuses_one_order(small_graph):
    summary = run_experiment(small_graph, config(shuffle="fixed", runs=5))
    expected_stream = shuffle_stream(small_graph, mix_seed(100))
    standalone = nes_run(expected_stream, 0.5, SeededSource(100 + 2))
    assert summary.results[2] == standalone


def test_fixed_mode_repeats_identically_and_csv_bytes_match(small_graph, tmp_path):
    paths = []
    for attempt in range(2):
        summary = run_experiment(small_graph, config(shuffle="fixed"))
        path = tmp_path / f"summary{attempt}.csv"
        write_summary_csv(summary, path)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]


def test_summary_csv_round_trip(small_graph, tmp_path):
    summary = run_experiment(small_graph, config(method="pes", pool=25))
    path = tmp_path / "summary.csv"
    write_summary_csv(summary, path)
    rows = read_summary_csv(path)
    assert len(rows) == 1
    row = rows[0]
    expected = dict(zip(SUMMARY_CSV_COLUMNS, summary_csv_row(summary)))
    for key, value in expected.items():
        assert row[key] == value, key


def test_observed_rse_lands_near_target_for_calibrated_pes():
    graph = erdos_renyi(100, 0.2, seed=17)
    from tristream import build_adjacency, calibrate_pes, compute_stats

    stats = compute_stats(build_adjacency(graph))
    cal = calibrate_pes(stats, 0.2)
    summary = run_experiment(
        graph,
        ExperimentConfig(method="pes", p=cal.p, pool=cal.pool, runs=1000, base_seed=55),
    )
    assert 0.15 <= summary.observed_rse <= 0.25


def test_mean_converges_as_runs_double(small_graph):
    first = run_experiment(small_graph, config(runs=200))
    second = run_experiment(small_graph, config(runs=400))
    se = first.observed_rse * first.stats.triangles / 200**0.5
    assert abs(second.mean_estimate - first.mean_estimate) <= 4 * se


# ---------------------------------------------------------------------------
# Ratio experiment.
# ---------------------------------------------------------------------------


def test_ratio_experiment_refuses_triangle_free():
    star = EdgeList(tuple(make_edge(0, leaf) for leaf in range(1, 9)))
    with pytest.raises(InfeasibleError, match="triangle count = 0"):
        ratio_experiment(star, 0.2, 50, 1)


def test_ratio_experiment_marks_saturated(toy_edges):
    report = ratio_experiment(toy_edges, 0.2, 50, 1)
    assert report.saturated  # tiny graph clamps the naive calibration at p=1
    assert report.nes_p == 1.0


def test_ratio_experiment_at_unit_prediction_boundary():
    # K5 with the target chosen so the naive probability equals M/wedges:
    # the predicted ratio is then exactly 1, and with both methods running
    # the same edge probability the observed ratio sits next to it.
    k5 = erdos_renyi(5, 1.0, seed=0)
    target = 3 / 10**0.5  # 1/(target*sqrt(10)) == 10/30 == M/wedges
    report = ratio_experiment(k5, target, 300, 11)
    assert report.predicted_ratio == pytest.approx(1.0, rel=1e-12)
    assert abs(report.observed_probability_ratio - 1.0) <= 0.30


def test_ratio_experiment_tracks_prediction():
    graph = erdos_renyi(120, 0.15, seed=3)
    report = ratio_experiment(graph, 0.25, 150, 42, input_name="er120")
    assert not report.saturated
    relative_gap = (
        abs(report.observed_probability_ratio - report.predicted_ratio)
        / report.predicted_ratio
    )
    assert relative_gap <= 0.30
    assert report.observed_size_ratio > 0
    assert report.input_name == "er120"


def test_ratio_csv_written(tmp_path):
    graph = erdos_renyi(60, 0.25, seed=8)
    report = ratio_experiment(graph, 0.3, 60, 5, input_name="er60")
    path = tmp_path / "ratio.csv"
    write_ratio_csv(report, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("input,nodes,edges")


# ---------------------------------------------------------------------------
# Sweep.
# ---------------------------------------------------------------------------


def test_sweep_empty_targets(small_graph):
    report = rse_sweep(small_graph, [], "nes", 50, 9)
    assert report.rows == ()


def test_sweep_single_target_minimum_runs(small_graph):
    report = rse_sweep(small_graph, [0.3], "nes", 2, 9)
    assert len(report.rows) == 1
    assert report.rows[0].target_rse == 0.3


def test_sweep_rows_and_csv(small_graph, tmp_path):
    report = rse_sweep(small_graph, [0.2, 0.4], "pes", 80, 31)
    assert [row.target_rse for row in report.rows] == [0.2, 0.4]
    path = tmp_path / "sweep.csv"
    write_sweep_csv(report, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_CSV_COLUMNS)
    assert len(lines) == 3


def test_sweep_rejects_unknown_method(small_graph):
    with pytest.raises(ValueError, match="method"):
        rse_sweep(small_graph, [0.2], "gps", 10, 0)


def test_sweep_triangle_free_graph():
    star = EdgeList(tuple(make_edge(0, leaf) for leaf in range(1, 9)))
    # Empty targets succeed on any graph; non-empty targets need triangles.
    assert rse_sweep(star, [], "nes", 10, 0).rows == ()
    with pytest.raises(InfeasibleError, match="triangle count = 0"):
        rse_sweep(star, [0.2], "nes", 10, 0)
