"""Repeated-run experiment drivers with CSV reporting.

The protocol: k independent runs with an index-based seed schedule
(run i uses base_seed + i), observed RSE over the k estimates, and the
predicted RSE evaluated at the mean identified-triangle count.  Runs are
independent tasks sharing only the immutable parsed edge list, so they can
execute in parallel without changing any reported number.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .analysis import (
    calibrate_nes,
    calibrate_pes,
    nes_pes_ratio,
    nes_rse_simple,
    observed_rse,
    pes_rse_simple,
)
from .edgelist import EdgeList, shuffle_stream
from .estimators import EstimateResult, nes_run, pes_run
from .oracle import GraphStats, build_adjacency, compute_stats
from .randomness import SeededSource, mix_seed

DEFAULT_EDGE_BUDGET = 500_000

METHODS = ("nes", "pes")
SHUFFLE_MODES = ("per-run", "fixed")

SUMMARY_CSV_COLUMNS = (
    "method",
    "p",
    "pool",
    "runs",
    "base_seed",
    "shuffle",
    "mean_estimate",
    "observed_rse",
    "mean_triangles_observed",
    "mean_sample_size",
    "predicted_rse",
    "oracle_nodes",
    "oracle_edges",
    "oracle_triangles",
    "oracle_wedges",
    "oracle_shared_pairs",
    "oracle_clustering",
)

SWEEP_CSV_COLUMNS = (
    "target_rse",
    "observed_rse",
    "predicted_rse",
    "mean_triangles_observed",
    "mean_sample_size",
)

RATIO_CSV_COLUMNS = (
    "input",
    "nodes",
    "edges",
    "triangles",
    "wedges",
    "clustering",
    "size_times_clustering",
    "target_rse",
    "runs",
    "nes_p",
    "pes_p",
    "pes_pool",
    "saturated",
    "nes_observed_rse",
    "pes_observed_rse",
    "nes_mean_sample_size",
    "pes_mean_sample_size",
    "observed_size_ratio",
    "observed_probability_ratio",
    "predicted_ratio",
)


class InfeasibleError(RuntimeError):
    """The experiment cannot run as configured (no triangles, too few runs,
    or the exact oracle would exceed its edge budget)."""


class ExperimentRunError(ValueError):
    """An estimator failed inside a run; names the run index."""

    def __init__(self, run_index: int, cause: Exception):
        super().__init__(f"run {run_index}: {cause}")
        self.run_index = run_index


@dataclass(frozen=True)
class ExperimentConfig:
    method: str
    p: float
    pool: int | None = None
    runs: int = 1000
    base_seed: int = 0
    shuffle: str = "per-run"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.shuffle not in SHUFFLE_MODES:
            raise ValueError(f"shuffle must be one of {SHUFFLE_MODES}, got {self.shuffle!r}")
        if self.method == "pes" and self.pool is None:
            raise ValueError("pes needs a pool size")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")


@dataclass(frozen=True)
class RunSummary:
    config: ExperimentConfig
    stats: GraphStats
    results: tuple[EstimateResult, ...]
    mean_estimate: float
    observed_rse: float
    mean_triangles_observed: float
    mean_sample_size: float
    predicted_rse: float | None


@dataclass(frozen=True)
class RatioReport:
    """Naive-vs-priority comparison at one target RSE on one graph."""

    input_name: str
    stats: GraphStats
    target_rse: float
    runs: int
    base_seed: int
    nes_p: float
    pes_p: float
    pes_pool: int
    saturated: bool
    nes_summary: RunSummary
    pes_summary: RunSummary
    observed_size_ratio: float
    observed_probability_ratio: float
    predicted_ratio: float


@dataclass(frozen=True)
class SweepRow:
    target_rse: float
    observed_rse: float
    predicted_rse: float | None
    mean_triangles_observed: float
    mean_sample_size: float
    p: float
    pool: int | None


@dataclass(frozen=True)
class SweepReport:
    method: str
    runs: int
    base_seed: int
    stats: GraphStats
    rows: tuple[SweepRow, ...]


def _single_run(stream: EdgeList, config: ExperimentConfig, index: int) -> EstimateResult:
    run_seed = config.base_seed + index
    if config.shuffle == "per-run":
        ordered = shuffle_stream(stream, mix_seed(run_seed))
    else:
        ordered = stream
    rng = SeededSource(run_seed)
    try:
        if config.method == "nes":
            return nes_run(ordered, config.p, rng)
        assert config.pool is not None
        return pes_run(ordered, config.p, config.pool, rng)
    except ValueError as err:
        raise ExperimentRunError(index, err) from err


def _execute_runs(stream: EdgeList, config: ExperimentConfig) -> tuple[EstimateResult, ...]:
    if config.jobs <= 1:
        return tuple(_single_run(stream, config, index) for index in range(config.runs))
    worker = partial(_single_run, stream, config)
    chunksize = max(1, config.runs // (config.jobs * 8))
    with ProcessPoolExecutor(max_workers=config.jobs) as executor:
        return tuple(executor.map(worker, range(config.runs), chunksize=chunksize))


def _oracle_stats(edges: EdgeList, edge_budget: int) -> GraphStats:
    if edges.edge_count > edge_budget:
        raise InfeasibleError(
            f"exact oracle refused: {edges.edge_count} edges exceed the "
            f"budget of {edge_budget} (raise the budget to override)"
        )
    return compute_stats(build_adjacency(edges))


def run_experiment(
    edges: EdgeList,
    config: ExperimentConfig,
    *,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    stats: GraphStats | None = None,
) -> RunSummary:
    """Execute k seeded runs and summarize them against the exact oracle.

    ``stats`` short-circuits the oracle when the caller already computed it.
    """
    truth = stats if stats is not None else _oracle_stats(edges, edge_budget)
    if config.runs < 2:
        raise InfeasibleError(
            f"insufficient runs: observed RSE needs k >= 2, got k = {config.runs}"
        )
    if truth.triangles == 0:
        raise InfeasibleError("observed RSE undefined: graph has no triangles")
    stream = edges
    if config.shuffle == "fixed":
        # One shared random order, derived from the base seed.
        stream = shuffle_stream(edges, mix_seed(config.base_seed))
    results = _execute_runs(stream, config)
    estimates = [result.estimate for result in results]
    mean_triangles = fmean(result.triangles_observed for result in results)
    predictor = nes_rse_simple if config.method == "nes" else pes_rse_simple
    return RunSummary(
        config=config,
        stats=truth,
        results=results,
        mean_estimate=fmean(estimates),
        observed_rse=observed_rse(estimates, truth.triangles),
        mean_triangles_observed=mean_triangles,
        mean_sample_size=fmean(result.sample_size for result in results),
        predicted_rse=predictor(mean_triangles),
    )


def ratio_experiment(
    edges: EdgeList,
    target_rse: float,
    runs: int,
    base_seed: int,
    *,
    jobs: int = 1,
    shuffle: str = "per-run",
    input_name: str = "",
    edge_budget: int = DEFAULT_EDGE_BUDGET,
) -> RatioReport:
    """Calibrate both estimators to ``target_rse``, run k trials of each on
    identically ordered streams, and compare against the predicted ratio.

    The observed probability ratio is measured from the runs as the ratio of
    mean subgraph sizes (each estimates p * M).  A calibration clamped at
    p = 1 marks the report saturated: the ratio is not meaningful there.
    """
    truth = _oracle_stats(edges, edge_budget)
    if truth.triangles == 0:
        raise InfeasibleError("ratio experiment refused: graph has no triangles (triangle count = 0)")
    nes_cal = calibrate_nes(target_rse, truth.triangles)
    pes_cal = calibrate_pes(truth, target_rse)
    common = dict(runs=runs, base_seed=base_seed, shuffle=shuffle, jobs=jobs)
    nes_summary = run_experiment(
        edges,
        ExperimentConfig(method="nes", p=nes_cal.value, **common),
        stats=truth,
    )
    pes_summary = run_experiment(
        edges,
        ExperimentConfig(method="pes", p=pes_cal.p, pool=pes_cal.pool, **common),
        stats=truth,
    )
    mean_subgraph_nes = fmean(r.subgraph_edges for r in nes_summary.results)
    mean_subgraph_pes = fmean(r.subgraph_edges for r in pes_summary.results)
    return RatioReport(
        input_name=input_name,
        stats=truth,
        target_rse=target_rse,
        runs=runs,
        base_seed=base_seed,
        nes_p=nes_cal.value,
        pes_p=pes_cal.p,
        pes_pool=pes_cal.pool,
        saturated=nes_cal.clamped or pes_cal.clamped,
        nes_summary=nes_summary,
        pes_summary=pes_summary,
        observed_size_ratio=nes_summary.mean_sample_size / pes_summary.mean_sample_size,
        observed_probability_ratio=mean_subgraph_nes / mean_subgraph_pes,
        predicted_ratio=nes_pes_ratio(truth.edge_count, truth.wedges, nes_cal.value),
    )


def rse_sweep(
    edges: EdgeList,
    targets: Sequence[float],
    method: str,
    runs: int,
    base_seed: int,
    *,
    jobs: int = 1,
    shuffle: str = "per-run",
    edge_budget: int = DEFAULT_EDGE_BUDGET,
) -> SweepReport:
    """One calibrated experiment per target RSE; empty targets yield an
    empty report."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    truth = _oracle_stats(edges, edge_budget)
    if targets and truth.triangles == 0:
        raise InfeasibleError("sweep refused: graph has no triangles (triangle count = 0)")
    rows: list[SweepRow] = []
    for target in targets:
        if method == "nes":
            cal = calibrate_nes(target, truth.triangles)
            config = ExperimentConfig(
                method="nes", p=cal.value, runs=runs,
                base_seed=base_seed, shuffle=shuffle, jobs=jobs,
            )
        else:
            pes_cal = calibrate_pes(truth, target)
            config = ExperimentConfig(
                method="pes",
                p=pes_cal.p,
                pool=pes_cal.pool,
                runs=runs,
                base_seed=base_seed,
                shuffle=shuffle,
                jobs=jobs,
            )
        summary = run_experiment(edges, config, stats=truth)
        rows.append(
            SweepRow(
                target_rse=target,
                observed_rse=summary.observed_rse,
                predicted_rse=summary.predicted_rse,
                mean_triangles_observed=summary.mean_triangles_observed,
                mean_sample_size=summary.mean_sample_size,
                p=config.p,
                pool=config.pool,
            )
        )
    return SweepReport(
        method=method, runs=runs, base_seed=base_seed, stats=truth, rows=tuple(rows)
    )


# ---------------------------------------------------------------------------
# CSV emission.  Floats are serialized with 17 significant digits so that
# parsing an emitted file reproduces every numeric field exactly.
# ---------------------------------------------------------------------------


def format_csv_value(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path: str | Path, columns: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_csv_value(value) for value in row])


def summary_csv_row(summary: RunSummary) -> tuple[object, ...]:
    config, truth = summary.config, summary.stats
    return (
        config.method,
        config.p,
        config.pool,
        config.runs,
        config.base_seed,
        config.shuffle,
        summary.mean_estimate,
        summary.observed_rse,
        summary.mean_triangles_observed,
        summary.mean_sample_size,
        summary.predicted_rse,
        truth.node_count,
        truth.edge_count,
        truth.triangles,
        truth.wedges,
        truth.shared_pairs,
        truth.clustering,
    )


def write_summary_csv(summary: RunSummary, path: str | Path) -> None:
    _write_csv(path, SUMMARY_CSV_COLUMNS, [summary_csv_row(summary)])


def read_summary_csv(path: str | Path) -> list[dict[str, object]]:
    """Parse a summary CSV back into typed values (exact float round-trip)."""
    int_columns = {
        "pool", "runs", "base_seed",
        "oracle_nodes", "oracle_edges", "oracle_triangles",
        "oracle_wedges", "oracle_shared_pairs",
    }
    text_columns = {"method", "shuffle"}
    rows: list[dict[str, object]] = []
    with open(path, newline="", encoding="utf-8") as handle:
        for raw in csv.DictReader(handle):
            row: dict[str, object] = {}
            for key, value in raw.items():
                if value == "":
                    row[key] = None
                elif key in text_columns:
                    row[key] = value
                elif key in int_columns:
                    row[key] = int(value)
                else:
                    row[key] = float(value)
            rows.append(row)
    return rows


def sweep_csv_rows(report: SweepReport) -> list[tuple[object, ...]]:
    return [
        (
            row.target_rse,
            row.observed_rse,
            row.predicted_rse,
            row.mean_triangles_observed,
            row.mean_sample_size,
        )
        for row in report.rows
    ]


def write_sweep_csv(report: SweepReport, path: str | Path) -> None:
    _write_csv(path, SWEEP_CSV_COLUMNS, sweep_csv_rows(report))


def ratio_csv_row(report: RatioReport) -> tuple[object, ...]:
    truth = report.stats
    return (
        report.input_name,
        truth.node_count,
        truth.edge_count,
        truth.triangles,
        truth.wedges,
        truth.clustering,
        truth.node_count * truth.clustering,
        report.target_rse,
        report.runs,
        report.nes_p,
        report.pes_p,
        report.pes_pool,
        report.saturated,
        report.nes_summary.observed_rse,
        report.pes_summary.observed_rse,
        report.nes_summary.mean_sample_size,
        report.pes_summary.mean_sample_size,
        report.observed_size_ratio,
        report.observed_probability_ratio,
        report.predicted_ratio,
    )


def write_ratio_csv(report: RatioReport, path: str | Path) -> None:
    _write_csv(path, RATIO_CSV_COLUMNS, [ratio_csv_row(report)])
