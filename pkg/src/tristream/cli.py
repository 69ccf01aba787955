"""Command-line interface.

One binary, six subcommands: stats, estimate, evaluate, compare, sweep,
calibrate.  Results go to stdout, diagnostics to stderr.  All randomness
flows from --seed, so identical argv gives byte-identical stdout.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or malformed
input), 3 experiment infeasible (e.g. no triangles for compare/calibrate).
"""

from __future__ import annotations

import argparse
import sys
from enum import IntEnum
from typing import Sequence

from .analysis import (
    PesParams,
    calibrate_nes,
    calibrate_pes,
    calibrate_pes_pool,
    pes_rse_full,
    pes_variance,
)
from .edgelist import ParseError, load_edge_list, shuffle_stream
from .estimators import EstimateResult, nes_run, pes_run
from .harness import (
    ExperimentConfig,
    InfeasibleError,
    RunSummary,
    format_csv_value,
    ratio_experiment,
    run_experiment,
    rse_sweep,
    write_ratio_csv,
    write_summary_csv,
    write_sweep_csv,
)
from .oracle import GraphStats, build_adjacency, compute_stats
from .randomness import SeededSource, mix_seed


class ExitStatus(IntEnum):
    OK = 0
    USAGE_ERROR = 1
    DATA_ERROR = 2
    INFEASIBLE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; raise instead so main() owns the exit code.
    def error(self, message: str):  # noqa: D102 - argparse override
        raise _UsageError(message)


def _fmt(value: object) -> str:
    """Human-readable value: shortest float form, 'unavailable' for None."""
    if value is None:
        return "unavailable"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _parse_targets(text: str) -> list[float]:
    if not text.strip():
        return []
    try:
        return [float(token) for token in text.split(",") if token.strip()]
    except ValueError as err:
        raise _UsageError(f"bad --targets value: {err}") from None


def _print_stats_text(stats: GraphStats) -> None:
    print(
        f"N={stats.node_count} M={stats.edge_count} "
        f"triangles={stats.triangles} wedges={stats.wedges} "
        f"shared_pairs={stats.shared_pairs} clustering={_fmt(stats.clustering)}"
    )


def _print_stats_csv(stats: GraphStats) -> None:
    print("N,M,triangles,wedges,shared_pairs,clustering")
    print(
        ",".join(
            format_csv_value(value)
            for value in (
                stats.node_count,
                stats.edge_count,
                stats.triangles,
                stats.wedges,
                stats.shared_pairs,
                stats.clustering,
            )
        )
    )


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = compute_stats(build_adjacency(load_edge_list(args.input)))
    _print_stats_text(stats)
    _print_stats_csv(stats)
    return ExitStatus.OK


def _estimate_fields(result: EstimateResult) -> list[tuple[str, object]]:
    fields: list[tuple[str, object]] = [
        ("method", result.method),
        ("estimate", result.estimate),
        ("p", result.p),
    ]
    if result.method == "pes":
        fields += [("q", result.q), ("candidate_wedges", result.candidate_wedges)]
    fields += [
        ("triangles_observed", result.triangles_observed),
        ("subgraph_edges", result.subgraph_edges),
    ]
    if result.method == "pes":
        fields.append(("pool_size", result.pool_size))
    fields += [
        ("sample_size", result.sample_size),
        ("estimated_rse", result.estimated_rse),
    ]
    return fields


def _require_pool(args: argparse.Namespace) -> None:
    if args.method == "pes" and args.pool is None:
        raise _UsageError("--pool is required with --method pes")
    if args.method == "nes" and args.pool is not None:
        raise _UsageError("--pool is only valid with --method pes")


def _cmd_estimate(args: argparse.Namespace) -> int:
    _require_pool(args)
    edges = load_edge_list(args.input)
    stream = edges
    if args.shuffle == "per-run":
        stream = shuffle_stream(edges, mix_seed(args.seed))
    rng = SeededSource(args.seed)
    if args.method == "nes":
        result = nes_run(stream, args.p, rng)
    else:
        result = pes_run(stream, args.p, args.pool, rng)
    fields = _estimate_fields(result)
    print(" ".join(f"{key}={_fmt(value)}" for key, value in fields))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            handle.write(",".join(key for key, _ in fields) + "\n")
            handle.write(",".join(format_csv_value(value) for _, value in fields) + "\n")
    return ExitStatus.OK


def _print_summary(summary: RunSummary) -> None:
    config = summary.config
    line = [
        ("method", config.method),
        ("p", config.p),
    ]
    if config.pool is not None:
        line.append(("pool", config.pool))
    line += [
        ("runs", config.runs),
        ("base_seed", config.base_seed),
        ("shuffle", config.shuffle),
    ]
    print(" ".join(f"{key}={_fmt(value)}" for key, value in line))
    _print_stats_text(summary.stats)
    print(
        f"mean_estimate={_fmt(summary.mean_estimate)} "
        f"observed_rse={_fmt(summary.observed_rse)} "
        f"mean_triangles_observed={_fmt(summary.mean_triangles_observed)} "
        f"mean_sample_size={_fmt(summary.mean_sample_size)} "
        f"predicted_rse={_fmt(summary.predicted_rse)}"
    )


def _cmd_evaluate(args: argparse.Namespace) -> int:
    _require_pool(args)
    edges = load_edge_list(args.input)
    config = ExperimentConfig(
        method=args.method,
        p=args.p,
        pool=args.pool,
        runs=args.runs,
        base_seed=args.seed,
        shuffle=args.shuffle,
        jobs=args.jobs,
    )
    summary = run_experiment(edges, config)
    _print_summary(summary)
    if args.csv:
        write_summary_csv(summary, args.csv)
    return ExitStatus.OK


def _cmd_compare(args: argparse.Namespace) -> int:
    edges = load_edge_list(args.input)
    report = ratio_experiment(
        edges,
        args.target_rse,
        args.runs,
        args.seed,
        jobs=args.jobs,
        shuffle=args.shuffle,
        input_name=str(args.input),
    )
    print(
        f"target_rse={_fmt(report.target_rse)} runs={report.runs} "
        f"nes_p={_fmt(report.nes_p)} pes_p={_fmt(report.pes_p)} "
        f"pes_pool={report.pes_pool} saturated={str(report.saturated).lower()}"
    )
    _print_stats_text(report.stats)
    print(
        f"nes_observed_rse={_fmt(report.nes_summary.observed_rse)} "
        f"pes_observed_rse={_fmt(report.pes_summary.observed_rse)} "
        f"observed_size_ratio={_fmt(report.observed_size_ratio)} "
        f"observed_probability_ratio={_fmt(report.observed_probability_ratio)} "
        f"predicted_ratio={_fmt(report.predicted_ratio)}"
    )
    if report.saturated:
        print("note: calibration clamped at p = 1; ratios are not meaningful", file=sys.stderr)
    if args.csv:
        write_ratio_csv(report, args.csv)
    return ExitStatus.OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    edges = load_edge_list(args.input)
    report = rse_sweep(
        edges, args.targets, args.method, args.runs, args.seed,
        jobs=args.jobs, shuffle=args.shuffle,
    )
    print(",".join(("target_rse", "observed_rse", "predicted_rse",
                    "mean_triangles_observed", "mean_sample_size")))
    for row in report.rows:
        print(
            ",".join(
                format_csv_value(value)
                for value in (
                    row.target_rse,
                    row.observed_rse,
                    row.predicted_rse,
                    row.mean_triangles_observed,
                    row.mean_sample_size,
                )
            )
        )
    if args.csv:
        write_sweep_csv(report, args.csv)
    return ExitStatus.OK


_CALIBRATE_COLUMNS = (
    "target_rse",
    "nes_p",
    "nes_clamped",
    "pes_p",
    "pes_pool",
    "pes_clamped",
    "pool_rule_n",
    "predicted_var_total",
    "predicted_var_unit",
    "predicted_var_shared",
    "predicted_var_indep",
    "predicted_rse_full",
)


def _cmd_calibrate(args: argparse.Namespace) -> int:
    edges = load_edge_list(args.input)
    stats = compute_stats(build_adjacency(edges))
    if stats.triangles == 0:
        raise InfeasibleError("calibration refused: graph has no triangles (triangle count = 0)")
    nes_cal = calibrate_nes(args.target_rse, stats.triangles)
    pes_cal = calibrate_pes(stats, args.target_rse)
    pool_rule = calibrate_pes_pool(args.target_rse, stats.clustering, wedge_cap=stats.wedges)
    variance = rse_full = None
    try:
        params = PesParams(p=pes_cal.p, pool=pes_cal.pool)
        variance = pes_variance(stats, params)
        rse_full = pes_rse_full(stats, params)
    except ValueError as err:
        print(f"note: variance prediction unavailable: {err}", file=sys.stderr)
    _print_stats_text(stats)
    print(
        f"nes_p={_fmt(nes_cal.value)} nes_clamped={str(nes_cal.clamped).lower()} "
        f"pes_p={_fmt(pes_cal.p)} pes_pool={pes_cal.pool} "
        f"pes_clamped={str(pes_cal.clamped).lower()} pool_rule_n={pool_rule}"
    )
    row = (
        args.target_rse,
        nes_cal.value,
        nes_cal.clamped,
        pes_cal.p,
        pes_cal.pool,
        pes_cal.clamped,
        pool_rule,
        variance.total if variance else None,
        variance.term_unit if variance else None,
        variance.term_shared if variance else None,
        variance.term_indep if variance else None,
        rse_full,
    )
    print(",".join(_CALIBRATE_COLUMNS))
    print(",".join(format_csv_value(value) for value in row))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            handle.write(",".join(_CALIBRATE_COLUMNS) + "\n")
            handle.write(",".join(format_csv_value(value) for value in row) + "\n")
    return ExitStatus.OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tristream",
        description="Streaming triangle estimation over randomly ordered edge streams.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, *, csv: bool = True) -> None:
        sub.add_argument("--input", required=True, help="edge-list file (optionally gzip)")
        if csv:
            sub.add_argument("--csv", default=None, help="also write results to this CSV file")

    stats_cmd = commands.add_parser("stats", help="exact graph statistics")
    common(stats_cmd, csv=False)
    stats_cmd.set_defaults(handler=_cmd_stats)

    estimate_cmd = commands.add_parser("estimate", help="single estimator run")
    common(estimate_cmd)
    estimate_cmd.add_argument("--method", required=True, choices=("nes", "pes"))
    estimate_cmd.add_argument("--p", required=True, type=float, help="edge sampling probability")
    estimate_cmd.add_argument("--pool", type=int, default=None, help="wedge pool capacity (pes)")
    estimate_cmd.add_argument("--seed", type=int, default=0)
    estimate_cmd.add_argument("--shuffle", choices=("per-run", "none"), default="per-run")
    estimate_cmd.set_defaults(handler=_cmd_estimate)

    evaluate_cmd = commands.add_parser("evaluate", help="k seeded runs with summary")
    common(evaluate_cmd)
    evaluate_cmd.add_argument("--method", required=True, choices=("nes", "pes"))
    evaluate_cmd.add_argument("--p", required=True, type=float)
    evaluate_cmd.add_argument("--pool", type=int, default=None)
    evaluate_cmd.add_argument("--seed", type=int, default=0)
    evaluate_cmd.add_argument("--runs", type=int, default=1000)
    evaluate_cmd.add_argument("--jobs", type=int, default=1)
    evaluate_cmd.add_argument("--shuffle", choices=("per-run", "fixed"), default="per-run")
    evaluate_cmd.set_defaults(handler=_cmd_evaluate)

    compare_cmd = commands.add_parser("compare", help="naive-vs-priority ratio study")
    common(compare_cmd)
    compare_cmd.add_argument("--target-rse", required=True, type=float)
    compare_cmd.add_argument("--seed", type=int, default=0)
    compare_cmd.add_argument("--runs", type=int, default=1000)
    compare_cmd.add_argument("--jobs", type=int, default=1)
    compare_cmd.add_argument("--shuffle", choices=("per-run", "fixed"), default="per-run")
    compare_cmd.set_defaults(handler=_cmd_compare)

    sweep_cmd = commands.add_parser("sweep", help="observed vs predicted RSE per target")
    common(sweep_cmd)
    sweep_cmd.add_argument("--method", required=True, choices=("nes", "pes"))
    sweep_cmd.add_argument("--targets", required=True, type=_parse_targets,
                           help="comma-separated target RSEs, e.g. 0.1,0.2,0.3,0.4")
    sweep_cmd.add_argument("--seed", type=int, default=0)
    sweep_cmd.add_argument("--runs", type=int, default=1000)
    sweep_cmd.add_argument("--jobs", type=int, default=1)
    sweep_cmd.add_argument("--shuffle", choices=("per-run", "fixed"), default="per-run")
    sweep_cmd.set_defaults(handler=_cmd_sweep)

    calibrate_cmd = commands.add_parser("calibrate", help="recommended parameters for a target RSE")
    common(calibrate_cmd)
    calibrate_cmd.add_argument("--target-rse", required=True, type=float)
    calibrate_cmd.set_defaults(handler=_cmd_calibrate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR
    except SystemExit as exc:  # --help paths
        return ExitStatus.OK if exc.code in (0, None) else ExitStatus.USAGE_ERROR
    try:
        return args.handler(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.DATA_ERROR
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.DATA_ERROR
    except InfeasibleError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.INFEASIBLE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR


def entry_point() -> None:
    sys.exit(int(main()))
