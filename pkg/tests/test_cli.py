from __future__ import annotations

import gzip

from tristream.cli import main

from conftest import TOY_TEXT


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------


def test_stats_toy_graph(capsys, toy_file):
    code, out, err = run_cli(capsys, "stats", "--input", str(toy_file))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == (
        "N=11 M=13 triangles=3 wedges=32 shared_pairs=1 clustering=0.28125"
    )
    assert lines[1] == "N,M,triangles,wedges,shared_pairs,clustering"
    assert lines[2] == "11,13,3,32,1,0.28125"
    assert err == ""


def test_stats_gzip_input(capsys, tmp_path):
    path = tmp_path / "toy.txt.gz"
    path.write_bytes(gzip.compress(TOY_TEXT.encode()))
    code, out, _ = run_cli(capsys, "stats", "--input", str(path))
    assert code == 0
    assert "triangles=3" in out


def test_stats_missing_file(capsys, tmp_path):
    code, out, err = run_cli(capsys, "stats", "--input", str(tmp_path / "nope.txt"))
    assert code == 2
    assert out == ""
    assert "error" in err


def test_stats_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\nnot numbers\n")
    code, _, err = run_cli(capsys, "stats", "--input", str(path))
    assert code == 2
    assert "line 2" in err


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------


def test_estimate_full_sampling_is_exact(capsys, toy_file):
    code, out, _ = run_cli(
        capsys, "estimate", "--method", "pes", "--p", "1.0", "--pool", "1000",
        "--seed", "7", "--input", str(toy_file), "--shuffle", "none",
    )
    assert code == 0
    assert "estimate=3 " in out
    assert "method=pes" in out
    assert "candidate_wedges=32" in out


def test_estimate_rejects_bad_probability(capsys, toy_file):
    code, out, err = run_cli(
        capsys, "estimate", "--method", "pes", "--p", "0", "--pool", "4",
        "--input", str(toy_file),
    )
    assert code == 1
    assert "p" in err
    assert out == ""


def test_estimate_requires_pool_for_pes(capsys, toy_file):
    code, _, err = run_cli(
        capsys, "estimate", "--method", "pes", "--p", "0.5", "--input", str(toy_file)
    )
    assert code == 1
    assert "--pool" in err


def test_estimate_rejects_pool_for_nes(capsys, toy_file):
    code, _, err = run_cli(
        capsys, "estimate", "--method", "nes", "--p", "0.5", "--pool", "4",
        "--input", str(toy_file),
    )
    assert code == 1


def test_estimate_deterministic_stdout(capsys, toy_file):
    argv = (
        "estimate", "--method", "pes", "--p", "0.4", "--pool", "8",
        "--seed", "123", "--input", str(toy_file),
    )
    code_a, out_a, _ = run_cli(capsys, *argv)
    code_b, out_b, _ = run_cli(capsys, *argv)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_estimate_nes_omits_pool_fields(capsys, toy_file):
    code, out, _ = run_cli(
        capsys, "estimate", "--method", "nes", "--p", "1.0",
        "--seed", "3", "--input", str(toy_file),
    )
    assert code == 0
    assert "q=" not in out
    assert "pool_size=" not in out
    assert "estimate=3 " in out


def test_estimate_triangle_free_reports_unavailable(capsys, tmp_path):
    path = tmp_path / "star.txt"
    path.write_text("0 1\n0 2\n0 3\n")
    code, out, _ = run_cli(
        capsys, "estimate", "--method", "nes", "--p", "1.0", "--input", str(path)
    )
    assert code == 0
    assert "estimate=0 " in out
    assert "estimated_rse=unavailable" in out


def test_estimate_csv_row(capsys, toy_file, tmp_path):
    csv_path = tmp_path / "est.csv"
    code, _, _ = run_cli(
        capsys, "estimate", "--method", "pes", "--p", "1.0", "--pool", "50",
        "--seed", "1", "--input", str(toy_file), "--csv", str(csv_path),
    )
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("method,estimate,p,q,")
    assert lines[1].startswith("pes,3,1,")


# ---------------------------------------------------------------------------
# usage errors
# ---------------------------------------------------------------------------


def test_unknown_flag(capsys, toy_file):
    code, _, err = run_cli(capsys, "stats", "--input", str(toy_file), "--bogus")
    assert code == 1
    assert err != ""


def test_unknown_command(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
    assert main(["estimate", "--help"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------------
# evaluate / compare / sweep / calibrate
# ---------------------------------------------------------------------------


def test_evaluate_writes_summary(capsys, tmp_path):
    from tristream import erdos_renyi, serialize_edge_list

    path = tmp_path / "er.txt"
    path.write_text(serialize_edge_list(erdos_renyi(30, 0.4, seed=21)))
    csv_path = tmp_path / "summary.csv"
    code, out, _ = run_cli(
        capsys, "evaluate", "--input", str(path), "--method", "nes", "--p", "0.5",
        "--runs", "40", "--seed", "9", "--csv", str(csv_path),
    )
    assert code == 0
    assert "observed_rse=" in out
    assert "mean_estimate=" in out
    header = csv_path.read_text().splitlines()[0]
    assert header.startswith("method,p,pool,runs,base_seed,shuffle,mean_estimate")


def test_evaluate_insufficient_runs(capsys, toy_file):
    code, _, err = run_cli(
        capsys, "evaluate", "--input", str(toy_file), "--method", "nes",
        "--p", "0.5", "--runs", "1",
    )
    assert code == 3
    assert "insufficient runs" in err


def test_compare_triangle_free_exits_infeasible(capsys, tmp_path):
    path = tmp_path / "star.txt"
    path.write_text("0 1\n0 2\n0 3\n0 4\n")
    code, _, err = run_cli(
        capsys, "compare", "--input", str(path), "--target-rse", "0.2", "--runs", "10"
    )
    assert code == 3
    assert "triangle count = 0" in err


def test_compare_on_toy_reports_saturated(capsys, toy_file):
    code, out, err = run_cli(
        capsys, "compare", "--input", str(toy_file), "--target-rse", "0.2",
        "--runs", "20", "--seed", "4",
    )
    assert code == 0
    assert "saturated=true" in out
    assert "not meaningful" in err


def test_sweep_stdout_and_csv(capsys, tmp_path):
    from tristream import erdos_renyi, serialize_edge_list

    path = tmp_path / "er.txt"
    path.write_text(serialize_edge_list(erdos_renyi(30, 0.4, seed=21)))
    csv_path = tmp_path / "sweep.csv"
    code, out, _ = run_cli(
        capsys, "sweep", "--input", str(path), "--method", "nes",
        "--targets", "0.2,0.4", "--runs", "30", "--seed", "2", "--csv", str(csv_path),
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "target_rse,observed_rse,predicted_rse,mean_triangles_observed,mean_sample_size"
    assert len(lines) == 3
    assert csv_path.read_text().splitlines()[0] == lines[0]


def test_sweep_empty_targets_succeeds(capsys, toy_file):
    code, out, _ = run_cli(
        capsys, "sweep", "--input", str(toy_file), "--method", "nes",
        "--targets", "", "--runs", "10",
    )
    assert code == 0
    assert len(out.splitlines()) == 1  # header only


def test_calibrate_toy(capsys, toy_file):
    code, out, _ = run_cli(
        capsys, "calibrate", "--input", str(toy_file), "--target-rse", "0.2"
    )
    assert code == 0
    assert "nes_p=1 nes_clamped=true" in out
    assert "pool_rule_n=32" in out  # heuristic capped at the wedge count
    assert "target_rse,nes_p" in out


def test_calibrate_triangle_free_exits_infeasible(capsys, tmp_path):
    path = tmp_path / "path.txt"
    path.write_text("0 1\n1 2\n2 3\n")
    code, _, err = run_cli(
        capsys, "calibrate", "--input", str(path), "--target-rse", "0.2"
    )
    assert code == 3
    assert "triangle count = 0" in err
