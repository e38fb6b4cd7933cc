import json

import pytest

from gmds.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_er_writes_expected_edge_count(tmp_path, capsys):
    out = tmp_path / "g.tsv"
    code, _, _ = run(["gen-er", "--n", "100", "--c", "10", "--weights", "paper",
                      "--theta", "1.0", "--seed", "7", "--out", str(out)], capsys)
    assert code == 0
    lines = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
    assert len(lines) == 500


def test_gen_er_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    run(["gen-er", "--n", "50", "--c", "4", "--seed", "3", "--out", str(a)], capsys)
    run(["gen-er", "--n", "50", "--c", "4", "--seed", "3", "--out", str(b)], capsys)
    assert a.read_text() == b.read_text()


def test_solve_bp_json_schema(tmp_path, capsys):
    g = tmp_path / "g.tsv"
    run(["gen-er", "--n", "60", "--c", "5", "--seed", "1", "--out", str(g)], capsys)
    code, out, _ = run(["solve-bp", "--graph", str(g), "--beta", "2.0"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    for key in ("rho", "f", "s", "converged", "residual"):
        assert key in data


def test_scan_beta_csv(tmp_path, capsys):
    g = tmp_path / "g.tsv"
    run(["gen-er", "--n", "60", "--c", "5", "--seed", "1", "--out", str(g)], capsys)
    code, out, _ = run(["scan-beta", "--graph", str(g), "--betas", "1:2:0.5"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "beta,rho,f,s,converged,residual"
    assert len([l for l in lines if not l.startswith("#")]) == 4
    assert lines[-1].startswith("# rho0=")


def test_bpd_beats_or_matches_nothing_smaller_than_exact(tmp_path, capsys):
    g = tmp_path / "g.tsv"
    run(["gen-er", "--n", "14", "--c", "4", "--seed", "2", "--out", str(g)], capsys)
    code, out, _ = run(["bpd", "--graph", str(g), "--beta", "8.0", "--seed", "1"], capsys)
    assert code == 0
    bpd_size = json.loads(out)["size"]
    code, out, _ = run(["exact-mds", "--graph", str(g)], capsys)
    assert code == 0
    exact_size = json.loads(out)["size"]
    assert bpd_size >= exact_size


def test_exact_mds_refusal_exit_code(tmp_path, capsys):
    g = tmp_path / "g.tsv"
    run(["gen-er", "--n", "100", "--c", "4", "--seed", "2", "--out", str(g)], capsys)
    code, _, err = run(["exact-mds", "--graph", str(g)], capsys)
    assert code == 2
    assert "refus" in err.lower()


def test_unknown_subcommand_exits_one(capsys):
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 1


def test_unknown_flag_exits_one(tmp_path, capsys):
    code, _, _ = run(["gen-er", "--n", "10", "--c", "2", "--seed", "1",
                      "--frobnicate", "x"], capsys)
    assert code == 1


def test_input_error_exits_one(tmp_path, capsys):
    out = tmp_path / "g.tsv"
    code, _, err = run(["gen-er", "--n", "4", "--c", "3.9", "--seed", "1",
                        "--out", str(out)], capsys)
    assert code == 1
    assert "error" in err.lower()


def test_summarize_and_evaluate_round_trip(tmp_path, capsys):
    doc = tmp_path / "doc.txt"
    doc.write_text("Tom is looking at his children with a smile. "
                   "These children are good at singing.")
    summary = tmp_path / "summary.json"
    code, _, _ = run(["summarize", "--text", str(doc), "--method", "bpd",
                      "--theta", "1.0", "--out", str(summary)], capsys)
    assert code == 0
    data = json.loads(summary.read_text())
    assert data["selected_ids"] == [0, 1]
    assert data["schema_version"] == 1

    ref = tmp_path / "ref.txt"
    ref.write_text("0 1")
    code, out, _ = run(["evaluate", "--system", str(summary), "--reference",
                        str(ref), "--metric", "coverage"], capsys)
    assert code == 0
    cov = json.loads(out)
    assert cov["r_cov"] == 1.0
    assert cov["r_dif"] == 0.0


def test_evaluate_rouge_schema(tmp_path, capsys):
    sys_f = tmp_path / "sys.txt"
    ref_f = tmp_path / "ref.txt"
    sys_f.write_text("a b e")
    ref_f.write_text("a b c d")
    code, out, _ = run(["evaluate", "--system", str(sys_f), "--reference",
                        str(ref_f), "--metric", "rouge"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["recall"] == pytest.approx(0.5)
    assert data["precision"] == pytest.approx(2 / 3)
    assert data["fscore"] == pytest.approx(4 / 7)


def test_summarize_pagerank_budget(tmp_path, capsys):
    doc = tmp_path / "doc.txt"
    doc.write_text("The solar probe launched yesterday. It studies coronal heating. "
                   "Scientists expect new data soon. The mission lasts seven years.")
    code, out, _ = run(["summarize", "--text", str(doc), "--method", "pagerank",
                        "--theta", "0.2", "--word-budget", "8"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["total_words"] >= 8


def test_rs_ensemble_csv(capsys):
    code, out, _ = run(["rs-ensemble", "--c", "3", "--beta-grid", "1:2:1",
                        "--pop-size", "2000", "--equil-sweeps", "30",
                        "--extra-sweeps", "15", "--samples", "1000"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "beta,rho,rho_err,f,f_err,s,s_err"
    assert len(lines) >= 3


def test_rho0_curve_csv(capsys):
    code, out, _ = run(["rho0-curve", "--c-grid", "3:3:1", "--beta-grid", "2:12:2",
                        "--pop-size", "2000", "--equil-sweeps", "40",
                        "--extra-sweeps", "20", "--samples", "1000"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "c,rho0"
    assert len(lines) == 2
    c_val, rho0 = lines[1].split(",")
    assert float(c_val) == 3.0
    assert 0.2 < float(rho0) < 0.55
