import csv
import io
import json

import pytest

from dagum import cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rejoin(text: str) -> str:
    """Re-read a CSV document and re-emit it; fields carry no quoting."""
    rows = list(csv.reader(io.StringIO(text)))
    return "\n".join(",".join(row) for row in rows) + "\n"


def test_eval_single_point(capsys):
    code, out, _ = run(["eval", "dagum", "--beta", "1", "--gamma", "1", "--x", "1"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,value"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.5)


def test_eval_rejects_bad_params(capsys):
    code, out, err = run(["eval", "dagum", "--beta", "-1", "--gamma", "1", "--x", "1"], capsys)
    assert code == 2
    assert "invalid parameters" in err
    code, _, _ = run(["eval", "dagum", "--beta", "1", "--gamma", "1"], capsys)
    assert code == 2
    code, _, _ = run(
        ["eval", "dagum", "--beta", "1", "--gamma", "1", "--x", "1", "--grid", "0:1:5"],
        capsys,
    )
    assert code == 2


def test_eval_grid_row_count(capsys):
    code, out, _ = run(
        ["eval", "cauchy", "--theta", "1", "--eta", "1", "--grid", "0:10:11"], capsys
    )
    assert code == 0
    rows = out.strip().split("\n")
    assert len(rows) == 12  # header + 11
    assert float(rows[1].split(",")[1]) == pytest.approx(1.0)


def test_eval_csv_round_trip(capsys):
    code, out, _ = run(
        ["eval", "dagum5", "--gamma", "1", "--epsilon", "0.5", "--grid", "0:5:7"], capsys
    )
    assert code == 0
    assert rejoin(out) == out


def test_unknown_model_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "matern", "--x", "1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_classify_dagum_cm(capsys):
    code, out, _ = run(["classify", "dagum", "--beta", "0.5", "--gamma", "1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "ProvenCM"
    assert payload["basis"] == "Theorem 9(i)"


def test_classify_dagum_product_slightly_above_one(capsys):
    code, out, _ = run(["classify", "dagum", "--beta", "1.5", "--gamma", "0.6667"], capsys)
    assert code == 0
    assert json.loads(out)["status"] == "ProvenNotCM"


def test_classify_g_not_cm(capsys):
    code, out, _ = run(["classify", "g", "--alpha", "0.5", "--lambda", "0.5"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "ProvenNotCM"
    assert payload["basis"] == "Remark 4(v)"


def test_classify_requires_family_params(capsys):
    code, _, err = run(["classify", "dagum", "--beta", "0.5"], capsys)
    assert code == 2
    code, _, err = run(
        ["classify", "g", "--alpha", "0.5", "--lambda", "0.5", "--beta", "1"], capsys
    )
    assert code == 2


def test_figure1_small_grid(tmp_path, capsys):
    out_path = tmp_path / "fig1.csv"
    code, _, _ = run(["figure1", "--grid", "1:2:11", "-o", str(out_path)], capsys)
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "beta,psi_max,one_plus_inv_beta,l_beta"
    assert len(lines) == 13  # header + 11 rows + beta_star line
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(1.0, abs=1e-6)
    assert float(first[3]) == pytest.approx(0.0, abs=1e-6)
    last_row = lines[11].split(",")
    assert float(last_row[1]) == pytest.approx(2.0, abs=1e-6)
    assert float(last_row[3]) == pytest.approx(2.0, abs=1e-6)
    assert lines[12].startswith("# beta_star,")
    star = float(lines[12].split(",")[1])
    assert 1.70 <= star <= 1.78


def test_figure1_nonconvergence_keeps_partial_file(tmp_path, monkeypatch, capsys):
    from dagum import classify
    from dagum.errors import ConvergenceError

    real_psi_max = classify.psi_max

    def flaky(beta, tol=1e-9):
        if beta > 1.35:
            raise ConvergenceError("forced for the exit-code contract")
        return real_psi_max(beta, tol)

    monkeypatch.setattr(cli.C, "psi_max", flaky)
    out_path = tmp_path / "partial.csv"
    code = cli.main(["figure1", "--grid", "1:2:11", "-o", str(out_path)])
    capsys.readouterr()
    assert code == 3
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "beta,psi_max,one_plus_inv_beta,l_beta"
    assert lines[-1].startswith("# error,non-convergence")
    assert len(lines) > 2  # rows before the failure were retained


def test_figure1_rejects_small_grid(capsys):
    code, _, _ = run(["figure1", "--grid", "1:2:5"], capsys)
    assert code == 2
    code, _, _ = run(["figure1", "--grid", "nonsense"], capsys)
    assert code == 2


def test_psd_command(capsys):
    code, out, _ = run(
        [
            "psd", "dagum", "--beta", "0.5", "--gamma", "1",
            "--dims", "1,2", "--n", "20", "--sets", "2", "--seed", "7",
        ],
        capsys,
    )
    assert code == 0
    rows = out.strip().split("\n")
    assert len(rows) == 5  # header + 2 dims x 2 sets
    assert all(row.endswith(",psd") for row in rows[1:])
    assert rejoin(out) == out


def test_search_deterministic_files(tmp_path, capsys):
    args = [
        "search", "g", "--alpha", "0.5", "--lambda", "0.5",
        "--dmax", "3", "--n", "30", "--trials", "10", "--seed", "3",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["-o", str(a)]) == 0
    assert cli.main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_search_reports_absence(capsys):
    code, out, _ = run(
        [
            "search", "dagum", "--beta", "0.5", "--gamma", "1",
            "--dmax", "2", "--n", "20", "--trials", "4", "--seed", "1",
        ],
        capsys,
    )
    assert code == 0
    assert "# none" in out
    assert "proves nothing" in out


def test_simulate_deterministic_and_permissibility(tmp_path, capsys):
    args = [
        "simulate", "dagum5", "--gamma", "1", "--epsilon", "0.5",
        "--n", "64", "--spacing", "1.0", "--seed", "1",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["-o", str(a)]) == 0
    assert cli.main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()
    code, _, err = run(
        [
            "simulate", "g", "--alpha", "0.5", "--lambda", "0.5",
            "--n", "8", "--spacing", "0.1", "--seed", "0",
        ],
        capsys,
    )
    assert code == 4


def test_decouple_command(capsys):
    code, out, _ = run(
        ["decouple", "--family", "dagum5", "--gamma", "1", "--epsilon", "0.5"], capsys
    )
    assert code == 0
    rows = out.strip().split("\n")
    assert rows[0] == "family,params,local_exponent,tail_exponent"
    fields = rows[1].split(",")
    assert float(fields[2]) == pytest.approx(0.5, abs=0.02)
    assert float(fields[3]) == pytest.approx(-1.0, abs=0.02)
