import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from antihankel import HankelParams, build_hankel, jacobi_eigen
from antihankel.cli import dumps, fmt_float, main, read_batch, InputError


def run_cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_solve_json(capsys):
    status, out, _ = run_cli(capsys, "solve", "--n", "1", "--a", "1", "--b", "2", "--c", "3", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert set(doc) == {"n", "a", "b", "c", "eigenvalues", "diagnostics"}
    values = [e["value"] for e in doc["eigenvalues"]]
    oracle = jacobi_eigen(build_hankel(HankelParams(1, 1, 2, 3))).values
    np.testing.assert_allclose(values, oracle, atol=1e-9)
    assert all(set(e) == {"value", "kind", "residual"} for e in doc["eigenvalues"])


def test_solve_exchange_csv(capsys):
    status, out, _ = run_cli(capsys, "solve", "--n", "5", "--a", "0", "--b", "0", "--c", "1", "--format", "csv")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["index", "value", "kind", "residual"]
    values = np.array([float(r["value"]) for r in rows])
    assert np.sum(np.isclose(values, 1.0, atol=1e-14)) == 4
    assert np.sum(np.isclose(values, -1.0, atol=1e-14)) == 3
    assert {r["kind"] for r in rows} == {"POLE_VALUE"}


def test_solve_vectors(capsys):
    status, out, _ = run_cli(capsys, "solve", "--n", "3", "--a", "1", "--b", "-1", "--c", "0.5", "--vectors")
    assert status == 0
    doc = json.loads(out)
    h = build_hankel(HankelParams(3, 1, -1, 0.5))
    for e in doc["eigenvalues"]:
        v = np.array(e["vector"])
        assert np.linalg.norm(h @ v - e["value"] * v) <= 1e-8 * (1 + np.max(np.abs(h)))
        assert e["method"] in ("closed_form", "inverse_iteration")


def test_solve_vectors_csv_columns(capsys):
    _, out, _ = run_cli(capsys, "solve", "--n", "2", "--a", "1", "--b", "1", "--c", "1", "--vectors", "--format", "csv")
    header = out.splitlines()[0].split(",")
    assert header == ["index", "value", "kind", "residual", "v1", "v2", "v3", "v4"]


def test_verify(capsys):
    status, out, _ = run_cli(capsys, "verify", "--n", "6", "--a", "1.7", "--b", "-0.4", "--c", "0.9")
    assert status == 0
    doc = json.loads(out)
    assert max(doc["decomposition"].values()) <= 1e-11
    assert doc["brackets"]["contained"] is True
    assert doc["residuals"]["within_limit"] is True


def test_verify_csv(capsys):
    _, out, _ = run_cli(capsys, "verify", "--n", "3", "--a", "1", "--b", "2", "--c", "3", "--format", "csv")
    rows = dict(r for r in csv.reader(io.StringIO(out)))
    assert rows.pop("metric") == "value"
    assert rows["brackets.contained"] == "true"


def test_oracle_mode(capsys):
    status, out, _ = run_cli(capsys, "oracle", "--n", "2", "--a", "0", "--b", "0", "--c", "1")
    assert status == 0
    doc = json.loads(out)
    np.testing.assert_allclose([e["value"] for e in doc["eigenvalues"]], [-1, -1, 1, 1], atol=1e-14)
    assert doc["diagnostics"]["sweeps"] >= 1


def test_compare_match_and_mismatch(capsys):
    args = ["compare", "--n", "7", "--a", "1.2", "--b", "-0.7", "--c", "0.3"]
    status, out, _ = run_cli(capsys, *args)
    doc = json.loads(out)
    assert status == 0
    assert doc["comparison"]["max_abs_diff"] <= 1e-8
    assert doc["comparison"]["match"] is True
    status, out, _ = run_cli(capsys, *args, "--tol-compare", "1e-30")
    assert status == 1
    assert json.loads(out)["comparison"]["match"] is False


def test_batch_preserves_order(tmp_path, capsys, monkeypatch):
    batch = tmp_path / "in.txt"
    batch.write_text("# n a b c\n3 1 2 3\n\n1 0 0 1   # exchange\n8 -1 0.5 2\n")
    monkeypatch.setenv("ANTIHANKEL_THREADS", "3")
    status, out, _ = run_cli(capsys, "solve", "--batch", str(batch))
    assert status == 0
    docs = json.loads(out)
    assert [d["n"] for d in docs] == [3, 1, 8]
    monkeypatch.setenv("ANTIHANKEL_THREADS", "1")
    _, serial, _ = run_cli(capsys, "solve", "--batch", str(batch))
    assert serial == out


def test_batch_csv_instance_column(tmp_path, capsys):
    batch = tmp_path / "in.txt"
    batch.write_text("1 1 2 3\n2 0 0 1\n")
    _, out, _ = run_cli(capsys, "solve", "--batch", str(batch), "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0])[:2] == ["instance", "index"]
    assert [r["instance"] for r in rows] == ["1"] * 3 + ["2"] * 4


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    status, out, _ = run_cli(capsys, "solve", "--n", "1", "--a", "1", "--b", "2", "--c", "3", "--out", str(target))
    assert status == 0 and out == ""
    assert len(json.loads(target.read_text())["eigenvalues"]) == 3


def test_deterministic_output(capsys):
    args = ["solve", "--n", "9", "--a", "0.3", "--b", "-2.1", "--c", "1.4", "--vectors"]
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_bench(capsys):
    status, out, _ = run_cli(capsys, "bench", "--sizes", "8,16", "--format", "csv")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["size"] for r in rows] == ["8", "16"]
    assert set(rows[0]) == {"size", "spectrum", "roots", "vectors", "oracle", "secular_faster"}
    assert all(float(r["roots"]) > 0 for r in rows)


def test_bench_single_size_from_n(capsys):
    _, out, _ = run_cli(capsys, "bench", "--n", "4")
    assert [r["size"] for r in json.loads(out)["rows"]] == [6]


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["solve"],
            ["solve", "--n", "1", "--a", "1", "--b", "1"],
            ["frobnicate", "--n", "1", "--a", "1", "--b", "1", "--c", "1"],
            ["solve", "--n", "0", "--a", "1", "--b", "1", "--c", "1"],
            ["solve", "--n", "1", "--a", "x", "--b", "1", "--c", "1"],
            ["solve", "--n", "1", "--a", "1", "--b", "1", "--c", "1", "--tol", "0"],
            ["solve", "--n", "1", "--a", "nan", "--b", "1", "--c", "1"],
            ["solve", "--batch", "f", "--n", "1"],
            ["bench", "--sizes", "2,8"],
            ["solve", "--n", "1", "--a", "1", "--b", "1", "--c", "1", "--format", "xml"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        status, _, err = run_cli(capsys, *argv)
        assert status == 2
        assert "usage" in err

    def test_unreadable_batch(self, capsys, tmp_path):
        status, out, _ = run_cli(capsys, "solve", "--batch", str(tmp_path / "missing.txt"))
        assert status == 2
        assert json.loads(out)["error"]["type"] == "INPUT_ERROR"

    @pytest.mark.parametrize("content", ["1 2 3\n", "x 1 2 3\n", "0 1 1 1\n", "# nothing\n"])
    def test_malformed_batch(self, tmp_path, content):
        path = tmp_path / "bad.txt"
        path.write_text(content)
        with pytest.raises(InputError):
            read_batch(str(path))

    def test_bad_thread_env(self, capsys, monkeypatch):
        monkeypatch.setenv("ANTIHANKEL_THREADS", "-2")
        status, out, _ = run_cli(capsys, "solve", "--n", "1", "--a", "1", "--b", "1", "--c", "1")
        assert status == 2
        assert "ANTIHANKEL_THREADS" in json.loads(out)["error"]["message"]

    def test_diagnostic_error_object(self, capsys, monkeypatch, tmp_path):
        from antihankel import solver

        def starved(ctx, brackets, tol, start):
            return solver._Isolation(np.array([]), start, 0)

        monkeypatch.setattr(solver, "_isolate", starved)
        status, out, _ = run_cli(capsys, "solve", "--n", "1", "--a", "1", "--b", "2", "--c", "3")
        assert status == 3
        assert json.loads(out)["error"]["type"] == "INCOMPLETE_SPECTRUM"
        status, out, _ = run_cli(capsys, "solve", "--n", "1", "--a", "1", "--b", "2", "--c", "3", "--format", "csv")
        assert status == 3
        assert json.loads(out)["error"]["type"] == "INCOMPLETE_SPECTRUM"

        batch = tmp_path / "in.txt"
        batch.write_text("1 1 2 3\n2 0 0 1\n")
        status, out, err = run_cli(capsys, "solve", "--batch", str(batch), "--format", "csv")
        assert status == 3
        assert json.loads(err.splitlines()[0])["instance"] == 1
        assert out.splitlines()[0].startswith("instance,")


class TestFormatting:
    def test_seventeen_digits(self):
        assert fmt_float(0.1) == "0.10000000000000001"
        assert fmt_float(float("inf")) == "null"

    def test_dumps_roundtrip(self):
        obj = {"x": [0.1, 2, None, True], "y": np.float64(1 / 3), "z": np.arange(2)}
        back = json.loads(dumps(obj))
        assert back == {"x": [0.1, 2, None, True], "y": 1 / 3, "z": [0, 1]}

    def test_dumps_rejects_unknown(self):
        with pytest.raises(TypeError):
            dumps(object())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "antihankel", "solve", "--n", "1", "--a", "0", "--b", "0", "--c", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["eigenvalues"]) == 3
