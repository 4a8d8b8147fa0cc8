import io
import json

import numpy as np
import pytest

from homothetics.cli import main


def run_cli(capsys, argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_regular_simplex(self, capsys):
        code, out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "3"])
        assert code == 0
        obj = json.loads(out)
        assert obj["pointset"]["dim"] == 3
        assert len(obj["pointset"]["points"]) == 4
        assert obj["container"]["kind"] == "dual"

    def test_random_reproducible(self, capsys):
        code, out1, _ = run_cli(capsys, ["gen", "random", "--dim", "2", "--n", "5", "--seed", "9"])
        assert code == 0
        _, out2, _ = run_cli(capsys, ["gen", "random", "--dim", "2", "--n", "5", "--seed", "9"])
        assert out1 == out2

    def test_families(self, capsys):
        for fam, extra in (
            ("cap", []),
            ("sym-prism", ["--k", "2"]),
            ("box-ambiguity", ["--tau", "0.5"]),
            ("ball", []),
            ("box", []),
            ("cross", []),
        ):
            code, out, _ = run_cli(capsys, ["gen", fam, "--dim", "3", *extra])
            assert code == 0 and json.loads(out)


class TestSolve:
    def test_pipe_simplex_into_neg_simplex(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "3"])
        code, out, _ = run_cli(
            capsys, ["solve", "--container", "neg-simplex"], stdin=gen_out, monkeypatch=monkeypatch
        )
        assert code == 0
        sol = json.loads(out)
        assert sol["rho"] == pytest.approx(3.0, abs=1e-7)

    def test_certificate_attached(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "2"])
        code, out, _ = run_cli(
            capsys,
            ["solve", "--container", "neg-simplex", "--certificate"],
            stdin=gen_out,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        cert = json.loads(out)["certificate"]
        lam = np.array(cert["lambda"])
        normals = np.array(cert["normals"])
        assert lam.sum() == pytest.approx(1.0)
        assert np.max(np.abs(lam @ normals)) < 1e-7

    def test_file_input(self, capsys, tmp_path):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "2"])
        path = tmp_path / "inst.json"
        path.write_text(gen_out)
        code, out, _ = run_cli(capsys, ["solve", "--input", str(path), "--container", "ball"])
        assert code == 0
        assert json.loads(out)["rho"] == pytest.approx(np.sqrt(2.0), abs=1e-9)

    def test_malformed_input_exit_2(self, capsys, monkeypatch):
        code, _, err = run_cli(capsys, ["solve"], stdin="{not json", monkeypatch=monkeypatch)
        assert code == 2
        assert "error" in json.loads(err)

    def test_missing_container_exit_2(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys, ["solve"], stdin='{"dim": 2, "points": [[0, 0]]}', monkeypatch=monkeypatch
        )
        assert code == 2
        assert "error" in json.loads(err)


class TestRadiiCoresetAsym:
    def test_radii(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "3"])
        code, out, _ = run_cli(
            capsys, ["radii", "--k", "2", "--container", "cap"], stdin=gen_out, monkeypatch=monkeypatch
        )
        assert code == 0
        res = json.loads(out)
        assert res["value"] == pytest.approx(2.0, abs=1e-7)
        assert len(res["witness"]) <= 3

    def test_coreset_exact_matches_sharp_size(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "3"])
        code, out, _ = run_cli(
            capsys,
            ["coreset", "--eps", "0.5", "--exact", "--container", "neg-simplex"],
            stdin=gen_out,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out)["size"] == 3

    def test_coreset_greedy_and_zero(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "random", "--dim", "3", "--n", "30", "--seed", "4"])
        for flag in ([], ["--zero"]):
            code, out, _ = run_cli(
                capsys,
                ["coreset", "--eps", "0.25", "--container", "ball", *flag],
                stdin=gen_out,
                monkeypatch=monkeypatch,
            )
            assert code == 0
            res = json.loads(out)
            assert res["size"] == len(res["indices"])

    def test_asym(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "cap", "--dim", "3"])
        code, out, _ = run_cli(capsys, ["asym"], stdin=gen_out, monkeypatch=monkeypatch)
        assert code == 0
        assert json.loads(out)["asymmetry"] == pytest.approx(1.0, abs=1e-7)

    def test_tolerance_override(self, capsys, monkeypatch):
        _, gen_out, _ = run_cli(capsys, ["gen", "regular-simplex", "--dim", "2"])
        code, out, _ = run_cli(
            capsys,
            ["solve", "--container", "ball", "--tol-eq", "1e-5"],
            stdin=gen_out,
            monkeypatch=monkeypatch,
        )
        assert code == 0


class TestVerify:
    def test_single_experiment_json(self, capsys):
        code, out, err = run_cli(capsys, ["verify", "panigrahy"])
        assert code == 0
        reports = json.loads(out)
        assert reports[0]["experiment"] == "panigrahy"
        assert reports[0]["passed"] is True
        assert "# panigrahy" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "core-radii-neg-simplex", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "experiment,instance,param,computed,reference,deviation,pass"
        assert all(len(line.split(",")) == 7 for line in lines[1:])

    def test_append_to_file(self, capsys, tmp_path):
        out_file = tmp_path / "report.csv"
        for _ in range(2):
            code, _, _ = run_cli(
                capsys, ["verify", "panigrahy", "--format", "csv", "--out", str(out_file)]
            )
            assert code == 0
        text = out_file.read_text().strip().splitlines()
        assert len(text) == 2 * 5  # header + 4 rows, appended twice

    def test_unknown_experiment_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "warp-drive"])
        assert exc.value.code == 2

    def test_verify_without_id_exit_2(self, capsys):
        code, _, err = run_cli(capsys, ["verify"])
        assert code == 2
        assert "error" in json.loads(err)

    def test_identical_invocations_identical_rows(self, capsys):
        _, out1, _ = run_cli(capsys, ["verify", "core-radii-neg-simplex", "--format", "csv"])
        _, out2, _ = run_cli(capsys, ["verify", "core-radii-neg-simplex", "--format", "csv"])
        assert out1 == out2
