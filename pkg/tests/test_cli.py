import json

import pytest

from hatvol import acceptance
from hatvol import monomials
from hatvol.cli import main


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("HATVOL_TOL", "HATVOL_THREADS", "HATVOL_GRID_DEPTH"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def an2(workdir):
    return write(workdir / "an2.json", {"type": "monomial_pair", "n": 2, "coeffs": ["0", "0"]})


@pytest.fixture
def x2y3(workdir):
    return write(workdir / "x2y3.json", {"n": 2, "gens": [[2, 0], [0, 3]]})


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def result_of(out):
    return json.loads(out)["result"]


class TestCommands:
    def test_hvol_pair(self, capsys, an2):
        code, out, err = run(capsys, "hvol", "--model", an2)
        assert code == 0 and err == ""
        result = result_of(out)
        assert result["value"] == "4" and result["exact"] is True

    def test_hvol_toric(self, capsys, workdir):
        model = write(workdir / "a1.json", {"type": "toric", "rays": [[0, 1], [2, -1]]})
        code, out, _ = run(capsys, "hvol", "--model", model)
        result = result_of(out)
        assert code == 0 and result["value"] == "2" and result["exact"] is True
        assert json.loads(out)["warnings"]

    def test_lct(self, capsys, an2, x2y3):
        code, out, _ = run(capsys, "lct", "--model", an2, "--ideal", x2y3)
        assert code == 0
        assert result_of(out)["value"] == "5/6"

    def test_mult_and_colength(self, capsys, x2y3):
        code, out, _ = run(capsys, "mult", "--ideal", x2y3)
        assert code == 0 and result_of(out)["value"] == "6"
        code, out, _ = run(capsys, "colength", "--ideal", x2y3)
        assert code == 0 and result_of(out)["value"] == 6

    def test_hatl_exact(self, capsys, an2):
        code, out, _ = run(capsys, "hatl", "--model", an2, "--c", "1/8", "--k", "4", "--mode", "exact")
        assert code == 0
        result = result_of(out)
        assert result["value"] == "5"
        assert result["argmin"] == [[4, 0], [3, 1], [2, 2], [1, 3], [0, 4]]

    def test_scan_json_and_csv(self, capsys, an2):
        code, out, _ = run(capsys, "scan", "--model", an2, "--c", "1/8", "--k-min", "2", "--k-max", "5")
        assert code == 0
        result = result_of(out)
        assert [row["value"] for row in result["rows"]] == ["6", "16/3", "5", "24/5"]
        code, out, _ = run(
            capsys, "scan", "--model", an2, "--c", "1/8", "--k-min", "2", "--k-max", "4", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,value_num,value_den,argmin_gens,mode"
        assert lines[1].startswith("2,6,1,")

    def test_scan_default_constant(self, capsys, an2):
        code, out, _ = run(capsys, "scan", "--model", an2, "--k-max", "4")
        assert code == 0
        assert result_of(out)["c"] == "1/8"

    def test_lattice(self, capsys, workdir):
        body = write(workdir / "square.json", {"vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]})
        code, out, _ = run(capsys, "lattice", "--body", body, "--k-range", "5,10")
        assert code == 0
        result = result_of(out)
        assert result["rows"][-1] == {"k": 10, "error": "21/100"}
        assert result["volume"] == "1"

    def test_cone(self, capsys, workdir):
        model = write(workdir / "p2.json", {"type": "fano_cone", "polytope": [[0, 0], [3, 0], [0, 3]], "r": 1})
        code, out, _ = run(capsys, "cone", "--model", model)
        result = result_of(out)
        assert code == 0
        assert result["degree_bound"] == "9"
        assert result["m_covector"] == ["1", "1", "1"]

    def test_qbound(self, capsys, workdir):
        model = write(workdir / "p2.json", {"type": "fano_cone", "polytope": [[0, 0], [3, 0], [0, 3]], "r": 1})
        code, out, _ = run(capsys, "qbound", "--model", model, "--q", "3")
        result = result_of(out)
        assert code == 0 and result["value"] == "27" and result["holds"] is True

    def test_out_file(self, capsys, an2, workdir):
        target = workdir / "report.json"
        code, out, _ = run(capsys, "hvol", "--model", an2, "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["result"]["value"] == "4"


class TestErrorPaths:
    def test_missing_file(self, capsys, an2):
        code, out, err = run(capsys, "lct", "--model", an2, "--ideal", "nope.json")
        assert code == 2
        assert json.loads(err)["error"] == "missing-file"

    def test_budget_exceeded(self, capsys, an2):
        code, _, err = run(capsys, "hatl", "--model", an2, "--c", "1/8", "--k", "20")
        assert code == 3
        assert json.loads(err)["error"] == "enumeration-budget-exceeded"

    def test_infeasible_c(self, capsys, an2):
        code, _, err = run(capsys, "hatl", "--model", an2, "--c", "9", "--k", "4")
        assert code == 2
        assert json.loads(err)["error"] == "infeasible-c"

    def test_bad_threads(self, capsys, an2):
        code, _, err = run(capsys, "hvol", "--model", an2, "--threads", "0")
        assert code == 2

    def test_csv_unsupported(self, capsys, an2):
        code, _, err = run(capsys, "hvol", "--model", an2, "--format", "csv")
        assert code == 2
        assert json.loads(err)["error"] == "invalid-format"


class TestDeterminism:
    def test_byte_identical_results(self, capsys, an2, x2y3):
        outputs = set()
        for _ in range(2):
            _, out, _ = run(capsys, "lct", "--model", an2, "--ideal", x2y3)
            outputs.add(json.dumps(json.loads(out)["result"], sort_keys=True))
        assert len(outputs) == 1

    def test_toric_result_reproducible(self, capsys, workdir):
        model = write(workdir / "a1.json", {"type": "toric", "rays": [[0, 1], [2, -1]]})
        outputs = set()
        for _ in range(2):
            _, out, _ = run(capsys, "hvol", "--model", model)
            outputs.add(json.dumps(json.loads(out)["result"], sort_keys=True))
        assert len(outputs) == 1

    def test_result_round_trips(self, capsys, an2):
        _, out, _ = run(capsys, "hvol", "--model", an2)
        report = json.loads(out)
        assert json.loads(json.dumps(report)) == report

    def test_thread_setting_does_not_change_results(self, capsys, an2):
        payloads = set()
        for threads in ("1", "4"):
            _, out, _ = run(capsys, "hatl", "--model", an2, "--c", "1/8", "--k", "4", "--threads", threads)
            payloads.add(json.dumps(json.loads(out)["result"], sort_keys=True))
        assert len(payloads) == 1


class TestConfigPrecedence:
    def test_config_file_applies(self, capsys, workdir):
        model = write(workdir / "a1.json", {"type": "toric", "rays": [[0, 1], [2, -1]]})
        (workdir / "hatvol.toml").write_text("tol = 1e-7\n# comment\n")
        _, out, _ = run(capsys, "hvol", "--model", model)
        assert result_of(out)["tolerance"] == 1e-7

    def test_env_beats_file(self, capsys, workdir, monkeypatch):
        model = write(workdir / "a1.json", {"type": "toric", "rays": [[0, 1], [2, -1]]})
        (workdir / "hatvol.toml").write_text("tol = 1e-7\n")
        monkeypatch.setenv("HATVOL_TOL", "1e-8")
        _, out, _ = run(capsys, "hvol", "--model", model)
        assert result_of(out)["tolerance"] == 1e-8

    def test_flag_beats_env(self, capsys, workdir, monkeypatch):
        model = write(workdir / "a1.json", {"type": "toric", "rays": [[0, 1], [2, -1]]})
        monkeypatch.setenv("HATVOL_TOL", "1e-8")
        _, out, _ = run(capsys, "hvol", "--model", model, "--tol", "1e-6")
        assert result_of(out)["tolerance"] == 1e-6


class TestVerify:
    def test_tampered_multiplicity_trips_exit_four(self, monkeypatch):
        # off-by-n! multiplicities must trip the colength comparison hard
        true_mult = monomials.MonomialIdeal.multiplicity

        def doubled(self):
            return 2 * true_mult(self)

        monkeypatch.setattr(monomials.MonomialIdeal, "multiplicity", doubled)
        results = acceptance.run_suite("fast")
        assert acceptance.suite_exit_code(results) == 4
        lech = next(r for r in results if r.name == "colength-multiplicity-comparison")
        assert lech.hard_failure and not lech.passed
