"""Command-line interface, called in process through ``main``."""

import json

import pytest

from formstrength.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestQuadricCommands:
    def test_strength(self, capsys):
        data = run_json(capsys, "strength", "x1*x2 + x3*x4", "--field", "gf:5")
        assert data["rank"] == 4 and data["strength"] == 1

    def test_rank_list(self, capsys):
        data = run_json(capsys, "rank", "x1^2", "x1*x2 + x3*x4")
        assert [d["rank"] for d in data] == [1, 4]

    def test_collapse(self, capsys):
        data = run_json(capsys, "collapse", "x1*x2 + x3*x4", "--k", "1")
        assert data["witness"] is None
        data = run_json(capsys, "collapse", "x1^2 + x2^2", "--k", "1", "--field", "gf:3")
        assert data["witness"]["extension"] == 2

    def test_collapse_needs_k(self, capsys):
        code, _, err = run(capsys, "collapse", "x1*x2")
        assert code == 2 and "--k" in err

    def test_input_file(self, capsys, tmp_path):
        path = tmp_path / "forms.txt"
        path.write_text("# two forms\nx1*x2\nx1^2 + x2^2\n")
        data = run_json(capsys, "rank", "-i", str(path), "--field", "gf:7")
        assert [d["rank"] for d in data] == [2, 2]

    def test_classify(self, capsys):
        data = run_json(capsys, "classify", "x1*x2", "x1*x3", "--field", "gf:5", "--backend", "enumerate")
        assert data["kind"] == "CommonLinearFactor"
        assert data["min_rank"]["rank"] == 2

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "rank", "x1^2", "x1*x2", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["form,rank", "x1^2,1", "x1*x2,2"]


class TestErrors:
    def test_malformed(self, capsys):
        code, _, err = run(capsys, "rank", "x1 + * x2")
        assert code == 2 and "error" in err

    def test_wrong_degree(self, capsys):
        code, _, _ = run(capsys, "rank", "x1^3")
        assert code == 2

    def test_bad_field(self, capsys):
        code, _, _ = run(capsys, "rank", "x1^2", "--field", "gf:4")
        assert code == 2

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, "verify", "nope")
        assert code == 2

    def test_missing_bound_argument(self, capsys):
        code, _, err = run(capsys, "bounds", "etaB2", "--n1", "1")
        assert code == 2 and "--eta" in err


class TestBounds:
    def test_pd_range(self, capsys):
        data = run_json(capsys, "bounds", "pd-quadrics", "--n", "1..5")
        assert [r["value"] for r in data] == [1, 4, 20, 68, 196]

    def test_K4(self, capsys):
        data = run_json(capsys, "bounds", "K4", "--k", "1,2", "--cc", "NotTwoThree")
        assert [r["value"] for r in data] == [196, 147465]

    def test_discrepancy(self, capsys):
        data = run_json(capsys, "bounds", "etaB2", "--eta", "1", "--n1", "0", "--n2", "1")
        assert data[0]["value"] == 2 and data[0]["closed_form"] == 3
        assert data[0]["discrepancy"] is True

    def test_error_row(self, capsys):
        data = run_json(capsys, "bounds", "K4", "--k", "0")
        assert data[0]["value"] is None and data[0]["error"]
        code, _, _ = run(capsys, "bounds", "K4", "--k", "0", "--strict")
        assert code == 1

    def test_huge_value_side_file(self, capsys, tmp_path):
        data = run_json(capsys, "bounds", "K4", "--k", "60", "--outdir", str(tmp_path))
        value = data[0]["value"]
        assert value["digits"] > 200
        text = open(value["file"]).read().strip()
        assert len(text) == value["digits"]

    def test_vector(self, capsys):
        data = run_json(capsys, "bounds", "etaA-SJrank", "--eta", "1", "--delta", "0,0,1", "--cc", "Two")
        assert data[0]["value"][2] == 28

    def test_parse_range(self):
        assert parse_range("2..5") == [2, 3, 4, 5]
        assert parse_range("1,4") == [1, 4]
        assert parse_range("7") == [7]


class TestSubalgebraAndGb:
    def test_subalgebra(self, capsys, tmp_path):
        out = tmp_path / "cert.json"
        data = run_json(capsys, "subalgebra", "x1*x2", "x3*x4", "--field", "gf:5",
                        "--verify", "-o", str(out))
        assert data["bound_record"] == {"claimed": 4, "actual": 3}
        assert data["verification"]["ok"]
        assert json.loads(out.read_text()) == data

    def test_gb(self, capsys):
        data = run_json(capsys, "gb", "x1*x2 + x3^2", "x1^2 - x2*x3", "--field", "gf:5", "--t-max", "3")
        assert data["krull_dim"] == 1 and data["hilbert"] == [1, 3, 4, 4]
        assert data["regular_sequence"] is True


class TestVerify:
    def test_suite_passes(self, capsys):
        data = run_json(capsys, "verify", "bounds-exact")
        assert data["verdict"] == "pass" and data["check"] == "bounds-exact"

    def test_params_forwarded(self, capsys):
        data = run_json(capsys, "verify", "subalgebra", "--trials", "5", "--field", "gf:3")
        assert data["params"]["trials"] == 5 and data["params"]["field"] == "gf:3"

    def test_deterministic(self, capsys):
        argv = ("verify", "normal-form", "--field", "gf:3", "--trials", "30", "--seed", "4")
        a = run(capsys, *argv)
        b = run(capsys, *argv)
        assert a == b


@pytest.mark.parametrize("argv", [["--help"], ["bounds", "--help"]])
def test_help(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0
