"""
Integration tests for the gsr command line.
"""

import json

from gsr.cli import main
from gsr.core.builders import build_minmax
from gsr.core.interchange import dump_instance, instance_to_dict

Z8V = "zmod:n=8;gamma=0,2,4,6;name=z8v"
MINMAX5 = "minmax:k=5;g=3"


class TestCli:
    """Test cases for the gsr subcommands."""

    def test_gen_to_stdout(self, capsys):
        code = main(["gen", "minmax", "--k", "5", "--g", "3"])

        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["name"] == "minmax(5,3)"
        assert doc["M"] == ["1", "2", "3", "4", "5"]

    def test_gen_then_ideals(self, capsys, tmp_path):
        path = tmp_path / "minmax5.json"
        assert main(["gen", "minmax", "--k", "5", "--g", "3", "--out", str(path)]) == 0
        capsys.readouterr()

        code = main(["ideals", "--kind", "gen-bi", str(path)])

        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert lines[0] == "minmax(5,3): 6 gen-bi sets"
        assert lines[1:7] == [
            "  {1}",
            "  {1,2}",
            "  {1,2,3}",
            "  {1,2,3,4}",
            "  {1,2,3,5}",
            "  {1,2,3,4,5}",
        ]
        assert lines[7] == "minimal: {1}"

    def test_ideals_json_with_hasse(self, capsys):
        code = main(["--json", "ideals", "--hasse", MINMAX5])

        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["count"] == 6
        assert doc["maximal_proper"] == ["{1,2,3,4}", "{1,2,3,5}"]
        assert ["{1,2,3}", "{1,2,3,5}"] in doc["hasse"]

    def test_ideals_json_without_hasse(self, capsys):
        main(["--json", "ideals", MINMAX5])

        assert "hasse" not in json.loads(capsys.readouterr().out)

    def test_show(self, capsys):
        code = main(["show", "minmax:k=2;g=1"])

        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("minmax(2,1): |M|=2, |Gamma|=1")
        assert "prod(a, 1, b)" in out

    def test_closure_and_generated(self, capsys):
        assert main(["closure", MINMAX5, "1,3"]) == 0
        assert main(["closure", "--generated", MINMAX5, "2"]) == 0

        lines = capsys.readouterr().out.splitlines()
        assert lines == ["closure {1,3} = {1,3}", "({2}) = {1,2}"]

    def test_simple(self, capsys):
        assert main(["simple", "minmax:k=1;g=1"]) == 0
        assert capsys.readouterr().out.splitlines() == ["GB-simple: yes"]

        assert main(["simple", MINMAX5]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "GB-simple: no"
        assert "  1ΓMΓ1 = {1}" in lines

    def test_simple_within(self, capsys):
        assert main(["simple", "--within", "1,2,3", MINMAX5]) == 0

        lines = capsys.readouterr().out.splitlines()
        assert lines[:2] == ["restricted to minmax(5,3)|{1,2,3}", "GB-simple: no"]
        assert "  proper generalized bi-Gamma-ideal: {1}" in lines

    def test_simple_within_open_set(self, capsys):
        assert main(["simple", "--within", "1,3", MINMAX5]) == 2
        assert "NOT_CLOSED" in capsys.readouterr().err

    def test_minimal(self, capsys):
        assert main(["minimal", MINMAX5, "1"]) == 0
        assert main(["minimal", MINMAX5, "1,2"]) == 0

        assert capsys.readouterr().out.splitlines() == [
            "{1} minimal gen-bi: yes",
            "{1,2} minimal gen-bi: no",
        ]

    def test_verify_failure_exit_code(self, capsys):
        code = main(["verify", "--statement", "ALL", Z8V])

        lines = capsys.readouterr().out.splitlines()
        assert code == 1
        assert lines[0] == "instance: z8v"
        assert len(lines) == 17
        p52 = next(line for line in lines if line.startswith("P52"))
        assert "FAIL" in p52
        assert "counterexamples=16" in p52
        assert "T={0,2,4,6}" in p52

    def test_verify_json(self, capsys):
        code = main(["--json", "verify", "--statement", "R18a,P8", "minmax:k=3;g=2"])

        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["instance"] == "minmax(3,2)"
        assert [s["id"] for s in doc["statements"]] == ["R18a", "P8"]
        assert all(s["verdict"] == "PASS" for s in doc["statements"])

    def test_unknown_statement(self, capsys):
        code = main(["verify", "--statement", "NOPE", MINMAX5])

        assert code == 2
        assert "UNKNOWN_STATEMENT" in capsys.readouterr().err

    def test_validate(self, capsys, tmp_path):
        good = dump_instance(build_minmax(3, 2), tmp_path / "good.json")
        document = instance_to_dict(build_minmax(3, 2))
        document["add_M"][0][1] = 2
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(document))

        assert main(["validate", str(good)]) == 0
        assert "valid: minmax(3,2)" in capsys.readouterr().out

        assert main(["validate", str(bad)]) == 2
        assert "AXIOM_VIOLATION COMM_M" in capsys.readouterr().err

    def test_input_errors(self, capsys, tmp_path):
        assert main(["show", str(tmp_path / "missing.json")]) == 2
        assert "IO_ERROR" in capsys.readouterr().err

        assert main(["show", "minmax:k=2;g=3"]) == 2
        assert "BAD_BOUNDS" in capsys.readouterr().err

        assert main(["closure", MINMAX5, "9"]) == 2
        assert "MALFORMED_TABLE" in capsys.readouterr().err

    def test_usage_errors(self, capsys):
        assert main([]) == 2
        assert main(["ideals", "--kind", "nope", MINMAX5]) == 2
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_census(self, capsys, tmp_path):
        out_dir = tmp_path / "census"

        code = main(["census", "--max-n", "1", "--max-g", "2", "--out", str(out_dir)])

        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert lines[0] == "census up to n=1, g=2: 4 classes"
        assert (out_dir / "summary.json").exists()
        assert len(list((out_dir / "instances").glob("*.json"))) == 4

    def test_metrics_out(self, capsys, tmp_path):
        path = tmp_path / "metrics.prom"

        assert main(["--metrics-out", str(path), "verify", "--statement", "R18a", MINMAX5]) == 0

        assert "gsr_statements_checked_total" in path.read_text()

    def test_config_file(self, capsys, tmp_path):
        config = tmp_path / "settings.yaml"
        config.write_text("structure:\n  max_witnesses: 1\n")

        main(["--config", str(config), "--json", "verify", "--statement", "P52", Z8V])

        doc = json.loads(capsys.readouterr().out)
        assert doc["statements"][0]["counterexamples"] == 16
        assert len(doc["statements"][0]["witnesses"]) == 1
