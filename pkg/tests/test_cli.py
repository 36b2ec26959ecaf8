import io
import json

import pytest

from p1forcing.cli import main, worked_examples_text, parse_corpus, InputError
from p1forcing.formula import parse
from p1forcing.semantics import ZERO, evaluate, parse_assignment


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_outputs():
    assert run("check", "-A -> (A -> B)") == (0, "A-INVALID  model: A=* B=0\n")
    assert run("check", "A | -A") == (0, "A-VALID\n")
    assert run("check", "#A -> (-A -> (A -> B))") == (0, "A-VALID\n")


def test_check_trace_and_oracle():
    code, out = run("check", "#A -> (-A -> (A -> B))", "--trace", "--oracle", "--direct")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["A-VALID", "1. RR", "2, 3. R→ en 1"]
    assert "direct: root forced to 1" in lines
    assert "oracle: T-VALID" in lines and lines[-1] == "oracle: agrees"


def test_check_model_confirmed_by_oracle():
    code, out = run("check", "((A & #A) & (A -> B)) -> #B", "--oracle")
    assert code == 0
    model = out.splitlines()[0].split("model: ")[1]
    assert evaluate(parse("((A & #A) & (A -> B)) -> #B"), parse_assignment(model)) is ZERO
    assert "oracle: value under model = 0" in out


def test_check_exit_codes(capsys):
    assert run("check", "-A -> (A -> B)", "--fail-on-invalid")[0] == 3
    assert run("check", "A | -A", "--fail-on-invalid")[0] == 0
    assert run("check", "(A")[0] == 1
    assert run("check", "#(A & B)")[0] == 1
    assert "syntax error" in capsys.readouterr().err


def test_unicode_flag():
    code, out = run("table", "--unicode", "--", "-p")
    assert out.splitlines()[0] == "p | ¬p | designated"


def test_table_outputs():
    code, out = run("table", "--", "-p")
    assert code == 0
    assert out.splitlines() == ["p | -p | designated", "1 | 0  | no", "* | 1  | yes", "0 | 1  | yes"]
    code, out = run("table", "p")
    assert [line.split(" | ")[:2] for line in out.splitlines()[1:]] == [["1", "1"], ["*", "*"], ["0", "0"]]
    code, out = run("table", "p <-> q")
    rows = out.splitlines()[1:]
    assert len(rows) == 9
    assert [c.strip() for c in rows[7].split(" | ")[:2]] == ["0 *", "0"]


def test_table_atom_guard():
    wide = " & ".join(f"x{i}" for i in range(7))
    assert run("table", wide)[0] == 1
    code, out = run("table", "x0 & x1 & x2 & x3 & x4 & x5 & x6", "--max-atoms-override")
    assert code == 0 and len(out.splitlines()) == 1 + 3 ** 7


def test_tree_ascii_with_model():
    code, out = run("tree", "-A -> (A -> B)", "--model", "A=*,B=0", "--format", "ascii")
    assert code == 0
    assert out.splitlines() == [
        "-> [0]",
        "  i→: - (1)",
        "    a¬: A <*>",
        "  d→: -> [0]",
        "    i→: A <*>",
        "    d→: B [0]",
    ]


def test_tree_json():
    code, out = run("tree", "p", "--format", "json")
    assert json.loads(out) == {"nodes": [{"id": 0, "glyph": "p", "tag": "root", "cell": 0, "children": []}],
                               "root": 0}
    code, out = run("tree", "-A -> (A -> B)", "--check", "--trace", "--format", "json")
    doc = json.loads(out)
    assert doc["verdict"] == "A-INVALID" and doc["model"] == {"A": "*", "B": "0"}
    assert doc["trace"][0] == "1. RR"
    assert [n["mark"] for n in doc["nodes"]] == ["0", "1", "*", "0", "*", "0"]
    assert doc["nodes"][4]["cell"] == doc["nodes"][2]["cell"]


def test_tree_dot():
    code, out = run("tree", "#A", "--model", "A=*", "--format", "dot")
    assert code == 0
    assert 'n0 [label="# [0]", shape=box];' in out
    assert "shape=triangle" in out
    code, out = run("tree", "A -> A", "--model", "A=1", "--format", "dot")
    assert "shape=ellipse" in out and "shape=box" not in out


def test_tree_bad_model():
    assert run("tree", "A & B", "--model", "A=1")[0] == 1
    assert run("tree", "A", "--model", "A=7")[0] == 1
    assert run("tree", "A", "--model", "A")[0] == 1


def test_bundled_corpus():
    code, out = run("corpus", "--examples")
    assert code == 0
    assert out.splitlines()[-1] == "13/13 pass"


def test_corpus_files(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run("corpus", str(empty)) == (0, "0/0 pass\n")
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("# a comment\nA | -A @invalid\n")
    code, out = run("corpus", str(wrong))
    assert code != 0 and out.startswith("FAIL  A | -A") and "expected @invalid" in out
    model = tmp_path / "model.txt"
    model.write_text("-A -> (A -> B) @invalid @model A=1,B=0\n")
    code, out = run("corpus", str(model))
    assert code != 0 and "expected model A=1 B=0" in out
    assert run("corpus", str(tmp_path / "missing.txt"))[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("A & @valid\n")
    assert run("corpus", str(bad))[0] == 1
    bad.write_text("A @sometimes\n")
    assert run("corpus", str(bad))[0] == 1


def test_corpus_parsing():
    entries = parse_corpus(worked_examples_text())
    assert len(entries) == 13
    assert entries[1].text == "-A -> (A -> B)" and entries[1].expect == "invalid"
    assert str(entries[1].model["A"]) == "*"
    with pytest.raises(InputError):
        parse_corpus("A | -A @valid @invalid")


def test_compare():
    code, out = run("compare", "--max-depth", "0")
    assert code == 0
    assert out.splitlines() == ["exhaustive depth <= 0, atoms p,q: 2 formulas, 0 A-valid, 2 A-invalid",
                                "0 disagreements"]
    code, out = run("compare", "--max-depth", "2")
    assert code == 0 and "1244 formulas" in out and out.endswith("0 disagreements\n")
    code, out = run("compare", "--random", "200", "--max-depth", "6", "--atoms", "3", "--seed", "1")
    assert code == 0 and out.endswith("0 disagreements\n")
    assert run("compare", "--random", "200", "--max-depth", "6", "--atoms", "3", "--seed", "1")[1] == out


def test_compare_limits(capsys):
    assert run("compare", "--max-depth", "4")[0] == 1
    with pytest.raises(SystemExit):
        main(["compare", "--max-depth", "5"])
    with pytest.raises(SystemExit):
        main(["compare", "--atoms", "0"])


def test_module_entry_point():
    import subprocess
    import sys

    done = subprocess.run([sys.executable, "-m", "p1forcing", "check", "A | -A"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "A-VALID\n"


def test_oracle_atom_guard():
    wide = " | ".join(f"x{i}" for i in range(13))
    assert run("check", wide, "--oracle")[0] == 1
    assert run("check", wide)[0] == 0
