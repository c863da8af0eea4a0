import io
import json
import subprocess
import sys

import pytest

from prcat.cli import main

LIB = """
(def n2 (x nat nat))
(def geq (comp leq (theta nat nat)))
(def dsub (sub n2 geq))
(def psub (partial dsub (incl dsub n2) (comp sub (incl dsub n2))))
(def max-ab max)
(def max-ba (comp max (theta nat nat)))
(def gt5 (comp lt (pair (const 5 nat) (id nat))))
(def down (while gt5 pre))
(def sq (mu (comp leq (pair (proj-l nat nat) (comp mult (diag nat) (proj-r nat nat))))))
(def psub-rep (murep psub))
(def halve (opposite (comp mult (pair (id nat) (const 2 nat))) (id nat)))
(def halve2 (opposite (comp add (diag nat)) (id nat)))
(def stuck (while (true nat) (id nat)))
"""


@pytest.fixture
def lib(tmp_path):
    p = tmp_path / "lib.pr"
    p.write_text(LIB)
    return str(p)


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_library_map(lib):
    assert cli("eval", lib, "add", "(5 . 2)") == (0, "7\n", "")


def test_eval_definition(lib):
    assert cli("eval", lib, "max-ba", "(2 . 7)")[:2] == (0, "7\n")


def test_apply_undefined(lib):
    code, out, _ = cli("apply", lib, "psub", "(2 . 5)")
    assert (code, out) == (2, "no-witness fuel=100000\n")


def test_apply_defined(lib):
    assert cli("apply", lib, "psub", "(5 . 2)")[:2] == (0, "defined 3\n")
    assert cli("apply", lib, "sq", "10")[:2] == (0, "defined 4\n")
    assert cli("apply", lib, "down", "9")[:2] == (0, "defined 5\n")


def test_apply_respects_fuel(lib):
    assert cli("apply", lib, "stuck", "3", "--fuel", "50")[:2] == (2, "no-witness fuel=50\n")


def test_equal_true(lib):
    code, out, _ = cli("equal", lib, "max-ab", "max-ba")
    assert code == 0 and out.startswith("equal on 500 samples")


def test_equal_counterexample(lib):
    code, out, _ = cli("equal", lib, "max-ab", "add")
    assert code == 1
    assert out.startswith("counterexample (")


def test_equal_partial_maps(lib):
    assert cli("equal", lib, "halve", "halve2", "--magnitude", "40")[0] == 0
    code, out, _ = cli("equal", lib, "psub", "psub-rep", "--magnitude", "30", "--samples", "40")
    assert code == 0, out
    code, out, _ = cli("equal", lib, "halve", "down", "--magnitude", "40")
    assert code == 1 and out.startswith("counterexample")


def test_check_prints_types(lib):
    code, out, _ = cli("check", lib)
    assert code == 0
    lines = dict(line.split(" : ", 1) for line in out.splitlines())
    assert lines["max-ab"] == "(x nat nat) -> nat"
    assert lines["down"] == "nat ~> nat"
    assert lines["n2"] == "object (x nat nat)"


def test_normalize_prints_partial_form(lib):
    code, out, _ = cli("normalize", lib, "down")
    assert code == 0 and out.startswith("(partial (sub (x nat nat) ")


def test_type_error_exit_code(tmp_path):
    p = tmp_path / "bad.pr"
    p.write_text("(def a (comp succ (bang nat)))")
    code, out, err = cli("check", str(p))
    assert code == 3 and out == ""
    assert "1:8:" in err


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.pr"
    p.write_text("(def a (comp succ)")
    assert cli("check", str(p))[0] == 3


def test_bad_value_and_usage(lib):
    assert cli("eval", lib, "add", "(5 . x)")[0] == 3
    assert cli("eval", lib, "add", "7")[0] == 3
    assert cli("eval", lib, "nope", "7")[0] == 3
    assert cli("eval", lib, "down", "7")[0] == 3
    assert cli("bogus")[0] == 3
    assert cli()[0] == 3
    assert cli("apply", lib, "down", "9", "--fuel", "0")[0] == 3
    assert cli("check", "/nonexistent/file.pr")[0] == 3


def test_selftest_single_suite_json():
    code, out, _ = cli("selftest", "--suite", "freyd", "--json", "--samples", "50")
    assert code == 0
    row = json.loads(out)
    assert row == {"suite": "freyd", "passed": 22, "failed": 0, "indeterminate": 0, "seed": 0}


def test_selftest_text_lines():
    code, out, _ = cli("selftest", "--suite", "while", "--suite", "mu", "--samples", "40")
    assert code == 0
    assert [line.split(":")[0] for line in out.splitlines()] == ["mu", "while"]


def test_output_is_deterministic(lib):
    runs = {cli("equal", lib, "max-ab", "add", "--seed", "9")[1] for _ in range(3)}
    assert len(runs) == 1


def test_module_entry_point(tmp_path):
    p = tmp_path / "lib.pr"
    p.write_text(LIB)
    r = subprocess.run([sys.executable, "-m", "prcat.cli", "eval", str(p), "add", "(5 . 2)"],
                       capture_output=True, text=True)
    assert (r.returncode, r.stdout) == (0, "7\n")


def test_main_restores_recursion_limit(lib):
    before = sys.getrecursionlimit()
    cli("eval", lib, "add", "(5 . 2)")
    assert sys.getrecursionlimit() == before
