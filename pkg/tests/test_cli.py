import io
import subprocess
import sys

import pytest

from conftest import lang_path
from slidewin.cli import EXIT_DIVERGENCE, EXIT_MODEL, EXIT_PARSE, main


def run(argv, stdin=""):
    p = subprocess.run([sys.executable, "-m", "slidewin"] + argv, input=stdin,
                       capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def call(argv, tmp_path=None, ops=None):
    if ops is not None:
        f = tmp_path / "ops.txt"
        f.write_text(ops)
        argv = argv + ["--ops", str(f)]
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_run_ends_b():
    code, out, _ = run(["run", "dfa", lang_path("ends_b.dfa"), "--model", "2V"], "R a\nR b\nQ\n")
    assert (code, out) == (0, "1\n")


def test_run_fixed_prefills(tmp_path):
    # the window starts as "aaa"; each pair slides it by one symbol
    ops = "Q\nR b\nPL\nQ\nR a\nPL\nQ\n"
    code, out = call(["run", "dfa", lang_path("ends_b.dfa"), "--model", "1F", "--n", "3"], tmp_path, ops)
    assert (code, out) == (0, "0\n1\n0\n")


def test_run_needs_n_for_fixed(tmp_path):
    code, _ = call(["run", "dfa", lang_path("ends_b.dfa"), "--model", "2F"], tmp_path, "Q\n")
    assert code == EXIT_PARSE


def test_model_violation_exit_code(tmp_path):
    code, _ = call(["run", "li", lang_path("ends_ab.li"), "--model", "1V"], tmp_path, "R a\nL b\nQ\n")
    assert code == EXIT_MODEL
    code, _ = call(["run", "dfa", lang_path("ends_b.dfa"), "--model", "1F", "--n", "2"], tmp_path, "R a\nQ\nPL\n")
    assert code == EXIT_MODEL
    code, _ = call(["run", "li", lang_path("ends_ab.li"), "--model", "2V"], tmp_path, "Q\n")
    assert code == EXIT_MODEL


def test_empty_pops(tmp_path):
    argv = ["run", "dfa", lang_path("ends_b.dfa")]
    assert call(argv, tmp_path, "PL\nR b\nQ\n") == (0, "1\n")
    code, _ = call(argv + ["--strict-empty-pop"], tmp_path, "PL\nR b\nQ\n")
    assert code == EXIT_MODEL


def test_parse_errors(tmp_path):
    code, _ = call(["run", "dfa", lang_path("ends_b.dfa")], tmp_path, "R a\nX\n")
    assert code == EXIT_PARSE
    code, _ = call(["run", "dfa", lang_path("ends_b.dfa")], tmp_path, "R z\n")
    assert code == EXIT_PARSE
    code, _ = call(["run", "vpa", lang_path("ends_b.dfa")], tmp_path, "Q\n")
    assert code == EXIT_PARSE
    bad = tmp_path / "bad.dfa"
    bad.write_text("dfa\nalphabet a\nstates 1\n")
    code, _, err = run(["run", "dfa", str(bad)], "Q\n")
    assert code == EXIT_PARSE and "bad.dfa:" in err
    code, _ = call(["run", "dfa", str(tmp_path / "missing.dfa")], tmp_path, "Q\n")
    assert code == EXIT_PARSE


@pytest.mark.parametrize("cls,name,model", [
    ("dfa", "mod3.dfa", "2V"), ("dfa", "ends_b.dfa", "2F"), ("vpa", "dyck.vpa", "2V"),
    ("doca", "anbn.doca", "2V"), ("len", "even.len", "2V"), ("li", "ends_ab.li", "1V"),
    ("combo", "even_ends_ab.combo", "1F"),
])
def test_check_passes(cls, name, model):
    code, out = call(["check", cls, lang_path(name), "--model", model, "--streams", "5",
                      "--length", "400", "--seed", "3"])
    assert code == 0 and out.splitlines()[-1] == "PASS 5/5"


def test_check_reports_divergence(monkeypatch):
    from slidewin import language
    real = language.LanguageSpec.accepts
    monkeypatch.setattr(language.LanguageSpec, "accepts", lambda self, w: not real(self, w))
    code, out = call(["check", "dfa", lang_path("ends_b.dfa"), "--streams", "2", "--length", "50"])
    assert code == EXIT_DIVERGENCE
    assert out.splitlines()[-1] == "FAIL 0/2"
    assert out.startswith("stream 0: op ")


def test_bench_table():
    code, out = call(["bench", "dfa", lang_path("mod3.dfa"), "--sizes", "2^6,2^8"])
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("size\tops\tcompositions")
    assert [l.split("\t")[0] for l in lines[1:]] == ["64", "256"]


def test_run_is_deterministic(tmp_path):
    ops = "".join(f"R {'ab'[i % 3 == 0]}\nQ\n" for i in range(300))
    argv = ["run", "dfa", lang_path("mod3.dfa")]
    assert call(argv, tmp_path, ops) == call(argv, tmp_path, ops)
