import json
import subprocess
import sys

import pytest

from genusone.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def surface_doc(**over):
    doc = {"h1": 1, "abc": [1, 1, 1], "ell": "0",
           "lambda": {"A": "0", "B": "0", "C": "0", "E": "0"},
           "series": {"cap": 8, "even_tail": [], "gamma_tail": []}}
    doc.update(over)
    return doc


def write(tmp_path, doc):
    p = tmp_path / "surface.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_pretzel_trefoil(capsys):
    code, out, _ = run(capsys, "pretzel", "1", "1", "1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["lambda_prime"] == "1" and data["w_delta_abc"] == "-2"
    assert data["w_SL"] == "1/6" and data["w3"] == "1/2"


def test_pretzel_figure_eight(capsys):
    code, out, _ = run(capsys, "pretzel", "-1", "3", "-1")
    assert code == 0
    assert "lambda' = -1" in out and "w_delta(a,b,c) = 0" in out
    assert "Delta(t) = -t + 3 - t^-1" in out


def test_pretzel_family_member(capsys):
    code, out, _ = run(capsys, "pretzel", "3", "5", "-5", "--json")
    assert json.loads(out)["w_delta_abc"] == "18"


def test_pretzel_lambda_flags(capsys):
    code, out, _ = run(capsys, "pretzel", "-1", "3", "-1", "--lB", "-1", "--lC", "-1", "--json")
    assert json.loads(out)["w_delta_surface"] == "-8"


def test_pretzel_parity(capsys):
    assert run(capsys, "pretzel", "2", "1", "1")[0] == 2
    assert run(capsys, "pretzel", "2", "1", "1", "--no-strict")[0] == 0
    assert run(capsys, "pretzel", "x", "1", "1")[0] == 2


def test_half_integer_alexander_rendering(capsys):
    code, out, _ = run(capsys, "pretzel", "1/2", "1", "1", "--no-strict", "--json")
    assert code == 0
    assert json.loads(out)["seifert_matrix"][0][0] == "1"


@pytest.mark.parametrize("matrix,triple,delta", [
    ("1,0,-1,1", ["1", "1", "1"], "t - 1 + t^-1"),
    ("0,1,0,0", ["1", "1", "-1"], "1"),
    ("1,1,0,-1", ["-1", "3", "-1"], "-t + 3 - t^-1"),
])
def test_seifert(capsys, matrix, triple, delta):
    code, out, _ = run(capsys, "seifert", "--matrix", matrix, "--json")
    data = json.loads(out)
    assert code == 0 and data["abc"] == triple and data["alexander"] == delta


def test_seifert_symplectic_violation(capsys):
    assert run(capsys, "seifert", "--matrix", "1,1,1,1")[0] == 2


@pytest.mark.parametrize("abc,degree,text", [
    ("1,1,1", "2", "1"),
    ("1,3,1", "2", "2 + 1/4*ub^2"),
    ("-1,-1,1", "0", "0"),
])
def test_series(capsys, abc, degree, text):
    code, out, _ = run(capsys, "series", "--abc", abc, "--degree", degree)
    assert code == 0 and out.strip() == text


def test_series_json_is_stable(capsys):
    first = run(capsys, "series", "--abc", "3,-1,5", "--degree", "6", "--json")[1]
    second = run(capsys, "series", "--abc", "3,-1,5", "--degree", "6", "--json")[1]
    assert first == second
    assert all(isinstance(c, str) for _, _, c in json.loads(first)["series"]["terms"])


def test_surface_trivial(capsys, tmp_path):
    code, out, _ = run(capsys, "surface", "--input", write(tmp_path, surface_doc()), "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["w_SL"], data["w3"], data["W_s_D2"]) == ("1/6", "1/2", "0")


def test_surface_lE(capsys, tmp_path):
    doc = surface_doc(**{"lambda": {"A": "0", "B": "0", "C": "0", "E": "1"}})
    code, out, _ = run(capsys, "surface", "--input", write(tmp_path, doc), "--json")
    assert json.loads(out)["w_SL"] == "7/6"


def test_surface_malformed_cubic_tail(capsys, tmp_path):
    doc = surface_doc(series={"cap": 8, "even_tail": [[3, [[3, 0, "1"]]]], "gamma_tail": []})
    code, _, err = run(capsys, "surface", "--input", write(tmp_path, doc))
    assert code == 3 and "NotAlexanderForm" in err


def test_surface_unknown_key(capsys, tmp_path):
    code, _, _ = run(capsys, "surface", "--input", write(tmp_path, surface_doc(extra=1)))
    assert code == 2


def test_surface_missing_file(capsys, tmp_path):
    assert run(capsys, "surface", "--input", str(tmp_path / "nope.json"))[0] == 2


def test_verify_small_run(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "1", "--trials", "2", "--range", "1")
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_usage(capsys):
    assert run(capsys, "verify", "--trials", "0")[0] == 2
    assert run(capsys, "verify", "--degree", "4")[0] == 2


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "1", "--range", "1", "--inject-fault")
    assert code == 1 and "first counterexample" in out


def test_fault_flag_hidden_from_help(capsys):
    code, out, _ = run(capsys, "verify", "--help")
    assert code == 0 and "--trials" in out and "inject" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "genusone", "series", "--abc", "1,3,1", "--degree", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2 + 1/4*ub^2"


def test_verify_full_default_run(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "0", "--trials", "50", "--degree", "8", "--range", "5")
    assert code == 0 and "FAIL" not in out
