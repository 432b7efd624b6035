import json
from io import StringIO

import pytest

from slagforge import cli, deform, slag
from slagforge.model import builtin
from slagforge.parse import parse_form


def run(*argv):
    out, err = StringIO(), StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run("--json", *argv)
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["exit_code"] == code
    return code, doc


def test_slag_scan_table():
    code, out, _ = run("slag", "scan", "nakamura_cs", "--phase", "0")
    assert code == 0
    labels = [line.split()[0] for line in out.splitlines()[1:]]
    assert labels == ["123", "156", "246", "345"]


def test_unknown_model_is_usage_error():
    code, _, err = run("model", "show", "bogus")
    assert code == 2 and "bogus" in err


def test_bad_argument_is_usage_error():
    assert run("slag", "scan", "nakamura_cs", "--phase", "1")[0] == 2
    assert run("deform", "dim", "iwasawa", "1,2")[0] == 2


def test_model_show():
    code, out, _ = run("model", "show", "iwasawa")
    assert code == 0 and "[E_1, E_5] = E_6" in out


def test_model_file(tmp_path):
    from importlib import resources
    text = resources.files("slagforge").joinpath("models/iwasawa.toml").read_text(encoding="utf-8")
    path = tmp_path / "m.toml"
    path.write_text(text, encoding="utf-8")
    code, out, _ = run("model", "show", "--model-file", str(path))
    assert code == 0 and "dθ^3 = -θ^{12} + θ^{45}" in out
    bad = tmp_path / "bad.toml"
    bad.write_text("dim = [", encoding="utf-8")
    assert run("model", "show", "--model-file", str(bad))[0] == 2


def test_involutive_exit_codes():
    assert run("slag", "involutive", "iwasawa", "1,2,3")[0] == 0
    code, out, _ = run("slag", "involutive", "iwasawa", "124")
    assert code == 1 and "[E_2, E_4] = -E_6" in out


def test_deform_non_involutive_is_domain_error():
    assert run("deform", "system", "iwasawa", "1,2,4")[0] == 1


def test_unknown_foliation_is_domain_error():
    assert run("mirror", "dual", "nakamura_cs", "L999")[0] == 1
    assert run("lattice", "classify", "nakamura_cs", "L999")[0] == 1


def test_tsengyau_table():
    code, doc = run_json("cohomology", "tsengyau", "nakamura_cs_mirror")
    assert code == 0
    assert doc["result"]["diamond"] == [[1], [1, 1], [1, 3, 1], [1, 3, 3, 1], [1, 3, 1], [1, 1], [1]]


def test_h10_tau_mode():
    assert run_json("cohomology", "h10", "nakamura_cs")[1]["result"]["h10"] == 3
    assert run_json("cohomology", "h10", "nakamura_cs", "--tau-mode", "1/2")[1]["result"]["h10"] == 1
    assert run("cohomology", "h10", "nakamura_cs", "--tau-mode", "x/")[0] == 2


def test_derham_json_round_trip():
    code, doc = run_json("cohomology", "derham", "nakamura_cs")
    assert doc["result"]["betti"] == [1, 2, 5, 8, 5, 2, 1]


def test_scan_json_round_trip():
    _, doc = run_json("slag", "scan", "iwasawa", "--phase", "-pi/2")
    got = [tuple(t["triple"]) for t in doc["result"]["triples"]]
    assert got == [r.triple for r in slag.scan_axis(builtin("iwasawa"), "-pi/2")]


def test_deform_system_json_round_trip():
    _, doc = run_json("deform", "system", "nakamura_cs", "156", "--j-convention", "index")
    s = deform.generate(builtin("nakamura_cs"), (1, 5, 6), "index")
    assert doc["result"]["equations"] == [deform.format_linear(e) for e in s.equations]


def test_deform_dim_and_betti():
    assert run_json("deform", "dim", "iwasawa", "123")[1]["result"]["dim"] == 1
    assert run_json("deform", "betti", "nakamura_cs", "246")[1]["result"]["b1"] == 3


def test_lattice_commands():
    _, doc = run_json("lattice", "eigen", "2,3,1,2")
    assert doc["result"]["eigenvalues"] == ["2 + sqrt(3)", "2 - sqrt(3)"]
    _, doc = run_json("lattice", "search-mprime", "--bound", "5")
    assert doc["result"]["witness"] is None
    _, doc = run_json("lattice", "classify", "nakamura_cs", "L123")
    assert doc["result"]["kind"] == "closed_iff" and sorted(doc["result"]["condition"]) == ["B", "C"]
    assert run("lattice", "eigen", "1,0,0,1")[0] == 1


def test_mirror_ft_json():
    m = builtin("nakamura_cs")
    _, doc = run_json("mirror", "ft", "nakamura_cs")
    res = doc["result"]
    assert res["dual"] == "nakamura_cs_mirror"
    mir = builtin("nakamura_cs_mirror")
    assert parse_form(res["on_dual"], mir.weight_directions) == parse_form(
        "i*v*(t[1] + i*t[4])*(t[3] + i*t[5])*(t[2] + i*t[6])")
    assert res["remap"]["dr0"] == "t[1]"
    assert m.name == res["model"]


def test_mirror_dual_and_susy():
    _, doc = run_json("mirror", "dual", "nakamura_cs", "L234")
    assert doc["result"]["dual"] == "nakamura_cs_mirror" and doc["result"]["omega_transported"]
    code, doc = run_json("mirror", "susy", "nakamura_cs", "--type", "IIB")
    assert code == 0 and doc["result"]["F"] == "8"


def test_mirror_check_exit_codes():
    assert run("cohomology", "mirror-check", "nakamura_cs_mirror", "nakamura_cs")[0] == 0
    assert run("cohomology", "mirror-check", "nakamura_cs_mirror", "nope")[0] == 2


def test_slag_check_matrix(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 1 0 0 0\n", encoding="utf-8")
    code, doc = run_json("slag", "check", "iwasawa", "--matrix", str(p))
    assert code == 0 and doc["result"]["slag"] and doc["result"]["involutive"]
    p.write_text("1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 0 1 0 0\n", encoding="utf-8")
    assert run("slag", "check", "iwasawa", "--matrix", str(p))[0] == 1
    assert run("slag", "check", "iwasawa", "--matrix", str(tmp_path / "missing"))[0] == 2


def test_error_json():
    code, doc = run_json("model", "show", "bogus")
    assert code == 2 and "error" in doc


@pytest.mark.parametrize("cmd", ["suite", "paper-suite"])
def test_suite_command(cmd):
    code, out, _ = run(cmd, "--only", "1,8")
    assert code == 0
    assert out.splitlines()[0].startswith("[PASS]  1.")
