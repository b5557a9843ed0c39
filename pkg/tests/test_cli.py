import json
import subprocess
import sys

import pytest

from hesslab.cache import Cache, canonical
from hesslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_poincare_three_methods_agree(capsys):
    outs = {}
    for method in ("tymoczko", "closed", "census-interp"):
        code, data, _ = run(capsys, "poincare", "--type", "[[3]]", "--m", "max", "--method", method)
        assert code == 0
        outs[method] = data["poincare"]["coefficients"]
    assert outs["tymoczko"] == outs["closed"] == outs["census-interp"] == [1, 2, 1]


def test_poincare_pretty(capsys):
    code, data, _ = run(capsys, "poincare", "--type", "[[1],[1],[1]]", "--m", "max", "--pretty")
    assert data["poincare"]["t"] == "1 + 4*t + t^2"
    assert data["poincare"]["q"] == "1 + 4*q^2 + q^4"


def test_full_m_gives_factorial(capsys):
    code, data, _ = run(capsys, "poincare", "--type", "[[2],[1]]", "--m", "full")
    assert data["poincare"]["coefficients"] == [1, 2, 2, 1]


def test_no_closed_form(capsys):
    code, _, err = run(capsys, "poincare", "--type", "[[3]]", "--m", "1,2,3", "--method", "closed")
    assert code == 2 and "no closed form" in err


def test_count_and_cache_round_trip(capsys, tmp_path):
    args = ("count", "--type", "[[3]]", "--m", "max", "--p", "2", "--cache-dir", str(tmp_path))
    code, first, _ = run(capsys, *args)
    assert code == 0 and first["total"] == 9
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    raw = files[0].read_bytes()
    code, second, _ = run(capsys, *args)
    assert second == first
    code, third, _ = run(capsys, *args, "--no-cache")
    assert third == first
    # byte-for-byte: recomputation serialises to the stored entry
    entry = json.loads(raw)
    assert canonical({"key": entry["key"], "tool_version": entry["tool_version"], "value": entry["value"]}).encode() == raw


def test_scalar_count_is_flag_count(capsys):
    code, data, _ = run(capsys, "count", "--type", "[[1,1,1]]", "--m", "max", "--p", "3")
    assert data["total"] == 1 * 4 * 13


def test_inadmissible_prime(capsys):
    code, data, _ = run(capsys, "count", "--type", "[[1],[1]] @ [0,3]", "--m", "max", "--p", "3")
    assert code == 3 and data["error"] == "inadmissible prime"
    code, data, _ = run(capsys, "count", "--type", "[[1],[1]] @ [0,3]", "--m", "max", "--p", "3", "--force")
    assert code == 0 and data["admissible"] is False
    code, data, _ = run(capsys, "verify", "--type", "[[1],[1]] @ [0,3]", "--m", "max", "--p", "3")
    assert code == 3


def test_verify(capsys):
    code, data, _ = run(capsys, "verify", "--type", "[[2,1]]", "--m", "max", "--p", "3")
    assert code == 0 and data["passed"]


def test_bad_inputs(capsys):
    assert run(capsys, "count", "--type", "[[3]]", "--m", "max", "--p", "4")[0] == 2
    assert run(capsys, "euler", "--type", "[[1,2]]", "--m", "max")[0] == 2
    assert run(capsys, "euler", "--type", "[[3]]", "--m", "1,1,3")[0] == 2
    assert run(capsys, "schubert", "1,1,2", "euler")[0] == 2


def test_euler_and_classify(capsys):
    assert run(capsys, "euler", "--type", "[[2,2]]", "--m", "sing")[1]["euler"] == 8
    assert run(capsys, "classify", "--type", "[[2,1,1]]")[1]["classification"] == "reducible"
    assert run(capsys, "classify", "--type", "[[4]]")[1]["classification"] == "irreducible"


def test_schubert(capsys):
    assert run(capsys, "schubert", "s2w0@n=5", "singular")[1]["singular"] == ["5,2,1,4,3"]
    assert run(capsys, "schubert", "5,2,1,4,3", "euler")[1]["euler"] == 36
    assert run(capsys, "schubert", "s2w0@n=4", "poincare")[1]["poincare"]["coefficients"] == [1, 3, 5, 6, 4, 1]


@pytest.fixture
def mats(tmp_path):
    x = tmp_path / "x.json"
    g = tmp_path / "g.json"
    x.write_text("[[1,0,0],[0,0,0],[0,0,0]]")
    g.write_text("[[1,0,0],\n [0,1,0],\n [0,0,1]]")
    return str(x), str(g)


def test_patch_commands(capsys, mats):
    x, g = mats
    assert run(capsys, "patch", x, g, "det")[1]["determinant"] == "z21*z32 - z31"
    assert run(capsys, "patch", x, g, "linear")[1]["linear_part"] == "-z31"
    assert run(capsys, "patch", x, g, "smooth")[1]["smooth"] is True
    rep = run(capsys, "patch", x, g, "report")[1]
    assert rep["in_sing_candidate"] is True
    wit = run(capsys, "patch", x, g, "witness")[1]["witness"]
    assert wit["status"] == "ok" and wit["initial"] == "z21*z32"
    assert run(capsys, "patch", x, g, "det", "--p", "5")[1]["determinant"] == "z21*z32 + 4*z31"


def test_patch_parse_error_reports_position(capsys, tmp_path, mats):
    bad = tmp_path / "bad.json"
    bad.write_text("[[1,0],\n [0,1]")
    code, _, err = run(capsys, "patch", str(bad), mats[1], "det")
    assert code == 2
    assert "line 2" in err and "column" in err


def test_singular_g(capsys, tmp_path, mats):
    z = tmp_path / "z.json"
    z.write_text("[[0,0,0],[0,0,0],[0,0,0]]")
    assert run(capsys, "patch", mats[0], str(z), "det")[0] == 2


def test_cache_commands(capsys, tmp_path):
    run(capsys, "count", "--type", "[[2]]", "--m", "max", "--p", "3", "--cache-dir", str(tmp_path))
    code, data, _ = run(capsys, "cache", "list", "--cache-dir", str(tmp_path))
    assert len(data["entries"]) == 1 and data["entries"][0]["key"]["op"] == "count"
    assert run(capsys, "cache", "clear", "--cache-dir", str(tmp_path))[1]["removed"] == 1


def test_env_var_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("HESSLAB_CACHE_DIR", str(tmp_path / "envcache"))
    assert Cache().root == tmp_path / "envcache"


def test_cache_rejects_foreign_version(tmp_path):
    a = Cache(tmp_path, version="1")
    a.put({"k": 1}, [1, 2])
    assert a.get({"k": 1}) == [1, 2]
    assert Cache(tmp_path, version="2").get({"k": 1}) is None


def test_jobs_flag_does_not_change_output(capsys):
    a = run(capsys, "count", "--type", "[[2],[1,1]]", "--m", "max", "--p", "3", "--no-cache")[1]
    b = run(capsys, "count", "--type", "[[2],[1,1]]", "--m", "max", "--p", "3", "--no-cache", "--jobs", "2")[1]
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hesslab", "poincare", "--type", "[[3]]", "--m", "max"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["poincare"]["coefficients"] == [1, 2, 1]
