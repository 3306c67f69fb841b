import io
import json
import os

import pytest

from gliaison.cli import run
from gliaison.polyring import Ideal, PolyRing

from conftest import DATA

P3F = os.path.join(DATA, "p3.lk")
Q3F = os.path.join(DATA, "q3.lk")
Q2F = os.path.join(DATA, "q2.lk")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    text = out.getvalue()
    data = json.loads(text) if text.strip().startswith("{") else text
    return code, data, err.getvalue()


def test_link_json():
    code, d, _ = call("link", "--file", P3F, "--curve", "line", "--by", "Y", "--format", "json")
    assert code == 0 and d["status"] == "ok"
    assert d["result"]["linked"] == ["z*w", "y*w", "x*z"]
    assert d["result"]["verification"]["ok"]
    assert d["version"] and d["seed"] == 0 and d["caps"]["retries"] == 8


def test_rao_skew_p3():
    code, d, _ = call("rao", "--file", P3F, "--ambient", "P3", "--curve", "C")
    assert code == 0 and d["result"]["dims"] == {"0": 1} and d["result"]["window"] == [0, 0]


def test_basic_verbs():
    code, d, _ = call("gb", "--file", P3F, "--curve", "cubic")
    assert code == 0 and len(d["result"]["groebner_basis"]) == 3
    code, d, _ = call("hf", "--file", P3F, "--curve", "cubic", "--window", "0,3")
    assert d["result"]["values"] == {"0": 1, "1": 4, "2": 7, "3": 10}
    code, d, _ = call("betti", "--file", P3F, "--curve", "cubic")
    assert d["result"]["betti"] == {"0,0": 1, "1,2": 3, "2,3": 2}
    code, d, _ = call("res", "--file", P3F, "--curve", "C")
    assert d["result"]["complete"] and [len(m) for m in d["result"]["modules"]] == [1, 4, 4, 1]
    code, d, _ = call("classify", "--file", Q3F, "--ambient", "X", "--curve", "conic")
    assert d["result"]["is_CI_in_X"] and d["result"]["is_CI"]


def test_resolution_verbs():
    for verb in ("etype", "ntype"):
        code, d, _ = call(verb, "--file", Q3F, "--ambient", "X", "--curve", "cubic")
        assert code == 0 and d["result"]["certification"]["ok"]
    code, d, _ = call("cone", "--file", Q3F, "--ambient", "X", "--curve", "cubic", "--degrees", "2,2")
    assert code == 0 and d["result"]["kind"] == "N"
    code, d, _ = call("link", "--file", Q3F, "--ambient", "X", "--curve", "L1", "--degrees", "2,2",
                      "--seed", "3")
    assert code == 0 and d["result"]["verification"]["ok"]


def test_gtransform_with_ci(tmp_path):
    code, d, _ = call("link", "--file", Q3F, "--ambient", "X", "--curve", "L1", "--degrees", "2,2")
    text = open(Q3F).read() + "ideal Yci\n" + "\n".join("  " + g for g in d["result"]["Y"]) + "\nend\n"
    f = tmp_path / "g.lk"
    f.write_text(text)
    code, g, _ = call("gtransform", "--file", str(f), "--ambient", "X", "--curve", "L1", "--by", "Yci")
    assert code == 0
    S = PolyRing([f"x{i}" for i in range(5)], 32003)
    as_ideal = lambda gens: Ideal(S, [S.parse(t) for t in gens])
    assert as_ideal(g["result"]["linked"]) == as_ideal(d["result"]["linked"])


def test_quadric_verbs():
    code, d, _ = call("spinor", "--file", Q3F, "--ambient", "X", "--degree", "1")
    assert code == 0 and d["result"]["AB_equals_qI"]
    assert d["result"]["section"]["classification"]["is_AG"]
    code, d, _ = call("mcm", "--file", Q3F, "--ambient", "X", "--curve", "cubic")
    assert code == 0 and d["result"]["decomposition"]["certified"]
    code, d, _ = call("evenclass", "--file", Q3F, "--ambient", "X", "--curve", "skew", "--by", "conicline")
    assert d["result"]["same_even_class"] is True
    code, d, _ = call("splitcheck", "--file", Q3F, "--ambient", "X", "--curve", "skew", "--by", "H,Z")
    assert code == 0 and d["result"]["split"] is False
    code, d, _ = call("peel", "--file", Q2F, "--ambient", "X", "--curve", "point")
    assert code == 0 and d["result"]["D_is_CI"]


def test_descend_and_replay(tmp_path):
    out = tmp_path / "trace.json"
    code, d, _ = call("descend", "--file", Q3F, "--ambient", "X", "--curve", "L1", "--trace-out", str(out))
    assert code == 0 and d["result"]["outcome"] == "reached_CI"
    assert d["result"]["trace"]["end"]["is_CI"] is True
    code, r, _ = call("replay", "--file", str(out))
    assert code == 0 and r["result"]["ok"]
    t = json.loads(out.read_text())
    t["steps"][1]["Y"][0] += " + x0^2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(t))
    code, r, err = call("replay", "--file", str(bad))
    assert code == 1 and r["result"]["failed_step"] == 1 and "step 1" in err


def test_descend_skew_stalls():
    code, d, _ = call("descend", "--file", Q3F, "--ambient", "X", "--curve", "skew")
    assert code == 0 and d["result"]["outcome"] == "stalled"
    assert d["result"]["trace"]["obstruction"]["rao_module"]["dims"] == {"0": 1}


def test_deterministic_output():
    args = ("descend", "--file", P3F, "--curve", "cubic", "--seed", "7")
    _, a, _ = call(*args)
    _, b, _ = call(*args)
    a.pop("timing")
    b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_text_format():
    code, d, _ = call("betti", "--file", P3F, "--curve", "cubic", "--format", "text")
    assert code == 0 and "total:" in d


@pytest.mark.parametrize("argv", [
    ("nonsense", "--file", P3F),
    ("link", "--file", P3F, "--curve", "missing", "--by", "Y"),
    ("link", "--file", "/nonexistent/file.lk", "--curve", "line", "--by", "Y"),
    ("link", "--curve", "line"),
    ("link", "--file", P3F, "--curve", "line"),
    ("rao", "--file", P3F, "--ambient", "P5", "--curve", "C"),
    ("hf", "--file", P3F, "--curve", "cubic", "--window", "3"),
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2


def test_parse_error_is_usage(tmp_path):
    f = tmp_path / "bad.lk"
    f.write_text("ring 7 x y\nideal I\n  x^2 + y\nend\n")
    code, _, err = call("gb", "--file", str(f), "--curve", "I")
    assert code == 2 and "not homogeneous" in err


def test_verification_failure_exit_one(tmp_path):
    f = tmp_path / "v.lk"
    f.write_text("ring 32003 x y z w\nideal C\n  x\n  y\nend\nideal Y\n  z\n  w\nend\n")
    code, d, err = call("link", "--file", str(f), "--curve", "C", "--by", "Y")
    assert code == 1 and d["status"] == "failed" and "not contained" in d["error"]
