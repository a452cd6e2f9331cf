import io
import json
import subprocess
import sys

import pytest

from gotzmann.borel import MonomialIdeal
from gotzmann.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, run
from gotzmann.monomials import WeightVector
from gotzmann.persistence import ChartPoint
from gotzmann.reproduce import load_golden

J3 = {"vars": ["x", "y", "z"], "gens": ["x^2", "x*y", "y^2"]}
L3 = {"vars": ["x", "y", "z"], "gens": ["x", "y^3"]}
I4 = {"vars": ["x", "y", "z", "w"], "gens": ["x^2", "x*y", "x*z", "y^3"]}
BAD_BOREL = {"vars": ["x", "y", "z"], "gens": ["x^2", "x*z", "y^3"]}
NOT_EXTREMAL = {"vars": ["x", "y", "z"], "gens": ["x^2", "x*y^3", "y^4"]}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, _ = cli(*argv, "--json")
    return code, json.loads(out)


def test_check_borel_names_missing_monomial(write_json):
    code, out, _ = cli("check-borel", "--ideal", write_json("j.json", BAD_BOREL))
    assert code == EXIT_NEGATIVE
    assert "missing x*y" in out
    code, data = cli_json("check-borel", "--ideal", write_json("j.json", J3))
    assert code == EXIT_OK and data["borel_fixed"]


def test_structure_commands(write_json):
    i4 = write_json("i4.json", I4)
    assert cli_json("borel-generators", "--ideal", i4)[1]["borel_generators"] == ["x*z", "y^3"]
    closure = cli_json("borel-closure", "--ideal", write_json("b.json", BAD_BOREL))[1]
    assert closure["ideal"]["gens"] == ["y^3", "x^2", "x*y", "x*z"]
    code, data = cli_json("ek-decompose", "--ideal", i4, "--monomial", "x^2*y*z")
    assert (data["generator"], data["cofactor"]) == ("x^2", "y*z")
    j3 = write_json("j3.json", J3)
    data = cli_json("degree-basis", "--ideal", j3, "--degree", "3")[1]
    assert data["count"] == 7
    data = cli_json("hilbert", "--ideal", j3, "--degree", "3")[1]
    assert data["hilbert_polynomial"] == "3" and data["values"][0]["dim_I"] == 7
    data = cli_json("syzygies", "--ideal", j3)[1]
    assert data["count"] == data["expected_count"] == 2


def test_lex_and_growth():
    code, data = cli_json("lex-segment", "--vars", "x,y,z", "--degree", "2", "--dim", "3")
    assert data["ideal"]["gens"] == ["x^2", "x*y", "x*z"]
    assert cli("gotzmann-growth", "--nvars", "3", "--degree", "2", "--dim-m", "3", "--dim-m1", "6")[0] == 0
    assert cli("gotzmann-growth", "--nvars", "3", "--degree", "2", "--dim-m", "3", "--dim-m1", "7")[0] == 1


def test_extremality_commands(write_json):
    i4 = write_json("i4.json", I4)
    code, data = cli_json("check-extremal", "--ideal", i4, "--weight", "5,2,1,0")
    assert code == EXIT_OK
    assert (data["min_ideal_weight"], data["max_standard_weight"]) == ("6", "5")
    ne = write_json("ne.json", NOT_EXTREMAL)
    code, data = cli_json("check-extremal", "--ideal", ne, "--weight", "3,2,1")
    assert code == EXIT_NEGATIVE and data["status"] == "refuted"
    code, data = cli_json("find-weight", "--ideal", ne)
    assert code == EXIT_NEGATIVE
    assert sorted(map(tuple, data["conflict"])) == [("x^2*z^2", "x*y^2*z"), ("y^4", "x*y^2*z")]
    code, data = cli_json("find-weight", "--ideal", i4)
    assert code == EXIT_OK and data["status"] == "certified"
    weight_file = write_json("w.json", [5, 2, 1, 0])
    assert cli("check-extremal", "--ideal", i4, "--weight", weight_file)[0] == EXIT_OK


def test_persistence_commands(write_json):
    j3 = write_json("j3.json", J3)
    pt = write_json("p.json", {"y^2:z^2": "1"})
    code, data = cli_json("persistence", "--base", j3, "--point", pt)
    assert code == EXIT_NEGATIVE and data["dim_actual"] == 8
    origin = write_json("o.json", {})
    code, data = cli_json("persistence", "--base", j3, "--point", origin, "--forward", "3")
    assert code == EXIT_OK and len(data["checked_degrees"]) == 4
    code, data = cli_json("flat-fiber", "--base", j3, "--point", write_json("q.json", {"x^2:z^2": "5"}),
                          "--weight", "7,6,2", "--t", "1/2")
    assert data["generators"][0] == "x^2 + 5/1024*z^2"
    code, data = cli_json("initial-ideal", "--ideal", write_json("f.json", {"vars": ["x", "y", "z"],
                                                                            "gens": ["x^2 - y*z"]}),
                          "--order", "lex")
    assert data["ideal"]["gens"] == ["x^2"]
    code, data = cli_json("gb", "--ideal", write_json("g.json", {"vars": ["x", "y"],
                                                                 "gens": ["x^2 - y", "x*y - 1"]}),
                          "--order", "lex")
    assert "y^3 - 1" in data["basis"]


def test_chart_equations(write_json, tmp_path):
    out_file = tmp_path / "chart.json"
    code, text, _ = cli("chart-equations", "--ideal", write_json("j3.json", J3), "--emit-matrix",
                        "-o", str(out_file))
    assert code == EXIT_OK and "dimension: 6" in text
    data = json.loads(out_file.read_text())
    gold = load_golden()
    assert len(data["groebner_basis"]) == 10
    assert sorted(data["groebner_basis"]) == sorted(gold["equations"])
    assert data["dimension"] == 6 and data["minors"]["nonzero"] == 333
    assert data["matrix"] == gold["matrix"]


def test_grassmannian_sizes(write_json):
    code, data = cli_json("grassmannian-sizes", "--ideal", write_json("j.json", J3),
                          "--lex", write_json("l.json", L3))
    assert data["extremal"]["grassmannian_dimension"] == 9
    assert data["lex"]["grassmannian_dimension"] == 21


def test_exit_codes(write_json, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("hilbert", "--ideal", str(bad))[0] == EXIT_PARSE
    assert cli("hilbert", "--ideal", write_json("x.json", {"vars": ["x"], "gens": ["x^"]}))[0] == EXIT_PARSE
    assert cli("hilbert", "--ideal", write_json("y.json", {"gens": []}))[0] == EXIT_PARSE
    assert cli("hilbert")[0] == EXIT_PARSE
    assert cli("check-extremal", "--ideal", write_json("j.json", J3), "--weight", "a,b")[0] == EXIT_PARSE
    assert cli("syzygies", "--ideal", write_json("b.json", BAD_BOREL))[0] == EXIT_PRECONDITION
    ne = write_json("ne.json", NOT_EXTREMAL)
    assert cli("persistence", "--base", ne, "--point", write_json("o.json", {}))[0] == EXIT_PRECONDITION
    assert cli("persistence", "--base", write_json("j3.json", J3),
               "--point", write_json("p.json", {"x^2:x*y": 1}))[0] == EXIT_PRECONDITION


def test_reproduce_paper_and_tampering(write_json, tmp_path):
    code, text, _ = cli("reproduce-paper")
    assert code == EXIT_OK and text.strip().endswith("PASS")
    assert "22275" in text
    gold = load_golden()
    gold["equations"][0] = "D*F - C*G - F*H + E*I + A"
    gold["matrix"]["entries"][0][2] = "B"
    code, data = cli_json("reproduce-paper", "--golden", write_json("gold.json", gold))
    assert code == EXIT_NEGATIVE and data["status"] == "FAIL"
    failed = {d["name"] for d in data["diff"]}
    assert "chart matrix" in failed and "trimmed ideal equals stated equations" in failed
    matrix_diff = next(d for d in data["diff"] if d["name"] == "chart matrix")["actual"]
    assert {"entry": [0, 2], "expected": "B", "actual": "A"} in matrix_diff
    assert cli("reproduce-paper", "--golden", write_json("junk.json", {"ideal": {}}))[0] == EXIT_PARSE


def test_determinism(write_json, tmp_path):
    j3 = write_json("j3.json", J3)
    outputs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        cli("reproduce-paper", "--forward", "5", "--seed", "4", "-o", str(path))
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    a = cli("chart-equations", "--ideal", j3, "--json", "--emit-minors")[1]
    b = cli("chart-equations", "--ideal", j3, "--json", "--emit-minors")[1]
    assert a == b


def test_round_trip(write_json):
    for spec in (J3, L3, I4):
        data = cli_json("borel-closure", "--ideal", write_json("i.json", spec))[1]["ideal"]
        again = cli_json("borel-closure", "--ideal", write_json("k.json", data))[1]["ideal"]
        assert again == data
        assert MonomialIdeal.parse(data["vars"], data["gens"]) == MonomialIdeal.parse(spec["vars"],
                                                                                      spec["gens"])
    data = cli_json("find-weight", "--ideal", write_json("i4.json", I4))[1]
    w = WeightVector.parse(",".join(data["weight"]))
    assert str(WeightVector.parse(str(w))) == str(w)
    J = MonomialIdeal.parse(J3["vars"], J3["gens"])
    p = ChartPoint.from_json(J, {"x^2:x*z": "1/3", "y^2:z^2": "-2"})
    assert ChartPoint.from_json(J, json.loads(json.dumps(p.to_json()))) == p


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gotzmann.cli", "lex-segment", "--vars", "x,y",
                           "--degree", "1", "--dim", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "(x)" in proc.stdout


@pytest.mark.parametrize("command", ["check-borel", "hilbert", "syzygies", "find-weight",
                                     "chart-equations", "borel-generators"])
def test_json_output_is_sorted(command, write_json):
    code, out, _ = cli(command, "--ideal", write_json("j.json", J3), "--json")
    data = json.loads(out)
    assert out == json.dumps(data, indent=2, sort_keys=True) + "\n"
