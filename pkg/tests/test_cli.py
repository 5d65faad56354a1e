from __future__ import annotations

import io
import json

import pytest

from braidchart import gadgets
from braidchart.census import census
from braidchart.chart import Sign
from braidchart.chartio import parse_chart, parse_targets, serialize_chart
from braidchart.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(map(str, argv)), out, err)
    return code, out.getvalue(), err.getvalue()


def pairs(text):
    return [tuple(line.split("\t", 1)) for line in text.splitlines()]


@pytest.fixture
def sw2(tmp_path):
    p = tmp_path / "sw2.chart"
    p.write_text(serialize_chart(gadgets.SW(2, Sign.PLUS)))
    return p


def test_validate_ok(sw2):
    code, out, _ = run("validate", sw2)
    assert code == 0
    assert ("status", "ok") in pairs(out)


def test_validate_invalid_exits_1(tmp_path):
    p = tmp_path / "bad.chart"
    p.write_text(serialize_chart(gadgets.FE(3)).replace("degree 4", "degree 3"))
    code, out, _ = run("validate", p)
    assert code == 1
    assert ("status", "invalid") in pairs(out)
    assert any(k == "violation" for k, _ in pairs(out))


def test_verify_linear(sw2):
    code, out, _ = run("verify", sw2, "--weights", "linear")
    assert code == 0
    assert ("weighted_total", "0") in pairs(out)
    assert ("star(1)", "ok") in pairs(out)


def test_verify_many_weight_specs(sw2):
    code, out, _ = run("verify", sw2, "--weights", "constant:5", "--weights", "triangular",
                       "--weights", "explicit:0:3,-1,4,9", "--weights", "random:7:5")
    assert code == 0
    assert sum(k.startswith("weighted[") for k, _ in pairs(out)) == 8


def test_bad_weights_is_usage_error(sw2):
    code, _, err = run("verify", sw2, "--weights", "cubic")
    assert code == 2 and "UsageError" in err


def test_census_report(sw2):
    code, out, _ = run("census", sw2)
    got = dict(pairs(out))
    assert code == 0
    # [PAPER] B(1,+)=2, B(1,-)=1, B(2,+)=1, B(2,-)=2, T(2,+)=1, E(1)=3, E(2)=3
    assert got["B(1,+)"] == "2" and got["B(1,-)"] == "1"
    assert got["B(2,+)"] == "1" and got["B(2,-)"] == "2"
    assert got["T(2,+)"] == "1" and got["E(1)"] == "3" and got["E(2)"] == "3"


def test_json_output(sw2):
    code, out, _ = run("census", sw2, "--json")
    data = json.loads(out)
    assert code == 0 and data["T(2,+)"] == 1 and data["status"] == "ok"


def test_realize_then_census(tmp_path):
    targets = tmp_path / "t.txt"
    targets.write_text("%targets 1\nB 1 + 2\nB 2 - 2\nT 2 + 2\n")
    chart = tmp_path / "out.chart"
    code, out, _ = run("realize", targets, "-o", chart)
    assert code == 0 and ("status", "ok") in pairs(out)
    c = census(parse_chart(chart.read_text()).chart)
    assert c.points() == parse_targets(targets.read_text()).census()
    code, out, _ = run("census", chart)
    got = dict(pairs(out))
    assert (got["B(1,+)"], got["B(2,-)"], got["T(2,+)"]) == ("2", "2", "2")


def test_plan_then_realize(tmp_path):
    targets = tmp_path / "t.txt"
    targets.write_text("%targets 1\nT 3 - 1\nD 2 + 1\n")
    planned = tmp_path / "p.txt"
    assert run("plan", targets, "-o", planned)[0] == 0
    code, out, _ = run("realize", planned)
    assert code == 0 and out.startswith("%chart 1")


def test_realize_star_violation_exit_1(tmp_path):
    targets = tmp_path / "t.txt"
    targets.write_text("%targets 1\nB 1 + 1\n")
    code, out, _ = run("realize", targets)
    assert code == 1
    assert ("status", "star-violation") in pairs(out)


def test_realize_budget_exhausted(tmp_path):
    targets = tmp_path / "t.txt"
    targets.write_text("%targets 1\nT 2 + 2\nT 3 + 2\nD 1 + 1\nD 3 - 1\n")
    code, out, _ = run("realize", targets, "--budget", "5")
    assert code == 1
    assert ("status", "budget-exhausted") in pairs(out)


def test_gen_deterministic(tmp_path):
    a = run("gen", "--seed", 9, "--degree", 5, "--size", 30)[1]
    b = run("gen", "--seed", 9, "--degree", 5, "--size", 30)[1]
    assert a == b and a.startswith("%chart 1")
    assert parse_chart(a).name == "gen seed 9"


def test_gen_infeasible_exit_2():
    code, _, err = run("gen", "--degree", 2, "--size", 1)
    assert code == 2 and "InfeasibleConfigError" in err


def test_render(sw2, tmp_path):
    out_svg = tmp_path / "x.svg"
    code, out, _ = run("render", sw2, "--overlay", "-o", out_svg)
    assert code == 0 and "2,+" in out_svg.read_text()
    assert run("render", sw2, "--no-layout")[0] == 2


def test_translate(sw2):
    code, _, err = run("translate", sw2, "--shift", 2)
    assert code == 2 and "LabelRangeError" in err  # labels would exceed degree 3
    code, out, _ = run("translate", sw2, "--shift", 2, "--degree", 5, "--reverse")
    assert code == 0
    c = census(parse_chart(out).chart)
    assert c == census(gadgets.SW(2, Sign.PLUS)).shifted(2).sign_swapped()


def test_classical(tmp_path):
    pd = tmp_path / "trefoil.pd"
    pd.write_text("X 1 4 2 5\nX 5 2 6 3\nX 3 6 4 1\n")
    code, out, _ = run("classical", pd)
    numbers = sorted(int(v.rsplit("\t", 1)[1]) for k, v in pairs(out) if k == "region")
    assert code == 0 and numbers == [0, 1, 1, 1, 2]
    code, out, _ = run("classical", pd, "--reverse")
    numbers = sorted(int(v.rsplit("\t", 1)[1]) for k, v in pairs(out) if k == "region")
    assert numbers == [-2, -1, -1, -1, 0]


def test_usage_errors():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    code, _, err = run("validate", "/nonexistent/file.chart")
    assert code == 2 and "cannot read" in err
    assert run("--help")[0] == 0
