import io
import json
import subprocess
import sys

import pytest

from quotfit import Ideal, PolyRing
from quotfit.cli import EXIT_FALSE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from quotfit.quotcore import dumps_report


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write_ideal(tmp_path, name, names, gens):
    ring = PolyRing(names)
    path = tmp_path / name
    path.write_text(json.dumps(Ideal(ring, [ring.parse(g) for g in gens]).to_json()))
    return str(path)


def test_p1xp1_report_text_and_homogenized():
    code, text = run("quot-equations", "--p", "2", "--r", "1", "--n", "1", "--d", "1", "--homogenize")
    assert code == EXIT_OK
    assert "cumulative ideal: (u1*u2 - u3)" in text
    assert "b*c - a*d" in text


def test_p2_report_json():
    code, text = run("quot-equations", "--p", "2", "--r", "2", "--n", "1", "--d", "1", "--s-max", "2", "--format", "json")
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["strata"][0]["generators"] == ["u2*u4 - u1*u5", "u2*u3 - u5", "u1*u3 - u4"]


def test_hilbert_scheme_all_charts_zero():
    code, text = run("quot-equations", "--p", "1", "--r", "1", "--n", "2", "--d", "2", "--s-max", "2", "--all-charts", "--format", "json")
    assert code == EXIT_OK
    charts = json.loads(text)["charts"]
    assert len(charts) == 3
    assert all(c["cumulative_ideal"] == [] for c in charts)


def test_json_round_trip_is_byte_identical():
    code, text = run("quot-equations", "--p", "2", "--r", "1", "--n", "2", "--d", "2", "--pivots", "0,4", "--format", "json")
    assert code == EXIT_OK
    assert dumps_report(json.loads(text)) == text


def test_output_does_not_depend_on_threads():
    base = ["quot-equations", "--p", "2", "--r", "2", "--n", "1", "--d", "1", "--format", "json"]
    assert run(*base)[1] == run(*base, "--threads", "3")[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["quot-equations", "--p", "1", "--r", "1", "--n", "3", "--d", "2"],
        ["quot-equations", "--p", "0", "--r", "1", "--n", "1", "--d", "1"],
        ["quot-equations", "--p", "2", "--r", "1", "--n", "2", "--d", "2", "--homogenize"],
        ["quot-equations", "--p", "2", "--r", "1", "--n", "1", "--d", "1", "--pivots", "0,1"],
        ["quot-equations", "--p", "2", "--r", "1", "--n", "1", "--d", "1", "--pivots", "9"],
        ["quot-equations", "--p", "2", "--r", "1", "--n", "1", "--d", "1", "--pivots", "0", "--all-charts"],
        ["quot-stabilize", "--p", "2", "--r", "1", "--n", "1", "--d", "1", "--s-max", "1"],
        ["quot-verify", "nonsense"],
        ["macaulay-rep", "5"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_stabilize():
    code, text = run("quot-stabilize", "--p", "3", "--r", "1", "--n", "1", "--d", "1", "--all-charts", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(text)["charts"]
    assert len(rows) == 6
    assert all(r["stabilization_offset"] == 1 for r in rows)


@pytest.mark.parametrize("name", ["hilb-p1", "p1xp1", "segre-p3", "p2-plane"])
def test_verify_examples(name):
    code, text = run("quot-verify", name)
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert lines and all(l.startswith("PASS") for l in lines)


def test_macaulay_commands():
    assert run("macaulay-rep", "5", "2") == (EXIT_OK, "5 = C(3,2) + C(2,1)\n")
    assert run("macaulay-growth", "5", "2") == (EXIT_OK, "7\n")
    code, text = run("macaulay-rep", "5", "2", "--format", "json")
    assert json.loads(text) == {"n": 5, "d": 2, "terms": [[3, 2], [2, 1]]}


def test_ideal_tools(tmp_path):
    names = ["u1", "u2", "u3"]
    I = write_ideal(tmp_path, "I.json", names, ["u1*u2 - u3"])
    J = write_ideal(tmp_path, "J.json", names, ["-2*u1*u2 + 2*u3", "u1*(u1*u2 - u3)"])
    sq = write_ideal(tmp_path, "sq.json", names, ["(u1*u2 - u3)^2"])
    assert run("ideal-member", "--ideal", I, "--poly", "u1*u2 - u3") == (EXIT_OK, "true\n")
    assert run("ideal-member", "--ideal", I, "--poly", "u1") == (EXIT_FALSE, "false\n")
    assert run("ideal-equal", I, J) == (EXIT_OK, "true\n")
    assert run("ideal-equal", I, sq) == (EXIT_FALSE, "false\n")
    f = tmp_path / "f.txt"
    f.write_text("u1*u2 - u3\n")
    assert run("ideal-member", "--ideal", sq, "--poly", str(f)) == (EXIT_FALSE, "false\n")
    assert run("ideal-radical-member", "--ideal", sq, "--poly", str(f)) == (EXIT_OK, "true\n")
    code, text = run("ideal-gb", J)
    assert (code, text) == (EXIT_OK, "u1*u2 - u3\n")
    code, text = run("ideal-gb", J, "--format", "json")
    assert json.loads(text)["ring"]["vars"] == names


def test_parse_errors_exit_2(tmp_path):
    I = write_ideal(tmp_path, "I.json", ["u1"], ["u1"])
    assert run("ideal-member", "--ideal", I, "--poly", "q + 1")[0] == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("ideal-gb", str(bad))[0] == EXIT_USAGE
    assert run("ideal-gb", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_budget_exit_3(tmp_path):
    I = write_ideal(tmp_path, "I.json", ["u", "v", "w"], ["u^3 - v*w^2 + 1", "v^3 - u*w", "w^3 - u^2*v + u"])
    assert run("ideal-gb", I, "--budget", "3")[0] == EXIT_RESOURCE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quotfit", "macaulay-growth", "3", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "6\n"
