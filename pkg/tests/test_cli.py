import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from tak.cli import UsageError, main, parse_complex, parse_n_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,value", [
    ("1.5", 1.5), ("-2", -2), ("0+0.40825i", 0.40825j), ("3-2i", 3 - 2j), ("2.5i", 2.5j), ("i", 1j),
    ("-i", -1j), ("1e-3+2e2i", 0.001 + 200j), (" 4 ", 4),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1+", "j", "1+2j", "abc", "1 + 2i"])
def test_parse_complex_rejects(text):
    with pytest.raises(UsageError):
        parse_complex(text)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(finite, finite)
def test_parse_complex_round_trip(re_, im):
    assert parse_complex(f"{re_!r}{im:+.17g}i") == complex(re_, im)


def test_parse_n_range():
    assert parse_n_range("2..5") == [2, 3, 4, 5]
    assert parse_n_range("3") == [3]
    with pytest.raises(UsageError):
        parse_n_range("5..2")


def test_compute_deficient(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "b:7,3", "--x", "0+0.40825i", "--z", "0.5")
    report = json.loads(out)
    assert code == 0
    assert report["deficient"] is True and report["span"] < 2
    assert report["snapped_from_x"] == [0.0, 0.40825]


def test_compute_rejects_non_representation(capsys):
    code, _, err = run(capsys, "compute", "--knot", "twist:2", "--x", "1.2", "--y", "0.3")
    assert code == 1
    assert "relator residual" in err


def test_compute_solves_missing_coordinate(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "twist:1", "--x", "0.7+0.1i")
    report = json.loads(out)
    assert code == 0 and report["monic"] and report["span"] == 2 and report["coordinate_solved"]


def test_compute_reducible(capsys):
    code, _, err = run(capsys, "compute", "--knot", "twist:2", "--x", "1", "--y", "2")
    assert code == 1
    assert "abelian" in err.lower() or "reducible" in err.lower()


def test_solve_counts(capsys):
    for argv, expected in [
        (("--family", "b3", "--n", "2", "--mode", "monic"), 4),
        (("--family", "twist-even", "--n", "2", "--mode", "deficient"), 2),
        (("--family", "twist-odd", "--n", "3", "--mode", "deficient"), 0),
    ]:
        code, out, _ = run(capsys, "solve", *argv)
        assert code == 0 and len(json.loads(out)) == expected


def test_solve_csv(capsys):
    code, out, _ = run(capsys, "solve", "--family", "b3", "--n", "1", "--mode", "deficient", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2
    assert {r["verified"] for r in rows} == {"True"}


def test_verify_b3_passes(capsys):
    code, out, _ = run(capsys, "verify", "--family", "b3", "--n", "1..5", "--format", "text")
    assert code == 0 and "MISMATCH" not in out


def test_verify_twist_even_reports_mismatch(capsys):
    code, out, _ = run(capsys, "verify", "--family", "twist-even", "--n-range", "2..8", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    bad = [(int(r["n"]), r["mode"]) for r in rows if r["found"] != r["theorem"]]
    assert bad == [(2, "monic"), (5, "monic"), (8, "monic")]
    assert code == 1


def test_verify_full_table(capsys):
    code, out, _ = run(capsys, "verify", "--family", "all", "--n", "2..8", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "family,n,mode,found,theorem,verified"
    assert len(lines) == 43


def test_alexander(capsys):
    _, out, _ = run(capsys, "alexander", "--knot", "b:7,3")
    r = json.loads(out)
    assert r["leading"] == 2 and r["fibered"] is False
    _, out, _ = run(capsys, "alexander", "--knot", "b:11,3")
    r = json.loads(out)
    assert r["leading"] == 1 and r["fibered"] is True
    _, out, _ = run(capsys, "alexander", "--knot", "twist:2")
    r = json.loads(out)
    assert r["coeffs"] == [1, -3, 1] and r["fibered"] is True


@pytest.mark.parametrize("argv", [
    ["compute", "--knot", "b:8,3", "--x", "1", "--z", "1"],
    ["compute", "--knot", "b:7,3", "--x", "1+", "--z", "1"],
    ["compute", "--knot", "b:7,3", "--x", "1", "--z", "1", "--y", "1"],
    ["solve", "--family", "b3", "--n", "0", "--mode", "monic"],
    ["solve", "--family", "twist-odd", "--n", "1", "--mode", "monic"],
    ["verify", "--n", "5..2"],
    ["verify", "--n", "2", "--n-range", "2..3"],
    ["verify", "--family", "b3", "--n", "1", "--tolerance", "-1"],
    ["alexander", "--knot", "torus:3,2"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--family", "b4", "--n", "1", "--mode", "monic"])
    assert exc.value.code == 2


def test_output_is_byte_stable(capsys):
    argv = ["verify", "--family", "twist-odd", "--n", "2..4", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_sample_is_seeded(capsys):
    argv = ["sample", "--knot", "twist:2", "--count", "3", "--seed", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert all(r["monic"] and r["span"] == 2 for r in json.loads(first))


def test_out_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "verify", "--family", "b3", "--n", "1..2", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("family,n,mode")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tak", "alexander", "--knot", "b:7,3", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "2t^2 - 3t + 2" in proc.stdout and "non-fibered" in proc.stdout
