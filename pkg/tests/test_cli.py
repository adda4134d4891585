import csv
import json
import subprocess
import sys

import pytest

from m5gb.cli import ParseError, format_basis, format_poly, format_system, main, parse_system
from m5gb.gensys import gen_dense_quadratic
from m5gb.poly import PolyRing


def test_parse_examples():
    p, n, F = parse_system("p 101 vars 2\n1*x1^2 + 100*x2\n")
    ring = PolyRing(2)
    x, y = ring.gens()
    assert (p, n) == (101, 2)
    assert F == [x * x - y]
    _, _, F = parse_system("p 101 vars 2\n5\n")
    assert F == [ring.constant(5)]


def test_parse_comments_and_blank_lines():
    text = "# header comment\n\np 7 vars 3\n# c\n3*x1*x3 + x2^2\n\n2*x3^4 + 6\n"
    p, n, F = parse_system(text)
    assert (p, n, len(F)) == (7, 3, 2)
    assert format_poly(F[0]) == "1*x2^2 + 3*x1*x3"


@pytest.mark.parametrize("text, line", [
    ("p 4 vars 1\nx1\n", 1),
    ("p 101 vars 2\nx1 + 101*x2\n", 2),
    ("p 101 vars 2\n\nx3\n", 3),
    ("p 101 vars 2\nx1 + + x2\n", 2),
    ("p 101 vars 2\n2*y\n", 2),
    ("vars 2\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_system(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


def test_parse_missing_header():
    with pytest.raises(ParseError):
        parse_system("# nothing\n")


def test_round_trip():
    F, _ = gen_dense_quadratic(4, 6, 101, 3)
    text = format_system(101, 4, F, ["c"])
    p, n, G = parse_system(text)
    assert (p, n) == (101, 4) and G == F
    assert format_system(p, n, G, ["c"]) == text


def test_format_lex_polys_in_grevlex():
    ring = PolyRing(2, order="lex")
    x, y = ring.gens()
    assert format_poly(x + y * y) == "1*x2^2 + 1*x1"
    assert format_poly(ring.zero) == "0"


def test_format_basis_sorted_monic():
    ring = PolyRing(2)
    x, y = ring.gens()
    text = format_basis([x * 2 + 2, y * 3])
    assert text == "p 101 vars 2\n1*x2\n1*x1 + 1\n"


@pytest.fixture
def system_file(tmp_path):
    path = tmp_path / "s.txt"
    assert main(["gen", "--n", "5", "--m", "10", "--p", "101", "--seed", "42", "-o", str(path),
                 "--emit-solution", str(tmp_path / "sol.txt")]) == 0
    return path


def test_gen_solve_verify(system_file, tmp_path):
    basis = tmp_path / "b.txt"
    stats = tmp_path / "st.json"
    assert main(["solve", "--alg", "m5gb", "-i", str(system_file), "-o", str(basis),
                 "--stats", str(stats)]) == 0
    assert main(["verify", "-i", str(system_file), "-b", str(basis)]) == 0
    data = json.loads(stats.read_text())
    assert set(data) >= {"reduction_steps", "spairs_processed", "spairs_skipped_syzygy",
                         "spairs_skipped_duplicate", "zero_reductions", "basis_size", "wall_time"}
    sol = [int(v) for v in (tmp_path / "sol.txt").read_text().split()]
    assert len(sol) == 5


def test_reduced_outputs_identical(system_file, tmp_path):
    outs = []
    for alg, so in (("buchberger", "pot"), ("m5gb", "pot"), ("m5gb", "top"), ("sb", "top")):
        out = tmp_path / f"{alg}-{so}.txt"
        assert main(["solve", "--alg", alg, "--sigorder", so, "--reduced",
                     "-i", str(system_file), "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert len(set(outs)) == 1


def test_verify_failure(tmp_path):
    sys_file = tmp_path / "s.txt"
    sys_file.write_text("p 101 vars 2\nx1^2 + 100*x2\nx1*x2 + 100\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("p 101 vars 2\nx1^2 + 100*x2\nx1*x2 + 100\n")
    assert main(["verify", "-i", str(sys_file), "-b", str(bad)]) == 1
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("p 101 vars 2\nx1\nx2\n")
    assert main(["verify", "-i", str(sys_file), "-b", str(wrong)]) == 1
    other = tmp_path / "other.txt"
    other.write_text("p 101 vars 3\nx1\n")
    assert main(["verify", "-i", str(sys_file), "-b", str(other)]) == 1


def test_usage_and_parse_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["solve", "--alg", "f4", "-i", "a", "-o", "b"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("p 4 vars 1\nx1\n")
    assert main(["solve", "-i", str(bad), "-o", str(tmp_path / "o.txt")]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["solve", "-i", str(tmp_path / "missing.txt"), "-o", str(tmp_path / "o.txt")]) == 2


def test_bench_csv(tmp_path):
    out = tmp_path / "out.csv"
    assert main(["bench", "--n-range", "5:8", "--m-rule", "2N", "--reps", "3",
                 "--algs", "m5gb,sb", "--csv", str(out), "--cross-check"]) == 0
    rows = list(csv.DictReader(out.open(encoding="utf-8")))
    inst = [r for r in rows if r["seed"] != "mean"]
    assert len(inst) == 24
    assert len(rows) == 24 + 8


def test_compare(system_file, capsys):
    assert main(["compare", "-i", str(system_file)]) == 0
    out = capsys.readouterr().out
    assert "reduced bases identical" in out
    assert out.count("reduction_steps=") == 3


def test_module_entry_point(system_file, tmp_path):
    out = tmp_path / "b.txt"
    res = subprocess.run([sys.executable, "-m", "m5gb", "solve", "-i", str(system_file), "-o", str(out),
                          "--reduced"], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert out.read_text().startswith("p 101 vars 5\n")
