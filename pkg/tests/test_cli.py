"""End-to-end tests of the command-line interface via main(argv)."""

import json

import pytest

from orddraw.cli import SOLVER_ENV, main

S3_TEXT = """\
# classic three-dimensional example
elements: a1 a2 a3 b1 b2 b3
a1 < b2
a1 < b3
a2 < b1
a2 < b3
a3 < b1
a3 < b2
"""

DIAMOND_TEXT = "elements: bot left right top\nbot < left\nbot < right\nleft < top\nright < top\n"

CXT_TEXT = "B\n2\n2\ng0\ng1\nm0\nm1\nX.\n.X\n"


@pytest.fixture
def s3_file(tmp_path):
    path = tmp_path / "s3.order"
    path.write_text(S3_TEXT)
    return str(path)


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.order"
    path.write_text(DIAMOND_TEXT)
    return str(path)


@pytest.fixture
def cxt_file(tmp_path):
    path = tmp_path / "square.cxt"
    path.write_text(CXT_TEXT)
    return str(path)


class TestDraw:
    def test_summary_line(self, s3_file, capsys):
        assert main(["draw", "-i", s3_file]) == 0
        out = capsys.readouterr().out
        assert "n=6 inc=18 passes=1 inserted=1 false_comparabilities=1" in out
        assert "time=" in out

    def test_svg_output(self, s3_file, tmp_path, capsys):
        target = tmp_path / "diagram.svg"
        assert main(["draw", "-i", s3_file, "-o", str(target)]) == 0
        data = target.read_bytes()
        assert data.startswith(b'<?xml version="1.0"')
        assert data.count(b"<circle") == 6

    def test_json_output(self, s3_file, tmp_path):
        target = tmp_path / "diagram.json"
        assert main(["draw", "-i", s3_file, "-o", str(target)]) == 0
        doc = json.loads(target.read_text())
        assert doc["passes"] == 1
        assert len(doc["elements"]) == 6
        assert doc["inserted_pairs"] in ([["a1", "b1"]], [["a2", "b2"]], [["a3", "b3"]])

    def test_tikz_and_dot_outputs(self, diamond_file, tmp_path):
        for name in ("d.tikz", "d.tex", "d.dot"):
            target = tmp_path / name
            assert main(["draw", "-i", diamond_file, "-o", str(target)]) == 0
            assert target.stat().st_size > 100

    def test_unknown_extension_is_an_input_error(self, diamond_file, tmp_path, capsys):
        target = tmp_path / "out.bmp"
        assert main(["draw", "-i", diamond_file, "-o", str(target)]) == 1
        assert "cannot infer output format" in capsys.readouterr().err

    def test_summary_json_document(self, s3_file, tmp_path):
        target = tmp_path / "summary.json"
        assert main(["draw", "-i", s3_file, "--summary-json", str(target)]) == 0
        doc = json.loads(target.read_text())
        assert doc["n"] == 6
        assert doc["incomparable_pairs"] == 18
        assert doc["passes"] == 1
        assert doc["inserted"] == 1
        assert doc["false_comparabilities"] == 1
        assert doc["strategy"] == "sat"
        assert doc["seed"] == 0
        assert doc["perturbed"] == []

    def test_summary_json_is_byte_stable(self, s3_file, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["draw", "-i", s3_file, "--summary-json", str(a)]) == 0
        assert main(["draw", "-i", s3_file, "--summary-json", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_verbose_reports_passes(self, s3_file, capsys):
        assert main(["draw", "-i", s3_file, "-v"]) == 0
        err = capsys.readouterr().err
        assert "pass 1: removed 1 tig vertices" in err

    def test_stdin_input(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(DIAMOND_TEXT))
        assert main(["draw", "-i", "-"]) == 0
        assert "n=4 inc=2 passes=0" in capsys.readouterr().out

    def test_heuristic_solvers_run(self, s3_file, capsys):
        for solver in ("greedy", "anneal", "genetic", "brute"):
            assert main(["draw", "-i", s3_file, "--solver", solver,
                         "--seed", "7"]) == 0
            assert "inserted=" in capsys.readouterr().out

    def test_binary_k_search(self, s3_file, capsys):
        assert main(["draw", "-i", s3_file, "--k-search", "binary"]) == 0
        assert "inserted=1" in capsys.readouterr().out

    def test_cxt_input(self, cxt_file, capsys):
        assert main(["draw", "-i", cxt_file]) == 0
        assert "n=4 inc=2 passes=0 inserted=0" in capsys.readouterr().out

    def test_cxt_format_override(self, tmp_path, capsys):
        path = tmp_path / "context.txt"
        path.write_text(CXT_TEXT)
        assert main(["draw", "-i", str(path), "--input-format", "cxt"]) == 0
        assert "n=4" in capsys.readouterr().out


class TestDrawErrors:
    def test_missing_file(self, capsys):
        assert main(["draw", "-i", "/no/such/file.order"]) == 1
        assert "orddraw:" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.order"
        bad.write_text("a !! b\n")
        assert main(["draw", "-i", str(bad)]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_cycle_error(self, tmp_path, capsys):
        bad = tmp_path / "cyclic.order"
        bad.write_text("a < b\nb < a\n")
        assert main(["draw", "-i", str(bad)]) == 1
        assert "cycle" in capsys.readouterr().err

    def test_missing_external_command(self, s3_file, capsys, monkeypatch):
        monkeypatch.delenv(SOLVER_ENV, raising=False)
        assert main(["draw", "-i", s3_file, "--sat-backend", "external"]) == 2
        assert "solver backend failed" in capsys.readouterr().err

    def test_broken_external_solver(self, s3_file, tmp_path, capsys):
        liar = tmp_path / "liar.sh"
        liar.write_text("#!/bin/sh\necho garbage\n")
        liar.chmod(0o755)
        assert main(["draw", "-i", s3_file, "--sat-backend", "external",
                     "--solver-cmd", str(liar)]) == 2

    def test_invariant_violations_exit_3(self, s3_file, capsys, monkeypatch):
        from orddraw.errors import OrderViolation

        def explode(*args, **kwargs):
            raise OrderViolation("synthetic failure for the exit-code test")

        monkeypatch.setattr("orddraw.cli.compute_coordinates", explode)
        assert main(["draw", "-i", s3_file]) == 3
        assert "internal invariant violated" in capsys.readouterr().err


class TestExternalSolverEndToEnd:
    DPLL = """\
import sys

tokens = open(sys.argv[1]).read().split()
i = tokens.index('cnf')
nv = int(tokens[i + 1])
lits = [int(t) for t in tokens[i + 3:]]
clauses, cur = [], []
for l in lits:
    if l == 0:
        clauses.append(tuple(cur))
        cur = []
    else:
        cur.append(l)


def solve(clauses, assigned):
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        assigned[abs(unit)] = unit > 0
        nxt = []
        for c in clauses:
            if unit in c:
                continue
            if -unit in c:
                c = tuple(l for l in c if l != -unit)
                if not c:
                    return None
            nxt.append(c)
        clauses = nxt
    if not clauses:
        return assigned
    v = abs(clauses[0][0])
    for lit in (v, -v):
        got = solve(clauses + [(lit,)], dict(assigned))
        if got is not None:
            return got
    return None


model = solve(clauses, {})
if model is None:
    print('s UNSATISFIABLE')
    raise SystemExit(20)
out = [v if model.get(v, False) else -v for v in range(1, nv + 1)]
print('s SATISFIABLE')
print('v ' + ' '.join(map(str, out)) + ' 0')
raise SystemExit(10)
"""

    def test_script_backend_draws(self, s3_file, tmp_path, capsys):
        # a genuine external solver: a small DPLL script speaking the
        # competition output dialect
        solver = tmp_path / "solves.py"
        solver.write_text(self.DPLL)
        import sys as _sys
        cmd = f"{_sys.executable} {solver}"
        assert main(["draw", "-i", s3_file, "--sat-backend", "external",
                     "--solver-cmd", cmd]) == 0
        assert "inserted=1" in capsys.readouterr().out

    def test_env_variable_supplies_the_command(self, s3_file, tmp_path,
                                               capsys, monkeypatch):
        script = tmp_path / "fromenv.sh"
        script.write_text("#!/bin/sh\necho 's SATISFIABLE'\necho 'v 0'\n")
        script.chmod(0o755)
        monkeypatch.setenv(SOLVER_ENV, str(script))
        # all-false is rarely a model, so expect a backend failure, which
        # proves the env command was picked up and executed
        code = main(["draw", "-i", s3_file, "--sat-backend", "external"])
        assert code == 2


class TestCnf:
    def test_stdout_dimacs_with_stats_on_stderr(self, s3_file, capsys):
        assert main(["cnf", "-i", s3_file, "-k", "1"]) == 0
        captured = capsys.readouterr()
        assert captured.out.startswith("p cnf 71 116\n")
        assert "tig: n=18 m=24 k=1 vars=71 clauses=116" in captured.err

    def test_file_output_with_stats_on_stdout(self, s3_file, tmp_path, capsys):
        target = tmp_path / "instance.cnf"
        assert main(["cnf", "-i", s3_file, "-k", "2", "-o", str(target)]) == 0
        assert target.read_text().startswith("p cnf ")
        assert "k=2" in capsys.readouterr().out

    def test_sizes_match_the_advertised_formulas(self, s3_file, capsys):
        for k in (1, 2, 3):
            main(["cnf", "-i", s3_file, "-k", str(k)])
            err = capsys.readouterr().err
            n, m = 18, 24
            assert f"vars={(n - 1) * (k + 3) + 3}" in err
            assert f"clauses={2 * m + 2 * n * k + 2 * n - 3 * k - 1}" in err

    def test_negative_k_rejected(self, s3_file, capsys):
        assert main(["cnf", "-i", s3_file, "-k", "-1"]) == 1


class TestDim:
    def test_no_for_standard_example(self, s3_file, capsys):
        assert main(["dim", "-i", s3_file]) == 0
        assert capsys.readouterr().out == "dim<=2: no\n"

    def test_yes_with_realizer(self, diamond_file, capsys):
        assert main(["dim", "-i", diamond_file, "--realizer"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "dim<=2: yes"
        assert out[1].startswith("L1: bot ")
        assert out[2].startswith("L2: bot ")
        assert set(out[1][4:].split()) == {"bot", "left", "right", "top"}
