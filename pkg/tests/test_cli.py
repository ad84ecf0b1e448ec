import pytest

from lrcdual import checks, cli
from lrcdual.bounds import LrcParams, evaluate
from lrcdual.code import LinearCode
from lrcdual.gf import field_new
from lrcdual.io import (
    FormatError,
    format_code,
    load_table_spec,
    parse_code,
    parse_csv,
    parse_table_spec,
    render_csv,
    render_markdown,
)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_single_row(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "17", "--d", "7", "--r", "2", "--methods", "lp,gsing")
    assert code == 0
    assert out == "lp: 5\ngen_singleton: 8\n"


def test_bounds_sh_exact_uses_bundled_table(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "4", "--n", "11", "--d", "8", "--r", "2", "--methods", "sh_exact")
    assert code == 0 and out == "sh_exact: 2\n"


def test_bounds_invalid_params_exit_2(capsys):
    code, _, err = run(capsys, "bounds", "--q", "2", "--n", "5", "--d", "6", "--r", "1")
    assert code == 2 and "d <= n" in err


def test_bounds_missing_kopt_exit_3(capsys, tmp_path):
    table = tmp_path / "k.txt"
    table.write_text("2 10 4 5\n")
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "10", "--d", "4", "--r", "2",
                       "--methods", "sh_exact", "--kopt-table", str(table))
    assert code == 3 and "k_opt(2, 7, 4)" in out


def test_bounds_details_and_dump(capsys, tmp_path):
    lp_file = tmp_path / "lp.txt"
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "10", "--d", "4", "--r", "2",
                       "--methods", "lp,sh_lp", "--details", "--dump-lp", str(lp_file))
    assert code == 0
    assert "mu=35" in out and "t=" in out
    assert "locality_1" in lp_file.read_text()


def test_bounds_grid_csv_round_trip(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2,3", "--n", "8,9", "--d", "3", "--r", "2,3", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 2 * 2 * 2 * 3
    for q, n, d, r, method, value, status in rows:
        assert status == "ok"
        assert evaluate(LrcParams(q, n, d, r), method).value == value


def test_unknown_method_is_input_error(capsys):
    code, _, err = run(capsys, "bounds", "--q", "2", "--n", "8", "--d", "3", "--r", "2", "--methods", "lp,magic")
    assert code == 2 and "magic" in err


def test_bad_arguments_exit_2(capsys):
    assert cli.main(["bounds", "--q", "x", "--n", "8", "--d", "3", "--r", "2"]) == 2
    capsys.readouterr()


def test_table_from_spec_file(capsys, tmp_path):
    spec = tmp_path / "one.txt"
    spec.write_text("methods: lp\nformat: csv\n3 11 5 5\n")
    code, out, _ = run(capsys, "table", "--spec", str(spec))
    assert code == 0
    # the ternary Golay code has k = 6 with locality 5, so 6 is the value to expect
    assert parse_csv(out) == [(3, 11, 5, 5, "lp", 6, "ok")]


def test_empty_table(capsys, tmp_path):
    spec = tmp_path / "empty.txt"
    spec.write_text("# nothing here\n")
    code, out, _ = run(capsys, "table", "--spec", str(spec), "--format", "csv")
    assert code == 0 and out == "q,n,d,r,method,k_bound,status\n"


def test_table_parallel_output_is_identical(capsys):
    c1, serial, _ = run(capsys, "table", "--spec", "table1", "--format", "csv")
    c2, parallel, _ = run(capsys, "table", "--spec", "table1", "--format", "csv", "--jobs", "2")
    assert c1 == c2 == 0 and serial == parallel
    assert [r[:4] for r in parse_csv(serial)][::4] == [
        (p.q, p.n, p.d, p.r) for p in load_table_spec("table1").rows]


def test_table_skipped_rows_exit_3(capsys):
    code, out, err = run(capsys, "table", "--spec", "table2")
    assert code == 3 and "n/a" in out and "2 row(s) skipped" in err


def test_table_error_cell(capsys, tmp_path, monkeypatch):
    def boom(p, method, kopt_table=None):
        if method == "lp":
            raise RuntimeError("solver exploded")
        return evaluate(p, method, kopt_table=kopt_table)

    monkeypatch.setattr(cli, "evaluate", boom)
    spec = tmp_path / "s.txt"
    spec.write_text("methods: lp, gsing\n2 8 3 2\n")
    code, out, _ = run(capsys, "table", "--spec", str(spec))
    assert code == 1 and "ERR" in out


def write(tmp_path, text, name="c.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_analyze_repetition(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--code", write(tmp_path, "2 3 1\n1 1 1\n"))
    assert code == 0
    assert "d=3\n" in out and "d_dual=2\n" in out and "r=1\n" in out


def test_analyze_self_dual_pair(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--code", write(tmp_path, "2 4 2\n1 1 0 0\n0 0 1 1\n"))
    assert code == 0
    assert "d=2\n" in out and "r=1\n" in out and "self_dual=true" in out
    assert "VIOLATED" not in out


def test_analyze_full_space_has_undefined_locality(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--code", write(tmp_path, "3 2 2\n1 0\n0 1\n"))
    assert code == 0 and "r=undefined" in out and "d_dual=undefined" in out


def test_analyze_rank_deficient(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", "--code", write(tmp_path, "3 3 3\n1 0 2\n0 1 1\n1 1 0\n"))
    assert code == 2 and "row 3" in err


@pytest.mark.parametrize("text", ["", "2 3\n1 1 1\n", "2 3 1\n1 1\n", "2 3 1\n1 2 1\n", "6 2 1\n1 1\n",
                                  "2 3 2\n1 1 1\n"])
def test_analyze_parse_errors(tmp_path, capsys, text):
    code, _, err = run(capsys, "analyze", "--code", write(tmp_path, text))
    assert code == 2 and err.startswith("error:")


def test_analyze_budget_exceeded(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LRCDUAL_ENUM_BUDGET", "100")
    rows = "\n".join(" ".join("1" if i == j else "0" for j in range(8)) for i in range(7))
    code, _, err = run(capsys, "analyze", "--code", write(tmp_path, f"2 8 7\n{rows}\n"))
    assert code == 4 and "budget" in err


@pytest.mark.parametrize("argv", [
    ("--q", "2", "--n", "6", "--kmax", "3", "--trials", "50", "--seed", "7"),
    ("--q", "4", "--n", "5", "--kmax", "2", "--trials", "25", "--seed", "1"),
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv)
    assert code == 0 and out.endswith("all properties passed\n")
    trials = argv[argv.index("--trials") + 1]
    assert f"refined_dual_roundtrip: {trials}/{trials} passed" in out


def test_verify_zero_trials(capsys):
    code, out, _ = run(capsys, "verify", "--q", "3", "--n", "4", "--kmax", "2", "--trials", "0")
    assert code == 0 and "0/0 passed" in out


def test_verify_is_deterministic(capsys):
    argv = ("verify", "--q", "3", "--n", "5", "--kmax", "3", "--trials", "10", "--seed", "4")
    assert run(capsys, *argv) == run(capsys, *argv)


def test_verify_failure_writes_replayable_counterexample(capsys, tmp_path, monkeypatch):
    monkeypatch.setitem(checks.PROPERTIES, "weight_marginals", lambda C: C.k < 2)
    monkeypatch.setattr(cli, "PROPERTIES", checks.PROPERTIES)
    dump = tmp_path / "cex.txt"
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "5", "--kmax", "3", "--trials", "20",
                       "--seed", "2", "--counterexample", str(dump))
    assert code == 1 and "FAIL weight_marginals" in out
    C = parse_code(dump.read_text())
    assert C.k >= 2
    assert run(capsys, "analyze", "--code", str(dump))[0] == 0


def test_verify_bad_parameters(capsys):
    assert run(capsys, "verify", "--q", "6", "--n", "4", "--kmax", "2")[0] == 2
    assert run(capsys, "verify", "--q", "2", "--n", "4", "--kmax", "4")[0] == 2


def test_code_file_round_trip():
    C = LinearCode(field_new(4), [[1, 0, 2, 3], [0, 1, 3, 3]])
    assert parse_code(format_code(C)) == C


def test_table_spec_parsing():
    spec = parse_table_spec("methods: lp, gsing\nformat: csv\n2 10 4 2  # row\n")
    assert spec.methods == ["lp", "gen_singleton"] and spec.format == "csv"
    assert spec.rows == [LrcParams(2, 10, 4, 2)]
    for bad in ["2 10 4\n", "colour: red\n", "format: html\n", "2 5 6 1\n"]:
        with pytest.raises(FormatError):
            parse_table_spec(bad)


def test_bundled_specs_have_expected_rows():
    counts = [len(load_table_spec(f"table{i}").rows) for i in range(1, 5)]
    assert counts == [8, 8, 8, 8]


def test_markdown_layout():
    p = LrcParams(2, 10, 4, 2)
    methods = ["gen_singleton", "lp"]
    rows = [(p, {m: evaluate(p, m) for m in methods})]
    text = render_markdown(rows, methods)
    assert text.splitlines()[0] == "| q | n | d | r | LP | gen. Singl. |"
    assert "| 2 | 10 | 4 | 2 | k <= 4 | k <= 5 |" in text
    assert parse_csv(render_csv(rows, methods)) == [(2, 10, 4, 2, "gen_singleton", 5, "ok"),
                                                    (2, 10, 4, 2, "lp", 4, "ok")]
