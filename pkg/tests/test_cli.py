import io
import json

import pytest

from splitdecomp.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, bench_rows, doubling_ratios, main
from splitdecomp.generate import random_connected_graph
from splitdecomp.graph import GraphError, load_graph

P4 = "a b\nb c\nc d\n"
K4 = "a b\na c\na d\nb c\nb d\nc d\n"


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old = __import__("sys").stdin
    __import__("sys").stdin = io.StringIO(stdin)
    try:
        code = main(argv, out, err)
    finally:
        __import__("sys").stdin = old
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def p4_file(tmp_path):
    p = tmp_path / "p4.txt"
    p.write_text(P4)
    return str(p)


def test_decompose_text(p4_file):
    code, out, _ = run(["decompose", p4_file, "--format", "text"])
    assert code == EXIT_OK
    assert out.count("S(") == 2


def test_decompose_dot_k4():
    code, out, _ = run(["decompose", "--format", "dot"], K4)
    assert code == EXIT_OK
    assert out.count('label="C"') == 1 and out.count("shape=ellipse") == 4


def test_decompose_json_from_stdin_with_root():
    code, out, _ = run(["decompose", "-", "--format", "json", "--root", "c"], P4)
    data = json.loads(out)
    assert code == EXIT_OK and len(data["nodes"]) == 6


def test_decompose_verify_match(p4_file):
    code, _, err = run(["decompose", p4_file, "--verify"])
    assert code == EXIT_OK and err.strip() == "MATCH"


def test_verify_reports_mismatch(monkeypatch, p4_file):
    import splitdecomp.cli as cli
    from splitdecomp.splittree import single_edge_tree

    monkeypatch.setattr(cli, "split_decomposition", lambda g, r: single_edge_tree(g.labels, 0, 1))
    code, out, _ = run(["verify", p4_file])
    assert code == EXIT_MISMATCH and "MISMATCH" in out


def test_verify_all_roots(p4_file):
    code, out, _ = run(["verify", p4_file])
    assert code == EXIT_OK and out.count("MATCH") == 4


def test_verify_over_oracle_cap():
    text = "".join(f"{i} {i + 1}\n" for i in range(20))
    code, _, err = run(["decompose", "--verify"], text)
    assert code == EXIT_USAGE and "cap" in err


def test_disconnected_input():
    code, _, err = run(["decompose"], "a b\nc d\n")
    assert code == EXIT_USAGE and "disconnected" in err


def test_parse_error():
    code, _, err = run(["decompose"], "a b c\n")
    assert code == EXIT_USAGE and "line 1" in err


def test_missing_file():
    code, _, err = run(["decompose", "/nonexistent/graph.txt"])
    assert code == EXIT_USAGE


def test_unknown_root(p4_file):
    code, _, err = run(["decompose", p4_file, "--root", "zz"])
    assert code == EXIT_USAGE


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["decompose", "--format", "svg"])
    assert e.value.code == EXIT_USAGE


def test_gen_is_deterministic_and_connected():
    a = run(["gen", "--n", "4", "--m", "3", "--seed", "7"])[1]
    b = run(["gen", "--n", "4", "--m", "3", "--seed", "7"])[1]
    assert a == b
    g = load_graph(a)
    assert g.n == 4 and g.edge_count == 3


@pytest.mark.parametrize("n,m", [(3, 1), (5, 11)])
def test_gen_infeasible(n, m):
    code, _, err = run(["gen", "--n", str(n), "--m", str(m)])
    assert code == EXIT_USAGE and err


def test_generator_edge_counts():
    for n, m in [(2, 1), (10, 9), (10, 45), (30, 300), (50, 60)]:
        g = random_connected_graph(n, m, seed=n + m)
        assert g.edge_count == m and g.is_connected()
    with pytest.raises(GraphError):
        random_connected_graph(4, 7)


def test_output_is_byte_identical_across_runs(p4_file):
    assert run(["decompose", p4_file, "--format", "json"]) == run(["decompose", p4_file, "--format", "json"])


def test_bench_rows_and_ratios():
    code, out, _ = run(["bench", "--sizes", "1e3,2e3,4e3"])
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 5 and lines[-1].startswith("median doubling ratio")
    rows = bench_rows([500, 1000])
    assert [r[0] for r in rows] == [500, 1000]
    assert len(doubling_ratios(rows)) == 1


def test_bench_single_size():
    code, out, _ = run(["bench", "--sizes", "800"])
    assert code == EXIT_OK and "median" not in out


def test_bench_bad_size():
    assert run(["bench", "--sizes", "abc"])[0] == EXIT_USAGE
