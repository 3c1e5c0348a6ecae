import json

import pytest

from ancrystal import build_supporting_graph, generate, principal_function, to_gt, zero_bounds
from ancrystal.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VERDICT, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_summary_line(capsys, tmp_path):
    out = tmp_path / "k.json"
    code, stdout, _ = run(
        capsys, "build", "--n", "2", "--c", "1,2", "--out", str(out)
    )
    assert code == EXIT_OK
    assert stdout.splitlines()[0] == "vertices=15 edges=18 length=6 principal=6"
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 15 and len(data["edges"]) == 18


def test_build_dot_output(capsys, tmp_path):
    out = tmp_path / "k.dot"
    code, _, _ = run(
        capsys, "build", "--n", "2", "--c", "1,1", "--format", "dot", "--out", str(out)
    )
    assert code == EXIT_OK
    assert out.read_text().startswith("digraph crystal {")


def test_build_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "build", "--n", "3", "--c", "1,1,1", "--out", str(a))
    run(capsys, "build", "--n", "3", "--c", "1,1,1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_build_rejects_bad_bounds(capsys):
    code, _, err = run(capsys, "build", "--n", "2", "--c", "1,2,3")
    assert code == EXIT_USAGE and "error:" in err


def test_build_cap_exit_code(capsys):
    code, _, err = run(capsys, "build", "--n", "2", "--c", "1,2", "--cap", "5")
    assert code == EXIT_CAP and "error:" in err


def test_verify_generated_crystal_passes(capsys):
    code, stdout, _ = run(capsys, "verify", "--n", "2", "--c", "1,2", "--strict-a4")
    assert code == EXIT_OK
    lines = stdout.splitlines()
    assert len(lines) == 10
    assert all(line.endswith(": pass") for line in lines)


def test_verify_round_trips_through_json_and_edge_list(capsys, tmp_path):
    K = generate(2, (1, 2))
    j = tmp_path / "k.json"
    j.write_text(json.dumps(K.to_json()))
    assert run(capsys, "verify", "--in", str(j))[0] == EXIT_OK
    e = tmp_path / "k.edges"
    e.write_text(K.to_edge_list_text())
    assert run(capsys, "verify", "--in", str(e))[0] == EXIT_OK


def test_verify_flags_a_mutated_graph(capsys, tmp_path):
    K = generate(2, (1, 2))
    lines = K.to_edge_list_text().splitlines()
    e = tmp_path / "broken.edges"
    e.write_text("\n".join(lines[1:]) + "\n")
    code, stdout, _ = run(capsys, "verify", "--in", str(e))
    assert code == EXIT_VERDICT
    assert any(": fail" in line for line in stdout.splitlines())


def test_verify_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify")[0] == EXIT_USAGE
    missing = tmp_path / "nope.json"
    assert run(capsys, "verify", "--in", str(missing))[0] == EXIT_USAGE
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n")
    assert run(capsys, "verify", "--in", str(bad))[0] == EXIT_USAGE


def test_analyze_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = run(
        capsys, "analyze", "--n", "3", "--c", "1,1,1", "--out", str(out)
    )
    assert code == EXIT_OK
    assert stdout.splitlines()[0] == "principal=8 skeleton=40 upper=8 lower=8"
    report = json.loads(out.read_text())
    assert report["principal_lattice_size"] == 8
    assert len(report["subcrystals"]) == 16
    assert {row["side"] for row in report["subcrystals"]} == {"upper", "lower"}
    total = sum(m["multiplicity"] for m in report["branching"])
    assert total == 8


def test_analyze_csv(capsys, tmp_path):
    out = tmp_path / "report.csv"
    code, _, _ = run(
        capsys, "analyze", "--n", "2", "--c", "1,2", "--format", "csv", "--out", str(out)
    )
    assert code == EXIT_OK
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "side,anchor,parameter,size,principal_vertex"
    assert len(rows) == 1 + 6 + 6  # header, upper parts, lower parts


def test_gt_count(capsys):
    code, stdout, _ = run(capsys, "gt", "--count", "--n", "2", "--c", "1,2")
    assert code == EXIT_OK and stdout.strip() == "15"
    assert run(capsys, "gt", "--count")[0] == EXIT_USAGE
    assert run(capsys, "gt")[0] == EXIT_USAGE


def test_gt_conversion_round_trip(capsys, tmp_path):
    g = build_supporting_graph(2)
    f = principal_function(g, (1, 1), zero_bounds((1, 2)))
    fin = tmp_path / "f.json"
    fin.write_text(json.dumps(f.to_json()))
    pat = tmp_path / "p.json"
    code, _, _ = run(
        capsys, "gt", "--direction", "to-pattern", "--in", str(fin), "--out", str(pat)
    )
    assert code == EXIT_OK
    assert json.loads(pat.read_text()) == to_gt(f).to_json()
    back = tmp_path / "f2.json"
    code, _, _ = run(
        capsys, "gt", "--direction", "from-pattern", "--n", "2", "--c", "1,2",
        "--in", str(pat), "--out", str(back),
    )
    assert code == EXIT_OK
    assert json.loads(back.read_text()) == f.to_json()


def test_gt_rejects_an_unbounded_pattern(capsys, tmp_path):
    pat = tmp_path / "p.json"
    pat.write_text("[[9], [9, 0]]")
    code, _, err = run(
        capsys, "gt", "--direction", "from-pattern", "--n", "2", "--c", "1,2",
        "--in", str(pat),
    )
    assert code == EXIT_VERDICT and "error:" in err


def test_unknown_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
