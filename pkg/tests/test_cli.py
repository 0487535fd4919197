"""Command line driver: reports, exit codes, determinism, suites."""

import json
import shutil

import pytest

from logaq.cli import main, corpus_dir, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def corpus_file(name):
    return str(corpus_dir() / f"{name}.logaq")


def test_homology_json(capsys):
    code, out, _ = run(capsys, "homology", corpus_file("log_point"),
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["degrees"]["0"]["k_dimension"] == 1
    assert rep["degrees"]["1"]["k_dimension"] == 1
    assert rep["degrees"]["2"]["k_dimension"] == 0


def test_json_deterministic(capsys):
    outs = set()
    for _ in range(2):
        _, out, _ = run(capsys, "homology", corpus_file("strict_ci"),
                        "--format", "json")
        outs.add(out)
    assert len(outs) == 1
    assert "elapsed" not in next(iter(outs))


def test_human_format_has_timing(capsys):
    code, out, _ = run(capsys, "homology", corpus_file("log_point"))
    assert code == 0
    assert "elapsed" in out


def test_degrees_flag(capsys):
    _, out, _ = run(capsys, "homology", corpus_file("log_point"),
                    "--degrees", "1", "--format", "json")
    assert set(json.loads(out)["degrees"]) == {"1"}


def test_char_override(capsys):
    _, out, _ = run(capsys, "homology", corpus_file("x2_cover"),
                    "--char", "2", "--format", "json")
    assert json.loads(out)["field"] == "F2"


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "homology", "/no/such/file")
    assert code == 2
    assert "error" in err


def test_bad_input_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.logaq"
    p.write_text('[field]\nname = "R"\n[source]\n[target]\n[morphism]\n')
    code, _, err = run(capsys, "homology", str(p))
    assert code == 2
    assert "unsupported field" in err


def test_kcomplex_command(capsys):
    code, out, _ = run(capsys, "kcomplex", corpus_file("x2_cover"),
                       "--char", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["computed_dims"] == rep["predicted_dims"] == [1, 1, 0]


def test_conormal_command(capsys):
    code, out, _ = run(capsys, "conormal",
                       corpus_file("strict_hypersurface"),
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["conormal"]["k_dimension"] == 2


def test_tor_command(capsys):
    code, out, _ = run(capsys, "tor", corpus_file("strict_hypersurface"),
                       "--depth", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert [rep["degrees"][str(i)]["k_dimension"]
            for i in range(3)] == [2, 2, 0]


def test_print_round_trip(capsys):
    code, out, _ = run(capsys, "print", corpus_file("torsion_kummer"))
    assert code == 0
    assert "[morphism]" in out


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_threads_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "jz", "--format", "json")
    _, b, _ = run(capsys, "verify", "jz", "--threads", "4",
                  "--format", "json")
    assert a == b


def test_verify_corrupted_golden_exit_1(capsys, tmp_path, monkeypatch):
    src = corpus_dir()
    work = tmp_path / "corpus"
    shutil.copytree(str(src), work)
    bad = work / "log_point.golden.json"
    bad.write_text(bad.read_text().replace('"k_dimension": 1',
                                           '"k_dimension": 9'))
    monkeypatch.setattr("logaq.cli.corpus_dir", lambda: work)
    code, out, _ = run(capsys, "verify", "all", "--format", "json")
    assert code == 1
    rep = json.loads(out)
    assert rep["passed"] is False
    assert "log_point" in rep["first_failure"]


def test_run_suite_names_failures(tmp_path, monkeypatch):
    src = corpus_dir()
    work = tmp_path / "corpus"
    shutil.copytree(str(src), work)
    (work / "strict_ci.golden.json").write_text("{}\n")
    monkeypatch.setattr("logaq.cli.corpus_dir", lambda: work)
    _results, failures = run_suite("all")
    assert failures
    assert any("strict_ci" in f for f in failures)
