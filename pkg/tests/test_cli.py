import json
import subprocess
import sys

import pytest

from turingstat.cli import EXIT_INPUT, EXIT_OK, EXIT_STATS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_defaults(capsys):
    code, out, _ = run(capsys, "analyze", "--bundled", "restrepo")
    assert code == EXIT_OK
    assert "significant=false" in out
    assert "tail_mass: 11/512 = 0.021484375" in out


def test_analyze_json_five_percent(capsys):
    code, out, _ = run(capsys, "analyze", "--bundled", "restrepo", "--level", "0.05", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["significance"]["significant"] is True
    assert doc["humanness_bounds"][1] == {"num": 22, "den": 25}


def test_analyze_file_and_refine(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--p-misid", "1/2", "--trials", "20", "--seed", "3",
                       "-o", str(tmp_path / "s.jsonl"))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "analyze", str(tmp_path / "s.jsonl"), "--refine")
    assert code == EXIT_OK and "crossing:" in out


def test_pmf(capsys):
    code, out, _ = run(capsys, "pmf", "10", "9", "1/2", "--json")
    assert json.loads(out)["pmf"] == {"num": 5, "den": 512}


def test_significance(capsys):
    code, out, _ = run(capsys, "significance", "10", "9", "--level", "0.05")
    assert "significant=true" in out and "11/512" in out


def test_interval(capsys):
    code, out, _ = run(capsys, "interval", "10", "9")
    assert "compatible: [0.49, 0.99]" in out
    assert "(0.48, 0.49)" in out


def test_humanness(capsys):
    code, out, _ = run(capsys, "humanness", "1/2", "--human-correct", "3/4", "--json")
    doc = json.loads(out)
    assert doc["ratio"] == {"num": 2, "den": 3}
    code, out, _ = run(capsys, "humanness", "1/3", "--json")
    assert json.loads(out)["required_human_rate"] == {"num": 5, "den": 9}
    code, out, _ = run(capsys, "humanness", "3/10", "--misid-high", "0.44")
    assert "3/5" in out and "[0.00, 0.88]" in out


def test_simulate_two_player_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--format", "two-player", "--p-misid", "0.3",
                       "--p-human", "0.7", "--trials", "5", "--human-trials", "4", "--csv")
    assert out.splitlines()[0] == "trial_id,format,respondent,verdict,correct"
    assert len(out.splitlines()) == 10


def test_curve(capsys):
    code, out, _ = run(capsys, "curve", "10", "9")
    assert len(out.splitlines()) == 102


def test_classify(capsys):
    assert run(capsys, "classify", "--paired", "--forced")[1].strip() == "three-player"
    assert run(capsys, "classify", "--paired", "--no-forced")[1].strip() == "two-player"


def test_power(capsys):
    code, out, _ = run(capsys, "power", "--p-true", "0.9", "--n", "10", "--replications", "200", "--json")
    assert json.loads(out)["rows"][0]["n"] == 10


def test_exit_code_input(capsys, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert run(capsys, "analyze", str(empty))[0] == EXIT_INPUT
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"trial_id": "a", "format": "three-player", "responses": ['
                   '{"respondent": "machine", "verdict": "human"}, {"respondent": "human", "verdict": "human"}]}\n')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == EXIT_INPUT and "'a'" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.jsonl"))[0] == EXIT_INPUT


def test_exit_code_stats(capsys, tmp_path):
    assert run(capsys, "significance", "10", "9", "--level", "2")[0] == EXIT_STATS
    only_human = tmp_path / "h.jsonl"
    only_human.write_text('{"trial_id": "h", "format": "two-player", "respondent": "human", "verdict": "human"}\n')
    code, _, err = run(capsys, "analyze", str(only_human))
    assert code == EXIT_STATS and "[estimate_rates]" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["pmf", "10"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "turingstat", "analyze", "--bundled", "restrepo"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "significant=false" in proc.stdout
