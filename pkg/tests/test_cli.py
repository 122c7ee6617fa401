import json
from fractions import Fraction
from pathlib import Path

import pytest

import config
from builtin import qtwin_spec
from builtin.qtwin import DATA_FILE
from log_adapter import ReportAdapter, save_transcript
from machines import load_machine, print_machine
from main import main
from engines import RoundStats, report_from_round
from utils.logger import SessionLogger

BAD_MACHINE = """{
  "kind": "2dca", "states": ["s", "acc", "rej"], "accept": "acc", "reject": "rej",
  "sigma": ["a"], "transitions": []
}
"""

EVENTS = [
    {"round": 1, "step": 1, "verifier_symbol": "-", "prover_symbol": "-", "branch": 2, "marker": ""},
    {"round": 1, "step": 2, "verifier_symbol": "next", "prover_symbol": "#", "branch": 1,
     "marker": "RESTART"},
]


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ==========================================================================
# Коды выхода
# ==========================================================================

def test_validate_golden_file(capsys):
    code, out, _ = _run(capsys, "validate", str(DATA_FILE))
    assert code == 0
    assert "valid: 2qcfa" in out


def test_validate_lists_violations(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(BAD_MACHINE, encoding="utf-8")
    code, out, _ = _run(capsys, "validate", str(path))
    assert code == 1
    assert "missing transition for (s,¢,zero)" in out


def test_missing_file_is_io_error(tmp_path, capsys):
    code, _, err = _run(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["--bogus", "validate", "x"],
    ["prob", "builtin:nothing"],
    ["prob", "builtin:qtwin", "--method", "guess"],
    ["ips", "--k", "1"],
    ["classify", "builtin:qtwin", "--language", "PALINDROME", "--words", "#"],
    ["--jobs", "0", "build", "qtwin"],
])
def test_bad_flags_exit_three(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == 3


def test_semantic_errors_exit_one(capsys):
    code, _, err = _run(capsys, "reach", "builtin:qtwin", "--input", "#")
    assert code == 1
    assert "bounded reachability" in err


# ==========================================================================
# Команды
# ==========================================================================

def test_run_deterministic(capsys):
    code, out, _ = _run(capsys, "run", "builtin:anbn-2dca", "--input", "aabb")
    assert code == 0
    assert out.splitlines()[0] == "decision: accept"


def test_prob_exact_json(capsys):
    code, out, _ = _run(capsys, "--json", "prob", "builtin:qtwin", "--input", "a#b")
    assert code == 0
    data = json.loads(out)
    assert data["p_reject_lo"] == "4/5"
    assert data["p_accept_lo"] == "1/5"
    assert data["round"]["reject"] == "4/59049"


def test_prob_text_lines(capsys):
    _, out, _ = _run(capsys, "prob", "builtin:greater-square", "--input", "aab")
    assert "method: round" in out
    assert "accept_lo: 1 (≈" in out


def test_monte_carlo_json_is_deterministic(capsys):
    argv = ["--json", "--seed", "5", "prob", "builtin:fair-coin", "--input", "ab",
            "--method", "mc", "--trials", "200"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    assert json.loads(first)["trials"] == 200


def test_reach_and_build(capsys):
    code, out, _ = _run(capsys, "reach", "builtin:contains-aa", "--input", "baa")
    assert code == 0
    assert "accepting_path: none" not in out
    code, out, _ = _run(capsys, "build", "qtwin")
    assert code == 0
    assert out == print_machine(qtwin_spec())


def test_transform_writes_a_loadable_file(tmp_path, capsys):
    target = tmp_path / "pca.json"
    code, out, _ = _run(capsys, "transform", "builtin:anbn-2nca", "--output", str(target))
    assert code == 0
    text = target.read_text(encoding="utf-8")
    assert text.startswith("# source: ")
    assert "# k: 1\n# c: 2\n" in text
    assert load_machine(target).kind == "2pca"


def test_ips_exact_with_prediction(capsys):
    code, out, _ = _run(capsys, "ips", "--input", "ab", "--samples", "0")
    assert code == 0
    assert any(line.startswith("predicted_accept: 1/256 ") for line in out.splitlines())
    assert "predicted_member: true" in out


def test_ips_transcript_and_log(tmp_path, capsys):
    transcript = tmp_path / "t.txt"
    log = tmp_path / "session.json"
    code, out, _ = _run(capsys, "ips", "--verifier", "cor2", "--input", "aab",
                        "--transcript", str(transcript), "--log", str(log))
    assert code == 0
    assert "transcript 1: reject, 1 rounds" in out
    assert transcript.read_text(encoding="utf-8").rstrip().endswith("REJECT")
    data = json.loads(log.read_text(encoding="utf-8"))
    assert data["parameters"]["verifier"] == "cor2"
    assert data["transcript"]
    assert data["events"] == len(data["transcript"])
    assert data["report"]["report"]["p_reject_lo"] == "1"


def test_classify_qtwin(capsys):
    code, out, _ = _run(capsys, "classify", "builtin:qtwin", "--language", "TWIN",
                        "--words", "#", "a#a", "a#b", "b#a", "--epsilon", "1/5")
    assert code == 0
    assert out.splitlines()[0] == "mode: negative-one-sided"


# ==========================================================================
# Адаптер отчётов
# ==========================================================================

def test_format_rational_with_approximation():
    assert ReportAdapter.format_rational(Fraction(1, 3)) == "1/3 (≈0.333333333333)"


def test_jsonable_never_emits_floats():
    report = report_from_round(RoundStats(Fraction(1, 3), Fraction(2, 3), Fraction(0)))
    data = ReportAdapter.jsonable(report)
    assert data["p_accept_lo"] == "1/3"
    assert data["p_accept_hi"] == "1/3"
    assert data["round"]["live"] == "0"
    assert ReportAdapter.jsonable({"s": {3, 1, 2}}) == {"s": [1, 2, 3]}


def test_transcript_lines_and_file(tmp_path):
    assert ReportAdapter.transcript_lines(EVENTS) == ["1 1 v:- p:-", "1 2 v:next p:# RESTART"]
    path = save_transcript(EVENTS, tmp_path / "nested" / "t.txt")
    assert path.read_text(encoding="utf-8") == "1 1 v:- p:-\n1 2 v:next p:# RESTART\n"


# ==========================================================================
# Флаги после глагола и журнал сессии
# ==========================================================================

def test_seed_and_jobs_after_the_verb(capsys):
    tail = ["prob", "builtin:fair-coin", "--input", "ab", "--method", "mc", "--trials", "40"]
    code, before, _ = _run(capsys, "--json", "--seed", "5", *tail)
    assert code == 0
    code, after, _ = _run(capsys, "--json", *tail, "--seed", "5", "--jobs", "2")
    assert code == 0
    assert json.loads(after)["seed"] == 5
    assert json.loads(before)["accepts"] == json.loads(after)["accepts"]


def test_verb_seed_overrides_the_global_one(capsys):
    tail = ["prob", "builtin:fair-coin", "--input", "ab", "--method", "mc", "--trials", "10"]
    _, out, _ = _run(capsys, "--json", "--seed", "1", *tail, "--seed", "9")
    assert json.loads(out)["seed"] == 9


def test_ips_accepts_sampling_flags(capsys):
    code, out, _ = _run(capsys, "ips", "--verifier", "cor2", "--input", "aab",
                        "--seed", "3", "--jobs", "1", "--samples", "1")
    assert code == 0
    assert "transcript 1: reject, 1 rounds" in out


def test_session_logger_data_and_default_path(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "LOG_DIR", str(tmp_path / "logs"))
    session_log = SessionLogger()
    session_log.set_parameters({"verifier": "cor2"})
    session_log.log_events(EVENTS)
    data = session_log.get_log_data()
    assert data["events"] == 2
    assert data["parameters"] == {"verifier": "cor2"}
    path = Path(session_log.save())
    assert path.parent == tmp_path / "logs"
    assert json.loads(path.read_text(encoding="utf-8"))["events"] == 2
