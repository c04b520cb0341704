import json

import pytest

from stepring.cli import main
from stepring.scenarios import ScenarioReport


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_inline_pass(capsys):
    code, out, _ = run_cli(capsys, "run", "lemma-7.1", "--m", "2")
    assert code == 0
    assert "lemma-7.1" in out and "pass" in out


def test_run_cap_exceeded_exit_3(capsys):
    code, out, _ = run_cli(capsys, "run", "z2-steps", "--n", "5")
    assert code == 3
    assert "inconclusive" in out


def test_run_unknown_claim_exit_2(capsys):
    code, _, err = run_cli(capsys, "run", "lemma-0.0")
    assert code == 2
    assert "unknown claim" in err


def test_run_missing_param_exit_2(capsys):
    code, _, err = run_cli(capsys, "run", "z2-steps")
    assert code == 2


def test_json_output_round_trips(capsys):
    code, out, _ = run_cli(capsys, "run", "fg-ideal", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["version"] == 1
    report = ScenarioReport.from_dict(payload["reports"][0])
    assert report.status == "pass"
    assert payload["summary"]["pass"] == 1


def test_scenario_file(tmp_path, capsys):
    spec = {
        "scenarios": [
            {"claim_id": "z2-steps", "params": {"n": 2}},
            {"claim_id": "xz-ring", "params": {"m": 2}},
        ],
        "seed": 1,
        "caps": {"max_ring_size": 65536, "max_steps": 8, "search_caps": 4096},
    }
    path = tmp_path / "scenarios.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run_cli(capsys, "run", "--file", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [r["claim_id"] for r in payload["reports"]] == ["z2-steps", "xz-ring"]
    assert all(r["status"] == "pass" for r in payload["reports"])


def test_malformed_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        main(["run", "--file", str(path)])

    path2 = tmp_path / "wrong.json"
    path2.write_text(json.dumps({"nope": []}))
    code, _, err = run_cli(capsys, "run", "--file", str(path2))
    assert code == 2

    path3 = tmp_path / "unknown.json"
    path3.write_text(json.dumps({"scenarios": [{"claim_id": "lemma-0.0"}]}))
    code, _, err = run_cli(capsys, "run", "--file", str(path3))
    assert code == 2

    code, _, err = run_cli(capsys, "run", "--file", str(tmp_path / "missing.json"))
    assert code == 2


def test_axioms_verb(capsys):
    code, out, _ = run_cli(capsys, "axioms", "--ring", '{"kind":"zq_power","q":2,"n":4}')
    assert code == 0
    assert "characteristic: 2" in out

    code, out, _ = run_cli(
        capsys, "axioms", "--ring", '{"kind":"boolean","x_size":3}', "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["commutative"] is True and payload["failures"] == []

    code, _, err = run_cli(capsys, "axioms", "--ring", "{bad")
    assert code == 2


def test_paper_suite_only_filter(capsys):
    code, out, _ = run_cli(capsys, "paper-suite", "--only", "fg-ideal")
    assert code == 0
    assert "fg-ideal" in out and "z2-steps" not in out

    code, _, err = run_cli(capsys, "paper-suite", "--only", "zzz-no-match")
    assert code == 2


def test_paper_suite_section_filter_runs_polynomial_scenarios(capsys):
    code, out, _ = run_cli(capsys, "paper-suite", "--only", "polynomial", "--json")
    assert code == 0
    payload = json.loads(out)
    claims = {r["claim_id"] for r in payload["reports"]}
    assert claims == {"lemma-7.1", "xz-ring"}


def test_jobs_parallel_order_is_deterministic(capsys):
    argv = ["paper-suite", "--only", "polynomial", "--json"]
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv, "--jobs", "4")
    assert code1 == code2 == 0
    strip = lambda payload: [
        {k: v for k, v in r.items() if k not in ("elapsed_ms", "timings")}
        for r in json.loads(payload)["reports"]
    ]
    assert strip(out1) == strip(out2)


def test_corpus_verb(capsys):
    code, out, _ = run_cli(capsys, "corpus", "--budget", "10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["reports"][0]["claim_id"] == "corpus"
