"""End-to-end runs of the command line interface."""

import copy
import json
import subprocess
import sys

import pytest


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "blowdown", *args],
        capture_output=True,
        text=True,
    )


def test_no_arguments_shows_usage():
    result = run_cli()
    assert result.returncode == 2
    assert "usage" in (result.stderr + result.stdout).lower()


def test_unknown_subcommand_exits_2():
    result = run_cli("frobnicate")
    assert result.returncode == 2


def test_list_names_constructions():
    result = run_cli("list")
    assert result.returncode == 0
    for name in ("k4", "main_k3", "pencil2_k3"):
        assert name in result.stdout
    assert "K^2 = 3" in result.stdout
    assert "K^2 = 4" in result.stdout


def test_cpq_text_output():
    result = run_cli("cpq", "7", "1")
    assert result.returncode == 0
    assert "C(7,1): 9 2 2 2 2 2" in result.stdout
    assert "lens order 49" in result.stdout
    assert "discrepancies: 6/7, 5/7, 4/7, 3/7, 2/7, 1/7" in result.stdout
    assert "meridian powers: 6, 5, 4, 3, 2, 1" in result.stdout


def test_cpq_rejects_non_coprime_pairs():
    for p, q in [("2", "2"), ("7", "0"), ("4", "6")]:
        result = run_cli("cpq", p, q)
        assert result.returncode == 2
        assert "coprime" in result.stderr


def test_cpq_json_is_deterministic():
    first = run_cli("cpq", "35", "6", "--json")
    second = run_cli("cpq", "35", "6", "--json")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    assert payload["tool"] == "blowdown"
    assert payload["command"] == "cpq"
    assert len(payload["input_sha256"]) == 64
    assert payload["result"]["chain"] == [6, 8, 2, 2, 2, 3, 2, 2, 2, 2]


def test_tchain_gen_counts_and_annotations():
    result = run_cli("tchain", "gen", "--max-len", "4")
    assert result.returncode == 0
    lines = [line for line in result.stdout.splitlines() if line.strip()]
    assert lines[-1] == "26 chains of length <= 4"
    assert "[4]  d=1 n=2 a=1 (Wahl p=2 q=1)" in result.stdout
    assert "[3, 3]  d=2 n=2 a=1" in result.stdout


def test_tchain_check_recognizes_class_t():
    result = run_cli("tchain", "check", "6", "8", "2", "2", "2", "3", "2", "2", "2", "2")
    assert result.returncode == 0
    assert "class T (derived)" in result.stdout
    assert "base [4]" in result.stdout
    assert "d=1 n=35 a=6 (Wahl p=35 q=6)" in result.stdout


def test_tchain_check_rejects_other_chains():
    result = run_cli("tchain", "check", "4", "4")
    assert result.returncode == 0
    assert "not_class_t" in result.stdout


def test_contract_text_report():
    result = run_cli("contract", "main_k3")
    assert result.returncode == 0
    assert "4 chains contract" in result.stdout
    assert "K^2: -21 -> 3" in result.stdout
    assert "C(35,6): [6, 8, 2, 2, 2, 3, 2, 2, 2, 2]" in result.stdout


def test_contract_json_report():
    result = run_cli("contract", "main_k3", "--report", "json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    body = payload["result"]
    assert body["k_squared"] == "3"
    assert body["k_squared_resolution"] == "-21"
    assert len(body["chains"]) == 4
    assert body["nef_values"]["E2''"] == "4/35"


def test_contract_rejects_two_sources(main_construction):
    result = run_cli("contract", "main_k3", "--dataset", main_construction.source_path)
    assert result.returncode == 2
    assert "not both" in result.stderr


def test_invariants_text_and_json():
    text = run_cli("invariants", "main_k3")
    assert text.returncode == 0
    assert "K^2 = 3, e = 9, signature = -5" in text.stdout
    assert "homeomorphism type: P2 # 6 P2bar" in text.stdout
    as_json = run_cli("invariants", "main_k3", "--json")
    payload = json.loads(as_json.stdout)
    assert payload["result"]["fingerprint"] == "P2 # 6 P2bar"
    assert payload["result"]["k_squared"] == "3"
    assert payload["result"]["noether_ok"] is True


def test_pi1_construction_name():
    result = run_cli("pi1", "main_k3")
    assert result.returncode == 0
    assert "fundamental group killed" in result.stdout


def test_pi1_graph_file(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text(
        json.dumps(
            {
                "nodes": [
                    {"name": "A", "order": 4},
                    {"name": "B", "order": 8},
                ],
                "edges": [{"a": "A", "b": "B", "power_a": 1, "power_b": 1}],
            }
        )
    )
    result = run_cli("pi1", str(path))
    assert result.returncode == 0
    assert "closure leaves residual cyclic factors" in result.stdout
    assert "final orders: A: 4, B: 4" in result.stdout


def test_verify_text_passes_and_reports_errata():
    result = run_cli("verify", "main_k3")
    assert result.returncode == 0
    assert "[PASS] script_expectations" in result.stdout
    assert "[ERRATUM] nef_table" in result.stdout
    assert "K^2: 3" in result.stdout
    assert result.stdout.rstrip().endswith("result: OK (recorded errata confirmed)")


def test_verify_clean_dataset_ends_plain():
    result = run_cli("verify", "k4")
    assert result.returncode == 0
    assert result.stdout.rstrip().endswith("result: OK")


def test_verify_unknown_name_exits_2():
    result = run_cli("verify", "nosuch")
    assert result.returncode == 2
    assert "no construction named" in result.stderr


def test_verify_json_is_deterministic():
    first = run_cli("verify", "pencil2_k3", "--json")
    second = run_cli("verify", "pencil2_k3", "--json")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    assert payload["result"]["ok"] is True
    assert payload["result"]["errata_found"] is True


def test_verify_mutated_dataset_exits_1(tmp_path, main_construction):
    with open(main_construction.source_path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    doctored = copy.deepcopy(raw)
    doctored["expectations"][0]["self_int"] = -3
    path = tmp_path / "doctored.json"
    path.write_text(json.dumps(doctored))
    result = run_cli("verify", "--dataset", str(path))
    assert result.returncode == 1
    assert "[FAIL] script_expectations" in result.stdout
    assert "H. Park, J. Park and D. Shin" in result.stdout
