import json

import pytest

from bookramsey import __version__, cli
from bookramsey.circulant import BlockCirculantSpec
from bookramsey.graphs import Graph, format_adjacency_text, to_graph6
from bookramsey.ipenc import spec_to_indicators

B5_B7_TEXT = "12; D11={2,4,5,7,8,10}; D12={0,3,4,6,11}"


def _json_block(out):
    return json.loads(out.split("--- JSON ---", 1)[1])


def _graph_file(directory, g, name="graph.txt"):
    path = directory / name
    path.write_text(format_adjacency_text(g), encoding="utf-8")
    return str(path)


def test_cli_no_command_prints_help(capsys):
    rc = cli.main([])
    assert rc == 2
    assert "usage: bookramsey" in capsys.readouterr().out


def test_cli_version(capsys):
    assert cli.main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_cli_subcommand_without_action_prints_help(capsys):
    assert cli.main(["bounds"]) == 2
    assert "usage" in capsys.readouterr().out


def test_cli_unknown_flag_is_usage_error(capsys):
    assert cli.main(["check", "--bogus"]) == 2
    assert "usage: bookramsey check" in capsys.readouterr().err

    assert cli.main(["check", "--graph", "g.txt", "--r", "1", "--s", "1", "--bogus"]) == 2
    assert "unrecognized arguments: --bogus" in capsys.readouterr().err


def test_cli_missing_required_argument(capsys):
    assert cli.main(["paley"]) == 2
    assert "--q" in capsys.readouterr().err


def test_cli_paley(clean_env, capsys):
    rc = cli.main(["paley", "--q", "5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS paley_book:5: 10 vertices (expected 10)" in out
    assert "conditions PASS" in out


def test_cli_paley_json(clean_env, capsys):
    rc = cli.main(["paley", "--q", "9", "--json"])
    payload = _json_block(capsys.readouterr().out)
    assert rc == 0
    assert payload["status"] == "success"
    assert payload["data"]["report"]["vertex_count"] == 18


def test_cli_paley_rejects_bad_order(clean_env, capsys):
    rc = cli.main(["paley", "--q", "7"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "1 mod 4" in captured.err
    assert _json_block(captured.out)["status"] == "error"


def test_cli_check_adjacency_text(clean_env, temp_dir, capsys):
    rc = cli.main(["check", "--graph", _graph_file(temp_dir, Graph.cycle(5)), "--r", "1", "--s", "1"])
    assert rc == 0
    assert capsys.readouterr().out.startswith("PASS graph.txt: 5 vertices (expected 5)")


def test_cli_check_graph6(clean_env, temp_dir, capsys):
    path = temp_dir / "c5.g6"
    path.write_text(to_graph6(Graph.cycle(5)) + "\n", encoding="utf-8")
    assert cli.main(["check", "--graph", str(path), "--r", "1", "--s", "1", "--bound", "6"]) == 0


def test_cli_check_failure_json(clean_env, temp_dir, capsys):
    rc = cli.main(["check", "--graph", _graph_file(temp_dir, Graph.cycle(6)), "--r", "1", "--s", "1", "--json"])
    out = capsys.readouterr().out
    assert rc == 1
    assert out.startswith("FAIL")
    payload = _json_block(out)
    assert payload["status"] == "failure"
    assert payload["data"]["ramsey_ok"] is False


def test_cli_check_missing_file(clean_env, temp_dir, capsys):
    rc = cli.main(["check", "--graph", str(temp_dir / "absent.txt"), "--r", "1", "--s", "1"])
    assert rc == 1
    assert "I/O error" in capsys.readouterr().err


def test_cli_spec_check(clean_env, temp_dir, capsys):
    path = temp_dir / "b5_b7.spec"
    path.write_text(B5_B7_TEXT + "\n", encoding="utf-8")
    rc = cli.main(["spec-check", "--spec", str(path), "--r", "5", "--s", "7"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "conditions PASS maxima (4,4,4 | 6,6,6) bounds (5 | 7)" in out


def test_cli_encode_sat_to_file(clean_env, temp_dir, capsys):
    out_file = temp_dir / "k3.cnf"
    map_file = temp_dir / "k3.map"
    rc = cli.main(["encode-sat", "--n", "3", "--r", "1", "--s", "1", "--out", str(out_file), "--map", str(map_file)])
    assert rc == 0
    assert out_file.read_text().startswith("p cnf 5 8\n")
    assert map_file.read_text().splitlines()[0] == "x 0 1 1"
    assert f"p cnf 5 8 written to {out_file}" in capsys.readouterr().out


def test_cli_encode_sat_to_stdout(clean_env, capsys):
    assert cli.main(["encode-sat", "--n", "3", "--r", "1", "--s", "1", "--naive", "--out", "-"]) == 0
    assert capsys.readouterr().out.startswith("p cnf 3 6\n")


def test_cli_encode_sat_naive_has_no_map(clean_env, temp_dir, capsys):
    rc = cli.main(
        ["encode-sat", "--n", "3", "--r", "1", "--s", "1", "--naive", "--out", "-", "--map", str(temp_dir / "m")]
    )
    assert rc == 1
    assert "--map" in capsys.readouterr().err


def test_cli_encode_sat_size_guard(clean_env, capsys):
    rc = cli.main(["encode-sat", "--n", "200", "--r", "2", "--s", "2", "--out", "-"])
    assert rc == 1
    assert "estimate" in capsys.readouterr().err


def test_cli_encode_ip(clean_env, temp_dir, capsys):
    out_file = temp_dir / "b5_b7.lp"
    rc = cli.main(["encode-ip", "--m", "12", "--r", "5", "--s", "7", "--pin", "consecutive", "--out", str(out_file)])
    assert rc == 0
    text = out_file.read_text()
    assert text.startswith("Minimize\n obj: 0\nSubject To\n")
    assert " pin_4:" in text
    assert "constraints written to" in capsys.readouterr().out


def test_cli_encode_ip_bad_pin(clean_env, capsys):
    rc = cli.main(["encode-ip", "--m", "12", "--r", "5", "--s", "7", "--pin", "0", "--out", "-"])
    assert rc == 1
    assert "Invalid IP options" in capsys.readouterr().err


def test_cli_decode_ip(clean_env, temp_dir, capsys):
    spec = BlockCirculantSpec.from_sets(12, [2, 4, 5, 7, 8, 10], [0, 3, 4, 6, 11])
    solution = temp_dir / "b5_b7.sol"
    solution.write_text("".join(f"{name} {value}\n" for name, value in spec_to_indicators(spec).items()))
    rc = cli.main(["decode-ip", "--m", "12", "--solution", str(solution), "--r", "5", "--s", "7"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == B5_B7_TEXT
    assert "PASS" in out


def test_cli_enumerate(clean_env, capsys):
    rc = cli.main(["enumerate", "--n", "6", "--r", "1", "--s", "2"])
    lines = capsys.readouterr().out.splitlines()
    assert rc == 0
    assert len(lines) == 5
    summary = json.loads(lines[-1])
    assert summary["count"] == 4
    assert summary["level_counts"]["6"] == 4


def test_cli_enumerate_budget(clean_env, capsys):
    rc = cli.main(["enumerate", "--n", "14", "--r", "3", "--s", "3", "--budget", "0.000001"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "exhausted" in captured.err
    assert "levels_completed" in _json_block(captured.out)["details"]["progress"]


def test_cli_ramsey(clean_env, capsys):
    rc = cli.main(["ramsey", "--r", "1", "--s", "2", "--n-cap", "9"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "R(B_1,B_2) = 7 with 4 critical graph(s) on 6 vertices"


def test_cli_ramsey_inconclusive(clean_env, capsys):
    rc = cli.main(["ramsey", "--r", "3", "--s", "3", "--n-cap", "5"])
    assert rc == 1
    assert "n <= 5" in capsys.readouterr().err


def test_cli_search_size_limit_from_environment(clean_env, capsys):
    clean_env.setenv("BOOKRAMSEY_CANONICAL_MAX_N", "5")
    rc = cli.main(["enumerate", "--n", "6", "--r", "1", "--s", "2"])
    assert rc == 1
    assert "BOOKRAMSEY_CANONICAL_MAX_N=5" in capsys.readouterr().err


def test_cli_bounds_show(clean_env, registry_path, capsys):
    rc = cli.main(["bounds", "--registry", str(registry_path), "show", "6", "8"])
    assert rc == 0
    assert capsys.readouterr().out.splitlines()[0] == "R(B_6,B_8) in [29, 29]"


def test_cli_bounds_put_and_list(clean_env, registry_path, capsys):
    rc = cli.main(
        [
            "bounds", "--registry", str(registry_path), "put", "--r", "6", "--s", "7", "--kind", "lower",
            "--value", "27", "--witness", "construction:paley_book:13",
        ]
    )
    assert rc == 0
    assert capsys.readouterr().out.strip() == "Stored R(B_6,B_7) lower 27"
    assert registry_path.exists()

    assert cli.main(["bounds", "--registry", str(registry_path), "list", "--r", "7", "--s", "6"]) == 0
    out = capsys.readouterr().out
    assert "R(B_6,B_7) lower 27 [construction:paley_book:13]" in out


def test_cli_bounds_put_rejected(clean_env, registry_path, capsys):
    rc = cli.main(
        [
            "bounds", "--registry", str(registry_path), "put", "--r", "5", "--s", "6", "--kind", "lower",
            "--value", "27", "--witness", "construction:paley_book:13",
        ]
    )
    assert rc == 1
    assert "does not verify" in capsys.readouterr().err
    assert not registry_path.exists()


def test_cli_bounds_put_bad_witness_reference(clean_env, registry_path, capsys):
    rc = cli.main(
        ["bounds", "--registry", str(registry_path), "put", "--r", "5", "--s", "6", "--kind", "lower",
         "--value", "20", "--witness", "nonsense"]
    )
    assert rc == 1
    assert "Invalid record" in capsys.readouterr().err


def test_cli_registry_from_environment(clean_env, registry_path, capsys):
    clean_env.setenv("BOOKRAMSEY_REGISTRY_PATH", str(registry_path))
    rc = cli.main(["bounds", "put", "--r", "30", "--s", "31", "--kind", "lower", "--value", "100"])
    assert rc == 0
    assert registry_path.exists()


@pytest.mark.slow
def test_cli_bounds_verify_all(clean_env, registry_path, capsys):
    rc = cli.main(["bounds", "--registry", str(registry_path), "verify-all"])
    assert rc == 0
    assert "witnesses verified" in capsys.readouterr().out


def test_cli_verify_appendix(clean_env, capsys):
    rc = cli.main(["verify-appendix", "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "28/28 entries verified" in out
    assert len(_json_block(out)["data"]["reports"]) == 28


def test_cli_config_show(clean_env, capsys):
    assert cli.main(["config", "show"]) == 0
    out = capsys.readouterr().out
    assert "workers: 1" in out
    assert "registry_path: bounds.jsonl" in out


def test_cli_config_validate(clean_env, capsys):
    assert cli.main(["config", "validate"]) == 0
    assert "Configuration valid" in capsys.readouterr().out

    clean_env.setenv("BOOKRAMSEY_WORKERS", "0")
    assert cli.main(["config", "validate"]) == 1
    assert "WORKERS must be at least 1" in capsys.readouterr().out


def test_cli_config_template(clean_env, temp_dir, capsys):
    out = temp_dir / ".env.template"
    assert cli.main(["config", "template", "--output", str(out)]) == 0
    assert "BOOKRAMSEY_WORKERS=1" in out.read_text()


def test_cli_invalid_environment(clean_env, capsys):
    clean_env.setenv("BOOKRAMSEY_WORKERS", "many")
    assert cli.main(["config", "show"]) == 1
    assert "Invalid integer value" in capsys.readouterr().err


def test_cli_log_level_override(clean_env, capsys):
    assert cli.main(["--log-level", "ERROR", "config", "show"]) == 0
    assert "log_level: ERROR" in capsys.readouterr().out
