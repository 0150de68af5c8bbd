"""End-to-end command dispatch: formats, batches, exit codes."""

import io
import json

import pytest

from candynim.cli import CliConfig, build_parser, dispatch, main


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        assert monkeypatch is not None
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = dispatch(argv, out=out)
    return code, out.getvalue()


def test_solve_worked_example():
    code, text = run(["solve", "[1,5,16,20]"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "value 28"
    assert lines[1].startswith("5->2 ")


def test_solve_empty_game():
    code, text = run(["solve", "[]"])
    assert code == 0
    assert text == "value 0\n\n"


def test_solve_json():
    code, text = run(["--format", "json", "solve", "[1,2,3]"])
    assert code == 0
    d = json.loads(text)
    assert d["value"] == 2 and d["game"] == [3, 2, 1]


def test_flags_accepted_after_subcommand():
    pre = run(["--format", "json", "solve", "[1,2,3]"])
    post = run(["solve", "[1,2,3]", "--format", "json"])
    assert pre == post


def test_solve_stdin_batch(monkeypatch):
    code, text = run(["solve", "-"], stdin="[1,2,3]\n\n[3,4,7]\n", monkeypatch=monkeypatch)
    assert code == 0
    assert text == "[3,2,1] value 2\n[7,4,3] value 6\n"


def test_classify_and_moves():
    assert run(["classify", "[1,2,3]"]) == (0, "P\n")
    assert run(["classify", "[5,3]"]) == (0, "N\n")
    code, text = run(["moves", "[5,3]"])
    assert code == 0 and text == "pile 0: 5->3\n"


def test_moves_csv_quotes_games():
    code, text = run(["moves", "[5,3]", "--format", "csv"])
    assert code == 0
    assert text == 'game,pile,from,to\n"[5,3]",0,5,3\n'


def test_allocate_example():
    code, text = run(["allocate", "12"])
    assert code == 0
    assert text.splitlines()[0] == "[6,4,2]"
    assert "n_winner 3" in text


def test_allocate_methods():
    code, text = run(["allocate", "20", "--method", "five-pile"])
    assert code == 0 and text.splitlines()[0] == "[9,8,1,1,1]"
    code, text = run(["allocate", "10", "--method", "exhaustive"])
    assert code == 0 and text.splitlines()[0] == "[5,4,1]"


def test_allocate_equality_miss_is_exit_1():
    code, _ = run(["allocate", "18", "--method", "equality"])
    assert code == 1


def test_allocate_odd_total_is_usage_error():
    code, _ = run(["allocate", "11"])
    assert code == 2


def test_simulate_text_and_value():
    code, text = run(["simulate", "flip-flop", "[1,2,3]"])
    assert code == 0
    assert text.endswith("loser 4\nwinner 2\nvalue 2\n")
    assert text.splitlines()[0] == "[3(-3 L), 2, 1]"


def test_simulate_rejects_n_position():
    code, _ = run(["simulate", "largest", "[5,3]"])
    assert code == 2


def test_simulate_render_round_trip(tmp_path):
    code, payload = run(["simulate", "fractal", "[7,16,23]", "--format", "json"])
    assert code == 0
    trace_file = tmp_path / "trace.json"
    trace_file.write_text(payload)
    code, diagram = run(["render", str(trace_file)])
    assert code == 0
    code2, direct = run(["simulate", "fractal", "[7,16,23]"])
    assert diagram == direct[: len(diagram)]


def test_render_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["render", str(bad)])[0] == 2
    assert run(["render", str(tmp_path / "missing.json")])[0] == 2


def test_bounds_table_and_point():
    code, text = run(["bounds", "standard-form-interval", "--profile", "smoke"])
    assert code == 0
    assert "ok" in text and "VIOLATED" not in text
    code, text = run(["bounds", "neighbor-transfer-interval", "k=4,m=1,x=10"])
    assert code == 0
    assert "42" in text and "96" in text and "118" in text


def test_bounds_bad_params():
    assert run(["bounds", "standard-form-interval", "k=one"])[0] == 2
    assert run(["bounds", "unknown-sweep"])[0] == 2


def test_verify_single_and_exit_codes():
    code, text = run(["verify", "small-family-value", "--profile", "smoke"])
    assert code == 0
    assert "status pass" in text
    code, text = run(["verify", "flip-flop-value", "--profile", "smoke"])
    assert code == 0  # noted discrepancies stay green
    assert "status discrepancy-noted" in text
    assert run(["verify", "no-such-claim"])[0] == 2


def test_verify_all_smoke_json_stable():
    a = run(["verify", "all", "--profile", "smoke", "--format", "json"])
    b = run(["verify", "all", "--profile", "smoke", "--format", "json"])
    assert a == b
    assert a[0] == 0
    assert len(a[1].strip().splitlines()) == 29


def test_parse_error_exit_2():
    assert run(["solve", "[1,2"])[0] == 2


def test_pile_cap_budget_exit_3():
    assert run(["--pile-cap", "4", "solve", "[8,8]"])[0] == 3


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as e:
        run(["frobnicate", "[1]"])
    assert e.value.code == 2


def test_env_fallbacks(monkeypatch):
    monkeypatch.setenv("CANDYNIM_FORMAT", "json")
    code, text = run(["classify", "[1,2,3]"])
    assert code == 0
    assert json.loads(text)["outcome"] == "P"
    # explicit flag beats the environment
    code, text = run(["classify", "[1,2,3]", "--format", "text"])
    assert text == "P\n"


def test_env_bad_cap_is_usage_error(monkeypatch):
    monkeypatch.setenv("CANDYNIM_PILE_CAP", "lots")
    assert run(["solve", "[1,2,3]"])[0] == 2


def test_config_validation():
    with pytest.raises(ValueError):
        CliConfig(output_format="yaml")
    with pytest.raises(ValueError):
        CliConfig(budget_profile="huge")
    with pytest.raises(ValueError):
        CliConfig(pile_cap=0)
    assert CliConfig().seedless


def test_parser_covers_all_subcommands():
    p = build_parser()
    help_text = p.format_help()
    for cmd in ("solve", "classify", "moves", "simulate", "bounds",
                "allocate", "verify", "render"):
        assert cmd in help_text


def test_main_returns_int():
    assert main(["classify", "[1,2,3]"]) == 0
