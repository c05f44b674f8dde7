import json

import pytest
from click.testing import CliRunner

from src.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def test_help(runner):
    result = runner.invoke(cli, ["-h"])
    assert result.exit_code == 0
    assert "verify" in result.output


def test_unknown_command(runner):
    assert runner.invoke(cli, ["frobnicate"]).exit_code == 2


def test_validate_omega(runner, tmp_path):
    path = tmp_path / "report.json"
    result = runner.invoke(cli, ["-q", "validate", "--dilator", "omega", "--arity", "2", "--codes", "40", "-r", str(path)])
    assert result.exit_code == 0, result.output
    report = json.loads(path.read_text())
    assert report["violations"] == []
    assert report["suite"] == "validate:omega"


def test_top_chain_exits_one(runner):
    result = runner.invoke(cli, ["-q", "verify", "run", "--suite", "fix-top-chain", "--code-bound", "30"])
    assert result.exit_code == 1
    assert "wf:descending-chain" in result.output


def test_unknown_suite_exits_two(runner):
    result = runner.invoke(cli, ["-q", "verify", "run", "--suite", "nope"])
    assert result.exit_code == 2
    assert "unknown suite" in result.output


def test_prop33_negative_suite_runs(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["-q", "verify", "run", "--suite", "prop33-negative", "-r", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["suite"] == "prop33-negative"
    assert report["violations"] == []


def test_config_file_and_seed(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"code_bound": 20, "seed": 5}))
    out = tmp_path / "out.json"
    result = runner.invoke(cli, ["-q", "verify", "run", "-s", "coding-laws", "--config", str(config), "--seed", "9", "-r", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["seed"] == 9


def test_bad_config_exits_two(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"code_bound": -1}))
    result = runner.invoke(cli, ["verify", "run", "-s", "coding-laws", "--config", str(config)])
    assert result.exit_code == 2


def test_fix_compare(runner, tmp_path):
    t0 = {"children": [], "sigma": 0}
    t1 = {"children": [t0], "sigma": 1}
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    first.write_text(json.dumps(t0))
    second.write_text(json.dumps(t1))
    result = runner.invoke(cli, ["-q", "fix", "compare", str(first), str(second)])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output) == {"dilator": "omega", "ordering": "less", "goedel": {"first": 2, "second": 31}}


def test_fix_compare_writes_file(runner, tmp_path):
    t0 = {"children": [], "sigma": 0}
    term, out = tmp_path / "a.json", tmp_path / "cmp.json"
    term.write_text(json.dumps(t0))
    result = runner.invoke(cli, ["-q", "fix", "compare", str(term), str(term), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())["ordering"] == "equal"


def test_fix_embed_eps0(runner, tmp_path):
    term = tmp_path / "t.json"
    term.write_text(json.dumps({"children": [{"children": [], "sigma": 0}], "sigma": 1}))
    out = tmp_path / "image.json"
    result = runner.invoke(cli, ["-q", "fix", "embed", "--into", "eps0", str(term), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text()) == {"witness": "eps0", "image": [[]]}


def test_fix_embed_needs_omega(runner, tmp_path):
    term = tmp_path / "t.json"
    term.write_text(json.dumps({"children": [], "sigma": 0}))
    result = runner.invoke(cli, ["fix", "embed", "-d", "top", "--into", "eps0", str(term)])
    assert result.exit_code == 2


def test_fix_enumerate(runner, tmp_path):
    out = tmp_path / "terms.json"
    result = runner.invoke(cli, ["-q", "fix", "enumerate", "--l-bound", "100", "-o", str(out)])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["l_bound"] == 100
    assert data["terms"][0] == {"term": {"children": [], "sigma": 0}, "goedel": 2, "length": 2, "height": 0}


def test_reduce_writes_table(runner, tmp_path):
    out = tmp_path / "j.json"
    result = runner.invoke(cli, ["-q", "reduce", "--family", "DEC", "--code-bound", "20", "-o", str(out)])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["warnings"] == []
    assert data["table"]["family"] == "DEC"


def test_h_check(runner, tmp_path):
    order = tmp_path / "order.json"
    order.write_text(json.dumps({"size": 2}))
    result = runner.invoke(cli, ["-q", "h", "check", "--n", "1", "--order", str(order), "--codes", "40"])
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize("description", [{"size": -1}, {"size": "three"}, {"codes": [0, "x"]}])
def test_h_check_rejects_bad_order(runner, tmp_path, description):
    order = tmp_path / "order.json"
    order.write_text(json.dumps(description))
    result = runner.invoke(cli, ["-q", "h", "check", "--n", "1", "--order", str(order)])
    assert result.exit_code == 2


def test_missing_family_file(runner):
    result = runner.invoke(cli, ["reduce", "--family", "/nonexistent/family.json"])
    assert result.exit_code == 2
