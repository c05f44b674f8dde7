import json

import pytest

from src.config import SEED_ENV, Config
from src.errors import UnknownSuite
from src.pipeline.report_generator import generate_suite_summary, write_report
from src.pipeline.suites import run_suite, suite_names
from src.utils.reporting import ReportBuilder


def test_registered_suites():
    names = suite_names()
    for name in ("coding-laws", "fix-top-chain", "reduce-dec", "prop33-negative", "h-dec-well-founded", "morphism"):
        assert name in names


def test_unknown_suite(small_config):
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite", small_config)


EXPECTED_FAILURES = {"fix-top-chain": ["wf:descending-chain"]}


@pytest.mark.parametrize("name", suite_names())
def test_every_suite(name, small_config):
    report = run_suite(name, small_config)
    assert report.suite == name
    assert report.checks_run > 0
    assert report.laws_violated() == EXPECTED_FAILURES.get(name, [])


def test_top_chain_suite_fails(small_config):
    report = run_suite("fix-top-chain", small_config)
    assert not report.passed
    assert report.laws_violated() == ["wf:descending-chain"]


def test_reports_are_deterministic(small_config):
    first = run_suite("coding-laws", small_config).to_json()
    second = run_suite("coding-laws", small_config).to_json()
    assert first == second
    assert "elapsed" not in json.loads(first)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "7")
    report = run_suite("coding-laws", Config(code_bound=20))
    assert report.seed == 7


def test_summary_for_passing_report():
    builder = ReportBuilder("demo", seed=3)
    builder.check(True, "law")
    summary = generate_suite_summary(builder.finish())
    assert summary.startswith("Bottom line: suite 'demo' PASSED (1 checks, 0 violations).")
    assert "* Seed: 3." in summary


def test_summary_for_failing_report():
    builder = ReportBuilder("demo", max_witnesses=1)
    builder.fail("b-law")
    builder.fail("a-law")
    summary = generate_suite_summary(builder.finish())
    assert "FAILED (2 checks, 2 violations)" in summary
    assert "* b-law: 1 recorded witness(es)." in summary
    assert "1 further violations were counted but not kept" in summary
    assert "inspect the first witness for 'b-law'" in summary


def test_write_report(tmp_path):
    builder = ReportBuilder("demo")
    builder.check(True, "law")
    path = tmp_path / "report.json"
    text = write_report(builder.finish(), path, timing=True)
    assert path.read_text() == text + "\n"
    assert "elapsed" in json.loads(text)


def test_zoo_laws_bounds_have_a_floor(small_config):
    report = run_suite("zoo-laws", small_config)
    assert report.passed, report.laws_violated()
    assert report.details["arity_bound"] == 5
    assert report.details["code_bound"] == 2000


def test_iso_round_trips_cover_small_orders(small_config):
    report = run_suite("iso-round-trips", small_config)
    assert report.passed, report.laws_violated()
    assert report.details["orders"] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("depth, width", [(3, 4), (2, 2), (4, 6)])
def test_reduce_dec_at_shallow_bounds(depth, width):
    report = run_suite("reduce-dec", Config(depth=depth, width=width, code_bound=20))
    assert report.passed, report.laws_violated()


def test_prop33_negative_refutes_bad(small_config):
    report = run_suite("prop33-negative", small_config)
    assert report.passed, report.laws_violated()
    assert report.details["family"] == "BAD"
