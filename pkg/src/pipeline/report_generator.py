from collections import Counter
from pathlib import Path
from typing import Optional, Union

from src.utils.log_utils import get_logger
from src.utils.reporting import SuiteReport

logger = get_logger("Report")


def generate_suite_summary(report: SuiteReport) -> str:
    """Bottom line, violated laws, and a recommendation for one suite report."""
    laws = Counter(v.law for v in report.violations)
    verdict = "PASSED" if report.passed else "FAILED"
    bottom_line = (
        f"Bottom line: suite '{report.suite}' {verdict} "
        f"({report.checks_run} checks, {report.violations_total} violations)."
    )

    details = "Detailed analysis:\n"
    if report.passed:
        details += "* Every checked law held on the explored instances.\n"
    else:
        for law, count in sorted(laws.items()):
            details += f"* {law}: {count} recorded witness(es).\n"
        hidden = report.violations_total - len(report.violations)
        if hidden > 0:
            details += f"* {hidden} further violations were counted but not kept.\n"
    if report.seed is not None:
        details += f"* Seed: {report.seed}.\n"

    if report.passed:
        recommendation = "Recommendation: none needed; raise the bounds for stronger evidence."
    elif report.suite == "fix-top-chain":
        recommendation = "Recommendation: expected outcome; the descending chain shows normality is needed."
    else:
        first = sorted(laws)[0]
        recommendation = f"Recommendation: inspect the first witness for '{first}' in the JSON report."

    return f"{bottom_line}\n\n{details}\n{recommendation}"


def write_report(report: SuiteReport, path: Optional[Union[str, Path]] = None, timing: bool = False) -> str:
    """Serialize ``report``; write it to ``path`` when given and return the text."""
    text = report.to_json(timing=timing)
    if path is not None:
        Path(path).write_text(text + "\n")
        logger.info(f"Report written to {path}")
    return text
