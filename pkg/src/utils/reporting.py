import json
import time
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.utils.serialization import to_jsonable

SCHEMA_VERSION = "1"


class Violation(BaseModel):
    law: str
    witness: Any = None


class SuiteReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    suite: str
    checks_run: int = 0
    violations: List[Violation] = Field(default_factory=list)
    violations_total: int = 0
    elapsed: float = 0.0
    seed: Optional[int] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def laws_violated(self) -> List[str]:
        return sorted({v.law for v in self.violations})

    def to_json(self, timing: bool = False) -> str:
        data = self.model_dump(exclude=None if timing else {"elapsed"})
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


class ReportBuilder:
    """Counts law checks and keeps up to ``max_witnesses`` violations."""

    def __init__(self, suite: str, seed: Optional[int] = None, max_witnesses: int = 25):
        self.suite = suite
        self.seed = seed
        self.max_witnesses = max_witnesses
        self.checks_run = 0
        self.violations: List[Violation] = []
        self.violations_total = 0
        self.details: Dict[str, Any] = {}
        self._started = time.perf_counter()

    def check(self, ok: bool, law: str, witness: Any = None) -> bool:
        self.checks_run += 1
        if not ok:
            self.fail(law, witness, counted=True)
        return ok

    def fail(self, law: str, witness: Any = None, counted: bool = False) -> None:
        if not counted:
            self.checks_run += 1
        self.violations_total += 1
        if len(self.violations) < self.max_witnesses:
            self.violations.append(Violation(law=law, witness=to_jsonable(witness)))

    def absorb(self, report: SuiteReport, prefix: Optional[str] = None) -> None:
        self.checks_run += report.checks_run
        self.violations_total += report.violations_total
        for v in report.violations:
            if len(self.violations) < self.max_witnesses:
                law = f"{prefix}:{v.law}" if prefix else v.law
                self.violations.append(Violation(law=law, witness=v.witness))
        if prefix:
            self.details[prefix] = {"checks_run": report.checks_run, "violations": report.violations_total}

    def finish(self, **details: Any) -> SuiteReport:
        self.details.update({k: to_jsonable(v) for k, v in details.items()})
        return SuiteReport(
            suite=self.suite,
            checks_run=self.checks_run,
            violations=self.violations,
            violations_total=self.violations_total,
            elapsed=time.perf_counter() - self._started,
            seed=self.seed,
            details=self.details,
        )
