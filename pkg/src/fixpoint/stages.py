"""Heights and stages Fix_n(T) = {s | h(s) < n}."""
from typing import List, Sequence

from src.dilators.core import DElement, PraeDilator, d_compare
from src.errors import DomainViolation, StageViolation
from src.fixpoint.terms import FixOrder, FixTerm, fix_system
from src.utils.orders import Ordering
from src.utils.reporting import ReportBuilder, SuiteReport


def stage_iso(T: PraeDilator, n: int, direction: str, value):
    """``forward``: D^T(Fix_n(T)) -> Fix_{n+1}(T) via xi; ``backward``: its inverse."""
    system = fix_system(T)
    if direction == "forward":
        if not isinstance(value, DElement):
            raise StageViolation(f"{value!r} is not an element of D^{T.name}(Fix_{n})")
        for s in value.support:
            if not system.validate(s) or system.height(s) >= n:
                raise StageViolation(f"support term {s!r} is not in Fix_{n}({T.name})")
        return system.xi_apply(value)
    if direction == "backward":
        if not system.validate(value):
            raise StageViolation(f"{value!r} is not a term of Fix({T.name})")
        d = system.xi_invert(value)
        if any(system.height(s) >= n for s in d.support):
            raise StageViolation(f"{value!r} has height {system.height(value)}, outside Fix_{n + 1}({T.name})")
        return d
    raise DomainViolation(f"unknown direction '{direction}'")


def stage_chain(T: PraeDilator, terms: Sequence[FixTerm], n: int) -> List[int]:
    """Sizes of Fix_k(T) restricted to ``terms``, for k = 0..n."""
    system = fix_system(T)
    heights = [system.height(t) for t in terms]
    return [sum(1 for h in heights if h < k) for k in range(n + 1)]


def check_stages(T: PraeDilator, terms: Sequence[FixTerm], normal: bool = True) -> SuiteReport:
    """Stage isomorphisms round-trip and preserve order; for normal T stages are initial segments."""
    system = fix_system(T)
    report = ReportBuilder(f"stages:{T.name}")
    heights = {t: system.height(t) for t in terms}
    X = FixOrder(system)

    for t, h in heights.items():
        d = stage_iso(T, h, "backward", t)
        report.check(stage_iso(T, h, "forward", d) == t, "stage-round-trip", {"term": t, "height": h})

    ordered = system.sorted(terms)
    for i, s in enumerate(ordered):
        for t in ordered[i + 1:]:
            report.check(
                d_compare(T, X, system.xi_invert(s), system.xi_invert(t)) is Ordering.LESS,
                "stage-order",
                {"pair": [s, t]},
            )
            if normal:
                report.check(not heights[t] < heights[s], "initial-segment", {"pair": [s, t]})

    top = max(heights.values(), default=0) + 1
    chain = stage_chain(T, terms, top)
    report.check(chain[0] == 0, "stage-zero-empty", {"chain": chain})
    report.check(chain[-1] == len(terms), "stages-exhaust", {"chain": chain})
    return report.finish(dilator=T.name, terms=len(terms), stage_sizes=chain)
