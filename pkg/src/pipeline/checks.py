from typing import List, Optional, Sequence

import numpy as np

from src.utils.log_utils import get_logger
from src.utils.orders import CodedOrder
from src.utils.reporting import ReportBuilder, SuiteReport

logger = get_logger("Suite")


def less_matrix(order: CodedOrder, elements: Sequence) -> np.ndarray:
    k = len(elements)
    less = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if i != j:
                less[i, j] = order.less(a, b)
    return less


def check_linear_order(order: CodedOrder, code_bound: int, elements: Optional[Sequence] = None) -> SuiteReport:
    """Irreflexivity, trichotomy and transitivity over the enumeration (or ``elements``)."""
    report = ReportBuilder(f"linear:{order.name}")
    elements = list(order.enumerate(code_bound) if elements is None else elements)
    k = len(elements)
    logger.info(f"Checking linearity of {order.name} on {k} elements")

    reflexive = np.array([order.less(e, e) for e in elements], dtype=bool)
    less = less_matrix(order, elements)

    for i in np.flatnonzero(reflexive):
        report.fail("irreflexivity", {"element": elements[i]})
    report.checks_run += k - int(reflexive.sum())

    # Exactly one of a < b, b < a per distinct pair.
    upper = np.triu(np.ones((k, k), dtype=bool), 1)
    related = less.astype(np.int8) + less.T.astype(np.int8)
    for i, j in zip(*np.nonzero(upper & (related != 1))):
        law = "asymmetry" if related[i, j] == 2 else "trichotomy"
        report.fail(law, {"pair": [elements[i], elements[j]]})
    report.checks_run += int((upper & (related == 1)).sum())

    if k:
        through = (less.astype(np.int64) @ less.astype(np.int64)) > 0
        broken = through & ~less
        for i, j in zip(*np.nonzero(broken)):
            middle = int(np.flatnonzero(less[i] & less[:, j])[0])
            report.fail("transitivity", {"triple": [elements[i], elements[middle], elements[j]]})
        report.checks_run += int((through & less).sum())

    return report.finish(order=order.name, elements=k, code_bound=code_bound)


def longest_descending(order: CodedOrder, elements: Sequence) -> List:
    """A longest subsequence of ``elements`` that strictly decreases in ``order``."""
    k = len(elements)
    best = [1] * k
    parent = [-1] * k
    for i in range(k):
        for j in range(i):
            if best[j] + 1 > best[i] and order.less(elements[i], elements[j]):
                best[i] = best[j] + 1
                parent[i] = j
    if not k:
        return []
    i = max(range(k), key=best.__getitem__)
    chain = []
    while i != -1:
        chain.append(elements[i])
        i = parent[i]
    return list(reversed(chain))


def check_wf_bounded(
    order: CodedOrder, code_bound: int, chain_len: int, candidates: Optional[Sequence] = None
) -> SuiteReport:
    """Look for a descending chain of ``chain_len`` elements, in enumeration order unless candidates are given."""
    report = ReportBuilder(f"wf:{order.name}")
    elements = list(order.enumerate(code_bound) if candidates is None else candidates)
    chain = longest_descending(order, elements)
    report.check(
        len(chain) < chain_len,
        "descending-chain",
        {"length": len(chain), "chain": chain[:chain_len]},
    )
    return report.finish(order=order.name, elements=len(elements), longest_descent=len(chain), chain_len=chain_len)
