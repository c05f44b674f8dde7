"""Bounded enumeration of Fix(T).

A term's Goedel number is pair(seq(child codes), sigma code) + 2, and every
child code is smaller than the parent's, so the terms with code <= B are
reached by repeatedly extending ascending lists of known codes until nothing
new turns up.
"""
import bisect
from typing import Dict, List, Optional, Tuple

from src.dilators.core import PraeDilator, full_support
from src.errors import DecodeFailure
from src.fixpoint.terms import FixSystem, FixTerm, fix_system
from src.utils.coding import pair, seq
from src.utils.log_utils import get_logger

logger = get_logger("Fix")


def _largest_second(first: int, limit: int) -> int:
    """Largest c with pair(first, c) <= limit, or -1."""
    if pair(first, 0) > limit:
        return -1
    low, high = 0, limit
    while low < high:
        middle = (low + high + 1) // 2
        if pair(first, middle) <= limit:
            low = middle
        else:
            high = middle - 1
    return low


class _SigmaTable:
    """Full-support codes of T(k) up to a fixed bound, sorted by code."""

    def __init__(self, T: PraeDilator, bound: int):
        self.T = T
        self.bound = bound
        self._rows: Dict[int, Tuple[List[int], list]] = {}

    def upto(self, k: int, limit: int) -> list:
        if k not in self._rows:
            order = self.T.order_at(k)
            rows = sorted(
                (order.encode(sigma), sigma)
                for sigma in order.enumerate(self.bound)
                if self.T.supp(k, sigma) == full_support(k)
            )
            self._rows[k] = ([code for code, _ in rows], [sigma for _, sigma in rows])
        codes, sigmas = self._rows[k]
        return list(zip(codes[: bisect.bisect_right(codes, limit)], sigmas))


def terms_up_to_goedel(system: FixSystem, bound: int) -> List[FixTerm]:
    """All valid terms with Goedel number <= ``bound``, by ascending code."""
    if bound < 2:
        return []
    sigmas = _SigmaTable(system.T, bound)
    known: Dict[int, FixTerm] = {}
    while True:
        found: Dict[int, FixTerm] = {}
        codes = sorted(known)

        def extend(prefix: List[int], start: int, prefix_code: int) -> None:
            limit = _largest_second(prefix_code, bound - 2)
            for sigma_code, sigma in sigmas.upto(len(prefix), limit):
                code = pair(prefix_code, sigma_code) + 2
                if code in known or code in found:
                    continue
                term = system.make([known[c] for c in prefix], sigma)
                if system.validate(term) and system.goedel(term) == code:
                    found[code] = term
            for index in range(start, len(codes)):
                child = codes[index]
                extended_code = pair(prefix_code, child) + 1
                if pair(extended_code, 0) + 2 > bound:
                    break
                extend(prefix + [child], index + 1, extended_code)

        extend([], 0, seq([]))
        if not found:
            break
        known.update(found)
        logger.debug(f"Goedel bound {bound}: {len(found)} new terms, {len(known)} in total")
    return [known[code] for code in sorted(known)]


def terms_by_decoding(system: FixSystem, bound: int) -> List[FixTerm]:
    """Generate-and-filter: decode every code up to ``bound`` and keep the terms."""
    terms = []
    for code in range(1, bound + 1):
        try:
            term = system.decode(code)
        except DecodeFailure:
            continue
        if system.validate(term):
            terms.append(term)
    return terms


def enumerate_fix(T: PraeDilator, l_bound: int) -> List[FixTerm]:
    """The terms with L_T <= ``l_bound``, in increasing order."""
    system = fix_system(T)
    terms = [t for t in terms_up_to_goedel(system, l_bound) if system.length(t) <= l_bound]
    return system.sorted(terms)


def calibrate_l_bound(T: PraeDilator, low: int = 200, high: int = 1000, start: int = 16, ceiling: Optional[int] = None) -> int:
    """A length bound whose enumeration holds between ``low`` and ``high`` terms where possible."""
    system = fix_system(T)
    bound = start
    ceiling = ceiling or 10 ** 40
    while True:
        lengths = sorted(system.length(t) for t in terms_up_to_goedel(system, bound))
        lengths = [length for length in lengths if length <= bound]
        if len(lengths) >= low or bound >= ceiling:
            break
        bound *= 8
    if len(lengths) <= high:
        chosen = bound
    else:
        # Largest bound admitting at most ``high`` terms.
        chosen = lengths[high] - 1
        while bisect.bisect_right(lengths, chosen) < low and chosen < bound:
            chosen = lengths[bisect.bisect_right(lengths, chosen)]
    logger.info(f"Calibrated length bound {chosen} for Fix({T.name}): {bisect.bisect_right(lengths, chosen)} terms")
    return chosen
