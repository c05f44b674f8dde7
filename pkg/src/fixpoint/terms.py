"""The term system Fix(T).

Terms are xi<a, sigma> with a a finite set of terms and sigma in T(|a|) of
full support. Comparison is by recursion on the terms: both codes are moved
into T(|a u b|) along the induced maps and compared there.
"""
import functools
from collections import OrderedDict
from typing import Any, Dict, Hashable, Iterable, List, NamedTuple, Tuple

from src.dilators.core import DElement, PraeDilator, full_support
from src.errors import DecodeFailure, InvalidElement, InvalidTerm, ParseError
from src.utils.coding import seq, unseq
from src.utils.orders import CodedOrder, FiniteOrderMap, Ordering
from src.utils.serialization import to_jsonable


class FixTerm:
    """xi<children, sigma>; children are kept in increasing order."""

    __slots__ = ("children", "sigma", "_hash")

    def __init__(self, children: Tuple["FixTerm", ...], sigma: Any):
        self.children = tuple(children)
        self.sigma = sigma
        self._hash = hash((sigma, self.children))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FixTerm) or self._hash != other._hash:
            return False
        return self.sigma == other.sigma and self.children == other.children

    def __repr__(self):
        if not self.children:
            return f"xi<{{}}, {self.sigma!r}>"
        return f"xi<{{{len(self.children)} terms}}, {self.sigma!r}>"

    def to_json(self) -> dict:
        return {"children": [c.to_json() for c in self.children], "sigma": to_jsonable(self.sigma)}


class TermMetrics(NamedTuple):
    goedel: int
    length: int
    height: int


class FixSystem:
    """Comparison, validation and metrics for Fix(T), with per-system caches."""

    def __init__(self, T: PraeDilator):
        self.T = T
        self._compare_cache: Dict[Tuple[FixTerm, FixTerm], Ordering] = {}
        self._valid: set = set()
        self._goedel: Dict[FixTerm, int] = {}
        self._length: Dict[FixTerm, int] = {}
        self._height: Dict[FixTerm, int] = {}

    @property
    def sort_key(self):
        return functools.cmp_to_key(lambda s, t: int(self.compare(s, t)))

    def sorted(self, terms: Iterable[FixTerm]) -> List[FixTerm]:
        return sorted(terms, key=self.sort_key)

    def make(self, children: Iterable[FixTerm], sigma) -> FixTerm:
        unique = list(dict.fromkeys(children))
        return FixTerm(tuple(self.sorted(unique)), sigma)

    def _merge(self, a: Tuple[FixTerm, ...], b: Tuple[FixTerm, ...]):
        i = j = position = 0
        left, right = [], []
        while i < len(a) and j < len(b):
            step = self.compare(a[i], b[j])
            if step is not Ordering.GREATER:
                left.append(position)
                i += 1
            if step is not Ordering.LESS:
                right.append(position)
                j += 1
            position += 1
        for _ in range(i, len(a)):
            left.append(position)
            position += 1
        for _ in range(j, len(b)):
            right.append(position)
            position += 1
        return position, left, right

    def compare(self, s: FixTerm, t: FixTerm) -> Ordering:
        if s is t:
            return Ordering.EQUAL
        cached = self._compare_cache.get((s, t))
        if cached is not None:
            return cached
        if s == t:
            result = Ordering.EQUAL
        else:
            k, left, right = self._merge(s.children, t.children)
            sigma = self.T.apply(FiniteOrderMap(len(left), k, tuple(left)), s.sigma)
            tau = self.T.apply(FiniteOrderMap(len(right), k, tuple(right)), t.sigma)
            result = self.T.order_at(k).compare(sigma, tau)
        self._compare_cache[(s, t)] = result
        self._compare_cache[(t, s)] = result.flip()
        return result

    def validate(self, term: Any) -> bool:
        if not isinstance(term, FixTerm):
            return False
        if term in self._valid:
            return True
        children = term.children
        if not all(self.validate(c) for c in children):
            return False
        if any(self.compare(a, b) is not Ordering.LESS for a, b in zip(children, children[1:])):
            return False
        k = len(children)
        if not self.T.order_at(k).member(term.sigma) or self.T.supp(k, term.sigma) != full_support(k):
            return False
        self._valid.add(term)
        return True

    def require(self, *terms: FixTerm) -> None:
        for term in terms:
            if not self.validate(term):
                raise InvalidTerm(f"{term!r} is not a term of Fix({self.T.name})")

    def checked_compare(self, s: FixTerm, t: FixTerm) -> Ordering:
        self.require(s, t)
        return self.compare(s, t)

    def xi_apply(self, d: DElement) -> FixTerm:
        support = list(d.support)
        if not all(self.validate(s) for s in support):
            raise InvalidElement(f"support of {d!r} contains non-terms")
        k = len(support)
        if not self.T.order_at(k).member(d.sigma) or self.T.supp(k, d.sigma) != full_support(k):
            raise InvalidElement(f"{to_jsonable(d.sigma)} is not a full-support code of T({k})")
        term = self.make(support, d.sigma)
        self._valid.add(term)
        return term

    def xi_invert(self, term: FixTerm) -> DElement:
        if not self.validate(term):
            raise InvalidElement(f"{term!r} is not a term of Fix({self.T.name})")
        return DElement(frozenset(term.children), term.sigma)

    def goedel(self, term: FixTerm) -> int:
        if term not in self._goedel:
            codes = sorted(self.goedel(c) for c in term.children)
            codes.append(self.T.order_at(len(term.children)).encode(term.sigma))
            self._goedel[term] = seq(codes) + 1
        return self._goedel[term]

    def length(self, term: FixTerm) -> int:
        if term not in self._length:
            self._length[term] = max(self.goedel(term), 1 + sum(2 * self.length(c) for c in term.children))
        return self._length[term]

    def height(self, term: FixTerm) -> int:
        if term not in self._height:
            self._height[term] = max((self.height(c) + 1 for c in term.children), default=0)
        return self._height[term]

    def metrics(self, term: FixTerm) -> TermMetrics:
        return TermMetrics(self.goedel(term), self.length(term), self.height(term))

    def decode(self, code: int) -> FixTerm:
        """The term with Goedel number ``code``; raises DecodeFailure for non-codes."""
        if code < 1:
            raise DecodeFailure("Goedel numbers start at 1")
        entries = unseq(code - 1)
        if not entries:
            raise DecodeFailure(f"{code} codes the empty sequence")
        *child_codes, sigma_code = entries
        if any(b <= a for a, b in zip(child_codes, child_codes[1:])):
            raise DecodeFailure(f"child codes {child_codes} are not strictly increasing")
        children = [self.decode(c) for c in child_codes]
        if not all(self.validate(c) for c in children):
            raise DecodeFailure(f"{code} has a child that is not a term")
        term = self.make(children, self.T.order_at(len(children)).decode(sigma_code))
        if self.goedel(term) != code:
            raise DecodeFailure(f"{code} is not a canonical Goedel number")
        return term

    def term_to_json(self, term: FixTerm) -> dict:
        k = len(term.children)
        return {
            "children": [self.term_to_json(c) for c in term.children],
            "sigma": self.T.order_at(k).encode(term.sigma),
        }

    def term_from_json(self, data: Any) -> FixTerm:
        if not isinstance(data, dict) or "sigma" not in data:
            raise ParseError("a term is an object with 'children' and 'sigma'")
        children = [self.term_from_json(c) for c in data.get("children", [])]
        try:
            sigma = self.T.order_at(len(children)).decode(int(data["sigma"]))
        except (DecodeFailure, TypeError, ValueError) as e:
            raise ParseError(f"bad sigma code {data['sigma']!r}: {e}") from e
        return self.make(children, sigma)


FIX_CACHE_SIZE = 32
_systems: "OrderedDict[Hashable, FixSystem]" = OrderedDict()


def fix_system(T: PraeDilator) -> FixSystem:
    """The shared FixSystem of T, keyed by ``T.cache_key``.

    Only the FIX_CACHE_SIZE most recently used systems are kept.
    """
    key = T.cache_key
    system = _systems.get(key)
    if system is None:
        system = _systems[key] = FixSystem(T)
        if len(_systems) > FIX_CACHE_SIZE:
            _systems.popitem(last=False)
    else:
        _systems.move_to_end(key)
    return system


def cached_systems() -> int:
    return len(_systems)


class FixOrder(CodedOrder):
    """Fix(T) as a coded order; codes are Goedel numbers."""

    def __init__(self, system: FixSystem):
        self.system = system
        self.name = f"Fix({system.T.name})"

    def member(self, element) -> bool:
        return self.system.validate(element)

    def compare(self, a, b) -> Ordering:
        return self.system.compare(a, b)

    def less(self, a, b) -> bool:
        return self.system.compare(a, b) is Ordering.LESS

    def sorted(self, elements: Iterable) -> list:
        return self.system.sorted(elements)

    def encode(self, element) -> int:
        return self.system.goedel(element)

    def decode(self, code: int):
        return self.system.decode(code)

    def enumerate(self, code_bound: int) -> list:
        from src.fixpoint.enumeration import terms_up_to_goedel

        return terms_up_to_goedel(self.system, code_bound)


def fix_validate(T: PraeDilator, term) -> bool:
    return fix_system(T).validate(term)


def fix_compare(T: PraeDilator, s: FixTerm, t: FixTerm) -> Ordering:
    return fix_system(T).checked_compare(s, t)


def xi_apply(T: PraeDilator, d: DElement) -> FixTerm:
    return fix_system(T).xi_apply(d)


def xi_invert(T: PraeDilator, term: FixTerm) -> DElement:
    return fix_system(T).xi_invert(term)


def metrics(T: PraeDilator, term: FixTerm) -> TermMetrics:
    return fix_system(T).metrics(term)


def stage_member(T: PraeDilator, term: FixTerm, n: int) -> bool:
    return fix_system(T).height(term) < n


def fix_order(T: PraeDilator) -> FixOrder:
    return FixOrder(fix_system(T))
