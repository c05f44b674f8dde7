"""The composite normal prae-dilator F[T] = T_0^top + sum_x sum_n H[n](X|x).

The inner index runs over -1, N, inf; H[-1] and H[inf] are the constant
dilator with value star.
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Hashable, Tuple, Union

from src.constructions.h import HOrder, h_coded_iso, h_lift, h_supp
from src.dilators.core import (
    DElement,
    PraeDilator,
    d_member,
    evaluate_class,
    validate_normal,
    validate_prae_dilator,
    with_cached_orders,
)
from src.dilators.zoo import SingletonOrder
from src.errors import DecodeFailure, DomainViolation, NotMember
from src.trees.kb import KbOrder, TreeFamily
from src.utils.coding import pair, unpair
from src.utils.log_utils import get_logger
from src.utils.orders import (
    STAR,
    CanonicalOrder,
    CodedOrder,
    FinSubset,
    FiniteOrderMap,
    OrderEmbedding,
    Ordering,
    RestrictedOrder,
    TopExtension,
)
from src.utils.reporting import ReportBuilder, SuiteReport
from src.utils.serialization import to_jsonable

logger = get_logger("F")

INF = math.inf
NInfIndex = Union[int, float]


def is_special(n: NInfIndex) -> bool:
    return n == -1 or n == INF


class NInfOrder(CodedOrder):
    """-1 < 0 < 1 < ... < inf; codes: -1 -> 0, inf -> 1, n -> n + 2."""

    name = "N[-1,inf]"

    def member(self, element) -> bool:
        if element == INF:
            return True
        return isinstance(element, int) and element >= -1

    def less(self, a, b) -> bool:
        return a < b

    def encode(self, element) -> int:
        if element == -1:
            return 0
        if element == INF:
            return 1
        return element + 2

    def decode(self, code: int):
        if code == 0:
            return -1
        if code == 1:
            return INF
        return code - 2


NINF = NInfOrder()


@dataclass(frozen=True)
class FLeft:
    """<bottom, sigma> with sigma in T_0 + {top}."""

    sigma: Any

    def to_json(self) -> dict:
        return {"bottom": to_jsonable(self.sigma)}


@dataclass(frozen=True)
class FRight:
    """<x, n, sigma> with sigma in H[n](X|x)."""

    x: Any
    n: NInfIndex
    sigma: Any

    def to_json(self) -> dict:
        return {"x": to_jsonable(self.x), "n": to_jsonable(self.n), "sigma": to_jsonable(self.sigma)}


FElement = Union[FLeft, FRight]


class FOrder(CodedOrder):
    def __init__(self, family: TreeFamily, X: CodedOrder):
        self.family = family
        self.X = X
        self.left = TopExtension(KbOrder(family.at(0)))
        self.name = f"F[{family.name}]({X.name})"

    def fiber(self, x, n: NInfIndex) -> CodedOrder:
        if is_special(n):
            return SingletonOrder()
        return HOrder(self.family, n, RestrictedOrder(self.X, x))

    def member(self, element) -> bool:
        if isinstance(element, FLeft):
            return self.left.member(element.sigma)
        if isinstance(element, FRight):
            return (
                self.X.member(element.x)
                and NINF.member(element.n)
                and self.fiber(element.x, element.n).member(element.sigma)
            )
        return False

    def compare(self, a, b) -> Ordering:
        if isinstance(a, FLeft) and isinstance(b, FLeft):
            return self.left.compare(a.sigma, b.sigma)
        if isinstance(a, FLeft):
            return Ordering.LESS
        if isinstance(b, FLeft):
            return Ordering.GREATER
        head = self.X.compare(a.x, b.x)
        if head is not Ordering.EQUAL:
            return head
        index = NINF.compare(a.n, b.n)
        if index is not Ordering.EQUAL:
            return index
        return self.fiber(a.x, a.n).compare(a.sigma, b.sigma)

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        if isinstance(element, FLeft):
            return 2 * self.left.encode(element.sigma)
        fiber = self.fiber(element.x, element.n)
        return 2 * pair(self.X.encode(element.x), pair(NINF.encode(element.n), fiber.encode(element.sigma))) + 1

    def decode(self, code: int):
        half, odd = divmod(code, 2)
        if not odd:
            return FLeft(self.left.decode(half))
        xc, rest = unpair(half)
        nc, sc = unpair(rest)
        x = self.X.decode(xc)
        n = NINF.decode(nc)
        if not self.X.member(x):
            raise DecodeFailure(f"index code {xc} is not in {self.X.name}")
        return FRight(x, n, self.fiber(x, n).decode(sc))


def f_member(family: TreeFamily, X: CodedOrder, element) -> bool:
    return FOrder(family, X).member(element)


def f_compare(family: TreeFamily, X: CodedOrder, first, second) -> Ordering:
    order = FOrder(family, X)
    for element in (first, second):
        if not order.member(element):
            raise NotMember(f"{to_jsonable(element)} is not in {order.name}")
    return order.compare(first, second)


def _lift(func, element):
    if isinstance(element, FLeft):
        return element
    sigma = element.sigma if is_special(element.n) else h_lift(func, element.sigma)
    return FRight(func(element.x), element.n, sigma)


def _supp(element) -> FrozenSet[Hashable]:
    if isinstance(element, FLeft):
        return frozenset()
    inner = frozenset() if is_special(element.n) else h_supp(element.sigma)
    return frozenset({element.x}) | inner


def f_mu(x) -> FRight:
    return FRight(x, -1, STAR)


@with_cached_orders
class FDilator(PraeDilator):
    def __init__(self, family: TreeFamily):
        self.family = family
        self.name = f"F[{family.name}]"
        self.mu1 = f_mu(0)

    @property
    def cache_key(self) -> Hashable:
        return type(self).__name__, self.family.cache_key

    def order_at(self, m: int) -> CodedOrder:
        return FOrder(self.family, CanonicalOrder(m))

    def apply(self, f: FiniteOrderMap, sigma):
        return _lift(f, sigma)

    def supp(self, m: int, sigma) -> FrozenSet[int]:
        return _supp(sigma)

    def class_order(self, X: CodedOrder) -> CodedOrder:
        return FOrder(self.family, X)

    def class_apply(self, f: OrderEmbedding, value):
        return _lift(f, value)

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        return _supp(value)

    def class_mu(self, x) -> FRight:
        return f_mu(x)


def f_map_supp_mu(family: TreeFamily, f: OrderEmbedding, element) -> Tuple[FElement, FinSubset, Dict[Any, FRight]]:
    """F(f)(e), supp(e), and mu at each point of the image's support."""
    if not f_member(family, f.source, element):
        raise DomainViolation(f"{to_jsonable(element)} is not in F[{family.name}]({f.source.name})")
    image = _lift(f, element)
    return image, FinSubset(_supp(element), f.source), {y: f_mu(y) for y in _supp(image)}


def f_coded_iso(family: TreeFamily, X: CodedOrder, direction: str, value):
    """``to_coded``: F(X) -> D^F(X); ``from_coded``: the inverse, splitting a support at its maximum."""
    dilator = FDilator(family)
    if direction == "to_coded":
        if not f_member(family, X, value):
            raise NotMember(f"{to_jsonable(value)} is not in {dilator.name}({X.name})")
        if isinstance(value, FLeft):
            return DElement(frozenset(), value)
        if is_special(value.n):
            return DElement(frozenset({value.x}), FRight(0, value.n, STAR))
        inner = h_coded_iso(family, value.n, RestrictedOrder(X, value.x), "to_coded", value.sigma)
        k = len(inner.support)
        return DElement(inner.support | {value.x}, FRight(k, value.n, inner.sigma))
    if direction == "from_coded":
        if not isinstance(value, DElement) or not d_member(dilator, X, value.support, value.sigma):
            raise NotMember(f"{to_jsonable(value)} is not in D^{dilator.name}({X.name})")
        return evaluate_class(dilator, X, value)
    raise DomainViolation(f"unknown direction '{direction}'")


def validate_F(family: TreeFamily, arity_bound: int, code_bound: int, dilator: PraeDilator = None) -> SuiteReport:
    dilator = dilator or FDilator(family)
    logger.info(f"Validating {dilator.name} up to arity {arity_bound}, code bound {code_bound}")
    report = ReportBuilder(f"validate-F:{family.name}")
    report.absorb(validate_prae_dilator(dilator, arity_bound, code_bound), prefix="prae-dilator")
    report.absorb(validate_normal(dilator, arity_bound, code_bound), prefix="normal")
    return report.finish(family=family.name, arity_bound=arity_bound, code_bound=code_bound)
