"""Concrete dilators: omega^X, the top dilator X + {top}, constant dilators."""
from typing import Any, Callable, Dict, FrozenSet, Hashable, List, NamedTuple, Tuple

from src.dilators.core import PraeDilator, with_cached_orders
from src.errors import DecodeFailure, MalformedCnf
from src.utils.coding import pair, seq, unseq
from src.utils.orders import (
    STAR,
    TOP,
    CanonicalOrder,
    CodedOrder,
    FiniteOrderMap,
    OrderEmbedding,
    Ordering,
    TopExtension,
)


class CnfOrder(CodedOrder):
    """omega^X: weakly decreasing exponent tuples, compared lexicographically."""

    def __init__(self, X: CodedOrder):
        self.X = X
        self.name = f"omega^{X.name}"

    def well_formed(self, exponents) -> bool:
        if not isinstance(exponents, tuple):
            return False
        if not all(self.X.member(x) for x in exponents):
            return False
        return all(not self.X.less(a, b) for a, b in zip(exponents, exponents[1:]))

    def member(self, element) -> bool:
        return self.well_formed(element)

    def compare(self, a, b) -> Ordering:
        for x, y in zip(a, b):
            step = self.X.compare(x, y)
            if step is not Ordering.EQUAL:
                return step
        if len(a) == len(b):
            return Ordering.EQUAL
        return Ordering.LESS if len(a) < len(b) else Ordering.GREATER

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        return seq(self.X.encode(x) for x in element)

    def decode(self, code: int):
        return tuple(self.X.decode(c) for c in unseq(code))

    def enumerate(self, code_bound: int) -> list:
        found: List[Tuple[int, tuple]] = [(0, ())]
        stack = [(0, ())]
        while stack:
            prefix_code, prefix = stack.pop()
            entry = 0
            while (code := pair(prefix_code, entry) + 1) <= code_bound:
                entry += 1
                try:
                    x = self.X.decode(entry - 1)
                except DecodeFailure:
                    continue
                if not self.X.member(x):
                    continue
                if prefix and self.X.less(prefix[-1], x):
                    continue
                extended = prefix + (x,)
                found.append((code, extended))
                stack.append((code, extended))
        found.sort(key=lambda item: item[0])
        return [element for _, element in found]


def omega_compare(X: CodedOrder, u, v) -> Ordering:
    order = CnfOrder(X)
    for w in (u, v):
        if not order.well_formed(tuple(w)):
            raise MalformedCnf(f"{w!r} is not a weakly decreasing exponent list over {X.name}")
    return order.compare(tuple(u), tuple(v))


@with_cached_orders
class OmegaDilator(PraeDilator):
    name = "omega"
    mu1 = (0,)

    def order_at(self, n: int) -> CodedOrder:
        return CnfOrder(CanonicalOrder(n))

    def apply(self, f: FiniteOrderMap, sigma):
        return tuple(f(x) for x in sigma)

    def supp(self, n: int, sigma) -> FrozenSet[int]:
        return frozenset(sigma)

    def class_order(self, X: CodedOrder) -> CodedOrder:
        return CnfOrder(X)

    def class_apply(self, f: OrderEmbedding, value):
        return tuple(f(x) for x in value)

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        return frozenset(value)

    def class_mu(self, x):
        return (x,)


def omega_map_supp_mu(f: OrderEmbedding, u) -> Tuple[tuple, FrozenSet[Hashable], Dict[Any, tuple]]:
    """Image of u under omega^f, its support, and the values mu(x) = omega^x on that support."""
    dilator = OmegaDilator()
    image = dilator.class_apply(f, u)
    support = dilator.class_supp(f.source, u)
    return image, support, {x: dilator.class_mu(x) for x in support}


@with_cached_orders
class TopDilator(PraeDilator):
    """X -> X + {top}. supp(top) is empty, supp(x) = {x}; no normal structure exists."""

    name = "top"

    def __init__(self, mu1=None):
        self.mu1 = mu1
        if mu1 is not None:
            self.name = f"top[mu1={mu1!r}]"

    def order_at(self, n: int) -> CodedOrder:
        return TopExtension(CanonicalOrder(n))

    def apply(self, f: FiniteOrderMap, sigma):
        return TOP if sigma is TOP else f(sigma)

    def supp(self, n: int, sigma) -> FrozenSet[int]:
        return frozenset() if sigma is TOP else frozenset({sigma})

    def class_order(self, X: CodedOrder) -> CodedOrder:
        return TopExtension(X)

    def class_apply(self, f: OrderEmbedding, value):
        return f.lift_top(value)

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        return top_supp(value)

    @classmethod
    def candidates(cls) -> List["TopDilator"]:
        return [cls(mu1=candidate) for candidate in cls().order_at(1).enumerate(1)]


def top_supp(value) -> FrozenSet[Hashable]:
    return frozenset() if value is TOP else frozenset({value})


class TopOps(NamedTuple):
    compare: Callable[[Any, Any], Ordering]
    lift: Callable[[Any], Any]
    supp: Callable[[Any], FrozenSet[Hashable]]


def top_ops(X: CodedOrder, f: OrderEmbedding) -> TopOps:
    return TopOps(compare=TopExtension(X).compare, lift=f.lift_top, supp=top_supp)


class SingletonOrder(CodedOrder):
    name = "{star}"

    def member(self, element) -> bool:
        return element is STAR

    def less(self, a, b) -> bool:
        return False

    def encode(self, element) -> int:
        return 0

    def decode(self, code: int):
        if code != 0:
            raise DecodeFailure(f"the one-point order has no code {code}")
        return STAR

    def enumerate(self, code_bound: int) -> list:
        return [STAR] if code_bound >= 0 else []

    def finite_size(self):
        return 1


@with_cached_orders
class ConstantDilator(PraeDilator):
    name = "const"

    def __init__(self, mu1=None):
        self.mu1 = mu1
        if mu1 is not None:
            self.name = f"const[mu1={mu1!r}]"

    def order_at(self, n: int) -> CodedOrder:
        return SingletonOrder()

    def apply(self, f: FiniteOrderMap, sigma):
        return STAR

    def supp(self, n: int, sigma) -> FrozenSet[int]:
        return frozenset()

    def class_order(self, X: CodedOrder) -> CodedOrder:
        return SingletonOrder()

    def class_apply(self, f: OrderEmbedding, value):
        return STAR

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        return frozenset()


def constant_dilator() -> ConstantDilator:
    return ConstantDilator()


class EmptySupportVariant(PraeDilator):
    """A deliberately broken copy of ``inner`` whose supports are always empty."""

    def __init__(self, inner: PraeDilator):
        self.inner = inner
        self.name = f"{inner.name}-nosupp"
        self.mu1 = inner.mu1

    @property
    def cache_key(self) -> Hashable:
        return type(self).__name__, self.inner.cache_key

    def order_at(self, n: int) -> CodedOrder:
        return self.inner.order_at(n)

    def apply(self, f: FiniteOrderMap, sigma):
        return self.inner.apply(f, sigma)

    def supp(self, n: int, sigma) -> FrozenSet[int]:
        return frozenset()
