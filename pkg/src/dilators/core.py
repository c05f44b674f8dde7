"""Coded prae-dilators and their extension D^T to arbitrary orders.

A prae-dilator T is given behaviourally: an order T(n) for each natural n,
an action ``apply`` of strictly increasing maps m -> n, and finite supports.
D^T(X) consists of pairs <a, s> of a finite a in X and a code s in T(|a|)
whose support is all of |a|.
"""
import functools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, Optional, Tuple

from src.errors import DecodeFailure, DomainViolation, InvalidElement, NotNormal, Unsupported
from src.utils.coding import pair, seq, unpair, unseq
from src.utils.log_utils import get_logger
from src.utils.orders import (
    CanonicalOrder,
    CodedOrder,
    FinSubset,
    FiniteOrderMap,
    OrderEmbedding,
    Ordering,
    RestrictedOrder,
    all_maps,
)
from src.utils.reporting import ReportBuilder, SuiteReport
from src.utils.serialization import to_jsonable

logger = get_logger("Dilator")


class PraeDilator(ABC):
    name = "dilator"
    mu1: Any = None

    @abstractmethod
    def order_at(self, n: int) -> CodedOrder:
        ...

    @abstractmethod
    def apply(self, f: FiniteOrderMap, sigma):
        ...

    @abstractmethod
    def supp(self, n: int, sigma) -> FrozenSet[int]:
        ...

    @property
    def is_normal(self) -> bool:
        return self.mu1 is not None

    @property
    def cache_key(self) -> Hashable:
        """Dilators with equal keys have the same orders, action and supports."""
        return type(self).__name__, self.name

    # Class-sized extension; only concrete zoo dilators and the tree
    # constructions provide it.

    def class_order(self, X: CodedOrder) -> CodedOrder:
        raise Unsupported(f"{self.name} has no class-sized extension")

    def class_apply(self, f: OrderEmbedding, value):
        raise Unsupported(f"{self.name} has no class-sized extension")

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        raise Unsupported(f"{self.name} has no class-sized extension")

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


@dataclass(frozen=True)
class DElement:
    support: FrozenSet[Hashable]
    sigma: Any

    @classmethod
    def of(cls, support: Iterable[Hashable], sigma) -> "DElement":
        return cls(frozenset(support), sigma)

    def to_json(self) -> dict:
        return {"support": to_jsonable(self.support), "sigma": to_jsonable(self.sigma)}


@dataclass(frozen=True)
class FixedPointWitness:
    """An order X with an embedding xi of D^T(X) into X."""

    order: CodedOrder
    xi: Callable[[DElement], Any]
    name: str = "witness"


def full_support(n: int) -> FrozenSet[int]:
    return frozenset(range(n))


def d_member(T: PraeDilator, X: CodedOrder, a: Iterable[Hashable], sigma) -> bool:
    a = frozenset(a)
    if not all(X.member(x) for x in a):
        return False
    k = len(a)
    if not T.order_at(k).member(sigma):
        return False
    return T.supp(k, sigma) == full_support(k)


def _require_member(T: PraeDilator, X: CodedOrder, d: DElement) -> None:
    if not d_member(T, X, d.support, d.sigma):
        raise InvalidElement(f"{to_jsonable(d)} is not an element of D^{T.name}({X.name})")


def embed_pair(T: PraeDilator, X: CodedOrder, d: DElement, e: DElement) -> Tuple[Any, Any, int]:
    """Transport both codes into T(|a u b|) along the induced maps."""
    union = FinSubset(d.support | e.support, X)
    en = X.sorted(union.elements)
    position = {x: i for i, x in enumerate(en)}
    k = len(en)

    def along(element: DElement):
        images = tuple(sorted(position[x] for x in element.support))
        return T.apply(FiniteOrderMap(len(images), k, images), element.sigma)

    return along(d), along(e), k


def d_compare(T: PraeDilator, X: CodedOrder, d: DElement, e: DElement) -> Ordering:
    _require_member(T, X, d)
    _require_member(T, X, e)
    if d == e:
        return Ordering.EQUAL
    sigma, tau, k = embed_pair(T, X, d, e)
    return T.order_at(k).compare(sigma, tau)


def d_map_supp(T: PraeDilator, f: OrderEmbedding, d: DElement) -> Tuple[DElement, FinSubset]:
    image = DElement(frozenset(f(x) for x in d.support), d.sigma)
    return image, FinSubset(d.support, f.source)


def mu_value(T: PraeDilator, n: int, m: int):
    if T.mu1 is None:
        raise NotNormal(f"{T.name} carries no normal structure")
    if not 0 <= m < n:
        raise DomainViolation(f"mu_{n}({m}) needs m < n")
    return T.apply(FiniteOrderMap.singleton(n, m), T.mu1)


def d_mu(T: PraeDilator, X: CodedOrder, x) -> DElement:
    if T.mu1 is None:
        raise NotNormal(f"{T.name} carries no normal structure")
    if not X.member(x):
        raise DomainViolation(f"{x!r} is not in {X.name}")
    return DElement(frozenset({x}), T.mu1)


def enumeration_embedding(X: CodedOrder, support: Iterable[Hashable]) -> OrderEmbedding:
    en = X.sorted(support)
    return OrderEmbedding(CanonicalOrder(len(en)), X, en.__getitem__)


def evaluate_class(T: PraeDilator, X: CodedOrder, d: DElement):
    """T(i_a o en_a)(sigma): the image of <a, sigma> in the class-sized T(X)."""
    return T.class_apply(enumeration_embedding(X, d.support), d.sigma)


def invert_class(T: PraeDilator, X: CodedOrder, value, code_bound: int) -> Optional[DElement]:
    support = T.class_supp(X, value)
    k = len(support)
    embedding = enumeration_embedding(X, support)
    for sigma in T.order_at(k).enumerate(code_bound):
        if T.supp(k, sigma) == full_support(k) and T.class_apply(embedding, sigma) == value:
            return DElement(frozenset(support), sigma)
    return None


class DExtension(CodedOrder):
    """D^T(X) as a coded order: code of <a, s> is pair(seq(codes of a, ascending), code of s)."""

    def __init__(self, T: PraeDilator, X: CodedOrder):
        self.T = T
        self.X = X
        self.name = f"D^{T.name}({X.name})"

    def member(self, element) -> bool:
        return isinstance(element, DElement) and d_member(self.T, self.X, element.support, element.sigma)

    def compare(self, a, b) -> Ordering:
        return d_compare(self.T, self.X, a, b)

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element: DElement) -> int:
        codes = sorted(self.X.encode(x) for x in element.support)
        return pair(seq(codes), self.T.order_at(len(codes)).encode(element.sigma))

    def decode(self, code: int) -> DElement:
        support_code, sigma_code = unpair(code)
        codes = unseq(support_code)
        if any(b <= a for a, b in zip(codes, codes[1:])):
            raise DecodeFailure(f"support codes {codes} are not strictly increasing")
        support = frozenset(self.X.decode(c) for c in codes)
        return DElement(support, self.T.order_at(len(codes)).decode(sigma_code))


def _enumerated(T: PraeDilator, arity_bound: int, code_bound: int) -> Dict[int, list]:
    return {n: T.order_at(n).enumerate(code_bound) for n in range(arity_bound + 1)}


def validate_prae_dilator(T: PraeDilator, arity_bound: int, code_bound: int) -> SuiteReport:
    """Check functor laws, monotonicity, naturality of supports and the support condition."""
    report = ReportBuilder(f"validate:{T.name}")
    elements = _enumerated(T, arity_bound, code_bound)
    maps = {(m, n): all_maps(m, n) for n in range(arity_bound + 1) for m in range(n + 1)}
    logger.info(f"Validating {T.name} up to arity {arity_bound}, codes <= {code_bound}")

    for n, sigmas in elements.items():
        identity = FiniteOrderMap.identity(n)
        for sigma in sigmas:
            report.check(T.apply(identity, sigma) == sigma, "functor-identity", {"n": n, "sigma": sigma})
            report.check(T.supp(n, sigma) <= full_support(n), "supp-range", {"n": n, "sigma": sigma})

    for (m, n), fs in maps.items():
        target = T.order_at(n)
        ascending = T.order_at(m).sorted(elements[m])
        for f in fs:
            images = []
            for sigma in ascending:
                image = T.apply(f, sigma)
                images.append(image)
                witness = {"map": f, "sigma": sigma, "image": image}
                if not report.check(target.member(image), "apply-codomain", witness):
                    continue
                report.check(
                    T.supp(n, image) == f.image_of(T.supp(m, sigma)),
                    "supp-naturality",
                    witness,
                )
            for (s0, i0), (s1, i1) in zip(zip(ascending, images), zip(ascending[1:], images[1:])):
                report.check(target.less(i0, i1), "apply-monotone", {"map": f, "pair": [s0, s1]})

    for (k, m), inner_maps in maps.items():
        for f in inner_maps:
            for n in range(m, arity_bound + 1):
                for g in maps[(m, n)]:
                    gf = g.compose(f)
                    for sigma in elements[k]:
                        report.check(
                            T.apply(gf, sigma) == T.apply(g, T.apply(f, sigma)),
                            "functor-composition",
                            {"f": f, "g": g, "sigma": sigma},
                        )

    preimages: Dict[FiniteOrderMap, Dict[Any, Any]] = {}
    for n, sigmas in elements.items():
        for sigma in sigmas:
            support = sorted(T.supp(n, sigma))
            if not all(0 <= i < n for i in support):
                continue
            e = FiniteOrderMap(len(support), n, tuple(support))
            if e not in preimages:
                preimages[e] = {T.apply(e, s0): s0 for s0 in elements.get(e.source_size, [])}
            report.check(sigma in preimages[e], "support-condition", {"n": n, "sigma": sigma, "supp": support})

    if T.mu1 is not None:
        report.check(T.order_at(1).member(T.mu1), "mu-member", {"mu1": T.mu1})
        report.check(T.supp(1, T.mu1) == full_support(1), "mu-support", {"mu1": T.mu1})

    return report.finish(dilator=T.name, arity_bound=arity_bound, code_bound=code_bound)


def validate_normal(T: PraeDilator, arity_bound: int, code_bound: int) -> SuiteReport:
    """Check s < mu_n(m) iff supp(s) is inside m, plus naturality of mu."""
    report = ReportBuilder(f"normal:{T.name}")
    if T.mu1 is None:
        report.fail("normal-structure-absent", {"dilator": T.name})
        return report.finish(dilator=T.name)
    if not report.check(T.supp(1, T.mu1) == full_support(1), "mu-support", {"mu1": T.mu1}):
        return report.finish(dilator=T.name, mu1=T.mu1)

    elements = _enumerated(T, arity_bound, code_bound)
    for n in range(1, arity_bound + 1):
        order = T.order_at(n)
        for m in range(n):
            mu = mu_value(T, n, m)
            report.check(T.supp(n, mu) == frozenset({m}), "mu-value-support", {"n": n, "m": m, "mu": mu})
            below = full_support(m)
            for sigma in elements[n]:
                report.check(
                    order.less(sigma, mu) == (T.supp(n, sigma) <= below),
                    "normal-equivalence",
                    {"n": n, "m": m, "sigma": sigma, "mu": mu},
                )
            for k in range(n, arity_bound + 1):
                for f in all_maps(n, k):
                    report.check(
                        T.apply(f, mu) == mu_value(T, k, f(m)),
                        "mu-naturality",
                        {"map": f, "m": m},
                    )
    return report.finish(dilator=T.name, mu1=T.mu1, arity_bound=arity_bound, code_bound=code_bound)


def restriction_identity(T: PraeDilator, X: CodedOrder, x, code_bound: int) -> SuiteReport:
    """D^T(X|x) coincides with the elements of D^T(X) below d_mu(x)."""
    report = ReportBuilder(f"restriction:{T.name}")
    bound = d_mu(T, X, x)
    whole = DExtension(T, X)
    restricted = DExtension(T, RestrictedOrder(X, x))
    below = {d for d in whole.enumerate(code_bound) if whole.less(d, bound)}
    inside = set(restricted.enumerate(code_bound))
    for d in whole.enumerate(code_bound):
        in_segment = all(X.less(y, x) for y in d.support)
        report.check(whole.less(d, bound) == in_segment, "mu-bounds-segment", {"element": d, "x": x})
    report.check(below == inside, "restriction-identity", {"x": x, "difference": below ^ inside})
    return report.finish(dilator=T.name, x=x, size=len(inside))


def with_cached_orders(cls):
    """Class decorator memoising ``order_at`` per instance."""
    original = cls.order_at

    @functools.wraps(original)
    def order_at(self, n: int) -> CodedOrder:
        cache = self.__dict__.setdefault("_order_cache", {})
        if n not in cache:
            cache[n] = original(self, n)
        return cache[n]

    cls.order_at = order_at
    return cls
