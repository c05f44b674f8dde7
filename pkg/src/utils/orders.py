"""Linear orders, finite order maps and finite subsets.

Orders hold arbitrary hashable elements; each order also fixes a computable
bijection between its elements and (a subset of) the naturals via
``encode``/``decode``. Enumeration always walks codes in ascending order.
"""
import functools
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import (
    AmbientComparisonUndefined,
    DecodeFailure,
    DomainViolation,
    FiberMismatch,
    NotASubset,
    ParseError,
)
from src.utils.coding import pair, seq, unpair, unseq


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self):
        return self.name.lower()

    def flip(self) -> "Ordering":
        return Ordering(-int(self))


class Symbol:
    """A named constant such as top, star or bottom. Compared by identity."""

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_symbol, (self.name,))


def _symbol(name: str) -> "Symbol":
    return SYMBOLS[name]


TOP = Symbol("top")
STAR = Symbol("star")
BOTTOM = Symbol("bottom")
SYMBOLS = {s.name: s for s in (TOP, STAR, BOTTOM)}


class CodedOrder(ABC):
    name = "order"

    @abstractmethod
    def member(self, element) -> bool:
        ...

    @abstractmethod
    def less(self, a, b) -> bool:
        ...

    @abstractmethod
    def encode(self, element) -> int:
        ...

    @abstractmethod
    def decode(self, code: int):
        ...

    def compare(self, a, b) -> Ordering:
        if a == b:
            return Ordering.EQUAL
        return Ordering.LESS if self.less(a, b) else Ordering.GREATER

    def sort_key(self):
        return functools.cmp_to_key(lambda a, b: int(self.compare(a, b)))

    def sorted(self, elements: Iterable) -> list:
        return sorted(elements, key=self.sort_key())

    def try_decode(self, code: int):
        try:
            element = self.decode(code)
        except DecodeFailure:
            return None, False
        return element, self.member(element)

    def enumerate(self, code_bound: int) -> list:
        members = []
        for code in range(code_bound + 1):
            element, ok = self.try_decode(code)
            if ok:
                members.append(element)
        return members

    def finite_size(self) -> Optional[int]:
        return None

    def to_json(self) -> dict:
        return {"name": self.name}


class CanonicalOrder(CodedOrder):
    """The finite order n = {0 < 1 < ... < n-1}; codes are the elements."""

    def __init__(self, size: int):
        if size < 0:
            raise ParseError(f"order size must be a natural, got {size}")
        self.size = size
        self.name = str(size)

    def member(self, element) -> bool:
        return isinstance(element, int) and 0 <= element < self.size

    def less(self, a, b) -> bool:
        return a < b

    def encode(self, element) -> int:
        return element

    def decode(self, code: int):
        return code

    def enumerate(self, code_bound: int) -> list:
        return list(range(min(self.size, code_bound + 1)))

    def finite_size(self) -> Optional[int]:
        return self.size

    def to_json(self) -> dict:
        return {"size": self.size}

    def __eq__(self, other):
        return isinstance(other, CanonicalOrder) and other.size == self.size

    def __hash__(self):
        return hash(("canonical", self.size))


class NaturalOrder(CodedOrder):
    name = "N"

    def member(self, element) -> bool:
        return isinstance(element, int) and element >= 0

    def less(self, a, b) -> bool:
        return a < b

    def encode(self, element) -> int:
        return element

    def decode(self, code: int):
        return code

    def enumerate(self, code_bound: int) -> list:
        return list(range(code_bound + 1))


class ExplicitOrder(CodedOrder):
    """A finite order on given codes; ``less_pairs`` are closed transitively."""

    def __init__(self, codes: Sequence[int], less_pairs: Iterable[Sequence[int]], name: str = "explicit"):
        self.codes = tuple(codes)
        self.name = name
        self._index = {c: i for i, c in enumerate(self.codes)}
        if len(self._index) != len(self.codes):
            raise ParseError("explicit order lists a code twice")
        k = len(self.codes)
        relation = np.zeros((k, k), dtype=bool)
        for a, b in less_pairs:
            if a not in self._index or b not in self._index:
                raise ParseError(f"less pair ({a}, {b}) mentions a code outside the order")
            relation[self._index[a], self._index[b]] = True
        for i in range(k):
            relation |= relation[:, i : i + 1] & relation[i : i + 1, :]
        self.relation = relation

    @classmethod
    def from_sequence(cls, ascending: Sequence[int], name: str = "explicit") -> "ExplicitOrder":
        return cls(ascending, zip(ascending, ascending[1:]), name=name)

    def member(self, element) -> bool:
        return element in self._index

    def less(self, a, b) -> bool:
        return bool(self.relation[self._index[a], self._index[b]])

    def encode(self, element) -> int:
        return element

    def decode(self, code: int):
        return code

    def enumerate(self, code_bound: int) -> list:
        return sorted(c for c in self.codes if c <= code_bound)

    def finite_size(self) -> Optional[int]:
        return len(self.codes)

    def to_json(self) -> dict:
        k = len(self.codes)
        pairs = [
            [self.codes[i], self.codes[j]]
            for i in range(k)
            for j in range(k)
            if self.relation[i, j]
        ]
        return {"codes": list(self.codes), "less_pairs": pairs}


def random_finite_order(size: int, rng: np.random.Generator) -> ExplicitOrder:
    codes = sorted(int(c) for c in rng.choice(3 * size + 1, size=size, replace=False))
    ascending = [codes[i] for i in rng.permutation(size)]
    return ExplicitOrder.from_sequence(ascending, name=f"random-{size}")


class RestrictedOrder(CodedOrder):
    """X restricted to the elements below ``bound`` (written X|x)."""

    def __init__(self, base: CodedOrder, bound):
        self.base = base
        self.bound = bound
        self.name = f"{base.name}|{bound!r}"

    def member(self, element) -> bool:
        return self.base.member(element) and self.base.less(element, self.bound)

    def less(self, a, b) -> bool:
        return self.base.less(a, b)

    def compare(self, a, b) -> Ordering:
        return self.base.compare(a, b)

    def encode(self, element) -> int:
        return self.base.encode(element)

    def decode(self, code: int):
        return self.base.decode(code)

    def enumerate(self, code_bound: int) -> list:
        return [e for e in self.base.enumerate(code_bound) if self.base.less(e, self.bound)]


class TopExtension(CodedOrder):
    """X with a new maximal element TOP (code 0, other codes shifted up by one)."""

    def __init__(self, base: CodedOrder):
        self.base = base
        self.name = f"{base.name}+top"

    def member(self, element) -> bool:
        return element is TOP or self.base.member(element)

    def less(self, a, b) -> bool:
        if a is TOP:
            return False
        if b is TOP:
            return True
        return self.base.less(a, b)

    def compare(self, a, b) -> Ordering:
        if a is TOP or b is TOP:
            if a is b:
                return Ordering.EQUAL
            return Ordering.GREATER if a is TOP else Ordering.LESS
        return self.base.compare(a, b)

    def encode(self, element) -> int:
        return 0 if element is TOP else self.base.encode(element) + 1

    def decode(self, code: int):
        return TOP if code == 0 else self.base.decode(code - 1)

    def enumerate(self, code_bound: int) -> list:
        if code_bound < 0:
            return []
        return [TOP] + [e for e in self.base.enumerate(code_bound - 1) if self.base.encode(e) + 1 <= code_bound]


class ProductOrder(CodedOrder):
    """Lexicographic order on pairs, first coordinate deciding."""

    def __init__(self, first: CodedOrder, second: CodedOrder):
        self.first = first
        self.second = second
        self.name = f"{first.name}x{second.name}"

    def member(self, element) -> bool:
        return (
            isinstance(element, tuple)
            and len(element) == 2
            and self.first.member(element[0])
            and self.second.member(element[1])
        )

    def compare(self, a, b) -> Ordering:
        head = self.first.compare(a[0], b[0])
        if head is not Ordering.EQUAL:
            return head
        return self.second.compare(a[1], b[1])

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        return pair(self.first.encode(element[0]), self.second.encode(element[1]))

    def decode(self, code: int):
        x, y = unpair(code)
        return self.first.decode(x), self.second.decode(y)


class DependentSum(CodedOrder):
    """Pairs <x, y> with y in the fiber at x, ordered index first."""

    def __init__(self, index: CodedOrder, fibers: Callable[[Any], CodedOrder], name: str = "sum"):
        self.index = index
        self.fibers = fibers
        self.name = name

    def member(self, element) -> bool:
        if not (isinstance(element, tuple) and len(element) == 2):
            return False
        x, y = element
        return self.index.member(x) and self.fibers(x).member(y)

    def compare(self, a, b) -> Ordering:
        return depsum_compare(self.index, self.fibers, a, b)

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        x, y = element
        return pair(self.index.encode(x), self.fibers(x).encode(y))

    def decode(self, code: int):
        xc, yc = unpair(code)
        x = self.index.decode(xc)
        if not self.index.member(x):
            raise DecodeFailure(f"index code {xc} is not a member")
        return x, self.fibers(x).decode(yc)


def depsum_compare(index: CodedOrder, fibers: Callable[[Any], CodedOrder], a, b) -> Ordering:
    (x, y), (x2, y2) = a, b
    for ix, iy in ((x, y), (x2, y2)):
        if not fibers(ix).member(iy):
            raise FiberMismatch(f"{iy!r} is not in the fiber over {ix!r}")
    head = index.compare(x, x2)
    if head is not Ordering.EQUAL:
        return head
    return fibers(x).compare(y, y2)


@dataclass(frozen=True)
class FiniteOrderMap:
    """A strictly increasing map m -> n, stored by its images."""

    source_size: int
    target_size: int
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source_size:
            raise DomainViolation(f"map has {len(images)} images, expected {self.source_size}")
        if any(b <= a for a, b in zip(images, images[1:])):
            raise DomainViolation(f"images {images} are not strictly increasing")
        if images and (images[0] < 0 or images[-1] >= self.target_size):
            raise DomainViolation(f"images {images} leave the target {self.target_size}")

    def __call__(self, i: int) -> int:
        if not 0 <= i < self.source_size:
            raise DomainViolation(f"{i} is outside the source {self.source_size}")
        return self.images[i]

    @classmethod
    def identity(cls, n: int) -> "FiniteOrderMap":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def singleton(cls, n: int, m: int) -> "FiniteOrderMap":
        return cls(1, n, (m,))

    def compose(self, inner: "FiniteOrderMap") -> "FiniteOrderMap":
        """``self`` after ``inner``."""
        if inner.target_size != self.source_size:
            raise DomainViolation("maps do not compose")
        return FiniteOrderMap(inner.source_size, self.target_size, tuple(self.images[i] for i in inner.images))

    def image_of(self, positions: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self(i) for i in positions)

    def to_json(self) -> dict:
        return {"source": self.source_size, "target": self.target_size, "images": list(self.images)}


def all_maps(m: int, n: int) -> List[FiniteOrderMap]:
    return [FiniteOrderMap(m, n, images) for images in itertools.combinations(range(n), m)]


@dataclass(frozen=True)
class OrderEmbedding:
    """A strictly increasing function between two coded orders."""

    source: CodedOrder
    target: CodedOrder
    func: Callable[[Any], Any] = field(compare=False)

    def __call__(self, element):
        if not self.source.member(element):
            raise DomainViolation(f"{element!r} is not in the domain {self.source.name}")
        return self.func(element)

    @classmethod
    def identity(cls, order: CodedOrder) -> "OrderEmbedding":
        return cls(order, order, lambda e: e)

    @classmethod
    def from_finite_map(cls, f: FiniteOrderMap) -> "OrderEmbedding":
        return cls(CanonicalOrder(f.source_size), CanonicalOrder(f.target_size), f.images.__getitem__)

    def lift_top(self, element):
        """f^T: fixes TOP, acts as f elsewhere."""
        return TOP if element is TOP else self(element)


@dataclass(frozen=True)
class FinSubset:
    elements: FrozenSet[Hashable]
    ambient: CodedOrder

    @classmethod
    def of(cls, ambient: CodedOrder, elements: Iterable[Hashable]) -> "FinSubset":
        return cls(frozenset(elements), ambient)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def increasing_enumeration(a: FinSubset) -> list:
    for element in a.elements:
        if not a.ambient.member(element):
            raise AmbientComparisonUndefined(f"{element!r} is not a member of {a.ambient.name}")
    return a.ambient.sorted(a.elements)


def induced_finite_map(a: FinSubset, b: FinSubset) -> FiniteOrderMap:
    if not a.elements <= b.elements:
        missing = sorted(map(repr, a.elements - b.elements))
        raise NotASubset(f"elements {missing} are not in the larger set")
    en_b = increasing_enumeration(b)
    position = {x: i for i, x in enumerate(en_b)}
    en_a = increasing_enumeration(a)
    return FiniteOrderMap(len(en_a), len(en_b), tuple(position[x] for x in en_a))


def finite_image(f: OrderEmbedding, a: FinSubset) -> FinSubset:
    return FinSubset(frozenset(f(x) for x in a.elements), f.target)


def check_induced_composition(order: CodedOrder, c: Sequence) -> list:
    """Witnesses (a, b) with |i_b^c| o |i_a^b| != |i_a^c| over all a <= b <= c."""
    failures = []
    whole = FinSubset.of(order, c)
    subsets = [
        frozenset(s) for k in range(len(c) + 1) for s in itertools.combinations(c, k)
    ]
    for b in subsets:
        fb = FinSubset(b, order)
        b_to_c = induced_finite_map(fb, whole)
        for a in subsets:
            if a <= b:
                fa = FinSubset(a, order)
                if b_to_c.compose(induced_finite_map(fa, fb)) != induced_finite_map(fa, whole):
                    failures.append((sorted(a), sorted(b)))
    return failures


def order_from_json(data: Dict[str, Any]) -> CodedOrder:
    if not isinstance(data, dict):
        raise ParseError("order description must be a JSON object")
    try:
        if "size" in data:
            return CanonicalOrder(int(data["size"]))
        if "codes" in data:
            return ExplicitOrder([int(c) for c in data["codes"]], data.get("less_pairs", []))
    except ParseError:
        raise
    except (TypeError, ValueError) as e:
        raise ParseError(f"malformed order description {data}: {e}") from e
    if data.get("name") == "N":
        return NaturalOrder()
    raise ParseError(f"unrecognised order description {data}")


def encode_sequence(order: CodedOrder, elements: Sequence) -> int:
    return seq(order.encode(e) for e in elements)


def decode_sequence(order: CodedOrder, code: int) -> tuple:
    return tuple(order.decode(c) for c in unseq(code))
