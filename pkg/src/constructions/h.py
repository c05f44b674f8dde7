"""The search dilator H[T, n].

H[T, n](X) is the tree of sequences <<x_0, s_0>, ..., <x_{k-1}, s_{k-1}>> with
x_i in X + {top} and s_i natural such that

  (i)  whenever positions i, j < k are sequence codes of elements of T_n with
       i <_KB j, we have x_i < x_j in X + {top};
  (ii) <s_0, ..., s_{k-1}> lies in T_{n+1}.

It is ordered as a Kleene-Brouwer order with respect to the product order on
(X + {top}) x N. If T is progressive at n then H[T, n] preserves
well-foundedness; a branch of T_{n+1} over a well-founded T_n yields a branch
of H[T, n](KB(T_n)).
"""
import itertools
from typing import FrozenSet, Hashable, List, Optional, Sequence, Tuple

from src.dilators.core import DElement, PraeDilator, d_member, evaluate_class, with_cached_orders
from src.errors import DecodeFailure, DomainViolation, NotMember
from src.trees.kb import KbOrder, Tree, TreeFamily, bounded_branch_search, kb_compare
from src.utils.coding import unseq
from src.utils.log_utils import get_logger
from src.utils.orders import (
    TOP,
    CanonicalOrder,
    CodedOrder,
    FinSubset,
    FiniteOrderMap,
    NaturalOrder,
    OrderEmbedding,
    Ordering,
    ProductOrder,
    TopExtension,
    decode_sequence,
    encode_sequence,
)

logger = get_logger("H")

NATURALS = NaturalOrder()


def entry_order(X: CodedOrder) -> ProductOrder:
    return ProductOrder(TopExtension(X), NATURALS)


def _is_pair_sequence(value) -> bool:
    return isinstance(value, tuple) and all(
        isinstance(p, tuple) and len(p) == 2 and isinstance(p[1], int) and p[1] >= 0 for p in value
    )


def h_member(family: TreeFamily, n: int, X: CodedOrder, value) -> bool:
    if not _is_pair_sequence(value):
        return False
    top_x = TopExtension(X)
    if not all(top_x.member(x) for x, _ in value):
        return False
    if not family.at(n + 1).member(tuple(s for _, s in value)):
        return False
    lower = family.at(n)
    positions = [(i, unseq(i)) for i in range(len(value))]
    positions = [(i, s) for i, s in positions if lower.member(s)]
    for (i, si), (j, sj) in itertools.permutations(positions, 2):
        if kb_compare(NATURALS, si, sj) is Ordering.LESS and not top_x.less(value[i][0], value[j][0]):
            return False
    return True


def h_compare(family: TreeFamily, n: int, X: CodedOrder, first, second) -> Ordering:
    for value in (first, second):
        if not h_member(family, n, X, value):
            raise NotMember(f"{value!r} is not in H[{family.name},{n}]({X.name})")
    return kb_compare(entry_order(X), first, second)


def h_supp(value) -> FrozenSet[Hashable]:
    return frozenset(x for x, _ in value if x is not TOP)


def h_lift(func, value) -> tuple:
    return tuple((TOP if x is TOP else func(x), s) for x, s in value)


class HOrder(CodedOrder):
    def __init__(self, family: TreeFamily, n: int, X: CodedOrder):
        self.family = family
        self.n = n
        self.X = X
        self.entries = entry_order(X)
        self.name = f"H[{family.name},{n}]({X.name})"

    def member(self, element) -> bool:
        return h_member(self.family, self.n, self.X, element)

    def compare(self, a, b) -> Ordering:
        return kb_compare(self.entries, a, b)

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        return encode_sequence(self.entries, element)

    def decode(self, code: int):
        return decode_sequence(self.entries, code)


@with_cached_orders
class HDilator(PraeDilator):
    def __init__(self, family: TreeFamily, n: int):
        self.family = family
        self.n = n
        self.name = f"H[{family.name},{n}]"

    @property
    def cache_key(self) -> Hashable:
        return type(self).__name__, self.family.cache_key, self.n

    def order_at(self, m: int) -> CodedOrder:
        return HOrder(self.family, self.n, CanonicalOrder(m))

    def apply(self, f: FiniteOrderMap, sigma):
        return h_lift(f, sigma)

    def supp(self, m: int, sigma) -> FrozenSet[int]:
        return h_supp(sigma)

    def class_order(self, X: CodedOrder) -> CodedOrder:
        return HOrder(self.family, self.n, X)

    def class_apply(self, f: OrderEmbedding, value):
        return h_lift(f, value)

    def class_supp(self, X: CodedOrder, value) -> FrozenSet[Hashable]:
        return h_supp(value)


def h_map_supp(family: TreeFamily, n: int, f: OrderEmbedding, value) -> Tuple[tuple, FinSubset]:
    if not h_member(family, n, f.source, value):
        raise DomainViolation(f"{value!r} is not in H[{family.name},{n}]({f.source.name})")
    return h_lift(f, value), FinSubset(h_supp(value), f.source)


def h_coded_iso(family: TreeFamily, n: int, X: CodedOrder, direction: str, value):
    """``to_coded``: H[n](X) -> D^{H[n]}(X); ``from_coded``: the inverse."""
    dilator = HDilator(family, n)
    if direction == "to_coded":
        if not h_member(family, n, X, value):
            raise NotMember(f"{value!r} is not in {dilator.name}({X.name})")
        support = h_supp(value)
        position = {x: i for i, x in enumerate(X.sorted(support))}
        return DElement(support, h_lift(position.__getitem__, value))
    if direction == "from_coded":
        if not isinstance(value, DElement) or not d_member(dilator, X, value.support, value.sigma):
            raise NotMember(f"{value!r} is not in D^{dilator.name}({X.name})")
        return evaluate_class(dilator, X, value)
    raise DomainViolation(f"unknown direction '{direction}'")


class HTree(Tree):
    """H[T, n](X) read as an N-tree whose entries are codes of pairs."""

    def __init__(self, family: TreeFamily, n: int, X: CodedOrder):
        self.order = HOrder(family, n, X)
        self.name = self.order.name

    def decode_entries(self, s: Sequence[int]) -> Optional[tuple]:
        try:
            return tuple(self.order.entries.decode(c) for c in s)
        except DecodeFailure:
            return None

    def member(self, s) -> bool:
        value = self.decode_entries(s)
        return value is not None and self.order.member(value)


def refutation_branch(family: TreeFamily, n: int, length: int, width: int) -> Tuple[KbOrder, List[tuple]]:
    """Branch prefixes of H[T, n](KB(T_n)) built from a branch of T_{n+1}.

    Position i carries x_i = i (as a sequence) when i codes an element of T_n
    and top otherwise, paired with the i-th entry of the branch.
    """
    lower = family.at(n)
    X = KbOrder(lower)
    branch = bounded_branch_search(family.at(n + 1), length, width)
    if branch.verdict != "branch_prefix":
        logger.info(f"No branch of length {length} in fiber {n + 1}; nothing to build")
        return X, []
    entries = []
    for i, s_i in enumerate(branch.evidence):
        position = unseq(i)
        entries.append((position if lower.member(position) else TOP, s_i))
    return X, [tuple(entries[:k]) for k in range(length + 1)]
