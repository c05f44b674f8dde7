"""N-trees, tree families and Kleene-Brouwer orders."""
import itertools
import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from src.errors import EntryNotInOrder, ParseError
from src.utils.coding import seq, unseq
from src.utils.log_utils import get_logger
from src.utils.orders import CodedOrder, NaturalOrder, Ordering

logger = get_logger("KB")

Sequence_ = Tuple[int, ...]


class Tree(ABC):
    name = "tree"

    @abstractmethod
    def member(self, s: Sequence_) -> bool:
        ...

    def children(self, s: Sequence_, width: int) -> List[Sequence_]:
        return [s + (x,) for x in range(width) if self.member(s + (x,))]

    def explore(self, depth: int, width: int) -> List[Sequence_]:
        """Members with entries < width and length <= depth, in DFS order."""
        if not self.member(()):
            return []
        nodes, stack = [], [()]
        while stack:
            s = stack.pop()
            nodes.append(s)
            if len(s) < depth:
                stack.extend(reversed(self.children(s, width)))
        return nodes

    def to_json(self) -> Any:
        return {"name": self.name}


class ExplicitTree(Tree):
    def __init__(self, sequences: Iterable[Sequence[int]], name: str = "explicit"):
        given = {tuple(int(x) for x in s) for s in sequences}
        closed = set(given)
        for s in given:
            closed.update(s[:i] for i in range(len(s)))
        if closed != given:
            logger.warning(f"Tree '{name}' was not prefix-closed; added {len(closed - given)} prefixes")
        self.listing: FrozenSet[Sequence_] = frozenset(closed)
        self.name = name

    def member(self, s: Sequence_) -> bool:
        return tuple(s) in self.listing

    def height(self) -> int:
        return max((len(s) for s in self.listing), default=-1)

    def width(self) -> int:
        return max((x + 1 for s in self.listing for x in s), default=0)

    def to_json(self) -> Any:
        return [list(s) for s in sorted(self.listing, key=lambda s: (len(s), s))]


class DecreasingTree(Tree):
    """Strictly decreasing sequences with entries below ``n``."""

    def __init__(self, n: int):
        self.n = n
        self.name = f"DEC_{n}"

    def member(self, s: Sequence_) -> bool:
        return all(0 <= x < self.n for x in s) and all(b < a for a, b in zip(s, s[1:]))


class ZerosTree(Tree):
    name = "zeros"

    def member(self, s: Sequence_) -> bool:
        return all(x == 0 for x in s)


class TreeFamily(ABC):
    name = "family"

    @abstractmethod
    def at(self, n: int) -> Tree:
        ...

    def to_json(self) -> Any:
        return {"kind": "builtin", "name": self.name}

    @property
    def cache_key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class DecFamily(TreeFamily):
    name = "DEC"

    def at(self, n: int) -> Tree:
        return DecreasingTree(n)


BAD_SMALL = ExplicitTree([(), (0,), (1,)], name="BAD_small")


class BadFamily(TreeFamily):
    """Finite trees at 0 and 1, the zeros tree from 2 on: not progressive at 1."""

    name = "BAD"

    def at(self, n: int) -> Tree:
        return BAD_SMALL if n <= 1 else ZerosTree()


class ExplicitFamily(TreeFamily):
    """Listed fibers; indices past the list are empty trees."""

    def __init__(self, fibers: Sequence[ExplicitTree], name: str = "explicit"):
        self.fibers = list(fibers)
        self.name = name

    def at(self, n: int) -> Tree:
        if n < len(self.fibers):
            return self.fibers[n]
        return ExplicitTree([], name=f"empty_{n}")

    def to_json(self) -> Any:
        return {"kind": "explicit", "fibers": [f.to_json() for f in self.fibers]}


BUILTIN_FAMILIES = {"DEC": DecFamily, "BAD": BadFamily}


def family_from_json(data: Any) -> TreeFamily:
    if not isinstance(data, dict) or not data:
        raise ParseError("tree family must be a non-empty JSON object")
    kind = data.get("kind")
    if kind == "builtin":
        name = data.get("name")
        if name not in BUILTIN_FAMILIES:
            raise ParseError(f"unknown builtin family '{name}'")
        return BUILTIN_FAMILIES[name]()
    if kind == "explicit":
        fibers = data.get("fibers")
        if not isinstance(fibers, list) or not fibers:
            raise ParseError("explicit family needs a non-empty 'fibers' list")
        try:
            trees = [ExplicitTree(fiber, name=f"fiber_{i}") for i, fiber in enumerate(fibers)]
        except (TypeError, ValueError) as e:
            raise ParseError(f"malformed fiber: {e}") from e
        return ExplicitFamily(trees)
    raise ParseError(f"unknown family kind '{kind}'")


def load_family(path: Union[str, Path]) -> TreeFamily:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read family file {path}: {e}") from e
    if not text.strip():
        raise ParseError(f"family file {path} is empty")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"family file {path} is not valid JSON: {e}") from e
    return family_from_json(data)


def kb_compare(X: CodedOrder, s: Sequence, t: Sequence) -> Ordering:
    for x in itertools.chain(s, t):
        if not X.member(x):
            raise EntryNotInOrder(f"{x!r} is not an element of {X.name}")
    for a, b in zip(s, t):
        step = X.compare(a, b)
        if step is not Ordering.EQUAL:
            return step
    if len(s) == len(t):
        return Ordering.EQUAL
    return Ordering.LESS if len(s) > len(t) else Ordering.GREATER


class KbOrder(CodedOrder):
    """The Kleene-Brouwer order on the members of a tree; codes are sequence codes."""

    def __init__(self, tree: Tree, entries: Optional[CodedOrder] = None):
        self.tree = tree
        self.entries = entries or NaturalOrder()
        self.name = f"KB({tree.name})"

    def member(self, element) -> bool:
        return isinstance(element, tuple) and self.tree.member(element)

    def compare(self, a, b) -> Ordering:
        return kb_compare(self.entries, a, b)

    def less(self, a, b) -> bool:
        return self.compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        return seq(self.entries.encode(x) for x in element)

    def decode(self, code: int):
        return tuple(self.entries.decode(c) for c in unseq(code))


class KbWitness(BaseModel):
    verdict: Literal["well_founded_to_depth", "branch_prefix"]
    evidence: Any
    explored: int = 0


class ProgressiveVerdict(BaseModel):
    status: Literal["consistent", "refuted"]
    n: int
    witness: Optional[Dict[str, Any]] = None


def _find_path(tree: Tree, s: Sequence_, depth: int, width: int) -> Optional[Sequence_]:
    if len(s) == depth:
        return s
    for child in tree.children(s, width):
        found = _find_path(tree, child, depth, width)
        if found is not None:
            return found
    return None


def bounded_branch_search(tree: Tree, depth: int, width: int) -> KbWitness:
    nodes = tree.explore(depth, width)
    if nodes:
        prefix = _find_path(tree, (), depth, width)
        if prefix is not None:
            return KbWitness(verdict="branch_prefix", evidence=list(prefix), explored=len(nodes))

    ranks: Dict[Sequence_, int] = {}
    for s in sorted(nodes, key=len, reverse=True):
        ranks[s] = max((ranks[c] + 1 for c in tree.children(s, width) if c in ranks), default=0)
    table = {json.dumps(list(s)): r for s, r in sorted(ranks.items(), key=lambda item: (len(item[0]), item[0]))}
    return KbWitness(verdict="well_founded_to_depth", evidence=table, explored=len(nodes))


def root_rank(witness: KbWitness) -> Optional[int]:
    if witness.verdict != "well_founded_to_depth":
        return None
    return witness.evidence.get("[]")


def progressive_at_bounded(family: TreeFamily, n: int, depth: int, width: int) -> ProgressiveVerdict:
    """Bounded evidence against progressiveness at ``n``.

    T_n must come out well-founded below ``depth``, so its explored paths are
    shorter than ``depth``. T_{n+1} is then searched one level deeper: a
    branch prefix of length ``depth + 1`` refutes.
    """
    lower = bounded_branch_search(family.at(n), depth, width)
    if lower.verdict != "well_founded_to_depth":
        return ProgressiveVerdict(status="consistent", n=n)
    upper = bounded_branch_search(family.at(n + 1), depth + 1, width)
    if upper.verdict == "branch_prefix":
        logger.info(f"{family.name} is not progressive at {n}: branch {upper.evidence} in fiber {n + 1}")
        return ProgressiveVerdict(
            status="refuted",
            n=n,
            witness={"fiber": n + 1, "branch_prefix": upper.evidence, "lower_root_rank": root_rank(lower)},
        )
    return ProgressiveVerdict(status="consistent", n=n)


def _longest_chain(relation: np.ndarray) -> int:
    """Number of elements in the longest chain of a strict relation given as a boolean matrix."""
    k = relation.shape[0]
    if k == 0:
        return 0
    step = relation.astype(np.int64)
    reach = step.copy()
    length = 1
    while reach.any():
        length += 1
        if length > k:
            return k + 1
        reach = (reach @ step > 0).astype(np.int64)
    return length


def wf_characterizations(tree: Tree, depth: int, width: int) -> Dict[str, bool]:
    """Three bounded well-foundedness verdicts on the explored region of ``tree``.

    ``no_branch``: no path of length ``depth``. ``end_extension``: the proper
    end-extension relation has no chain of ``depth + 1`` nodes.
    ``kleene_brouwer``: the KB order on the region is a strict linear order
    and has no descending run ``s_0 >KB s_1 >KB ... >KB s_depth`` that goes
    down one level per step.
    """
    nodes = tree.explore(depth, width)
    k = len(nodes)
    extends = np.zeros((k, k), dtype=bool)
    kb_less = np.zeros((k, k), dtype=bool)
    naturals = NaturalOrder()
    for i, s in enumerate(nodes):
        for j, t in enumerate(nodes):
            extends[i, j] = len(t) > len(s) and t[: len(s)] == s
            kb_less[i, j] = kb_compare(naturals, s, t) is Ordering.LESS

    no_branch = bounded_branch_search(tree, depth, width).verdict == "well_founded_to_depth"
    end_extension = _longest_chain(extends) <= depth

    lengths = np.array([len(s) for s in nodes], dtype=np.int64)
    linear = not np.any(np.diag(kb_less)) and bool(np.all(kb_less | kb_less.T | np.eye(k, dtype=bool)))
    next_level = lengths[None, :] == lengths[:, None] + 1
    descends = kb_less.T & next_level
    return {
        "no_branch": no_branch,
        "end_extension": end_extension,
        "kleene_brouwer": linear and _longest_chain(descends) <= depth,
    }


def enumerate_finite_trees(entries: int, height: int) -> List[ExplicitTree]:
    """Every prefix-closed tree with entries < ``entries`` and sequences of length <= ``height``."""

    def subtrees(level: int) -> List[FrozenSet[Sequence_]]:
        # Nonempty subtrees rooted at (), with sequences of length <= level.
        if level == 0:
            return [frozenset({()})]
        below = [frozenset()] + subtrees(level - 1)
        result = []
        for choice in itertools.product(below, repeat=entries):
            nodes = {()}
            for x, sub in enumerate(choice):
                nodes.update((x,) + s for s in sub)
            result.append(frozenset(nodes))
        return result

    trees = [ExplicitTree([], name="empty")]
    trees.extend(ExplicitTree(nodes, name=f"t{i}") for i, nodes in enumerate(subtrees(height)))
    return trees
