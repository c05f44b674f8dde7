"""From a fixed point of F[T] to an embedding J of sum_n T_n^top into it.

J is computed by course-of-values recursion over pair codes j = pair(n, c),
where c = 0 stands for top and c = seq(s) + 1 for a sequence s of T_n:

  J<0, s>       = xi<bottom, s>
  J<n+1, top>   = xi<J<n, top>, inf, star>
  J<n+1, s>     = xi<J<n, top>, n, <<J_n(0), s_0>, ..., <J_n(k-1), s_{k-1}>>>

with J_n(i) = J<n, unseq(i)> when unseq(i) lies in T_n and top otherwise.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional

from src.constructions.f import INF, FDilator, FLeft, FRight, f_coded_iso
from src.dilators.core import FixedPointWitness
from src.errors import CodingViolation
from src.fixpoint.embedding import fix_witness
from src.fixpoint.terms import FixSystem, FixTerm
from src.trees.kb import KbOrder, TreeFamily, progressive_at_bounded
from src.utils.coding import pair, seq, unpair, unseq
from src.utils.log_utils import get_logger
from src.utils.orders import STAR, TOP, DependentSum, NaturalOrder, Ordering, TopExtension
from src.utils.reporting import ReportBuilder, SuiteReport
from src.utils.serialization import to_jsonable

logger = get_logger("Reduce")


def sigma_code(sigma) -> int:
    return 0 if sigma is TOP else seq(sigma) + 1


def sigma_tree_order(family: TreeFamily) -> DependentSum:
    """sum_n T_n^top, index first; pair codes agree with the J table's."""
    return DependentSum(
        NaturalOrder(),
        lambda n: TopExtension(KbOrder(family.at(n))),
        name=f"sum(T_n+top)[{family.name}]",
    )


class JEntry(NamedTuple):
    pair_code: int
    n: int
    sigma: Any
    image: Any


@dataclass
class JTable:
    family: str
    code_bound: int
    witness: str
    entries: Dict[int, JEntry] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def image(self, n: int, sigma) -> Any:
        return self.entries[pair(n, sigma_code(sigma))].image

    def to_json(self, system: Optional[FixSystem] = None) -> dict:
        """Rows plus, for term images, an interned term list that rows point into."""
        rows = []
        terms: List[dict] = []
        index: Dict[FixTerm, int] = {}

        def intern(term: FixTerm) -> int:
            if term not in index:
                children = [intern(c) for c in term.children]
                k = len(term.children)
                code = system.T.order_at(k).encode(term.sigma) if system else to_jsonable(term.sigma)
                index[term] = len(terms)
                terms.append({"children": children, "sigma": code})
            return index[term]

        for code in sorted(self.entries):
            entry = self.entries[code]
            image = intern(entry.image) if isinstance(entry.image, FixTerm) else to_jsonable(entry.image)
            rows.append(
                {
                    "pair_code": entry.pair_code,
                    "n": entry.n,
                    "sigma_code": sigma_code(entry.sigma),
                    "image_code": image,
                }
            )
        return {
            "family": self.family,
            "code_bound": self.code_bound,
            "witness": self.witness,
            "entries": rows,
            "terms": terms,
        }


def canonical_witness(family: TreeFamily) -> FixedPointWitness:
    """Fix(F[T]) with xi_F; the only fixed point we can build outright."""
    return fix_witness(FDilator(family))


def build_J(family: TreeFamily, witness: FixedPointWitness, code_bound: int) -> JTable:
    X = witness.order
    table = JTable(family=family.name, code_bound=code_bound, witness=witness.name)

    def xi(element):
        return witness.xi(f_coded_iso(family, X, "to_coded", element))

    def lookup(code: int, j: int):
        if code >= j:
            raise CodingViolation(f"J at code {j} needs code {code}, which is not smaller")
        if code not in table.entries:
            raise CodingViolation(f"J at code {j} needs code {code}, which codes nothing")
        return table.entries[code].image

    for j in range(code_bound + 1):
        n, c = unpair(j)
        sigma = TOP if c == 0 else unseq(c - 1)
        if sigma is not TOP and not family.at(n).member(sigma):
            continue
        if n == 0:
            image = xi(FLeft(sigma))
        else:
            m = n - 1
            top = lookup(pair(m, 0), j)
            if sigma is TOP:
                image = xi(FRight(top, INF, STAR))
            else:
                lower = family.at(m)
                entries = tuple(
                    (lookup(pair(m, i + 1), j) if lower.member(unseq(i)) else TOP, s_i)
                    for i, s_i in enumerate(sigma)
                )
                image = xi(FRight(top, m, entries))
        table.entries[j] = JEntry(j, n, sigma, image)
        logger.debug(f"J<{n}, {to_jsonable(sigma)}> computed at code {j}")

    logger.info(f"Built J for {family.name}: {len(table)} entries up to code {code_bound}")
    return table


def verify_J(family: TreeFamily, witness: FixedPointWitness, table: JTable) -> SuiteReport:
    """Images lie in X, J preserves order, and J<n, s> < J<n, top>."""
    X = witness.order
    domain = sigma_tree_order(family)
    report = ReportBuilder(f"verify-J:{family.name}")
    entries = [table.entries[code] for code in sorted(table.entries)]

    for e in entries:
        report.check(domain.encode((e.n, e.sigma)) == e.pair_code, "domain-coding", {"pair_code": e.pair_code})
        report.check(X.member(e.image), "clause-i-member", {"pair_code": e.pair_code})

    for a_index, a in enumerate(entries):
        for b in entries[a_index + 1:]:
            expected = domain.compare((a.n, a.sigma), (b.n, b.sigma))
            actual = X.compare(a.image, b.image)
            report.check(
                expected is actual,
                "clause-ii-order",
                {"pair_codes": [a.pair_code, b.pair_code], "domain": expected, "images": actual},
            )

    for e in entries:
        if e.sigma is TOP:
            continue
        top = table.entries.get(pair(e.n, 0))
        if top is not None:
            report.check(
                X.compare(e.image, top.image) is Ordering.LESS,
                "clause-iii-below-top",
                {"pair_code": e.pair_code, "top_code": top.pair_code},
            )
    return report.finish(family=family.name, entries=len(entries), code_bound=table.code_bound)


class ReduceResult(NamedTuple):
    table: JTable
    report: SuiteReport
    warnings: List[str]
    system: Optional[FixSystem] = None

    def to_json(self) -> dict:
        return {
            "table": self.table.to_json(self.system),
            "verdicts": self.report.model_dump(exclude={"elapsed"}),
            "warnings": self.warnings,
        }


def reduce_pipeline(family: TreeFamily, code_bound: int, depth: int = 6, width: int = 4) -> ReduceResult:
    """F[T] -> Fix(F[T]) -> J, with the clause checks and progressiveness warnings."""
    warnings = []
    top_index = max(unpair(j)[0] for j in range(code_bound + 1))
    for n in range(top_index + 1):
        verdict = progressive_at_bounded(family, n, depth, width)
        if verdict.status == "refuted":
            message = f"{family.name} is not progressive at {n}: {verdict.witness}"
            logger.warning(message)
            warnings.append(message)
    witness = canonical_witness(family)
    table = build_J(family, witness, code_bound)
    report = verify_J(family, witness, table)
    return ReduceResult(table=table, report=report, warnings=warnings, system=getattr(witness.order, "system", None))
