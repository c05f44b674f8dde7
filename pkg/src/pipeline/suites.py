"""Named end-to-end suites. Each takes a Config and returns a SuiteReport."""
import functools
from typing import Callable, Dict, List

import numpy as np

from src.config import Config
from src.constructions.f import FDilator, FOrder, f_coded_iso
from src.constructions.h import HDilator, HOrder, HTree, h_coded_iso, h_member, refutation_branch
from src.constructions.reduction import reduce_pipeline
from src.dilators.core import (
    DElement,
    DExtension,
    PraeDilator,
    evaluate_class,
    invert_class,
    restriction_identity,
    validate_normal,
    validate_prae_dilator,
)
from src.dilators.registry import get_dilator
from src.dilators.zoo import CnfOrder, OmegaDilator, TopDilator
from src.errors import UnknownSuite
from src.fixpoint.embedding import check_morphism, embedding_is_identity, fix_embed
from src.fixpoint.enumeration import calibrate_l_bound, enumerate_fix, terms_by_decoding, terms_up_to_goedel
from src.fixpoint.eps0 import eps0_compare, eps0_power_witness, eps0_witness, unfold_omega
from src.fixpoint.stages import check_stages
from src.fixpoint.terms import FixTerm, fix_order, fix_system
from src.pipeline.checks import check_linear_order, check_wf_bounded
from src.trees.kb import (
    BadFamily,
    DecFamily,
    TreeFamily,
    ZerosTree,
    bounded_branch_search,
    enumerate_finite_trees,
    progressive_at_bounded,
    wf_characterizations,
)
from src.utils.coding import check_length_bound, check_round_trips, check_top_monotonicity
from src.utils.log_utils import get_logger
from src.utils.orders import TOP, CanonicalOrder, CodedOrder, NaturalOrder, TopExtension, random_finite_order
from src.utils.reporting import ReportBuilder, SuiteReport

logger = get_logger("Suite")

SuiteFn = Callable[[Config], SuiteReport]
SUITES: Dict[str, SuiteFn] = {}

BRANCH_DEPTH = 20
# zoo-laws never runs below these bounds.
ZOO_ARITY_BOUND = 5
ZOO_CODE_BOUND = 2000
ISO_ORDER_SIZES = range(5)


def suite(name: str):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return register


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(name: str, config: Config) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite '{name}'; registered: {', '.join(SUITES)}")
    logger.info(f"Running suite '{name}' (seed {config.seed})")
    report = SUITES[name](config)
    logger.info(f"Suite '{name}': {report.checks_run} checks, {report.violations_total} violations")
    return report


@functools.lru_cache(maxsize=None)
def _omega() -> OmegaDilator:
    return OmegaDilator()


@functools.lru_cache(maxsize=None)
def _calibrated(T: PraeDilator) -> int:
    return calibrate_l_bound(T)


def omega_terms(config: Config) -> List[FixTerm]:
    T = _omega()
    return enumerate_fix(T, config.l_bound or _calibrated(T))


@suite("zoo-laws")
def zoo_laws(config: Config) -> SuiteReport:
    report = ReportBuilder("zoo-laws", seed=config.seed)
    arity = max(config.arity_bound, ZOO_ARITY_BOUND)
    codes = max(config.code_bound, ZOO_CODE_BOUND)
    for name in ("omega", "top", "const"):
        T = get_dilator(name)
        report.absorb(validate_prae_dilator(T, arity, codes), prefix=name)
    report.absorb(validate_normal(_omega(), arity, codes), prefix="omega-normal")
    for candidate in TopDilator.candidates():
        verdict = validate_normal(candidate, arity, codes)
        report.check(not verdict.passed, "top-rejects-normal-structure", {"mu1": candidate.mu1})
    X = CanonicalOrder(3)
    for x in range(3):
        report.absorb(restriction_identity(_omega(), X, x, config.code_bound), prefix=f"omega-restriction-{x}")
    return report.finish(arity_bound=arity, code_bound=codes)


@suite("d-linearity")
def d_linearity(config: Config) -> SuiteReport:
    report = ReportBuilder("d-linearity", seed=config.seed)
    rng = np.random.default_rng(config.seed)
    family = config.tree_family()
    dilators = [_omega()] + [HDilator(family, n) for n in range(4)] + [FDilator(family)]
    orders = [CanonicalOrder(k) for k in range(6)]
    orders += [random_finite_order(int(rng.integers(1, 6)), rng) for _ in range(config.random_orders)]
    for T in dilators:
        for X in orders:
            verdict = check_linear_order(DExtension(T, X), config.code_bound)
            report.absorb(verdict, prefix=f"{T.name}/{X.name}")
    return report.finish(dilators=[T.name for T in dilators], orders=len(orders), code_bound=config.code_bound)


def _round_trips(report: ReportBuilder, label: str, order, coded, to_coded, from_coded, code_bound: int) -> None:
    elements = order.enumerate(code_bound)
    images = []
    for e in elements:
        report.check(order.member(e), "member", {"order": label, "element": e})
        d = to_coded(e)
        images.append(d)
        report.check(from_coded(d) == e, "round-trip", {"order": label, "element": e})
    for i, a in enumerate(elements):
        for j in range(i + 1, len(elements)):
            b = elements[j]
            report.check(
                order.compare(a, b) is coded.compare(images[i], images[j]),
                "order-preservation",
                {"order": label, "pair": [a, b]},
            )


def check_h_instance(family: TreeFamily, n: int, X: CodedOrder, code_bound: int) -> SuiteReport:
    """Membership, linearity and the coded isomorphism for H[T, n](X)."""
    T = HDilator(family, n)
    report = ReportBuilder(f"h-check:{T.name}/{X.name}")
    order = HOrder(family, n, X)
    report.absorb(check_linear_order(order, code_bound), prefix="linear")
    _round_trips(
        report,
        T.name,
        order,
        DExtension(T, X),
        lambda e: h_coded_iso(family, n, X, "to_coded", e),
        lambda d: h_coded_iso(family, n, X, "from_coded", d),
        code_bound,
    )
    return report.finish(family=family.name, n=n, order=X.name, code_bound=code_bound)


def check_f_instance(family: TreeFamily, X: CodedOrder, code_bound: int) -> SuiteReport:
    """Membership, linearity and the coded isomorphism for F[T](X)."""
    F = FDilator(family)
    report = ReportBuilder(f"f-check:{F.name}/{X.name}")
    order = FOrder(family, X)
    report.absorb(check_linear_order(order, code_bound), prefix="linear")
    _round_trips(
        report,
        F.name,
        order,
        DExtension(F, X),
        lambda e: f_coded_iso(family, X, "to_coded", e),
        lambda d: f_coded_iso(family, X, "from_coded", d),
        code_bound,
    )
    return report.finish(family=family.name, order=X.name, code_bound=code_bound)


def check_h_well_founded(family: TreeFamily, n: int, X: CodedOrder, depths: List[int], width: int) -> SuiteReport:
    """Bounded branch search on H[T, n](X) read as an N-tree of entry codes."""
    tree = HTree(family, n, X)
    report = ReportBuilder(f"h-wf:{tree.name}")
    for depth in depths:
        witness = bounded_branch_search(tree, depth, width)
        report.check(
            witness.verdict == "well_founded_to_depth",
            "well-founded-to-depth",
            {"depth": depth, "width": width, "evidence": witness.evidence},
        )
    return report.finish(family=family.name, n=n, order=X.name, depths=depths, width=width)


@suite("iso-round-trips")
def iso_round_trips(config: Config) -> SuiteReport:
    report = ReportBuilder("iso-round-trips", seed=config.seed)
    for k in ISO_ORDER_SIZES:
        X = CanonicalOrder(k)
        for family in (DecFamily(), BadFamily()):
            for n in range(3):
                report.absorb(check_h_instance(family, n, X, config.code_bound), prefix=f"H[{family.name},{n}]/{k}")
            report.absorb(check_f_instance(family, X, config.code_bound), prefix=f"F[{family.name}]/{k}")

    # omega^(omega + 1), with top standing for omega itself.
    omega, W = _omega(), TopExtension(NaturalOrder())
    cnf = CnfOrder(W)
    first = evaluate_class(omega, W, DElement.of({1, TOP}, (1, 0)))
    second = evaluate_class(omega, W, DElement.of({1, 5, TOP}, (2, 0)))
    expected = (TOP, 1)
    report.check(cnf.encode(first) == cnf.encode(expected), "evaluate-class", {"value": first})
    report.check(cnf.encode(second) == cnf.encode(expected), "evaluate-class", {"value": second})
    inverse = invert_class(omega, W, expected, config.code_bound)
    report.check(inverse == DElement.of({1, TOP}, (1, 0)), "invert-class", {"found": inverse})
    return report.finish(code_bound=config.code_bound, orders=list(ISO_ORDER_SIZES))


@suite("fix-linearity")
def fix_linearity(config: Config) -> SuiteReport:
    report = ReportBuilder("fix-linearity", seed=config.seed)
    T = _omega()
    system = fix_system(T)
    terms = omega_terms(config)
    report.absorb(check_linear_order(fix_order(T), 0, elements=terms), prefix="linear")
    for t in terms:
        report.check(system.xi_apply(system.xi_invert(t)) == t, "xi-round-trip", {"term": t})
    return report.finish(terms=len(terms), l_bound=config.l_bound or _calibrated(T))


@suite("fix-omega-oracle")
def fix_omega_oracle(config: Config) -> SuiteReport:
    report = ReportBuilder("fix-omega-oracle", seed=config.seed)
    T = _omega()
    system = fix_system(T)
    by_goedel = terms_up_to_goedel(system, config.code_bound)
    report.check(
        by_goedel == terms_by_decoding(system, config.code_bound),
        "enumeration-completeness",
        {"goedel_bound": config.code_bound},
    )
    pool = {t: None for t in by_goedel + omega_terms(config) if system.height(t) <= 2}
    terms = list(pool)
    unfolded = {t: unfold_omega(t) for t in terms}
    witness = eps0_witness()
    memo: Dict[FixTerm, tuple] = {}
    for t in terms:
        report.check(fix_embed(T, witness, t, memo) == unfolded[t], "embedding-unfolds", {"term": t})
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            report.check(
                system.compare(s, t) is eps0_compare(unfolded[s], unfolded[t]),
                "oracle-agreement",
                {"pair": [s, t]},
            )
    return report.finish(terms=len(terms), goedel_bound=config.code_bound)


@suite("stage-structure")
def stage_structure(config: Config) -> SuiteReport:
    report = ReportBuilder("stage-structure", seed=config.seed)
    report.absorb(check_stages(_omega(), omega_terms(config), normal=True), prefix="omega")
    return report.finish()


def top_chain(T: PraeDilator, length: int) -> List[FixTerm]:
    """xi<{}, top> > xi<{t_0}, 0> > xi<{t_1}, 0> > ... in Fix(top)."""
    system = fix_system(T)
    chain = [system.make((), TOP)]
    while len(chain) < length:
        chain.append(system.make((chain[-1],), 0))
    return chain


@suite("fix-top-chain")
def fix_top_chain(config: Config) -> SuiteReport:
    report = ReportBuilder("fix-top-chain", seed=config.seed)
    T = get_dilator("top")
    system = fix_system(T)
    chain = top_chain(T, max(config.chain_len, 10))
    for t in chain:
        report.check(system.validate(t), "chain-term-valid", {"height": system.height(t)})
    report.absorb(check_wf_bounded(fix_order(T), 0, len(chain), candidates=chain), prefix="wf")
    for candidate in TopDilator.candidates():
        verdict = validate_normal(candidate, config.arity_bound, config.code_bound)
        report.check(not verdict.passed, "top-rejects-normal-structure", {"mu1": candidate.mu1})
    return report.finish(chain_len=len(chain))


@suite("reduce-dec")
def reduce_dec(config: Config) -> SuiteReport:
    report = ReportBuilder("reduce-dec", seed=config.seed)
    result = reduce_pipeline(DecFamily(), config.code_bound, config.depth, config.width)
    report.absorb(result.report, prefix="J")
    report.check(not result.warnings, "family-progressive", {"warnings": result.warnings})
    return report.finish(entries=len(result.table), code_bound=config.code_bound)


@suite("prop33-negative")
def branch_refutation(config: Config) -> SuiteReport:
    report = ReportBuilder("prop33-negative", seed=config.seed)
    family = BadFamily()
    length = max(BRANCH_DEPTH, config.chain_len)
    X, prefixes = refutation_branch(family, 1, length, config.width)
    order = HOrder(family, 1, X)
    report.check(len(prefixes) == length + 1, "branch-length", {"prefixes": len(prefixes)})
    for p in prefixes:
        report.check(h_member(family, 1, X, p), "branch-member", {"prefix_length": len(p)})
    for shorter, longer in zip(prefixes, prefixes[1:]):
        report.check(order.less(longer, shorter), "branch-descends", {"prefix_length": len(longer)})
    wf = check_wf_bounded(order, 0, length, candidates=prefixes)
    report.check(not wf.passed, "descending-chain-found", {"longest_descent": wf.details.get("longest_descent")})
    verdict = progressive_at_bounded(family, 1, config.depth, config.width)
    report.check(verdict.status == "refuted", "progressive-refuted", verdict.model_dump())
    return report.finish(family=family.name, n=1, depth=length)


@suite("h-dec-well-founded")
def h_dec_well_founded(config: Config) -> SuiteReport:
    report = ReportBuilder("h-dec-well-founded", seed=config.seed)
    family = DecFamily()
    # Sequences of H[DEC, n](X) have at most n + 1 entries.
    for n in range(3):
        depths = [n + 2, n + 3, n + 4]
        for k in range(5):
            report.absorb(
                check_h_well_founded(family, n, CanonicalOrder(k), depths, 4 * config.width),
                prefix=f"H[DEC,{n}]/{k}",
            )
    return report.finish(family=family.name, orders=list(range(5)))


@suite("kb-equivalence")
def kb_equivalence(config: Config) -> SuiteReport:
    report = ReportBuilder("kb-equivalence", seed=config.seed)
    trees = enumerate_finite_trees(2, 3)
    outcomes = {True: 0, False: 0}
    for tree in trees:
        for depth in range(1, max(tree.height(), 0) + 2):
            verdicts = wf_characterizations(tree, depth, 2)
            agree = len(set(verdicts.values())) == 1
            report.check(agree, "characterizations-agree", {"tree": tree, "depth": depth, **verdicts})
            if agree:
                outcomes[verdicts["no_branch"]] += 1
    report.check(outcomes[True] > 0 and outcomes[False] > 0, "both-outcomes", outcomes)
    zeros = wf_characterizations(ZerosTree(), config.depth, config.width)
    report.check(not any(zeros.values()), "zeros-ill-founded", zeros)
    return report.finish(trees=len(trees), well_founded=outcomes[True], ill_founded=outcomes[False])


@suite("coding-laws")
def coding_laws(config: Config) -> SuiteReport:
    report = ReportBuilder("coding-laws", seed=config.seed)
    bound = config.code_bound
    for n, c in check_top_monotonicity(bound):
        report.fail("top-monotonicity", {"n": n, "c": c})
    for code in check_length_bound(bound):
        report.fail("length-bound", {"code": code})
    for kind, z in check_round_trips(bound):
        report.fail("round-trip", {"kind": kind, "code": z})
    report.checks_run += (bound + 1) ** 2 + 3 * (bound + 1) - report.violations_total
    return report.finish(bound=bound)


@suite("restriction-identity")
def restriction_identities(config: Config) -> SuiteReport:
    report = ReportBuilder("restriction-identity", seed=config.seed)
    for T in (_omega(), FDilator(config.tree_family())):
        X = CanonicalOrder(3)
        for x in range(3):
            report.absorb(restriction_identity(T, X, x, config.code_bound), prefix=f"{T.name}/{x}")
    return report.finish(code_bound=config.code_bound)


@suite("morphism")
def morphism(config: Config) -> SuiteReport:
    report = ReportBuilder("morphism", seed=config.seed)
    T = _omega()
    terms = fix_system(T).sorted(omega_terms(config))
    report.check(embedding_is_identity(T, terms), "identity-on-initial", {"terms": len(terms)})
    for witness in (eps0_witness(), eps0_power_witness()):
        report.absorb(check_morphism(T, witness, terms), prefix=witness.name)
    return report.finish(terms=len(terms))
