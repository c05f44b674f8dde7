"""The embedding j of Fix(T) into an arbitrary fixed point (X, xi_X)."""
from typing import Any, Dict, Iterable, Optional, Sequence

from src.dilators.core import DElement, FixedPointWitness, PraeDilator
from src.errors import DilatorForgeError, InvalidWitness
from src.fixpoint.terms import FixTerm, fix_order, fix_system
from src.utils.log_utils import get_logger
from src.utils.reporting import ReportBuilder, SuiteReport

logger = get_logger("Fix")


def _apply_witness(W: FixedPointWitness, d: DElement):
    try:
        value = W.xi(d)
    except DilatorForgeError as e:
        raise InvalidWitness(f"{W.name} rejected {d!r}: {e}") from e
    if not W.order.member(value):
        raise InvalidWitness(f"{W.name} left its order on {d!r}")
    return value


def fix_embed(
    T: PraeDilator,
    W: FixedPointWitness,
    term: FixTerm,
    memo: Optional[Dict[FixTerm, Any]] = None,
    spot_checks: bool = True,
):
    """j(xi<a, sigma>) = xi_X(<j[a], sigma>).

    With ``spot_checks`` the images of the children must come out strictly
    increasing in X, as they would under an embedding.
    """
    system = fix_system(T)
    system.require(term)
    memo = {} if memo is None else memo

    def j(t: FixTerm):
        if t in memo:
            return memo[t]
        images = [j(c) for c in t.children]
        if spot_checks:
            for a, b in zip(images, images[1:]):
                if not W.order.less(a, b):
                    raise InvalidWitness(f"{W.name} does not keep the children of {t!r} apart")
        memo[t] = _apply_witness(W, DElement(frozenset(images), t.sigma))
        return memo[t]

    return j(term)


def check_morphism(T: PraeDilator, W: FixedPointWitness, terms: Sequence[FixTerm]) -> SuiteReport:
    """j o xi_T = xi_X o D^T(j), uniqueness of j, and order preservation on ``terms``."""
    system = fix_system(T)
    report = ReportBuilder(f"morphism:{T.name}->{W.name}")
    logger.info(f"Checking the embedding of Fix({T.name}) into {W.name} on {len(terms)} terms")
    forward: Dict[FixTerm, Any] = {}
    backward: Dict[FixTerm, Any] = {}
    for t in terms:
        fix_embed(T, W, t, forward)
    for t in reversed(terms):
        fix_embed(T, W, t, backward)

    for t in terms:
        d = system.xi_invert(t)
        mapped = DElement(frozenset(forward[s] for s in d.support), d.sigma)
        report.check(forward[t] == W.xi(mapped), "morphism-identity", {"term": t})
        report.check(forward[t] == backward[t], "morphism-uniqueness", {"term": t})

    ordered = system.sorted(terms)
    for i, s in enumerate(ordered):
        for t in ordered[i + 1:]:
            report.check(W.order.less(forward[s], forward[t]), "embedding-order", {"pair": [s, t]})
    return report.finish(dilator=T.name, witness=W.name, terms=len(terms))


def fix_witness(T: PraeDilator) -> FixedPointWitness:
    """The initial fixed point (Fix(T), xi_T)."""
    return FixedPointWitness(order=fix_order(T), xi=fix_system(T).xi_apply, name=f"Fix({T.name})")


def embedding_is_identity(T: PraeDilator, terms: Iterable[FixTerm]) -> bool:
    """With W = (Fix(T), xi_T), j fixes every term."""
    W = fix_witness(T)
    memo: Dict[FixTerm, Any] = {}
    return all(fix_embed(T, W, t, memo) == t for t in terms)
