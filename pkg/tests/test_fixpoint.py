import pytest

from src.constructions.f import FDilator
from src.constructions.h import HDilator
from src.dilators.core import DElement
from src.dilators.zoo import ConstantDilator, OmegaDilator
from src.errors import DecodeFailure, DomainViolation, InvalidElement, InvalidTerm, ParseError, StageViolation
from src.fixpoint.embedding import check_morphism, embedding_is_identity, fix_embed, fix_witness
from src.fixpoint.enumeration import enumerate_fix, terms_by_decoding, terms_up_to_goedel
from src.fixpoint.eps0 import ONE, ZERO, eps0_power_witness, eps0_witness, unfold_omega
from src.fixpoint.stages import check_stages, stage_chain, stage_iso
from src.fixpoint.terms import (
    FIX_CACHE_SIZE,
    FixTerm,
    cached_systems,
    fix_compare,
    fix_order,
    fix_system,
    stage_member,
)
from src.pipeline.checks import check_wf_bounded
from src.pipeline.suites import top_chain
from src.trees.kb import DecFamily, family_from_json
from src.utils.orders import STAR, TOP, Ordering


@pytest.fixture
def system(omega):
    return fix_system(omega)


@pytest.fixture
def t0(system):
    return system.make((), ())


@pytest.fixture
def t1(system, t0):
    return system.make((t0,), (0,))


@pytest.fixture
def omega_terms(system):
    return terms_up_to_goedel(system, 500)


def test_constant_has_one_term():
    T = ConstantDilator()
    system = fix_system(T)
    base = system.make((), STAR)
    assert system.validate(base)
    assert not system.validate(system.make((base,), STAR))
    assert enumerate_fix(T, 100) == [base]
    assert system.goedel(base) == 2


def test_empty_fixed_point_when_nothing_at_zero():
    family = family_from_json({"kind": "explicit", "fibers": [[[]]]})
    assert enumerate_fix(HDilator(family, 0), 50) == []


def test_omega_base_terms(system, t0, t1):
    assert system.validate(t0) and system.validate(t1)
    assert system.compare(t0, t1) is Ordering.LESS
    assert system.compare(system.make((t0,), (0, 0)), t1) is Ordering.GREATER
    assert system.goedel(t0) == 2
    assert system.goedel(t1) == 31


def test_invalid_terms_rejected(omega, system, t0):
    bogus = FixTerm((), (0,))
    assert not system.validate(bogus)
    assert not system.validate("xi")
    with pytest.raises(InvalidTerm):
        fix_compare(omega, bogus, t0)


def test_children_must_increase(system, t0, t1):
    assert not system.validate(FixTerm((t1, t0), (1, 0)))
    assert system.validate(system.make((t1, t0), (1, 0)))


def test_metrics(omega, system, t0, t1):
    assert system.metrics(t0) == (2, 2, 0)
    assert system.height(t1) == 1
    both = system.make((t0, t1), (1, 0))
    assert system.height(both) == 2
    assert system.length(t1) >= system.goedel(t1)
    assert stage_member(omega, t0, 1)
    assert not stage_member(omega, t0, 0)
    assert not stage_member(omega, both, 2)


def test_enumeration_matches_decoding(system, omega_terms):
    assert omega_terms == terms_by_decoding(system, 500)
    assert [system.goedel(t) for t in omega_terms] == [2, 31, 40, 61, 166]


def test_no_terms_below_two(system):
    assert terms_up_to_goedel(system, 1) == []


def test_enumerate_fix_is_sorted(omega, system):
    terms = enumerate_fix(omega, 200)
    assert all(system.compare(a, b) is Ordering.LESS for a, b in zip(terms, terms[1:]))
    assert all(system.length(t) <= 200 for t in terms)


def test_decode_inverts_goedel(system, omega_terms):
    for t in omega_terms:
        assert system.decode(system.goedel(t)) == t


@pytest.mark.parametrize("code", [0, 1, 3])
def test_decode_rejects_non_codes(system, code):
    with pytest.raises(DecodeFailure):
        system.decode(code)


def test_term_json(system, t1):
    data = system.term_to_json(t1)
    assert data == {"children": [{"children": [], "sigma": 0}], "sigma": 1}
    assert system.term_from_json(data) == t1
    with pytest.raises(ParseError):
        system.term_from_json({"children": []})
    with pytest.raises(ParseError):
        system.term_from_json({"sigma": "x"})


def test_xi_round_trip(system, omega_terms):
    for t in omega_terms:
        assert system.xi_apply(system.xi_invert(t)) == t


def test_xi_rejects_partial_support(system, t0):
    with pytest.raises(InvalidElement):
        system.xi_apply(DElement.of({t0}, ()))


def test_stage_iso(omega, system, t0, t1):
    assert stage_iso(omega, 0, "forward", DElement.of(set(), ())) == t0
    assert stage_iso(omega, 1, "backward", t1) == DElement.of({t0}, (0,))
    with pytest.raises(StageViolation):
        stage_iso(omega, 0, "forward", DElement.of({t0}, (0,)))
    with pytest.raises(StageViolation):
        stage_iso(omega, 0, "backward", t1)
    with pytest.raises(DomainViolation):
        stage_iso(omega, 0, "sideways", t0)


def test_stages(omega, omega_terms):
    assert stage_chain(omega, omega_terms, 3) == [0, 1, 5, 5]
    report = check_stages(omega, omega_terms)
    assert report.passed, report.laws_violated()


def test_embedding_into_itself(omega, omega_terms):
    assert embedding_is_identity(omega, omega_terms)
    report = check_morphism(omega, fix_witness(omega), omega_terms)
    assert report.passed, report.laws_violated()


def test_embedding_into_eps0(omega, omega_terms, t0, t1):
    W = eps0_witness()
    assert fix_embed(omega, W, t0) == ZERO
    assert fix_embed(omega, W, t1) == ONE
    for t in omega_terms:
        assert fix_embed(omega, W, t) == unfold_omega(t)
    for witness in (W, eps0_power_witness()):
        report = check_morphism(omega, witness, omega_terms)
        assert report.passed, report.laws_violated()


def test_top_chain_descends(top):
    chain = top_chain(top, 10)
    system = fix_system(top)
    assert chain[0] == system.make((), TOP)
    assert all(system.validate(t) for t in chain)
    assert all(system.compare(a, b) is Ordering.GREATER for a, b in zip(chain, chain[1:]))
    report = check_wf_bounded(fix_order(top), 0, len(chain), candidates=chain)
    assert "descending-chain" in report.laws_violated()


def test_fix_system_shared_between_equal_dilators():
    assert fix_system(OmegaDilator()) is fix_system(OmegaDilator())
    dec = family_from_json({"kind": "builtin", "name": "DEC"})
    assert fix_system(HDilator(dec, 1)) is fix_system(HDilator(DecFamily(), 1))
    assert fix_system(HDilator(dec, 1)) is not fix_system(HDilator(dec, 2))


def test_fix_system_separates_explicit_families():
    first = family_from_json({"kind": "explicit", "fibers": [[[]], [[], [0]]]})
    second = family_from_json({"kind": "explicit", "fibers": [[[]], [[], [1]]]})
    assert fix_system(FDilator(first)) is not fix_system(FDilator(second))
    assert fix_system(FDilator(first)) is fix_system(FDilator(family_from_json(first.to_json())))


def test_fix_system_cache_is_bounded():
    for n in range(FIX_CACHE_SIZE + 5):
        fix_system(ConstantDilator(mu1=n))
    assert cached_systems() == FIX_CACHE_SIZE
    assert fix_system(ConstantDilator(mu1=FIX_CACHE_SIZE + 4)).T.mu1 == FIX_CACHE_SIZE + 4
