import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.dilators.core import (
    DElement,
    DExtension,
    d_compare,
    d_map_supp,
    d_member,
    d_mu,
    evaluate_class,
    invert_class,
    mu_value,
    restriction_identity,
    validate_normal,
    validate_prae_dilator,
)
from src.dilators.zoo import ConstantDilator, EmptySupportVariant, OmegaDilator, TopDilator
from src.errors import DomainViolation, InvalidElement, NotNormal
from src.pipeline.checks import check_linear_order
from src.utils.orders import (
    STAR,
    TOP,
    CanonicalOrder,
    FiniteOrderMap,
    FinSubset,
    NaturalOrder,
    Ordering,
    OrderEmbedding,
    TopExtension,
    finite_image,
    increasing_enumeration,
    induced_finite_map,
)

OMEGA_PLUS_ONE = TopExtension(NaturalOrder())


def test_increasing_enumeration_examples():
    assert increasing_enumeration(FinSubset.of(NaturalOrder(), [])) == []
    assert increasing_enumeration(FinSubset.of(NaturalOrder(), {2, 0, 1})) == [0, 1, 2]
    assert increasing_enumeration(FinSubset.of(OMEGA_PLUS_ONE, {TOP, 1})) == [1, TOP]


def test_induced_map_examples():
    a = FinSubset.of(OMEGA_PLUS_ONE, {1, TOP})
    b = FinSubset.of(OMEGA_PLUS_ONE, {1, 5, TOP})
    assert induced_finite_map(a, b).images == (0, 2)
    assert induced_finite_map(b, b) == FiniteOrderMap.identity(3)
    assert induced_finite_map(FinSubset.of(OMEGA_PLUS_ONE, []), b) == FiniteOrderMap(0, 3, ())


def test_finite_image_examples():
    f = OrderEmbedding.from_finite_map(FiniteOrderMap(2, 4, (1, 3)))
    assert finite_image(f, FinSubset.of(f.source, {0, 1})).elements == {1, 3}
    assert finite_image(f, FinSubset.of(f.source, [])).elements == frozenset()
    identity = OrderEmbedding.identity(NaturalOrder())
    assert finite_image(identity, FinSubset.of(NaturalOrder(), {3, 7})).elements == {3, 7}


def test_membership_needs_full_support(omega):
    assert d_member(omega, OMEGA_PLUS_ONE, {1, TOP}, (1, 0))
    assert not d_member(omega, OMEGA_PLUS_ONE, {1, 5, TOP}, (2, 0))
    assert d_member(omega, OMEGA_PLUS_ONE, [], ())


def test_d_compare_examples(omega, three):
    d = DElement.of({0}, (0,))
    assert d_compare(omega, three, d, d) is Ordering.EQUAL
    assert d_compare(omega, three, d, DElement.of({1}, (0,))) is Ordering.LESS
    assert d_compare(omega, CanonicalOrder(1), DElement.of([], ()), d) is Ordering.LESS
    assert d_compare(omega, three, DElement.of({0, 2}, (1, 0)), DElement.of({1}, (0,))) is Ordering.GREATER


def test_d_compare_rejects_non_members(omega, three):
    with pytest.raises(InvalidElement):
        d_compare(omega, three, DElement.of({0, 1}, (0,)), DElement.of({0}, (0,)))


def test_d_map_supp(omega):
    f = OrderEmbedding.from_finite_map(FiniteOrderMap(2, 4, (1, 3)))
    image, support = d_map_supp(omega, f, DElement.of({0, 1}, (1, 0)))
    assert image == DElement.of({1, 3}, (1, 0))
    assert support.elements == {0, 1}
    identity = OrderEmbedding.identity(OMEGA_PLUS_ONE)
    d = DElement.of({1, TOP}, (1, 0))
    assert d_map_supp(omega, identity, d) == (d, FinSubset.of(OMEGA_PLUS_ONE, {1, TOP}))


@given(st.integers(min_value=1, max_value=6), st.data())
def test_mu_values_of_omega(n, data):
    omega = OmegaDilator()
    m = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert mu_value(omega, n, m) == (m,)
    assert omega.supp(n, mu_value(omega, n, m)) == {m}


def test_mu_requires_normal_structure(omega, top):
    with pytest.raises(NotNormal):
        mu_value(top, 2, 0)
    with pytest.raises(DomainViolation):
        mu_value(omega, 2, 2)
    assert d_mu(omega, OMEGA_PLUS_ONE, 4) == DElement.of({4}, (0,))
    assert evaluate_class(omega, OMEGA_PLUS_ONE, d_mu(omega, OMEGA_PLUS_ONE, 4)) == (4,)


def test_evaluate_class_sends_both_pairs_to_the_same_value(omega):
    assert evaluate_class(omega, OMEGA_PLUS_ONE, DElement.of({1, TOP}, (1, 0))) == (TOP, 1)
    assert evaluate_class(omega, OMEGA_PLUS_ONE, DElement.of({1, 5, TOP}, (2, 0))) == (TOP, 1)
    assert evaluate_class(omega, OMEGA_PLUS_ONE, DElement.of([], ())) == ()


def test_invert_class_finds_the_full_support_pair(omega):
    assert invert_class(omega, OMEGA_PLUS_ONE, (TOP, 1), 100) == DElement.of({1, TOP}, (1, 0))


def test_omega_laws_hold(omega):
    assert validate_prae_dilator(omega, 3, 200).passed
    assert validate_normal(omega, 3, 200).passed


def test_constant_dilator_laws():
    assert validate_prae_dilator(ConstantDilator(), 3, 50).passed
    verdict = validate_normal(ConstantDilator(mu1=STAR), 2, 50)
    assert "mu-support" in verdict.laws_violated()


def test_empty_support_variant_is_caught(omega):
    verdict = validate_prae_dilator(EmptySupportVariant(omega), 2, 100)
    assert "support-condition" in verdict.laws_violated()


def test_top_has_no_normal_structure(top):
    assert validate_prae_dilator(top, 3, 100).passed
    assert not validate_normal(top, 2, 50).passed
    for candidate in TopDilator.candidates():
        assert not validate_normal(candidate, 2, 50).passed


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_top_extension_has_n_plus_one_elements(top, n):
    order = DExtension(top, CanonicalOrder(n))
    elements = order.enumerate(200)
    assert len(elements) == n + 1
    assert order.sorted(elements)[-1] == DElement.of([], TOP)


def test_d_omega_of_three_is_linear(omega, three):
    assert check_linear_order(DExtension(omega, three), 300).passed


def test_codes_round_trip_through_d_extension(omega, three):
    order = DExtension(omega, three)
    for d in order.enumerate(300):
        assert order.decode(order.encode(d)) == d


@pytest.mark.parametrize("x", [0, 1, 2])
def test_restriction_identity_for_omega(omega, three, x):
    assert restriction_identity(omega, three, x, 300).passed
