import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import AmbientComparisonUndefined, DomainViolation, FiberMismatch, NotASubset, ParseError
from src.pipeline.checks import check_linear_order
from src.utils.orders import (
    TOP,
    CanonicalOrder,
    DependentSum,
    ExplicitOrder,
    FiniteOrderMap,
    FinSubset,
    NaturalOrder,
    Ordering,
    ProductOrder,
    RestrictedOrder,
    TopExtension,
    all_maps,
    check_induced_composition,
    induced_finite_map,
    order_from_json,
    random_finite_order,
)


@st.composite
def increasing_maps(draw, max_size=5):
    n = draw(st.integers(min_value=0, max_value=max_size))
    images = draw(st.lists(st.integers(min_value=0, max_value=max(n - 1, 0)), unique=True, max_size=n))
    images = sorted(i for i in images if i < n)
    return FiniteOrderMap(len(images), n, tuple(images))


def test_explicit_order_follows_its_sequence():
    order = ExplicitOrder.from_sequence([5, 2, 9])
    assert order.less(5, 2) and order.less(2, 9) and order.less(5, 9)
    assert order.enumerate(10) == [2, 5, 9]
    assert order.sorted([9, 2, 5]) == [5, 2, 9]
    assert check_linear_order(order, 10).passed


def test_explicit_order_rejects_foreign_pairs():
    with pytest.raises(ParseError):
        ExplicitOrder([1, 2], [[1, 3]])
    with pytest.raises(ParseError):
        ExplicitOrder([1, 1], [])


def test_two_cycle_is_reported():
    order = ExplicitOrder([1, 2], [[1, 2], [2, 1]])
    report = check_linear_order(order, 5)
    assert not report.passed
    assert "asymmetry" in report.laws_violated()


def test_canonical_order_is_linear():
    assert check_linear_order(CanonicalOrder(6), 100).passed
    assert CanonicalOrder(3).enumerate(100) == [0, 1, 2]


def test_top_extension_puts_top_last():
    order = TopExtension(NaturalOrder())
    assert order.enumerate(3) == [TOP, 0, 1, 2]
    assert order.compare(7, TOP) is Ordering.LESS
    assert order.compare(TOP, TOP) is Ordering.EQUAL
    assert order.decode(order.encode(4)) == 4
    assert order.encode(TOP) == 0


def test_restricted_order():
    order = RestrictedOrder(CanonicalOrder(5), 3)
    assert order.enumerate(10) == [0, 1, 2]
    assert not order.member(3)


def test_product_order_is_lexicographic():
    order = ProductOrder(CanonicalOrder(2), NaturalOrder())
    assert order.less((0, 9), (1, 0))
    assert order.less((1, 0), (1, 1))
    assert order.decode(order.encode((1, 4))) == (1, 4)


def test_dependent_sum_checks_fibers():
    order = DependentSum(NaturalOrder(), lambda n: CanonicalOrder(n + 1))
    assert order.less((0, 0), (1, 0))
    assert order.less((2, 0), (2, 2))
    assert not order.member((1, 5))
    with pytest.raises(FiberMismatch):
        order.compare((1, 5), (0, 0))


def test_finite_order_map_validation():
    with pytest.raises(DomainViolation):
        FiniteOrderMap(2, 3, (2, 1))
    with pytest.raises(DomainViolation):
        FiniteOrderMap(1, 2, (2,))
    f = FiniteOrderMap(2, 4, (1, 3))
    assert f(1) == 3
    with pytest.raises(DomainViolation):
        f(2)


def test_all_maps_counts_combinations():
    assert len(all_maps(2, 4)) == 6
    assert all_maps(0, 3) == [FiniteOrderMap(0, 3, ())]


@given(increasing_maps(), st.data())
def test_composition_is_associative_with_identity(f, data):
    identity = FiniteOrderMap.identity(f.target_size)
    assert identity.compose(f) == f
    assert f.compose(FiniteOrderMap.identity(f.source_size)) == f
    g = data.draw(st.sampled_from(all_maps(f.target_size, f.target_size + 1)))
    assert g.compose(f).images == tuple(g(f(i)) for i in range(f.source_size))


def test_induced_map_positions():
    order = CanonicalOrder(4)
    a = FinSubset.of(order, {1, 3})
    b = FinSubset.of(order, {0, 1, 3})
    assert induced_finite_map(a, b) == FiniteOrderMap(2, 3, (1, 2))
    with pytest.raises(NotASubset):
        induced_finite_map(b, a)
    with pytest.raises(AmbientComparisonUndefined):
        induced_finite_map(FinSubset.of(order, {7}), FinSubset.of(order, {7, 1}))


def test_induced_maps_compose():
    assert check_induced_composition(CanonicalOrder(4), [0, 1, 3]) == []


def test_order_from_json():
    assert order_from_json({"size": 4}) == CanonicalOrder(4)
    explicit = order_from_json({"codes": [3, 1], "less_pairs": [[3, 1]]})
    assert explicit.less(3, 1)
    assert isinstance(order_from_json({"name": "N"}), NaturalOrder)
    with pytest.raises(ParseError):
        order_from_json({"shape": "tree"})


@pytest.mark.parametrize("description", [{"size": -1}, {"size": -7}, {"size": "x"}, {"codes": [1, None]}])
def test_order_from_json_rejects_malformed(description):
    with pytest.raises(ParseError):
        order_from_json(description)


def test_negative_size_is_a_parse_error():
    with pytest.raises(ParseError):
        CanonicalOrder(-1)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_orders_are_linear(seed):
    order = random_finite_order(5, np.random.default_rng(seed))
    assert order.finite_size() == 5
    assert check_linear_order(order, 100).passed
