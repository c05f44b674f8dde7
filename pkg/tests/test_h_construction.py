import pytest

from src.constructions.h import (
    HDilator,
    HOrder,
    HTree,
    h_coded_iso,
    h_compare,
    h_map_supp,
    h_member,
    h_supp,
    refutation_branch,
)
from src.dilators.core import DElement, validate_prae_dilator
from src.errors import DomainViolation, NotMember
from src.pipeline.suites import check_h_instance, check_h_well_founded
from src.utils.orders import TOP, CanonicalOrder, FiniteOrderMap, OrderEmbedding, Ordering


def test_membership_examples(dec):
    two = CanonicalOrder(2)
    assert h_member(dec, 1, two, ())
    assert h_member(dec, 1, two, ((TOP, 1),))
    assert not h_member(dec, 1, two, ((TOP, 5),))


def test_position_condition(dec):
    # positions 0 and 1 code () and <0>, and <0> lies KB-below ()
    two = CanonicalOrder(2)
    assert h_member(dec, 1, two, ((1, 1), (0, 0)))
    assert not h_member(dec, 1, two, ((0, 1), (1, 0)))


def test_compare_examples(dec):
    one = CanonicalOrder(1)
    assert h_compare(dec, 3, one, ((0, 3),), ((TOP, 0),)) is Ordering.LESS
    assert h_compare(dec, 3, one, ((TOP, 0),), ((TOP, 1),)) is Ordering.LESS
    assert h_compare(dec, 3, one, ((TOP, 2), (0, 1)), ((TOP, 2),)) is Ordering.LESS
    with pytest.raises(NotMember):
        h_compare(dec, 0, one, ((TOP, 3),), ())


def test_support_ignores_top():
    assert h_supp(((TOP, 0), (2, 1))) == {2}
    assert h_supp(((TOP, 0), (TOP, 1))) == frozenset()


def test_map_supp(dec):
    three = CanonicalOrder(3)
    identity = OrderEmbedding.identity(three)
    value = ((2, 1),)
    image, support = h_map_supp(dec, 1, identity, value)
    assert image == value
    assert support.elements == {2}
    with pytest.raises(DomainViolation):
        h_map_supp(dec, 1, identity, ((TOP, 7),))


def test_coded_iso_examples(dec):
    three = CanonicalOrder(3)
    coded = h_coded_iso(dec, 1, three, "to_coded", ((2, 1),))
    assert coded == DElement.of({2}, ((0, 1),))
    assert h_coded_iso(dec, 1, three, "from_coded", coded) == ((2, 1),)
    assert h_coded_iso(dec, 1, three, "to_coded", ()) == DElement.of([], ())
    with pytest.raises(NotMember):
        h_coded_iso(dec, 1, three, "to_coded", ((TOP, 9),))


def test_dilator_moves_entries(dec):
    T = HDilator(dec, 1)
    f = FiniteOrderMap(1, 3, (2,))
    assert T.apply(f, ((0, 1),)) == ((2, 1),)
    assert T.supp(1, ((0, 1), (TOP, 0))) == {0}


@pytest.mark.parametrize("n", [0, 1, 2])
def test_h_laws_on_dec(dec, n):
    assert validate_prae_dilator(HDilator(dec, n), 2, 150).passed


@pytest.mark.parametrize("n", [0, 1])
def test_instance_check(dec, three, n):
    report = check_h_instance(dec, n, three, 300)
    assert report.passed, report.laws_violated()
    assert report.checks_run > 0


def test_refutation_branch_descends(bad):
    X, prefixes = refutation_branch(bad, 1, 6, 3)
    order = HOrder(bad, 1, X)
    assert len(prefixes) == 7
    assert all(h_member(bad, 1, X, p) for p in prefixes)
    assert all(order.less(longer, shorter) for shorter, longer in zip(prefixes, prefixes[1:]))


def test_no_refutation_branch_for_dec(dec):
    _, prefixes = refutation_branch(dec, 1, 6, 3)
    assert prefixes == []


@pytest.mark.parametrize("size", range(5))
@pytest.mark.parametrize("n", range(3))
def test_h_dec_tree_is_well_founded(dec, n, size):
    report = check_h_well_founded(dec, n, CanonicalOrder(size), [n + 2, n + 4], 12)
    assert report.passed, report.violations


def test_h_tree_membership_reads_entry_codes(dec):
    tree = HTree(dec, 1, CanonicalOrder(2))
    entries = tree.order.entries
    assert tree.member(())
    assert tree.member((entries.encode((TOP, 1)),))
    assert not tree.member((entries.encode((TOP, 5)),))
