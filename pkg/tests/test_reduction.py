import json

import pytest

from src.constructions.f import INF, FDilator, FLeft, FRight
from src.constructions.reduction import (
    build_J,
    canonical_witness,
    reduce_pipeline,
    sigma_code,
    sigma_tree_order,
    verify_J,
)
from src.utils.coding import pair
from src.utils.orders import STAR, TOP, Ordering

CODE_BOUND = 60


@pytest.fixture(scope="module")
def dec_result():
    from src.trees.kb import DecFamily

    return reduce_pipeline(DecFamily(), CODE_BOUND, depth=5, width=4)


def test_sigma_codes():
    assert sigma_code(TOP) == 0
    assert sigma_code(()) == 1
    assert sigma_code((0,)) == 2


def test_domain_order(dec):
    order = sigma_tree_order(dec)
    assert order.encode((3, TOP)) == pair(3, 0)
    assert order.encode((1, (0,))) == pair(1, sigma_code((0,)))
    assert order.compare((1, (0,)), (1, TOP)) is Ordering.LESS
    assert order.compare((1, ()), (1, (0,))) is Ordering.GREATER
    assert order.compare((0, TOP), (1, ())) is Ordering.LESS


def test_dec_pipeline_passes(dec_result):
    assert dec_result.warnings == []
    assert dec_result.report.passed, dec_result.report.laws_violated()
    assert len(dec_result.table) > 0


def test_base_and_top_entries(dec, dec_result):
    system = canonical_witness(dec).order.system
    table = dec_result.table
    bottom_top = system.make((), FLeft(TOP))
    assert table.image(0, ()) == system.make((), FLeft(()))
    assert table.image(0, TOP) == bottom_top
    assert table.image(1, TOP) == system.make((bottom_top,), FRight(0, INF, STAR))


def test_table_json(dec_result):
    data = dec_result.to_json()
    rows = data["table"]["entries"]
    assert len(rows) == len(dec_result.table)
    assert all(0 <= row["image_code"] < len(data["table"]["terms"]) for row in rows)
    assert rows[0] == {"pair_code": 0, "n": 0, "sigma_code": 0, "image_code": rows[0]["image_code"]}
    assert data["verdicts"]["suite"] == "verify-J:DEC"
    json.dumps(data)


def test_tampered_table_breaks_order(dec):
    witness = canonical_witness(dec)
    table = build_J(dec, witness, 20)
    codes = sorted(table.entries)
    first, last = table.entries[codes[0]], table.entries[codes[-1]]
    table.entries[codes[0]] = first._replace(image=last.image)
    table.entries[codes[-1]] = last._replace(image=first.image)
    report = verify_J(dec, witness, table)
    assert "clause-ii-order" in report.laws_violated()


def test_bad_family_warns(bad):
    result = reduce_pipeline(bad, 20, depth=4, width=3)
    assert any("not progressive at 1" in w for w in result.warnings)


def test_witness_is_fix_of_f(dec):
    witness = canonical_witness(dec)
    assert witness.name == "Fix(F[DEC])"
    assert isinstance(witness.order.system.T, FDilator)


def test_empty_family_file(tmp_path):
    from src.errors import ParseError
    from src.trees.kb import load_family

    path = tmp_path / "family.json"
    path.write_text("")
    with pytest.raises(ParseError):
        load_family(path)
