import json

import pytest

from sodlab import surfdb
from sodlab.numk import line_bundle, multiple
from sodlab.surfdb import (UnknownRow, all_cases, find_multiplicities, index_from_c2, moreover_check, recompute,
                           surface_case)

ROWS = [(c.table, c.row) for c in all_cases()]


def test_row_counts():
    counts = {t: sum(1 for c in all_cases() if c.table == t) for t in surfdb.TABLES}
    assert counts == {"dp9": 2, "dp8": 9, "dp6": 14, "dp5": 1}


def test_surface_case_examples():
    c = surface_case("dp9", "nonsplit")
    assert [b.c2 for b in c.bundles] == [3, 12] and [b.rank for b in c.bundles] == [3, 3] and c.index == 3
    c = surface_case("dp6", "6.2")
    assert [b.c2 for b in c.bundles] == [3, 24] and c.index == 3
    c = surface_case("dp5", "—")
    assert [b.c2 for b in c.bundles] == [2, 20] and [b.rank for b in c.bundles] == [2, 5] and c.index == 1
    assert surface_case("8", "3").row == "8.3"
    with pytest.raises(UnknownRow):
        surface_case("dp8", "8.10")
    with pytest.raises(UnknownRow):
        surface_case("dp7", "7.1")


@pytest.mark.parametrize("table,row", ROWS)
def test_columns_recompute(table, row):
    assert recompute(surface_case(table, row)).ok


def test_row_81_split_shape():
    c = surface_case("dp8", "8.1")
    S = c.model()
    V1 = surfdb.split_class(S, c.bundles[0].split)
    assert (V1.rank, V1.c2) == (4, 4)
    assert V1 == surfdb.split_class(S, (("H1", 1), ("H1", 1), ("H2", 1), ("H2", 1)))


def test_index_from_c2_examples():
    assert index_from_c2(surface_case("dp9", "nonsplit"), (2, 1, 1)) == 3
    assert surfdb.c2_values(surface_case("dp9", "nonsplit"), (2, 1, 1)) == [9, 3, 12]
    c = surface_case("dp8", "8.4")
    assert surfdb.c2_values(c, (1, 1, 2)) == [0, 4, 2]
    assert index_from_c2(c, (1, 1, 2)) == 2
    assert index_from_c2(surface_case("dp5", ""), (2, 1, 1)) == 1
    assert surfdb.c2_values(surface_case("dp5", ""), (2, 1, 1)) == [5, 2, 20]


def test_c2_of_multiples_uses_whitney():
    c = surface_case("dp9", "split")
    S = c.model()
    assert multiple(S, line_bundle(S.H), 2).c2 == 1
    assert surfdb.c2_values(c, (1, 2, 1)) == [0, 1, 0]
    with pytest.raises(Exception):
        index_from_c2(c, (0, 1, 1))


def test_gcd_convention():
    assert surfdb._gcd_all([4, 0]) == 4
    assert surfdb._gcd_all([0, 0]) == 0


@pytest.mark.parametrize("table,row", ROWS)
def test_find_multiplicities_reaches_index(table, row):
    c = surface_case(table, row)
    m = find_multiplicities(c, 4)
    assert m is not None and index_from_c2(c, m) == c.index


def test_find_multiplicities_examples():
    assert find_multiplicities(surface_case("dp9", "split"), 3) == (1, 2, 1)
    assert find_multiplicities(surface_case("dp6", "6.1"), 4) == (2, 1, 1)
    assert find_multiplicities(surface_case("dp8", "8.4"), 4) == (1, 1, 2)
    assert find_multiplicities(surface_case("dp5", ""), 4) == (2, 1, 1)
    m = find_multiplicities(surface_case("dp8", "8.9"), 4)
    assert surfdb.c2_values(surface_case("dp8", "8.9"), m)[1:] == [1, 0]
    assert find_multiplicities(surface_case("dp6", "6.1"), 1) is None


def test_exceptional_rows_need_extra_generators():
    # the three listed exceptions are exactly the rows where (1, 1, 1) falls short
    short = {c.row for c in all_cases() if index_from_c2(c, (1, 1, 1)) != c.index}
    assert short == {"9.2", "8.4", "8.6", "6.1", "5.1"}


def test_moreover_clause_in_scope():
    for c in all_cases():
        chk = moreover_check(c)
        if chk.in_scope:
            assert chk.holds, c.row


def test_moreover_clause_literal_violations():
    # read over every row, the clause also fails on the split plane (gcd(0,0) = 0) and on 8.6
    bad = {c.row for c in all_cases() if not moreover_check(c).holds and not moreover_check(c).exception}
    assert bad == {"9.2", "8.6"}
    assert moreover_check(surface_case("dp8", "8.6")).reason == "Picard rank > 1"


def test_json_export():
    data = json.loads(surfdb.export_json())
    assert len(data) == 26
    assert data[0]["bundles"][0]["c2"] == 3
    assert surfdb.export_json() == surfdb.export_json()
