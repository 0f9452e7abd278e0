import pytest

from sodlab import links
from sodlab.links import (UnknownLink, classify_f_classes, degree_bound, expand_link, homaloidal_brute_force,
                          homaloidal_systems, link_matrix)
from sodlab.piclat import intersect

KEYS = [(9, 3), (9, 6), (8, 4), (6, 2), (6, 3)]


def systems(r):
    return [(s.n, tuple(s.mults)) for s in homaloidal_systems(r)]


def test_homaloidal_examples():
    assert systems(3) == [(2, (1, 1, 1))]
    assert systems(4) == []
    assert systems(5) == [(3, (2, 1, 1, 1, 1))]
    assert systems(6) == [(5, (2, 2, 2, 2, 2, 2)), (4, (2, 2, 2, 1, 1, 1))]


@pytest.mark.parametrize("r", range(1, 9))
def test_homaloidal_equations_and_bound(r):
    for s in homaloidal_systems(r):
        assert 3 * s.n - 3 == sum(s.mults)
        assert s.n * s.n - 1 == sum(m * m for m in s.mults)
        assert 9 * (s.n - 1) <= r * (s.n + 1)
        assert s.n <= degree_bound(r)
        assert list(s.mults) == sorted(s.mults, reverse=True) and min(s.mults) > 0


@pytest.mark.parametrize("r", range(1, 8))
def test_homaloidal_brute_force_oracle(r):
    assert homaloidal_brute_force(r) == homaloidal_systems(r)


def test_homaloidal_validation():
    with pytest.raises(Exception):
        links.HomaloidalSystem(3, [1, 1, 1])


@pytest.mark.parametrize("key", KEYS)
def test_link_matrix_invariants(key):
    m = link_matrix(*key)
    assert m.det == -1 and m.is_involution and m.conjugate


def test_link_matrix_examples():
    assert link_matrix(9, 3).m == [[2, 1], [-3, -2]]
    assert link_matrix(9, 6).m == [[5, 4], [-6, -5]]
    with pytest.raises(UnknownLink):
        link_matrix(7, 1)


@pytest.mark.parametrize("key", KEYS)
def test_expand_link_identities(key):
    e = expand_link(*key)
    assert all(e.identities.values())
    assert e.to_dict()["derived_matrix"] == link_matrix(*key).involution


def test_expand_link_examples():
    e = expand_link(9, 3)
    X = e.X
    assert e.G + X.K == -X.H
    e = expand_link(9, 6)
    assert e.G + e.X.K * 2 == -e.X.H
    X = expand_link(6, 3).X
    F1 = classify_f_classes(6, 3).to_dict()["classes"]["F1"]
    assert X.cls(*F1) == X.parse("2H-L1-L2-L3-L5-L6")
    e = expand_link(6, 2)
    assert e.identities["F5 = 2H-L1-L2-L3-L4-L5"]
    assert classify_f_classes(6, 2).to_dict()["classes"]["F5"] == [2, -1, -1, -1, -1, -1]


def test_m84_printed_identity_is_recorded_false():
    e = expand_link(8, 4)
    assert e.printed_identities == {"sigma^* O(1) = tau^* O(1) + 2K_X": False}
    assert e.identities["tau^* O(1) + 2K_X = -sigma^* O(1)"]


def test_classify_examples():
    c = classify_f_classes(6, 2)
    assert c.assignment["F5"] == "D"
    assert [c.assignment[f"F{i}"] for i in range(1, 5)] == [f"L{i},5" for i in range(1, 5)]
    c = classify_f_classes(6, 3)
    assert [c.assignment[f"F{i}"] for i in range(1, 7)] == ["D4", "D5", "D6", "D1", "D2", "D3"]


@pytest.mark.parametrize("key", KEYS)
def test_classified_classes_are_lines(key):
    c = classify_f_classes(*key)
    S = expand_link(*key).X
    for cls in c.to_dict()["classes"].values():
        D = S.cls(*cls)
        assert intersect(S, D, D) == -1 and intersect(S, D, S.K) == -1


def test_m63_second_system_set_aside():
    c = classify_f_classes(6, 3).to_dict()
    assert [s["G"] for s in c["set_aside"]] == [[4, -1, -1, -1, -2, -2, -2]]


def test_other_link_types():
    assert {r.link_type for r in links.OTHER_LINKS} >= {"I", "III", "IV"}
    for n in (0, 1):
        assert links.hirzebruch_check(n)["all_pass"]
