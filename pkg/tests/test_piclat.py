import pytest
from hypothesis import given

from sodlab.piclat import (BlowupP2, DimensionMismatch, DivisorClass, LatticeError, Quadric,
                           canonical_class, enumerate_classes, exceptional_lines, format_divisor, intersect,
                           parse_divisor, roots, rr_chi, surface_from_name)
from sodlab import intlin

from conftest import model_and


def test_intersect_examples():
    S = BlowupP2(3)
    assert intersect(S, S.H, S.H) == 1
    assert intersect(S, S.parse("H-L1-L2"), S.parse("H-L1-L3")) == 0
    Q = Quadric()
    assert intersect(Q, Q.cls(1, 1), Q.cls(1, 1)) == 2


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(BlowupP2(3), DivisorClass((1, 0)), DivisorClass((1, 0, 0, 0)))


def test_canonical_class_examples():
    assert canonical_class(BlowupP2(0)).to_list() == [-3]
    assert canonical_class(BlowupP2(4)).to_list() == [-3, 1, 1, 1, 1]
    assert canonical_class(Quadric()).to_list() == [-2, -2]


def test_model_invariants(model):
    K = canonical_class(model)
    assert intersect(model, K, K) == model.degree
    d = intlin.det([list(r) for r in model.gram])
    assert d == (-1 if model.kind == "quadric" else (-1) ** model.r)
    assert rr_chi(model, model.zero()) == 1
    assert rr_chi(model, K) == 1


def test_rr_chi_examples():
    assert rr_chi(BlowupP2(0), BlowupP2(0).zero()) == 1
    assert rr_chi(BlowupP2(0), BlowupP2(0).H) == 3
    assert rr_chi(BlowupP2(4), BlowupP2(4).L(1)) == 1
    # O(2) on the plane has six sections
    assert rr_chi(BlowupP2(0), BlowupP2(0).parse("2H")) == 6


@given(model_and(n_div=3))
def test_intersect_symmetric_bilinear(data):
    S, (a, b, c), _ = data
    assert intersect(S, a, b) == intersect(S, b, a)
    assert intersect(S, a + b, c) == intersect(S, a, c) + intersect(S, b, c)
    assert intersect(S, a * 3, b) == 3 * intersect(S, a, b)


LINES = [0, 1, 3, 6, 10, 16, 27, 56, 240]
ROOTS = [0, 0, 2, 8, 20, 40, 72, 126, 240]


@pytest.mark.parametrize("r", range(9))
def test_enumeration_counts(r):
    S = BlowupP2(r)
    assert len(exceptional_lines(S)) == LINES[r]
    assert len(roots(S)) == ROOTS[r]


@pytest.mark.parametrize("r", [6, 7, 8])
def test_enumeration_independent_of_window(r):
    # a much wider H-window must not find anything new
    S = BlowupP2(r)
    for s, k in ((-1, -1), (-2, 0)):
        assert enumerate_classes(S, s, k) == enumerate_classes(S, s, k, a_range=(-20, 20))


def test_enumeration_is_sorted_and_correct():
    S = BlowupP2(5)
    lines = exceptional_lines(S)
    assert lines == sorted(lines, key=lambda d: d.coords)
    for D in lines:
        assert intersect(S, D, D) == -1 and intersect(S, D, S.K) == -1


def test_quadric_enumeration():
    Q = Quadric()
    # the rulings have square 0 and degree -2 against K
    assert enumerate_classes(Q, 0, -2) == [DivisorClass((0, 1)), DivisorClass((1, 0))]
    assert enumerate_classes(Q, -1, -1) == []


def test_models_beyond_eight_points_rejected():
    # with nine points the form stops being definite on K-perp and counts become infinite
    with pytest.raises(LatticeError):
        BlowupP2(9)


def test_nonnegative_self_intersection_is_still_finite():
    # conic classes on the blow-up in one point: the fibre H-L1 only
    assert enumerate_classes(BlowupP2(1), 0, -2) == [DivisorClass((1, -1))]


def test_parse_and_format_roundtrip():
    S = BlowupP2(6)
    for text in ["2H-L1-L2-L3", "-K+L4", "0", "5H-2L1-2L2-2L3-2L4-2L5-2L6", "L6"]:
        D = parse_divisor(S, text)
        assert parse_divisor(S, format_divisor(S, D)) == D
    assert S.parse("-K") == S.parse("3H-L1-L2-L3-L4-L5-L6")
    assert S.parse("1,0,0,0,0,0,-1") == S.parse("H-L6")
    with pytest.raises(LatticeError):
        S.parse("H L1")
    with pytest.raises(LatticeError):
        S.parse("H1")


def test_surface_names():
    assert surface_from_name("dP5") == BlowupP2(4)
    assert surface_from_name("P2") == BlowupP2(0)
    assert surface_from_name("BlowupP2(6)").degree == 3
    assert surface_from_name("Quadric").degree == 8
    with pytest.raises(LatticeError):
        surface_from_name("K3")
