import pytest
from hypothesis import given, strategies as st

from sodlab.piclat import BlowupP2, Quadric, UnsupportedQuery, exceptional_lines, intersect, roots
from sodlab.weylgal import (LatticeMap, NotARoot, OrbitOverflow, Permutation, generator_matrix,
                            invariant_combination, is_root, orbit, reflect, root_closure, simple_roots)


def test_simple_roots_examples():
    S = BlowupP2(3)
    assert simple_roots(S) == [S.parse("L1-L2"), S.parse("L2-L3"), S.parse("H-L1-L2-L3")]
    assert len(simple_roots(BlowupP2(8))) == 8
    assert simple_roots(BlowupP2(1)) == []
    assert simple_roots(BlowupP2(2)) == [BlowupP2(2).parse("L1-L2")]
    with pytest.raises(UnsupportedQuery):
        simple_roots(Quadric())


def test_reflect_examples():
    S = BlowupP2(5)
    a = S.parse("L1-L2")
    assert reflect(S, a, a) == -a
    assert reflect(S, S.K, a) == S.K
    assert reflect(S, S.L(1), a) == S.L(2)
    with pytest.raises(NotARoot):
        reflect(S, S.H, S.L(1))


@pytest.mark.parametrize("r", range(3, 8))
def test_root_closure_matches_enumeration(r):
    S = BlowupP2(r)
    assert root_closure(S) == roots(S)


def test_e8_root_count():
    assert len(roots(BlowupP2(8))) == 240


@pytest.mark.parametrize("r", range(3, 7))
def test_lines_form_one_orbit(r):
    S = BlowupP2(r)
    assert orbit(S, S.L(1)) == exceptional_lines(S)


def test_orbit_cap():
    S = BlowupP2(6)
    with pytest.raises(OrbitOverflow):
        orbit(S, S.L(1), cap=5)


coords7 = st.lists(st.integers(-5, 5), min_size=8, max_size=8)


@given(coords7, coords7, st.data())
def test_reflection_involution_isometry(c1, c2, data):
    S = BlowupP2(7)
    all_roots = roots(S)
    a = data.draw(st.sampled_from(all_roots))
    D, D2 = S.cls(*c1), S.cls(*c2)
    assert reflect(S, reflect(S, D, a), a) == D
    assert intersect(S, reflect(S, D, a), reflect(S, D2, a)) == intersect(S, D, D2)


def test_invariant_combination_examples():
    S = BlowupP2(3)
    swap = Permutation((2, 1, 3))
    w = invariant_combination(S, [S.L(1), S.L(2)], None, [swap])
    assert w.x == [1, 1] and w.invariant == S.parse("L1+L2")
    w = invariant_combination(S, [S.H], [1], [])
    assert w.x == [1]
    G = [Permutation((2, 3, 1)), Permutation((2, 1, 3))]
    w = invariant_combination(S, [S.parse(f"H-L{i}") for i in (1, 2, 3)], [1, 1, 1], G)
    assert w.x == [1, 1, 1] and w.invariant == S.parse("3H-L1-L2-L3") and w.total_rank == 3


def test_invariant_combination_none():
    S = BlowupP2(3)
    # the reflection in L1-L2 negates L1-L2; no multiple of it is fixed
    assert invariant_combination(S, [S.parse("L1-L2")], None, [S.parse("L1-L2")]) is None


def test_generators_agree():
    S = BlowupP2(4)
    a = S.parse("H-L1-L2-L3")
    M = LatticeMap(tuple(tuple(r) for r in generator_matrix(S, a)))
    for i in range(S.picard_rank):
        assert M.apply(S, S.basis(i)) == reflect(S, S.basis(i), a)
    assert is_root(S, a) and not is_root(S, S.H)
