import pytest
from hypothesis import given, strategies as st

from sodlab import intlin
from sodlab.excol import (BlockMeta, InvalidBlock, MarkedCollection, left_mutate, mutate_block, right_mutate,
                          same_lattice, serre_twist, span_coordinates, verify_sod)
from sodlab.numk import KClass, coordinates, euler_pairing, line_bundle, twist
from sodlab.piclat import BlowupP2, LatticeError

P2 = BlowupP2(0)
O, O1, O2 = (line_bundle(P2.cls(k)) for k in range(3))


def test_left_mutate_example():
    G = left_mutate(P2, O, O1)
    assert G == KClass(-2, P2.H, 0)
    assert euler_pairing(P2, O, G) == 0
    assert euler_pairing(P2, G, G) == 1


def test_right_mutate_example():
    G = right_mutate(P2, O, O1)
    # [O] - 3[O(H)]; c2 = C(3,2) H^2 through the virtual Whitney formula
    assert (G.rank, G.c1, G.c2) == (-2, P2.H * -3, 6)
    assert euler_pairing(P2, G, O1) == 0
    S = BlowupP2(3)
    a, b = line_bundle(S.L(1)), line_bundle(S.L(2))
    assert right_mutate(S, a, b) == a


def test_mutate_block_examples():
    S = BlowupP2(3)
    block = [line_bundle(S.parse(f"H-L{i}")) for i in (1, 2, 3)]
    F = line_bundle(S.H)
    out = mutate_block(S, block, F, "left")
    expect = F
    for E in block:
        expect = left_mutate(S, E, expect)
    assert out == expect
    assert mutate_block(S, block[:1], F) == left_mutate(S, block[0], F)
    assert mutate_block(S, [], F) == F
    right = mutate_block(S, block, F, "right")
    for E in block:
        assert euler_pairing(S, right, E) == 0


def test_mutate_block_rejects_bad_block():
    with pytest.raises(InvalidBlock):
        mutate_block(P2, [O, O1], O2)
    with pytest.raises(LatticeError):
        mutate_block(P2, [O], O1, "up")


def test_serre_twist_examples():
    S = BlowupP2(3)
    Os = line_bundle(S.zero())
    assert serre_twist(S, Os) == line_bundle(S.K)
    assert serre_twist(S, serre_twist(S, Os)) == twist(S, Os, S.K * 2)


def test_verify_sod_examples():
    rep = verify_sod(MarkedCollection(P2, [O, O1, O2]))
    assert rep.all_pass and rep.length_ok and rep.basis_det in (1, -1)
    S = BlowupP2(4)
    F = KClass(2, -S.K, 2)
    col = MarkedCollection.from_blocks(S, [[line_bundle(S.zero())], [F],
                                           [line_bundle(S.H)] + [line_bundle(S.parse(f"L{i}") - S.K - S.H)
                                                                 for i in range(1, 5)]])
    rep = verify_sod(col)
    assert rep.all_pass and len(col.classes) == 7
    swapped = verify_sod(MarkedCollection(P2, [O1, O, O2]))
    assert not swapped.backward_orthogonal and not swapped.all_pass


def test_gram_upper_triangular_when_passing():
    rep = verify_sod(MarkedCollection(P2, [O, O1, O2]))
    g = rep.gram
    assert all(g[i][i] == 1 for i in range(3))
    assert all(g[i][j] == 0 for i in range(3) for j in range(i))


def test_block_bounds_validation():
    with pytest.raises(InvalidBlock):
        MarkedCollection(P2, [O, O1], [(0, 1)])
    with pytest.raises(InvalidBlock):
        MarkedCollection(P2, [O, O1], [(0, 1), (0, 2)])
    with pytest.raises(InvalidBlock):
        MarkedCollection(P2, [O, O1], None, [BlockMeta(1)])


def test_length_and_incomplete_reporting():
    from sodlab.excol import RankOnly
    rep = verify_sod(MarkedCollection(P2, [O, O1]))
    assert not rep.length_ok
    rep = verify_sod(MarkedCollection(P2, [O, RankOnly(2), O2]))
    assert not rep.complete and rep.basis_det.startswith("undefined")
    assert rep.is_numerically_exceptional[1] is None


# exceptional pairs on the plane: consecutive twists of the Beilinson collection
pairs = st.tuples(st.integers(-5, 5), st.integers(1, 2))


@given(pairs, st.sampled_from(["left", "right"]))
def test_mutation_preserves_exceptionality_and_lattice(p, direction):
    a, gap = p
    E, F = line_bundle(P2.cls(a)), line_bundle(P2.cls(a + gap))
    if direction == "left":
        G = left_mutate(P2, E, F)
        assert euler_pairing(P2, E, G) == 0
        new = [G, E]
    else:
        G = right_mutate(P2, E, F)
        assert euler_pairing(P2, G, F) == 0
        new = [F, G]
    assert euler_pairing(P2, G, G) == 1
    assert same_lattice(P2, [E, F], new)


def test_full_collection_det_invariant_under_mutation():
    from sodlab.catalog import three_block
    col = three_block(6).collection()
    S = col.surface
    cls = list(col.classes)
    base = intlin.det(span_coordinates(S, cls))
    assert abs(base) == 1
    for i in range(len(cls) - 1):
        m = cls[:i] + [left_mutate(S, cls[i], cls[i + 1]), cls[i]] + cls[i + 2:]
        assert abs(intlin.det(span_coordinates(S, m))) == 1


def test_same_lattice_detects_difference():
    assert not same_lattice(P2, [O, O1], [O, O2])
    assert coordinates(P2, O1) == [1, 1, 3]
