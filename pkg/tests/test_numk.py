import pytest
from hypothesis import given

from sodlab.numk import (KClass, NonIntegralChernData, add, derived_c2, direct_sum, dual, euler_pairing,
                         exceptional_bundle, line_bundle, multiple, negate, scale, subtract, twist, zero_class)
from sodlab.piclat import BlowupP2, LatticeError, Quadric, rr_chi

from conftest import model_and

S4 = BlowupP2(4)
F_CLASS = KClass(2, -S4.K, 2)


def test_euler_pairing_examples(model):
    O = line_bundle(model.zero())
    assert euler_pairing(model, O, O) == 1


def test_euler_pairing_dp5():
    assert euler_pairing(S4, line_bundle(S4.L(1)), line_bundle(S4.L(2))) == 0
    assert euler_pairing(S4, F_CLASS, F_CLASS) == 1
    assert derived_c2(S4, 2, -S4.K) == 2


def test_line_bundle_examples():
    S = BlowupP2(3)
    assert line_bundle(S.zero()) == KClass(1, S.zero(), 0)
    assert line_bundle(S.H) == KClass(1, S.H, 0)
    assert line_bundle(-S.K).c1.to_list() == [3, -1, -1, -1]


def test_direct_sum_examples():
    Q = Quadric()
    E = direct_sum(Q, line_bundle(Q.cls(1, 0)), line_bundle(Q.cls(0, 1)))
    assert (E.rank, E.c1.to_list(), E.c2) == (2, [1, 1], 1)
    S = BlowupP2(3)
    Hp = -S.K - S.H
    V = direct_sum(S, multiple(S, line_bundle(S.H), 3), multiple(S, line_bundle(Hp), 3))
    assert V.c2 == 24
    assert direct_sum(S, V, zero_class(S)) == V


def test_twist_examples():
    P2 = BlowupP2(0)
    assert twist(P2, line_bundle(P2.H), -P2.H) == line_bundle(P2.zero())
    t = twist(S4, F_CLASS, S4.K)
    assert t.c1 == S4.K and euler_pairing(S4, t, t) == 1
    assert twist(P2, KClass(3, P2.zero(), 0), P2.H) == KClass(3, P2.H * 3, 3)


def test_multiple_examples():
    P2, Q = BlowupP2(0), Quadric()
    assert multiple(P2, line_bundle(P2.parse("2H")), 3).c2 == 12
    assert multiple(Q, line_bundle(Q.cls(1, 1)), 4).c2 == 12
    assert multiple(S4, F_CLASS, 1) == F_CLASS
    with pytest.raises(LatticeError):
        multiple(S4, F_CLASS, 0)


def test_dual_examples():
    P2 = BlowupP2(0)
    assert dual(line_bundle(P2.H)) == line_bundle(-P2.H)
    assert dual(dual(F_CLASS)) == F_CLASS
    assert dual(F_CLASS) == KClass(2, S4.K, 2)


def test_derived_c2_rejects_nonintegral():
    S = BlowupP2(3)
    with pytest.raises(NonIntegralChernData):
        derived_c2(S, 2, -S.K)
    with pytest.raises(NonIntegralChernData):
        derived_c2(S, 0, S.H)


@given(model_and(n_k=3))
def test_bilinearity(data):
    S, _, (E, E2, F) = data
    assert euler_pairing(S, add(S, E, E2), F) == euler_pairing(S, E, F) + euler_pairing(S, E2, F)
    assert euler_pairing(S, F, add(S, E, E2)) == euler_pairing(S, F, E) + euler_pairing(S, F, E2)
    assert euler_pairing(S, scale(S, E, -3), F) == -3 * euler_pairing(S, E, F)


@given(model_and(n_div=2))
def test_line_bundle_oracle(data):
    S, (D, D2), _ = data
    assert euler_pairing(S, line_bundle(D), line_bundle(D2)) == rr_chi(S, D2 - D)


@given(model_and(n_k=2))
def test_serre_duality(data):
    S, _, (E, F) = data
    assert euler_pairing(S, E, F) == euler_pairing(S, F, twist(S, E, S.K))


@given(model_and(n_k=3))
def test_whitney_associativity(data):
    S, _, (A, B, C) = data
    assert direct_sum(S, A, direct_sum(S, B, C)) == direct_sum(S, direct_sum(S, A, B), C)
    assert direct_sum(S, A, B) == direct_sum(S, B, A)


@given(model_and(n_div=1, n_k=1))
def test_twist_inverse(data):
    S, (D,), (E,) = data
    assert twist(S, twist(S, E, D), -D) == E
    assert twist(S, E, S.zero()) == E


@given(model_and(n_k=2))
def test_group_laws(data):
    S, _, (E, F) = data
    assert subtract(S, add(S, E, F), F) == E
    assert add(S, E, negate(S, E)) == zero_class(S)


def test_twist_matches_sum_of_line_bundles():
    # twisting O^3 by D is O(D)^3
    S = BlowupP2(5)
    D = S.parse("2H-L1-L3")
    assert twist(S, multiple(S, line_bundle(S.zero()), 3), D) == multiple(S, line_bundle(D), 3)


def test_exceptional_bundle():
    E = exceptional_bundle(S4, 2, -S4.K)
    assert E == F_CLASS
